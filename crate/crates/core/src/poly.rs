//! Sparse Laurent polynomials, trinomials and fractional polynomials over a
//! [`FieldCtx`], with the textual form used in reports
//! (`x^5+x^4+x`, `(x^5+x^4+x)/(x^4+x+1)`, `-x^7`).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};

/// Reduces exponents into [1, m] keeping their residue modulo `m`
/// (m = q^2 - 1), so x^e and x^e' agree as functions on the whole field.
/// A nonpositive exponent divisible by `m` is rejected: it would turn the
/// monomial into a constant.
pub fn normalize_exponents(raw: &[i64], m: u64) -> Result<Vec<u64>> {
    raw.iter()
        .map(|&e| {
            let r = e.rem_euclid(m as i64) as u64;
            match r {
                0 if e > 0 => Ok(m),
                0 => Err(Error::ZeroExponent(e)),
                r => Ok(r),
            }
        })
        .collect()
}

/// A Laurent polynomial with distinct exponents in increasing order and
/// nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: Vec<(i64, Elt)>,
}

impl SparsePoly {
    /// Collects terms, merging equal exponents and dropping zeros.
    pub fn from_terms(ctx: &FieldCtx, terms: impl IntoIterator<Item = (i64, Elt)>) -> Self {
        let mut v: Vec<(i64, Elt)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, Elt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = ctx.add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        SparsePoly { terms: out }
    }

    /// Terms with small integer coefficients reduced into the prime field.
    pub fn from_signed(ctx: &FieldCtx, terms: &[(i64, i64)]) -> Self {
        Self::from_terms(ctx, terms.iter().map(|&(e, c)| (e, ctx.scalar(c))))
    }

    pub fn one() -> Self {
        SparsePoly { terms: vec![(0, Elt::ONE)] }
    }

    pub fn monomial(e: i64) -> Self {
        SparsePoly { terms: vec![(e, Elt::ONE)] }
    }

    pub fn terms(&self) -> &[(i64, Elt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.min_exp().is_some_and(|e| e < 0)
    }

    /// Whether every coefficient lies in the prime field.
    pub fn has_prime_coefficients(&self, ctx: &FieldCtx) -> bool {
        self.terms.iter().all(|t| ctx.is_prime_scalar(t.1))
    }

    /// Multiplication by x^s.
    pub fn shift(&self, s: i64) -> Self {
        SparsePoly { terms: self.terms.iter().map(|&(e, c)| (e + s, c)).collect() }
    }

    /// p(1/x).
    pub fn reflect(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|&(e, c)| (-e, c)).collect();
        terms.reverse();
        SparsePoly { terms }
    }

    /// Coefficientwise multiplication by a scalar.
    pub fn scale(&self, ctx: &FieldCtx, c: Elt) -> Self {
        Self::from_terms(ctx, self.terms.iter().map(|&(e, a)| (e, ctx.mul(a, c))))
    }

    /// Sum of coeff * x^exponent. Negative exponents require x != 0.
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Result<Elt> {
        if x.is_zero() && self.has_negative_exponent() {
            return Err(Error::NegativeExponentAtZero);
        }
        let mut acc = Elt::ZERO;
        for &(e, c) in &self.terms {
            let xe = ctx.pow(x, e)?;
            acc = ctx.add(acc, ctx.mul(c, xe));
        }
        Ok(acc)
    }

    /// Evaluation at a nonzero point given by its discrete log, avoiding
    /// repeated exponentiation.
    pub(crate) fn eval_at_gen_power(&self, ctx: &FieldCtx, log_x: u64) -> Elt {
        let order = ctx.order();
        let mut acc = Elt::ZERO;
        for &(e, c) in &self.terms {
            let exp = crate::numtheory::mul_mod(log_x, e.rem_euclid(order as i64) as u64, order);
            acc = ctx.add(acc, ctx.mul(c, ctx.gen_pow(exp)));
        }
        acc
    }

    pub fn render(&self, ctx: &FieldCtx) -> String {
        render_terms(ctx, &self.terms)
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        parse_terms(ctx, s).map(|t| Self::from_terms(ctx, t))
    }
}

/// A three-term polynomial with coefficients +1/-1 and exponents reduced
/// into [1, q^2 - 1], stored in decreasing exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trinomial {
    exps: [u64; 3],
    signs: [i8; 3],
    modulus: u64,
}

impl Trinomial {
    /// Builds the trinomial sum of sign * x^exp. Exponents are normalized
    /// modulo q^2 - 1 and must stay distinct.
    pub fn new(ctx: &FieldCtx, raw: [(i64, i8); 3]) -> Result<Self> {
        let m = ctx.order();
        let reduced = normalize_exponents(&raw.map(|t| t.0), m)?;
        let mut terms: Vec<(u64, i8)> = reduced.into_iter().zip(raw.iter().map(|t| t.1)).collect();
        for t in &mut terms {
            t.1 = match (t.1 as i64).rem_euclid(ctx.p() as i64) {
                1 => 1,
                r if r == ctx.p() as i64 - 1 => -1,
                _ => return Err(Error::Parse(format!("trinomial sign {} is not +-1", t.1))),
            };
        }
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        if terms[0].0 == terms[1].0 || terms[1].0 == terms[2].0 {
            return Err(Error::ExponentCollision { exps: terms.iter().map(|t| t.0).collect(), modulus: m });
        }
        Ok(Trinomial {
            exps: [terms[0].0, terms[1].0, terms[2].0],
            signs: [terms[0].1, terms[1].1, terms[2].1],
            modulus: m,
        })
    }

    /// Exponents a > b > c.
    pub fn exps(&self) -> [u64; 3] {
        self.exps
    }

    pub fn signs(&self) -> [i8; 3] {
        self.signs
    }

    /// q^2 - 1 of the field the exponents were reduced against.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// (exponent, sign) pairs in decreasing exponent order.
    pub fn terms(&self) -> [(u64, i8); 3] {
        [(self.exps[0], self.signs[0]), (self.exps[1], self.signs[1]), (self.exps[2], self.signs[2])]
    }

    pub fn to_sparse(&self, ctx: &FieldCtx) -> SparsePoly {
        SparsePoly::from_terms(ctx, self.terms().iter().map(|&(e, s)| (e as i64, ctx.scalar(s as i64))))
    }

    /// f(x); f(0) = 0 since every exponent is at least 1.
    #[inline]
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        let mut acc = Elt::ZERO;
        for (e, s) in self.terms() {
            acc = ctx.add(acc, ctx.scale(ctx.pow_u(x, e), s as i64));
        }
        acc
    }

    pub fn render(&self, ctx: &FieldCtx) -> String {
        self.to_sparse(ctx).render(ctx)
    }
}

/// A ratio of two sparse polynomials, meant to be evaluated on mu_{q+1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FracPoly {
    num: SparsePoly,
    den: SparsePoly,
    /// The power x^shift both parts were multiplied by to clear negative
    /// exponents.
    shift: i64,
}

impl FracPoly {
    pub fn new(num: SparsePoly, den: SparsePoly) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        FracPoly { num, den, shift: 0 }
    }

    /// Multiplies numerator and denominator by x^s, with s chosen so that all
    /// exponents become nonnegative.
    pub fn cleared(num: SparsePoly, den: SparsePoly) -> Self {
        let lowest = num.min_exp().unwrap_or(0).min(den.min_exp().unwrap_or(0)).min(0);
        let s = -lowest;
        let mut f = FracPoly::new(num.shift(s), den.shift(s));
        f.shift = s;
        f
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// 1/g.
    pub fn reciprocal(&self) -> Self {
        FracPoly { num: self.den.clone(), den: self.num.clone(), shift: self.shift }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Result<Elt> {
        let d = self.den.eval(ctx, x)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(ctx.index(x)));
        }
        Ok(ctx.mul(self.num.eval(ctx, x)?, ctx.inv(d)?))
    }

    pub fn render(&self, ctx: &FieldCtx) -> String {
        format!("({})/({})", self.num.render(ctx), self.den.render(ctx))
    }

    /// Parses `(num)/(den)`; a bare polynomial gets denominator 1.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = split_fraction(&s)?;
        let num = SparsePoly::parse(ctx, num)?;
        let den = match den {
            Some(d) => SparsePoly::parse(ctx, d)?,
            None => SparsePoly::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(FracPoly::new(num, den))
    }
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

fn split_fraction(s: &str) -> Result<(&str, Option<&str>)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Ok((strip_parens(&s[..i]), Some(strip_parens(&s[i + 1..])))),
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    Ok((strip_parens(s), None))
}

fn coefficient_prefix(ctx: &FieldCtx, c: Elt, exp: i64, first: bool) -> String {
    let mut out = String::new();
    let minus = ctx.p() == 3 && c == ctx.minus_one();
    if minus {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    if c != Elt::ONE && !minus {
        write!(out, "[{}]", ctx.index(c)).unwrap();
    } else if exp == 0 {
        out.push('1');
    }
    out
}

fn render_terms(ctx: &FieldCtx, terms: &[(i64, Elt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, &(e, c)) in terms.iter().rev().enumerate() {
        out.push_str(&coefficient_prefix(ctx, c, e, i == 0));
        match e {
            0 => {}
            1 => out.push('x'),
            e => write!(out, "x^{e}").unwrap(),
        }
    }
    out
}

fn parse_terms(ctx: &FieldCtx, s: &str) -> Result<Vec<(i64, Elt)>> {
    let s: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '{' && *c != '}')
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(Vec::new());
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i != 0 {
            return Err(bad("expected + or -"));
        }
        let mut coeff = ctx.scalar(sign);
        let mut had_coeff = false;
        if i < bytes.len() && bytes[i] == b'[' {
            let end = s[i..].find(']').ok_or_else(|| bad("unterminated ["))? + i;
            let idx: u64 = s[i + 1..end].parse().map_err(|_| bad("bad element index"))?;
            if idx >= ctx.size() {
                return Err(bad("element index out of range"));
            }
            coeff = ctx.scale(ctx.from_index(idx as u32), sign);
            had_coeff = true;
            i = end + 1;
        } else {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i > start {
                let v: i64 = s[start..i].parse().map_err(|_| bad("bad coefficient"))?;
                coeff = ctx.scalar(sign * v);
                had_coeff = true;
            }
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
        }
        let mut exp = 0i64;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[start..i].parse().map_err(|_| bad("bad exponent"))?;
            }
        } else if !had_coeff {
            return Err(bad("expected a term"));
        }
        terms.push((exp, coeff));
    }
    Ok(terms)
}

/// A sparse polynomial template with integer coefficients, independent of
/// any particular field.
pub type SignedTerms = &'static [(i64, i8)];

pub fn instantiate_terms(ctx: &FieldCtx, terms: &[(i64, i8)]) -> SparsePoly {
    SparsePoly::from_terms(ctx, terms.iter().map(|&(e, c)| (e, ctx.scalar(c as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, k: u32) -> FieldCtx {
        FieldCtx::new(p, k, None).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_exponents(&[3], 63).unwrap(), vec![3]);
        assert_eq!(normalize_exponents(&[-4], 63).unwrap(), vec![59]);
        // q = 8, l = 0: r = 3 and h = 1 + x^3 + x^-1.
        assert_eq!(normalize_exponents(&[3, 3 + 3 * 7, 3 - 7], 63).unwrap(), vec![3, 24, 59]);
        assert_eq!(normalize_exponents(&[63], 63).unwrap(), vec![63]);
        assert_eq!(normalize_exponents(&[0], 63), Err(Error::ZeroExponent(0)));
        assert_eq!(normalize_exponents(&[-126], 63), Err(Error::ZeroExponent(-126)));
    }

    #[test]
    fn normalization_preserves_functions() {
        let ctx = f(2, 3);
        for e in -130i64..130 {
            let Ok(r) = normalize_exponents(&[e], ctx.order()) else { continue };
            for x in ctx.elements().skip(1) {
                assert_eq!(ctx.pow(x, e).unwrap(), ctx.pow_u(x, r[0]));
            }
            assert_eq!(ctx.pow_u(Elt::ZERO, r[0]), Elt::ZERO);
        }
    }

    #[test]
    fn trinomial_eval_char2() {
        let ctx = f(2, 3);
        let t = Trinomial::new(&ctx, [(3, 1), (24, 1), (-4, 1)]).unwrap();
        assert_eq!(t.exps(), [59, 24, 3]);
        assert_eq!(t.eval(&ctx, Elt::ONE), Elt::ONE);
        assert_eq!(t.eval(&ctx, Elt::ZERO), Elt::ZERO);
        assert_eq!(t.render(&ctx), "x^59+x^24+x^3");
    }

    #[test]
    fn trinomial_collision_is_rejected() {
        let ctx = f(3, 1);
        let err = Trinomial::new(&ctx, [(1, 1), (5, -1), (5, 1)]).unwrap_err();
        assert!(matches!(err, Error::ExponentCollision { .. }));
    }

    #[test]
    fn sparse_eval_and_negative_exponents() {
        let ctx = f(2, 2);
        let h = SparsePoly::from_signed(&ctx, &[(0, 1), (3, 1), (-1, 1)]);
        assert_eq!(h.eval(&ctx, Elt::ZERO), Err(Error::NegativeExponentAtZero));
        let x = SparsePoly::monomial(1);
        for a in ctx.elements() {
            assert_eq!(x.eval(&ctx, a).unwrap(), a);
        }
        // 1 + x^3 + x^-1 on mu_5 inside F_16: nonzero everywhere.
        for z in ctx.mu_subgroup(5).unwrap() {
            assert!(!h.eval(&ctx, z).unwrap().is_zero());
        }
    }

    #[test]
    fn eval_is_termwise_linear() {
        let ctx = f(3, 2);
        let h = SparsePoly::from_signed(&ctx, &[(0, 1), (2, -1), (7, 1), (-2, 1)]);
        for x in ctx.elements().skip(1) {
            let parts = h
                .terms()
                .iter()
                .map(|&t| SparsePoly::from_terms(&ctx, [t]).eval(&ctx, x).unwrap())
                .fold(Elt::ZERO, |a, b| ctx.add(a, b));
            assert_eq!(parts, h.eval(&ctx, x).unwrap());
            let log = ctx.log(x).unwrap();
            assert_eq!(h.eval_at_gen_power(&ctx, log), h.eval(&ctx, x).unwrap());
        }
    }

    #[test]
    fn conjugate_on_unit_circle_reflects() {
        // h(x)^q = h(1/x) on mu_{q+1} for prime-field coefficients.
        for (p, k) in [(2, 2), (2, 3), (3, 1), (3, 2)] {
            let ctx = f(p, k);
            let h = SparsePoly::from_signed(&ctx, &[(0, 1), (2, -1), (5, 1), (-1, 1)]);
            for z in ctx.mu_subgroup(ctx.q() + 1).unwrap() {
                let lhs = ctx.frobenius_q(h.eval(&ctx, z).unwrap());
                let rhs = h.reflect().eval(&ctx, z).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frac_eval_examples() {
        let ctx = f(2, 2);
        let g1 = FracPoly::parse(&ctx, "(x^5+x+1)/(x^5+x^4+1)").unwrap();
        assert_eq!(g1.eval(&ctx, Elt::ONE).unwrap(), Elt::ONE);
        let g3 = FracPoly::parse(&ctx, "(x^5+x^4+x)/(x^4+x+1)").unwrap();
        for z in ctx.mu_subgroup(5).unwrap() {
            assert_eq!(g3.eval(&ctx, z).unwrap(), Elt::ONE);
        }
        let ctx = f(2, 3);
        let g3 = FracPoly::parse(&ctx, "(x^5+x^4+x)/(x^4+x+1)").unwrap();
        let mu9 = ctx.mu_subgroup(9).unwrap();
        let mut images: Vec<Elt> = mu9.iter().map(|&z| g3.eval(&ctx, z).unwrap()).collect();
        assert!(images.iter().all(|y| mu9.contains(y)));
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn frac_denominator_vanishing_reports_point() {
        let ctx = f(2, 1);
        let g = FracPoly::parse(&ctx, "(1)/(x^2+x+1)").unwrap();
        let t = ctx.basis(1);
        assert_eq!(g.eval(&ctx, t), Err(Error::DenominatorVanishes(ctx.index(t))));
    }

    #[test]
    fn text_round_trip() {
        let ctx = f(3, 2);
        for s in ["x^5+x^3-x", "-x^4+x^2+1", "-x^7+x^3+x", "1", "x", "x^2-x^-2", "-1"] {
            let p = SparsePoly::parse(&ctx, s).unwrap();
            assert_eq!(p.render(&ctx), s);
        }
        let g = FracPoly::parse(&ctx, "(x^5+x^3-x)/(-x^4+x^2+1)").unwrap();
        assert_eq!(g.render(&ctx), "(x^5+x^3-x)/(-x^4+x^2+1)");
        let p = SparsePoly::parse(&ctx, "x^{-1} + 2x^3 + x^3").unwrap();
        assert_eq!(p.render(&ctx), "x^-1");
        let p = SparsePoly::parse(&ctx, "[5]x^2+x").unwrap();
        assert_eq!(p.render(&ctx), "[5]x^2+x");
        assert!(SparsePoly::parse(&ctx, "x^").is_err());
        assert!(SparsePoly::parse(&ctx, "x x").is_err());
        assert!(FracPoly::parse(&ctx, "(x/(1)").is_err());
    }

    #[test]
    fn cleared_fraction_has_nonnegative_exponents() {
        let ctx = f(3, 1);
        let g = FracPoly::cleared(
            SparsePoly::from_signed(&ctx, &[(1, 1), (-1, -1), (3, 1)]),
            SparsePoly::from_signed(&ctx, &[(0, 1), (2, -1), (-2, 1)]),
        );
        assert_eq!(g.shift(), 2);
        assert_eq!(g.render(&ctx), "(x^5+x^3-x)/(-x^4+x^2+1)");
    }
}
