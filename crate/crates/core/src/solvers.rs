//! Root counting over F_q = F_{2^k} (the subfield of the context field) for
//! the quadratic and cubic trace criteria, plus an exhaustive root finder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::poly::SparsePoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub count: usize,
    /// Roots in dense index order.
    pub roots: Vec<Elt>,
}

impl RootReport {
    fn new(ctx: &FieldCtx, mut roots: Vec<Elt>) -> Self {
        roots.sort_by_key(|&x| ctx.index(x));
        roots.dedup();
        RootReport { count: roots.len(), roots }
    }
}

/// Where to look for roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    FullField,
    Subfield,
    Mu(u64),
}

fn require_char2_subfield(ctx: &FieldCtx, xs: &[Elt]) -> Result<()> {
    if ctx.p() != 2 {
        return Err(Error::RequiresCharacteristic(2));
    }
    if xs.iter().any(|&x| !ctx.in_subfield(x)) {
        return Err(Error::NotInSubfield);
    }
    Ok(())
}

/// 1, b, ..., b^{k-1} for a primitive element b of F_q: an F_2-basis.
fn subfield_basis(ctx: &FieldCtx) -> Vec<Elt> {
    let b = ctx.gen_pow(ctx.q() + 1);
    let mut out = Vec::with_capacity(ctx.k() as usize);
    let mut cur = Elt::ONE;
    for _ in 0..ctx.k() {
        out.push(cur);
        cur = ctx.mul(cur, b);
    }
    out
}

/// Solves L(x) = v for an F_2-linear map L on F_q given by its images on
/// `basis`, by elimination over bit vectors.
fn solve_linear_gf2(ctx: &FieldCtx, basis: &[Elt], images: &[Elt], v: Elt) -> Option<Elt> {
    // In characteristic 2 the dense index is the coefficient bit vector.
    let bits = |x: Elt| -> u32 { ctx.index(x) };
    // (pivot vector, combination of basis indices)
    let mut pivots: Vec<(u32, u32)> = Vec::new();
    let reduce = |pivots: &[(u32, u32)], mut vec: u32, mut comb: u32| {
        for &(pv, pc) in pivots {
            let top = 31 - pv.leading_zeros();
            if vec >> top & 1 == 1 {
                vec ^= pv;
                comb ^= pc;
            }
        }
        (vec, comb)
    };
    for (i, &img) in images.iter().enumerate() {
        let (vec, comb) = reduce(&pivots, bits(img), 1 << i);
        if vec != 0 {
            pivots.push((vec, comb));
            // Highest leading bit first.
            pivots.sort_by_key(|p| p.0.leading_zeros());
        }
    }
    let (rest, comb) = reduce(&pivots, bits(v), 0);
    if rest != 0 {
        return None;
    }
    Some(basis.iter().enumerate().filter(|(i, _)| comb >> i & 1 == 1).fold(Elt::ZERO, |acc, (_, &b)| ctx.add(acc, b)))
}

/// Roots in F_q of x^2 + u x + v. For u != 0 there are two roots when
/// Tr_q(v/u^2) = 0 and none otherwise; they are found as a preimage of the
/// F_2-linear map x -> x^2 + u x, whose kernel is {0, u}. For u = 0 the
/// single root is v^{2^{k-1}}.
pub fn quadratic_char2(ctx: &FieldCtx, u: Elt, v: Elt) -> Result<RootReport> {
    require_char2_subfield(ctx, &[u, v])?;
    if u.is_zero() {
        return Ok(RootReport::new(ctx, vec![ctx.pow_u(v, ctx.q() / 2)]));
    }
    let t = ctx.subfield_abs_trace(ctx.div(v, ctx.mul(u, u))?)?;
    if !t.is_zero() {
        return Ok(RootReport::new(ctx, Vec::new()));
    }
    let basis = subfield_basis(ctx);
    let images: Vec<Elt> = basis.iter().map(|&b| ctx.add(ctx.mul(b, b), ctx.mul(u, b))).collect();
    // x^2 + u x = v in characteristic 2.
    let x0 = solve_linear_gf2(ctx, &basis, &images, v).expect("trace zero implies solvable");
    Ok(RootReport::new(ctx, vec![x0, ctx.add(x0, u)]))
}

/// Whether x^3 + a x + b (b != 0) has exactly one root in F_q, by the
/// criterion Tr_q(a^3/b^2 + 1) != 0.
pub fn cubic_unique_char2(ctx: &FieldCtx, a: Elt, b: Elt) -> Result<bool> {
    require_char2_subfield(ctx, &[a, b])?;
    if b.is_zero() {
        return Err(Error::ZeroCubicConstant);
    }
    let w = ctx.add(ctx.div(ctx.pow_u(a, 3), ctx.mul(b, b))?, Elt::ONE);
    Ok(!ctx.subfield_abs_trace(w)?.is_zero())
}

/// Exhaustive root search. Zero is skipped for Laurent polynomials.
pub fn brute_force_roots(ctx: &FieldCtx, p: &SparsePoly, domain: Domain) -> Result<RootReport> {
    let candidates: Vec<Elt> = match domain {
        Domain::FullField => ctx.elements().collect(),
        Domain::Subfield => ctx.subfield_elements(),
        Domain::Mu(d) => ctx.mu_subgroup(d)?,
    };
    let skip_zero = p.has_negative_exponent();
    let mut roots = Vec::new();
    for x in candidates {
        if skip_zero && x.is_zero() {
            continue;
        }
        if p.eval(ctx, x)?.is_zero() {
            roots.push(x);
        }
    }
    Ok(RootReport::new(ctx, roots))
}

/// x^2 + u x + v and x^3 + a x + b as sparse polynomials.
pub fn quadratic_poly(ctx: &FieldCtx, u: Elt, v: Elt) -> SparsePoly {
    SparsePoly::from_terms(ctx, [(2, Elt::ONE), (1, u), (0, v)])
}

pub fn cubic_poly(ctx: &FieldCtx, a: Elt, b: Elt) -> SparsePoly {
    SparsePoly::from_terms(ctx, [(3, Elt::ONE), (1, a), (0, b)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::instantiate_terms;

    fn f(k: u32) -> FieldCtx {
        FieldCtx::new(2, k, None).unwrap()
    }

    #[test]
    fn quadratic_examples_over_f2() {
        let ctx = f(1);
        assert_eq!(quadratic_char2(&ctx, Elt::ONE, Elt::ONE).unwrap().count, 0);
        let r = quadratic_char2(&ctx, Elt::ONE, Elt::ZERO).unwrap();
        assert_eq!(r.roots, vec![Elt::ZERO, Elt::ONE]);
        assert_eq!(quadratic_char2(&ctx, Elt::ZERO, Elt::ONE).unwrap().roots, vec![Elt::ONE]);
    }

    #[test]
    fn cubic_examples_over_f2() {
        let ctx = f(1);
        assert!(!cubic_unique_char2(&ctx, Elt::ONE, Elt::ONE).unwrap());
        assert_eq!(brute_force_roots(&ctx, &cubic_poly(&ctx, Elt::ONE, Elt::ONE), Domain::Subfield).unwrap().count, 0);
        assert!(cubic_unique_char2(&ctx, Elt::ZERO, Elt::ONE).unwrap());
        let r = brute_force_roots(&ctx, &cubic_poly(&ctx, Elt::ZERO, Elt::ONE), Domain::Subfield).unwrap();
        assert_eq!(r.roots, vec![Elt::ONE]);
        assert!(matches!(cubic_unique_char2(&ctx, Elt::ONE, Elt::ZERO), Err(Error::ZeroCubicConstant)));
    }

    #[test]
    fn rejects_bad_inputs() {
        let ctx = f(2);
        let outside = ctx.generator();
        assert!(matches!(quadratic_char2(&ctx, outside, Elt::ONE), Err(Error::NotInSubfield)));
        let ctx3 = FieldCtx::new(3, 1, None).unwrap();
        assert!(quadratic_char2(&ctx3, Elt::ONE, Elt::ONE).is_err());
    }

    #[test]
    fn quadratic_matches_oracle_exhaustively() {
        for k in 1..=6 {
            let ctx = f(k);
            let sub = ctx.subfield_elements();
            for &u in &sub {
                for &v in &sub {
                    let got = quadratic_char2(&ctx, u, v).unwrap();
                    let want = brute_force_roots(&ctx, &quadratic_poly(&ctx, u, v), Domain::Subfield).unwrap();
                    assert_eq!(got, want, "k={k}");
                }
            }
        }
    }

    #[test]
    fn cubic_matches_oracle_exhaustively() {
        for k in 1..=6 {
            let ctx = f(k);
            let sub = ctx.subfield_elements();
            for &a in &sub {
                for &b in sub.iter().filter(|b| !b.is_zero()) {
                    let unique = cubic_unique_char2(&ctx, a, b).unwrap();
                    let n = brute_force_roots(&ctx, &cubic_poly(&ctx, a, b), Domain::Subfield).unwrap().count;
                    assert_eq!(unique, n == 1, "k={k}");
                    if !unique {
                        assert!(n == 0 || n == 3, "k={k} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        let ctx = f(1);
        assert_eq!(brute_force_roots(&ctx, &SparsePoly::one(), Domain::FullField).unwrap().count, 0);
        let p = SparsePoly::from_terms(&ctx, [(2, Elt::ONE), (1, Elt::ONE)]);
        let r = brute_force_roots(&ctx, &p, Domain::FullField).unwrap();
        assert_eq!(r.roots, vec![Elt::ZERO, Elt::ONE]);
        let ctx = f(4);
        let h = instantiate_terms(&ctx, &[(0, 1), (3, 1), (-1, 1)]);
        assert_eq!(brute_force_roots(&ctx, &h, Domain::Mu(17)).unwrap().count, 0);
    }
}
