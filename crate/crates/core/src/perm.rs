//! Permutation tests: brute force over the whole field, bijectivity of a
//! fractional polynomial on mu_d, and the reduction between the two for
//! polynomials of the shape x^r h(x^{(q^2-1)/d}).

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::numtheory::{gcd_u64, mod_inverse};
use crate::poly::{FracPoly, SparsePoly, Trinomial};

/// Largest field the full-field check will enumerate.
pub const FULL_CHECK_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Every element of F_{q^2} evaluated.
    FullField,
    /// gcd condition plus bijectivity on mu_d.
    Lemma1,
    /// Bijectivity of a map on mu_d alone.
    Subgroup,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FullField => "full_field",
            Method::Lemma1 => "lemma1",
            Method::Subgroup => "subgroup",
        }
    }
}

/// Outcome of a permutation test. `witness` holds two distinct points with
/// equal images whenever the map is not a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermVerdict {
    pub is_permutation: bool,
    pub method: Method,
    pub witness: Option<(Elt, Elt)>,
}

impl PermVerdict {
    fn yes(method: Method) -> Self {
        PermVerdict { is_permutation: true, method, witness: None }
    }

    fn collision(method: Method, a: Elt, b: Elt) -> Self {
        PermVerdict { is_permutation: false, method, witness: Some((a, b)) }
    }
}

/// A map F_{q^2} -> F_{q^2} that can be brute-forced.
pub trait FieldMap: Sync {
    fn apply(&self, ctx: &FieldCtx, x: Elt) -> Result<Elt>;
}

impl FieldMap for Trinomial {
    #[inline]
    fn apply(&self, ctx: &FieldCtx, x: Elt) -> Result<Elt> {
        Ok(match ctx.log(x) {
            Some(lx) => {
                let mut acc = Elt::ZERO;
                for (e, s) in self.terms() {
                    let y = ctx.gen_pow(crate::numtheory::mul_mod(lx, e, ctx.order()));
                    acc = ctx.add(acc, ctx.scale(y, s as i64));
                }
                acc
            }
            None => self.eval(ctx, x),
        })
    }
}

impl FieldMap for SparsePoly {
    #[inline]
    fn apply(&self, ctx: &FieldCtx, x: Elt) -> Result<Elt> {
        match ctx.log(x) {
            Some(lx) => Ok(self.eval_at_gen_power(ctx, lx)),
            None => self.eval(ctx, x),
        }
    }
}

/// Brute-force bijectivity over the whole field using a presence bitmap on
/// dense indices. The reported witness is the first repeated image in index
/// order, paired with its first preimage.
pub fn is_permutation_full<F: FieldMap + ?Sized>(ctx: &FieldCtx, f: &F) -> Result<PermVerdict> {
    let size = ctx.size();
    if size > FULL_CHECK_LIMIT {
        return Err(Error::FieldTooLarge { size, limit: FULL_CHECK_LIMIT });
    }
    let size = size as usize;
    let image = |i: usize| f.apply(ctx, ctx.from_index(i as u32)).map(|y| ctx.index(y));
    let mut seen = vec![0u64; size.div_ceil(64)];
    let mut start = 0usize;
    let mut chunk = 1024usize;
    while start < size {
        let end = (start + chunk).min(size);
        let images: Vec<u32> = (start..end).into_par_iter().map(image).collect::<Result<_>>()?;
        for (off, &img) in images.iter().enumerate() {
            let (word, bit) = (img as usize / 64, img as u64 % 64);
            if seen[word] >> bit & 1 == 1 {
                let x2 = start + off;
                let x1 =
                    (0..x2).find(|&i| image(i).ok() == Some(img)).expect("a repeated image has an earlier preimage");
                return Ok(PermVerdict::collision(
                    Method::FullField,
                    ctx.from_index(x1 as u32),
                    ctx.from_index(x2 as u32),
                ));
            }
            seen[word] |= 1 << bit;
        }
        start = end;
        chunk = (chunk * 4).min(1 << 18);
    }
    Ok(PermVerdict::yes(Method::FullField))
}

/// Bijectivity of g on mu_d. The denominator is checked on all of mu_d
/// first, and every image is verified to lie in mu_d.
pub fn permutes_mu(ctx: &FieldCtx, g: &FracPoly, d: u64) -> Result<PermVerdict> {
    let mu = ctx.mu_subgroup(d)?;
    for &z in &mu {
        if g.den().eval(ctx, z)?.is_zero() {
            return Err(Error::DenominatorVanishes(ctx.index(z)));
        }
    }
    let mut first: HashMap<Elt, Elt> = HashMap::with_capacity(mu.len());
    for &z in &mu {
        let y = g.eval(ctx, z)?;
        if ctx.pow_u(y, d) != Elt::ONE {
            return Err(Error::ImageOutsideSubgroup(ctx.index(z)));
        }
        if let Some(&z0) = first.get(&y) {
            return Ok(PermVerdict::collision(Method::Subgroup, z0, z));
        }
        first.insert(y, z);
    }
    Ok(PermVerdict::yes(Method::Subgroup))
}

/// The fractional polynomial x^r h(x)^{q-1} on mu_{q+1}, for h with
/// prime-field coefficients. On mu_{q+1} conjugation inverts x, so this is
/// x^{r mod (q+1)} h(1/x) / h(x), multiplied through to clear negative
/// exponents.
pub fn fractional_form(r: u64, h: &SparsePoly, q: u64) -> FracPoly {
    let r0 = (r % (q + 1)) as i64;
    FracPoly::cleared(h.reflect().shift(r0), h.clone())
}

/// f(x) = x^r h(x^{(q^2-1)/d}) as an ordinary sparse polynomial, with
/// exponents reduced into [1, q^2-1] so that f(0) = 0.
pub fn assemble(ctx: &FieldCtx, r: u64, h: &SparsePoly, d: u64) -> Result<SparsePoly> {
    let order = ctx.order();
    if d == 0 || !order.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, order });
    }
    let s = (order / d) as i64;
    let m = order as i64;
    let reduce = |e: i64| match e.rem_euclid(m) {
        0 => m,
        e => e,
    };
    Ok(SparsePoly::from_terms(ctx, h.terms().iter().map(|&(e, c)| (reduce(r as i64 + e * s), c))))
}

/// Decides whether f = x^r h(x^{(q^2-1)/d}) permutes F_{q^2} from
/// gcd(r, (q^2-1)/d) = 1 and bijectivity of x^r h(x)^{(q^2-1)/d} on mu_d.
/// Negative exponents in h are allowed; f is then read with its exponents
/// reduced into [1, q^2-1].
pub fn lemma1_check(ctx: &FieldCtx, r: u64, h: &SparsePoly, d: u64) -> Result<PermVerdict> {
    let order = ctx.order();
    if d == 0 || !order.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, order });
    }
    let s = order / d;
    let g = gcd_u64(r, s);
    if g != 1 {
        // Any w of order g satisfies w^r = 1 and w^s = 1, so f(w) = f(1).
        let w = ctx.gen_pow(order / g);
        return Ok(PermVerdict::collision(Method::Lemma1, Elt::ONE, w));
    }
    let mu = ctx.mu_subgroup(d)?;
    // gen^j maps to gen^{sj} = mu[j] under x -> x^s.
    for (j, &z) in mu.iter().enumerate() {
        if h.eval(ctx, z)?.is_zero() {
            return Ok(PermVerdict::collision(Method::Lemma1, Elt::ZERO, ctx.gen_pow(j as u64)));
        }
    }
    let collision = if d == ctx.q() + 1 && h.has_prime_coefficients(ctx) {
        let frac = fractional_form(r, h, ctx.q());
        let v = permutes_mu(ctx, &frac, d)?;
        v.witness.map(|(a, b)| (position(&mu, a), position(&mu, b)))
    } else {
        let mut first: HashMap<Elt, usize> = HashMap::with_capacity(mu.len());
        let mut hit = None;
        for (j, &z) in mu.iter().enumerate() {
            let y = ctx.mul(ctx.pow_u(z, r), ctx.pow_u(h.eval(ctx, z)?, s));
            if let Some(&j0) = first.get(&y) {
                hit = Some((j0, j));
                break;
            }
            first.insert(y, j);
        }
        hit
    };
    match collision {
        None => Ok(PermVerdict::yes(Method::Lemma1)),
        Some((j1, j2)) => {
            let (a, b) = lift_collision(ctx, r, h, d, j1 as u64, j2 as u64)?;
            Ok(PermVerdict::collision(Method::Lemma1, a, b))
        }
    }
}

fn position(mu: &[Elt], z: Elt) -> usize {
    mu.iter().position(|&m| m == z).expect("witness lies in mu_d")
}

/// Given mu[j1] and mu[j2] with equal images under x^r h(x)^s, finds
/// y1, y2 in F_{q^2} with f(y1) = f(y2). With y_i = gen^{j_i}, the ratio
/// f(y2)/f(y1) lies in mu_s and equals c^r for a unique c in mu_s.
fn lift_collision(ctx: &FieldCtx, r: u64, h: &SparsePoly, d: u64, j1: u64, j2: u64) -> Result<(Elt, Elt)> {
    let order = ctx.order();
    let s = order / d;
    let f = assemble(ctx, r, h, d)?;
    let y1 = ctx.gen_pow(j1);
    let y2 = ctx.gen_pow(j2);
    let ratio = ctx.div(f.apply(ctx, y2)?, f.apply(ctx, y1)?)?;
    let c = match (ctx.log(ratio), mod_inverse(r % s, s)) {
        (Some(l), Some(r_inv)) => {
            debug_assert_eq!(l % d, 0);
            let t = (l / d) % s;
            ctx.gen_pow(d * crate::numtheory::mul_mod(t, r_inv, s))
        }
        _ => {
            let step = ctx.gen_pow(d);
            let mut c = Elt::ONE;
            for _ in 0..s {
                if ctx.pow_u(c, r) == ratio {
                    break;
                }
                c = ctx.mul(c, step);
            }
            c
        }
    };
    Ok((ctx.mul(y1, c), y2))
}

/// One randomized comparison between the reduction and brute force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckCase {
    pub r: u64,
    pub h: SparsePoly,
    pub d: u64,
    pub lemma1: bool,
    pub full: bool,
}

impl CrossCheckCase {
    pub fn agrees(&self) -> bool {
        self.lemma1 == self.full
    }
}

/// Draws `samples` random triples (r, h, d) and records both verdicts.
/// Half of the draws use d = q + 1 with +-1 coefficients so the
/// fractional-polynomial route is exercised; the rest use a random divisor
/// d and arbitrary coefficients.
pub fn lemma1_crosscheck<R: Rng>(ctx: &FieldCtx, samples: usize, rng: &mut R) -> Result<Vec<CrossCheckCase>> {
    let order = ctx.order();
    let divisors = crate::numtheory::divisors(order);
    let mut cases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let unit_circle = rng.gen_bool(0.5);
        let d = if unit_circle { ctx.q() + 1 } else { divisors[rng.gen_range(0..divisors.len())] };
        let r = rng.gen_range(1..=order.max(2));
        let n_terms = rng.gen_range(1..=4);
        let terms: Vec<(i64, Elt)> = (0..n_terms)
            .map(|_| {
                let e = rng.gen_range(0..=8i64);
                let c = if unit_circle {
                    ctx.scalar(if rng.gen_bool(0.5) { 1 } else { -1 })
                } else {
                    ctx.from_index(rng.gen_range(1..ctx.size()) as u32)
                };
                (e, c)
            })
            .collect();
        let h = SparsePoly::from_terms(ctx, terms);
        if h.is_zero() {
            continue;
        }
        let lemma1 = lemma1_check(ctx, r, &h, d)?.is_permutation;
        let full = is_permutation_full(ctx, &assemble(ctx, r, &h, d)?)?.is_permutation;
        cases.push(CrossCheckCase { r, h, d, lemma1, full });
    }
    Ok(cases)
}
