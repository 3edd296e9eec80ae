//! Exhaustive sweep over trinomials f = x^r (1 + s1 x^{m(q-1)} + s2 x^{n(q-1)})
//! through the mu_{q+1} criterion, and matching of the hits against the
//! family catalogue.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equivalence::{canonical_key, mult_equivalent};
use crate::error::{Error, Result};
use crate::families::{ClaimKind, CLASSIC_TRINOMIALS, DISPLAY_FRACTIONS, FAMILIES};
use crate::field::{Elt, FieldCtx};
use crate::numtheory::gcd_u64;
use crate::perm::{fractional_form, is_permutation_full};
use crate::poly::{FracPoly, SparsePoly, Trinomial};

/// Largest q + 1 the sweep accepts.
pub const MAX_CIRCLE: u64 = (1 << 12) + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignChoice {
    /// s1 = s2 = 1.
    Plus,
    /// All four sign pairs (only differs from `Plus` in characteristic 3).
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    pub p: u32,
    pub k: u32,
    /// Subrange of [1, q+1].
    pub r_range: RangeInclusive<u64>,
    pub signs: SignChoice,
}

impl SearchSpace {
    /// Every r in [1, q+1].
    pub fn full(p: u32, k: u32, signs: SignChoice) -> Self {
        let q = (p as u64).pow(k);
        SearchSpace { p, k, r_range: 1..=q + 1, signs }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    pub fn sign_pairs(&self) -> Vec<(i8, i8)> {
        match (self.p, self.signs) {
            (2, _) | (_, SignChoice::Plus) => vec![(1, 1)],
            _ => vec![(-1, -1), (-1, 1), (1, -1), (1, 1)],
        }
    }

    /// |r range| * C(q+1, 2) * number of sign pairs, with 0 < m < n <= q+1.
    pub fn candidate_count(&self) -> u64 {
        let q = self.q();
        let rs = self.r_range.clone().count() as u64;
        rs * ((q + 1) * q / 2) * self.sign_pairs().len() as u64
    }

    fn validate(&self) -> Result<()> {
        let q = self.q();
        if q + 1 > MAX_CIRCLE {
            return Err(Error::FieldTooLarge { size: q + 1, limit: MAX_CIRCLE });
        }
        if !self.r_range.is_empty() && (*self.r_range.start() < 1 || *self.r_range.end() > q + 1) {
            return Err(Error::Parse(format!("r range must lie in [1, {}]", q + 1)));
        }
        Ok(())
    }
}

/// The candidate x^r (1 + s1 x^{m(q-1)} + s2 x^{n(q-1)}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub r: u64,
    pub m: u64,
    pub n: u64,
    pub s1: i8,
    pub s2: i8,
}

impl Candidate {
    pub fn h(&self, ctx: &FieldCtx) -> SparsePoly {
        SparsePoly::from_terms(
            ctx,
            [(0, Elt::ONE), (self.m as i64, ctx.scalar(self.s1 as i64)), (self.n as i64, ctx.scalar(self.s2 as i64))],
        )
    }

    /// Raw exponents r, r + m(q-1), r + n(q-1).
    pub fn raw_exponents(&self, q: u64) -> [u64; 3] {
        [self.r, self.r + self.m * (q - 1), self.r + self.n * (q - 1)]
    }

    /// The full polynomial with unreduced exponents. For n = q+1 the last
    /// term agrees with x^r off zero, so this is the only faithful form.
    pub fn polynomial(&self, ctx: &FieldCtx) -> SparsePoly {
        let e = self.raw_exponents(ctx.q());
        SparsePoly::from_signed(ctx, &[(e[0] as i64, 1), (e[1] as i64, self.s1 as i64), (e[2] as i64, self.s2 as i64)])
    }

    /// Fails with `ExponentCollision` when n = q+1.
    pub fn trinomial(&self, ctx: &FieldCtx) -> Result<Trinomial> {
        let q = ctx.q() as i64;
        let r = self.r as i64;
        Trinomial::new(ctx, [(r, 1), (r + self.m as i64 * (q - 1), self.s1), (r + self.n as i64 * (q - 1), self.s2)])
    }

    pub fn frac(&self, ctx: &FieldCtx) -> FracPoly {
        fractional_form(self.r, &self.h(ctx), ctx.q())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub p: u32,
    pub k: u32,
    pub q: u64,
    pub candidates: u64,
    /// Candidates with gcd(r, q-1) != 1.
    pub gcd_rejected: u64,
    /// Candidates with gcd(r, q-1) = 1 whose h has a root on mu_{q+1}.
    pub vanishing: u64,
    /// Permutation trinomials, ordered by (r, m, n, s1, s2).
    pub hits: Vec<Candidate>,
}

/// Sweeps the space. With zeta generating mu_{q+1} and
/// L[j] = log_zeta(h(zeta^j)^{q-1}), the fractional map sends zeta^j to
/// zeta^{r j + L[j]}, so each r costs one pass over j.
pub fn search_space(ctx: &FieldCtx, space: &SearchSpace) -> Result<SearchResult> {
    space.validate()?;
    if ctx.p() != space.p || ctx.k() != space.k {
        return Err(Error::CharacteristicMismatch { family: space.p, field: ctx.p() });
    }
    let q = ctx.q();
    let n1 = q + 1;
    let rs: Vec<u64> = space.r_range.clone().collect();
    let good_rs: Vec<u64> = rs.iter().copied().filter(|&r| gcd_u64(r, q - 1) == 1).collect();
    let signs = space.sign_pairs();
    let zeta_pows: Vec<Elt> = ctx.mu_subgroup(n1)?;
    let log_circle = |v: Elt| -> u64 {
        // v = gen^l, so v^{q-1} = zeta^{l mod (q+1)} with zeta = gen^{q-1}.
        ctx.log(v).expect("field has log tables within the sweep bound") % n1
    };

    let per_m: Vec<(Vec<Candidate>, u64)> = (1..=q)
        .into_par_iter()
        .map(|m| {
            let mut hits = Vec::new();
            let mut vanishing = 0u64;
            let mut logs = vec![0u64; n1 as usize];
            let mut seen = vec![0u32; n1 as usize];
            let mut stamp = 0u32;
            for n in m + 1..=n1 {
                for &(s1, s2) in &signs {
                    let (c1, c2) = (ctx.scalar(s1 as i64), ctx.scalar(s2 as i64));
                    let mut vanishes = false;
                    for j in 0..n1 {
                        let a = zeta_pows[(m * j % n1) as usize];
                        let b = zeta_pows[(n * j % n1) as usize];
                        let v = ctx.add(ctx.add(Elt::ONE, ctx.mul(c1, a)), ctx.mul(c2, b));
                        if v.is_zero() {
                            vanishes = true;
                            break;
                        }
                        logs[j as usize] = log_circle(v);
                    }
                    if vanishes {
                        vanishing += good_rs.len() as u64;
                        continue;
                    }
                    for &r in &good_rs {
                        stamp += 1;
                        let mut ok = true;
                        let mut img = 0u64;
                        for &l in &logs {
                            let t = (img + l) % n1;
                            if seen[t as usize] == stamp {
                                ok = false;
                                break;
                            }
                            seen[t as usize] = stamp;
                            img = (img + r) % n1;
                        }
                        if ok {
                            hits.push(Candidate { r, m, n, s1, s2 });
                        }
                    }
                }
            }
            (hits, vanishing)
        })
        .collect();

    let mut hits: Vec<Candidate> = Vec::new();
    let mut vanishing = 0;
    for (h, v) in per_m {
        hits.extend(h);
        vanishing += v;
    }
    hits.sort_unstable();
    let candidates = space.candidate_count();
    let per_r = candidates / rs.len().max(1) as u64;
    Ok(SearchResult {
        p: space.p,
        k: space.k,
        q,
        candidates,
        gcd_rejected: (rs.len() - good_rs.len()) as u64 * per_r,
        vanishing,
        hits,
    })
}

/// The same candidate set decided by full-field enumeration.
pub fn search_oracle(ctx: &FieldCtx, space: &SearchSpace) -> Result<Vec<Candidate>> {
    space.validate()?;
    let q = ctx.q();
    let mut all = Vec::new();
    for r in space.r_range.clone() {
        for m in 1..=q {
            for n in m + 1..=q + 1 {
                for &(s1, s2) in &space.sign_pairs() {
                    all.push(Candidate { r, m, n, s1, s2 });
                }
            }
        }
    }
    let flags: Vec<bool> = all
        .par_iter()
        .map(|c| Ok(is_permutation_full(ctx, &c.polynomial(ctx))?.is_permutation))
        .collect::<Result<_>>()?;
    Ok(all.into_iter().zip(flags).filter(|(_, f)| *f).map(|(c, _)| c).collect())
}

/// A known instance a hit is equivalent to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMatch {
    pub family: String,
    pub l: u64,
    /// hit(x) = +-instance(x^d).
    pub d: u64,
    /// The match is with -instance.
    pub negated: bool,
    /// Whether the instance satisfies the family's hypotheses (always true
    /// for the classical trinomials, which carry no checked hypothesis).
    pub conditions_hold: bool,
    pub claim: Option<ClaimKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedHit {
    pub candidate: Candidate,
    /// Exponents reduced into [1, q^2-1].
    pub exponents: [u64; 3],
    /// Two exponents coincide after reduction (n = q+1); never explained.
    pub degenerate: bool,
    pub signs: [i8; 3],
    /// Fractional polynomial on mu_{q+1}.
    pub frac: String,
    /// Displayed fractions equal to `frac` on mu_{q+1}.
    pub frac_labels: Vec<String>,
    /// One match per known family, in catalogue order.
    pub matches: Vec<FamilyMatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoveltyReport {
    pub explained: Vec<ClassifiedHit>,
    pub unexplained: Vec<ClassifiedHit>,
}

struct KnownInstance {
    family: &'static str,
    l: u64,
    tri: Trinomial,
    conditions_hold: bool,
    claim: Option<ClaimKind>,
}

fn known_instances(ctx: &FieldCtx) -> Vec<KnownInstance> {
    let q = ctx.q();
    let mut out = Vec::new();
    for spec in FAMILIES.iter().filter(|s| s.p == ctx.p()) {
        // r mod (q^2-1) has period q-1 in l.
        let ls = if spec.fixed { 0..=0 } else { 0..=q.saturating_sub(2) };
        for l in ls {
            if let Ok(tri) = spec.instantiate(ctx, l) {
                out.push(KnownInstance {
                    family: spec.id,
                    l,
                    tri,
                    conditions_hold: spec.conditions_hold(ctx.k(), l),
                    claim: Some(spec.claim),
                });
            }
        }
    }
    if ctx.p() == 2 {
        for c in CLASSIC_TRINOMIALS {
            let ls = if c.parametric { 0..=q } else { 0..=0 };
            for l in ls {
                if let Ok(tri) = c.instantiate(ctx, l) {
                    out.push(KnownInstance { family: c.id, l, tri, conditions_hold: true, claim: None });
                }
            }
        }
    }
    out
}

fn negate(ctx: &FieldCtx, t: &Trinomial) -> Trinomial {
    let terms = t.terms().map(|(e, s)| (e as i64, -s));
    Trinomial::new(ctx, terms).expect("negation keeps exponents")
}

/// Splits hits into those equivalent (up to a global sign) to an instance
/// of a known family at this field, and the rest.
pub fn novelty_filter(ctx: &FieldCtx, hits: &[Candidate]) -> Result<NoveltyReport> {
    let known = known_instances(ctx);
    let mut index: HashMap<[(u64, i8); 3], Vec<usize>> = HashMap::new();
    for (i, k) in known.iter().enumerate() {
        index.entry(canonical_key(&k.tri)).or_default().push(i);
    }
    let displays: Vec<(&str, FracPoly)> = DISPLAY_FRACTIONS
        .iter()
        .filter(|d| d.1 == ctx.p())
        .filter_map(|d| FracPoly::parse(ctx, d.2).ok().map(|g| (d.0, g)))
        .collect();
    let circle = ctx.mu_subgroup(ctx.q() + 1)?;

    let classified: Vec<ClassifiedHit> = hits
        .par_iter()
        .map(|c| -> Result<ClassifiedHit> {
            let order_m = ctx.order();
            let exponents = c.raw_exponents(ctx.q()).map(|e| (e - 1) % order_m + 1);
            let tri = c.trinomial(ctx).ok();
            let mut matches: Vec<FamilyMatch> = Vec::new();
            let variants = match &tri {
                None => vec![],
                Some(t) if ctx.p() == 2 => vec![(t.clone(), false)],
                Some(t) => vec![(t.clone(), false), (negate(ctx, t), true)],
            };
            for (v, negated) in variants {
                for &i in index.get(&canonical_key(&v)).map(|x| x.as_slice()).unwrap_or(&[]) {
                    let k = &known[i];
                    if matches.iter().any(|m| m.family == k.family) {
                        continue;
                    }
                    let d = mult_equivalent(&v, &k.tri).expect("equal canonical keys").d;
                    matches.push(FamilyMatch {
                        family: k.family.to_string(),
                        l: k.l,
                        d,
                        negated,
                        conditions_hold: k.conditions_hold,
                        claim: k.claim,
                    });
                }
            }
            let order = |id: &str| {
                FAMILIES
                    .iter()
                    .position(|f| f.id == id)
                    .unwrap_or(FAMILIES.len() + CLASSIC_TRINOMIALS.iter().position(|c| c.id == id).unwrap_or(0))
            };
            matches.sort_by_key(|m| order(&m.family));
            let frac = c.frac(ctx);
            let frac_labels = displays
                .iter()
                .filter(|(_, g)| circle.iter().all(|&z| g.eval(ctx, z).ok() == frac.eval(ctx, z).ok()))
                .map(|(label, _)| label.to_string())
                .collect();
            Ok(ClassifiedHit {
                candidate: *c,
                exponents,
                degenerate: tri.is_none(),
                signs: [1, c.s1, c.s2],
                frac: frac.render(ctx),
                frac_labels,
                matches,
            })
        })
        .collect::<Result<_>>()?;
    let (explained, unexplained) = classified.into_iter().partition(|h| !h.matches.is_empty());
    Ok(NoveltyReport { explained, unexplained })
}
