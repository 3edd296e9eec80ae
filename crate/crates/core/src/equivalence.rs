//! Multiplicative equivalence f(x) = g(x^d) of trinomials over F_{q^2}
//! (decided on exponents modulo q^2 - 1) and of fractional polynomials on
//! mu_{q+1} (decided pointwise).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::numtheory::{gcd_u64, mul_mod, solve_linear};
use crate::poly::{FracPoly, Trinomial};

/// A twist exponent d, coprime to `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivWitness {
    pub d: u64,
    pub modulus: u64,
}

/// Exponents in [1, m] times d, reduced back into [1, m], with signs,
/// sorted ascending.
fn twisted(terms: &[(u64, i8); 3], d: u64, m: u64) -> [(u64, i8); 3] {
    let mut out = terms.map(|(e, s)| {
        let t = mul_mod(e, d, m);
        (if t == 0 { m } else { t }, s)
    });
    out.sort_unstable();
    out
}

fn sorted_terms(t: &Trinomial) -> [(u64, i8); 3] {
    let mut terms = t.terms();
    terms.sort_unstable();
    terms
}

/// Units d modulo m with d e = target (mod m) for some e among `from`.
fn candidate_twists(from: &[u64], targets: &[u64], m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = from
        .iter()
        .flat_map(|&e| targets.iter().flat_map(move |&t| solve_linear(e % m, t % m, m)))
        .filter(|&d| gcd_u64(d, m) == 1)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest d coprime to q^2 - 1 with f(x) = g(x^d), compared on
/// (exponent, sign) multisets.
pub fn mult_equivalent(f: &Trinomial, g: &Trinomial) -> Option<EquivWitness> {
    let m = f.modulus();
    if g.modulus() != m {
        return None;
    }
    let target = sorted_terms(f);
    let g_terms = g.terms();
    // d maps the smallest exponent of g onto one of f's exponents.
    let e0 = [g_terms[2].0];
    let fe = target.map(|t| t.0);
    candidate_twists(&e0, &fe, m)
        .into_iter()
        .find(|&d| twisted(&g_terms, d, m) == target)
        .map(|d| EquivWitness { d, modulus: m })
}

/// Lexicographically smallest sorted (exponent, sign) triple in the orbit
/// of `t` under x -> x^d; two trinomials are equivalent exactly when their
/// keys agree.
pub fn canonical_key(t: &Trinomial) -> [(u64, i8); 3] {
    let m = t.modulus();
    let terms = t.terms();
    // The least exponent reachable is min gcd(e, m); the minimizer must
    // send some exponent there.
    let g_min = terms.iter().map(|&(e, _)| gcd_u64(e % m, m)).min().unwrap();
    let from: Vec<u64> = terms.iter().map(|t| t.0).filter(|&e| gcd_u64(e % m, m) == g_min).collect();
    candidate_twists(&from, &[g_min], m)
        .into_iter()
        .map(|d| twisted(&terms, d, m))
        .min()
        .expect("some unit reaches the minimal gcd")
}

/// Smallest d in [1, q+1) coprime to q+1 with g2(x) = g1(x^d) for every x
/// in mu_{q+1}.
pub fn frac_equivalent(ctx: &FieldCtx, g1: &FracPoly, g2: &FracPoly) -> Result<Option<EquivWitness>> {
    let n = ctx.q() + 1;
    let mu = ctx.mu_subgroup(n)?;
    let values = |g: &FracPoly| -> Result<Vec<Elt>> { mu.iter().map(|&z| g.eval(ctx, z)).collect() };
    let v1 = values(g1)?;
    let v2 = values(g2)?;
    // mu[j] = zeta^j, so (mu[j])^d = mu[d j mod n].
    let found = (1..n.max(2))
        .filter(|&d| gcd_u64(d, n) == 1)
        .find(|&d| (0..n).all(|j| v1[mul_mod(d, j, n) as usize] == v2[j as usize]));
    Ok(found.map(|d| EquivWitness { d, modulus: n }))
}

/// One class of a partition. `twists[i]` is d with
/// members[i](x) = representative(x^d).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub twists: Vec<u64>,
}

/// Partitions `items` (over one field) into multiplicative-equivalence
/// classes. The representative of a class is the member whose ascending
/// exponent triple is lexicographically smallest; classes are ordered by
/// representative triple.
pub fn classify_inequivalent(items: &[Trinomial]) -> Result<Vec<EquivClass>> {
    if let Some(first) = items.first() {
        if let Some(bad) = items.iter().find(|t| t.modulus() != first.modulus()) {
            return Err(Error::Parse(format!(
                "trinomials over different fields (q^2-1 = {} and {})",
                first.modulus(),
                bad.modulus()
            )));
        }
    }
    let mut groups: BTreeMap<[(u64, i8); 3], Vec<usize>> = BTreeMap::new();
    for (i, t) in items.iter().enumerate() {
        groups.entry(canonical_key(t)).or_default().push(i);
    }
    let ascending = |i: usize| {
        let mut e = items[i].exps();
        e.reverse();
        (e, items[i].signs(), i)
    };
    let mut classes: Vec<EquivClass> = groups
        .into_values()
        .map(|members| {
            let rep = *members.iter().min_by_key(|&&i| ascending(i)).unwrap();
            let twists = members
                .iter()
                .map(|&i| mult_equivalent(&items[i], &items[rep]).expect("same canonical key").d)
                .collect();
            EquivClass { representative: rep, members, twists }
        })
        .collect();
    classes.sort_by_key(|c| ascending(c.representative));
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::family;
    use crate::perm::is_permutation_full;
    use proptest::prelude::*;

    fn f(p: u32, k: u32) -> FieldCtx {
        FieldCtx::new(p, k, None).unwrap()
    }

    fn tri(ctx: &FieldCtx, e: [i64; 3], s: [i8; 3]) -> Trinomial {
        Trinomial::new(ctx, [(e[0], s[0]), (e[1], s[1]), (e[2], s[2])]).unwrap()
    }

    /// f(x) = g(x^d) as a twisted trinomial.
    fn twist(ctx: &FieldCtx, g: &Trinomial, d: u64) -> Option<Trinomial> {
        let t = g.terms();
        Trinomial::new(ctx, t.map(|(e, s)| ((e * d) as i64, s))).ok()
    }

    fn brute_equiv(f: &Trinomial, g: &Trinomial) -> Option<u64> {
        let m = f.modulus();
        (1..m).filter(|&d| gcd_u64(d, m) == 1).find(|&d| twisted(&g.terms(), d, m) == sorted_terms(f))
    }

    #[test]
    fn trivial_cases() {
        let ctx = f(2, 3);
        let t = tri(&ctx, [3, 24, 59], [1, 1, 1]);
        assert_eq!(mult_equivalent(&t, &t).unwrap().d, 1);
        let t5 = twist(&ctx, &t, 5).unwrap();
        assert_eq!(mult_equivalent(&t5, &t).unwrap().d, 5);
        let one = classify_inequivalent(std::slice::from_ref(&t)).unwrap();
        assert_eq!(one.len(), 1);
        let two = classify_inequivalent(&[t5.clone(), t.clone()]).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].representative, 1);
        assert_eq!(two[0].twists, vec![5, 1]);
    }

    #[test]
    fn smallest_witness_matches_brute_force() {
        let ctx = f(2, 3);
        let m = ctx.order();
        let items: Vec<Trinomial> = (1..m)
            .step_by(5)
            .flat_map(|a| (1..m).step_by(7).map(move |b| (a, b)))
            .filter_map(|(a, b)| Trinomial::new(&ctx, [(a as i64, 1), (b as i64, 1), (3, 1)]).ok())
            .collect();
        for (i, x) in items.iter().enumerate().step_by(3) {
            for y in items.iter().skip(i).step_by(11) {
                assert_eq!(mult_equivalent(x, y).map(|w| w.d), brute_equiv(x, y));
                assert_eq!(canonical_key(x) == canonical_key(y), brute_equiv(x, y).is_some());
            }
        }
    }

    #[test]
    fn signs_must_match() {
        let ctx = f(3, 2);
        let a = tri(&ctx, [1, 17, 65], [1, -1, 1]);
        let b = tri(&ctx, [1, 17, 65], [1, 1, -1]);
        assert!(mult_equivalent(&a, &b).is_none());
        assert_ne!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn tab1_and_zieve_are_inequivalent_at_q16() {
        let ctx = f(2, 4);
        let a = family("tab1").unwrap().instantiate(&ctx, 0).unwrap();
        let b = family("zieve_t1").unwrap().instantiate(&ctx, 0).unwrap();
        assert!(mult_equivalent(&a, &b).is_none());
        assert!(brute_equiv(&a, &b).is_none());
    }

    #[test]
    fn seven_families_at_k4_l0() {
        let ctx = f(2, 4);
        let items: Vec<Trinomial> = ["tab1", "rem2", "tab2", "th3", "th4", "th5", "zieve_t1"]
            .iter()
            .map(|id| family(id).unwrap().instantiate(&ctx, 0).unwrap())
            .collect();
        // Pairwise exhaustive d-search: only tab1 and th3 are related, by
        // {3, 48, 243} * 106 = {63, 243, 3} mod 255.
        for i in 0..7 {
            for j in 0..7 {
                let related = brute_equiv(&items[i], &items[j]).is_some();
                assert_eq!(related, i == j || [i, j] == [0, 3] || [i, j] == [3, 0], "{i} {j}");
            }
        }
        assert_eq!(brute_equiv(&items[0], &items[3]), Some(106));
        let classes = classify_inequivalent(&items).unwrap();
        assert_eq!(classes.len(), 6);
        let merged = classes.iter().find(|c| c.members.len() == 2).unwrap();
        assert_eq!(merged.members, vec![0, 3]);
    }

    #[test]
    fn frac_examples() {
        let ctx = f(2, 4);
        let x = FracPoly::parse(&ctx, "x").unwrap();
        assert_eq!(frac_equivalent(&ctx, &x, &x).unwrap().unwrap().d, 1);
        let x5 = FracPoly::parse(&ctx, "x^5").unwrap();
        assert_eq!(frac_equivalent(&ctx, &x, &x5).unwrap().unwrap().d, 5);
        let g1 = FracPoly::parse(&ctx, "(x^5+x+1)/(x^5+x^4+1)").unwrap();
        let g6 = FracPoly::parse(&ctx, "(x^3+x^2+1)/(x^3+x+1)").unwrap();
        assert_eq!(frac_equivalent(&ctx, &g1, &g6).unwrap().unwrap().d, 1);
        let bad = FracPoly::parse(&ctx, "(x)/(x+1)").unwrap();
        assert!(frac_equivalent(&ctx, &bad, &x).is_err());
    }

    #[test]
    fn exponent_equivalence_implies_fractional_equivalence() {
        let ctx = f(2, 4);
        let q = ctx.q();
        for id in ["th3", "th5", "rem2"] {
            let spec = family(id).unwrap();
            let h = spec.h(&ctx);
            let g = spec.derived_frac(&ctx, 0);
            for d in [2u64, 7, 11, 13] {
                if gcd_u64(d, ctx.order()) != 1 {
                    continue;
                }
                // The twist x^{rd} h(x^{d(q-1)}) has h_d(x) = h(x^d).
                let hd = crate::poly::SparsePoly::from_terms(&ctx, h.terms().iter().map(|&(e, c)| (e * d as i64, c)));
                let gd = crate::perm::fractional_form(spec.r0 * d, &hd, q);
                let w = frac_equivalent(&ctx, &g, &gd).unwrap().expect("twisted fraction");
                let twisted_ok = ctx
                    .mu_subgroup(q + 1)
                    .unwrap()
                    .iter()
                    .all(|&z| gd.eval(&ctx, z).unwrap() == g.eval(&ctx, ctx.pow_u(z, d % (q + 1))).unwrap());
                assert!(twisted_ok);
                assert!(w.d <= d % (q + 1));
            }
        }
    }

    fn arb_trinomial() -> impl Strategy<Value = (u64, u64, u64)> {
        (1u64..255, 1u64..255, 1u64..255).prop_filter("distinct", |(a, b, c)| a != b && b != c && a != c)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn equivalence_is_an_equivalence_relation(
            (a, b, c) in arb_trinomial(),
            d1 in prop::sample::select((1u64..255).filter(|d| gcd_u64(*d, 255) == 1).collect::<Vec<_>>()),
            d2 in prop::sample::select((1u64..255).filter(|d| gcd_u64(*d, 255) == 1).collect::<Vec<_>>()),
        ) {
            let ctx = f(2, 4);
            let t = tri(&ctx, [a as i64, b as i64, c as i64], [1, 1, 1]);
            prop_assert_eq!(mult_equivalent(&t, &t).unwrap().d, 1);
            let u = twist(&ctx, &t, d1).unwrap();
            let v = twist(&ctx, &u, d2).unwrap();
            // u = t(x^d1), so t = u(x^{d1^{-1}}).
            prop_assert!(mult_equivalent(&u, &t).is_some());
            prop_assert!(mult_equivalent(&t, &u).is_some());
            prop_assert!(mult_equivalent(&v, &t).is_some());
            prop_assert_eq!(canonical_key(&t), canonical_key(&v));
        }
    }

    #[test]
    fn equivalence_preserves_permutation_property() {
        let ctx = f(2, 3);
        let m = ctx.order();
        let mut checked = 0;
        for a in (1..m).step_by(4) {
            for b in (a + 1..m).step_by(9) {
                let Ok(t) = Trinomial::new(&ctx, [(a as i64, 1), (b as i64, 1), (1, 1)]) else {
                    continue;
                };
                let pt = is_permutation_full(&ctx, &t).unwrap().is_permutation;
                for d in [5u64, 11, 13] {
                    if let Some(u) = twist(&ctx, &t, d) {
                        assert_eq!(is_permutation_full(&ctx, &u).unwrap().is_permutation, pt);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 50);
    }
}
