use fracperm::families::{family, verify_instance, VerificationReport, VerifyMode};
use fracperm::perm::{assemble, is_permutation_full, lemma1_check};
use fracperm::poly::SparsePoly;
use fracperm::{FieldCtx, Method};
use proptest::prelude::*;

const FIELDS: [(u32, u32); 5] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lemma1_agrees_with_brute_force(
        f in 0..FIELDS.len(),
        r in 1u64..200,
        d_pick in any::<usize>(),
        terms in proptest::collection::vec((-4i64..6, any::<u32>()), 1..4),
    ) {
        let (p, k) = FIELDS[f];
        let ctx = FieldCtx::new(p, k, None).unwrap();
        let divisors: Vec<u64> = (1..=ctx.order()).filter(|d| ctx.order().is_multiple_of(*d)).collect();
        let d = divisors[d_pick % divisors.len()];
        let h = SparsePoly::from_terms(
            &ctx,
            terms.into_iter().map(|(e, c)| (e, ctx.from_index(c % ctx.size() as u32))),
        );
        prop_assume!(!h.is_zero());
        let fast = lemma1_check(&ctx, r, &h, d).unwrap();
        let slow = is_permutation_full(&ctx, &assemble(&ctx, r, &h, d).unwrap()).unwrap();
        prop_assert_eq!(fast.is_permutation, slow.is_permutation);
        if let Some((a, b)) = fast.witness {
            let f = assemble(&ctx, r, &h, d).unwrap();
            prop_assert!(a != b);
            prop_assert_eq!(f.eval(&ctx, a).unwrap(), f.eval(&ctx, b).unwrap());
        }
    }
}

#[test]
fn report_round_trips_through_json() {
    let ctx = FieldCtx::new(2, 3, None).unwrap();
    for mode in [VerifyMode::Lemma1, VerifyMode::Full, VerifyMode::Both] {
        let r = verify_instance(family("th3").unwrap(), &ctx, 0, mode).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in
            ["family", "p", "k", "l", "q", "conditions_hold", "is_permutation", "method", "witness", "elapsed_ms"]
        {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
    let r =
        verify_instance(family("zieve_t1").unwrap(), &FieldCtx::new(2, 4, None).unwrap(), 6, VerifyMode::Full).unwrap();
    assert_eq!(r.method, Method::FullField);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["method"], "full_field");
    assert!(v["witness"].is_array());
}
