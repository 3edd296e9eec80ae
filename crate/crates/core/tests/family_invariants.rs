use fracperm::families::{display_fraction, verify_family, FracRelation, Status, VerifyMode, FAMILIES};
use fracperm::{Elt, FieldCtx, FracPoly};

fn k_range(p: u32) -> std::ops::RangeInclusive<u32> {
    if p == 2 {
        1..=6
    } else {
        1..=4
    }
}

/// g1 and g2 agree on mu_{q+1} (including where each has a pole).
fn same_on_circle(ctx: &FieldCtx, g1: &FracPoly, g2: &FracPoly) -> bool {
    ctx.mu_subgroup(ctx.q() + 1).unwrap().into_iter().all(|z| g1.eval(ctx, z).ok() == g2.eval(ctx, z).ok())
}

fn reciprocal_on_circle(ctx: &FieldCtx, g1: &FracPoly, g2: &FracPoly) -> bool {
    ctx.mu_subgroup(ctx.q() + 1).unwrap().into_iter().all(|z| match (g1.eval(ctx, z), g2.eval(ctx, z)) {
        (Ok(a), Ok(b)) => ctx.mul(a, b) == Elt::ONE,
        _ => false,
    })
}

#[test]
fn derived_fraction_matches_stored_fraction() {
    for spec in FAMILIES {
        for k in k_range(spec.p) {
            let ctx = FieldCtx::new(spec.p, k, None).unwrap();
            let stored = spec.stored_frac(&ctx).unwrap();
            let ls = if spec.fixed { 0..=0 } else { 0..=10 };
            for l in ls {
                assert!(same_on_circle(&ctx, &spec.derived_frac(&ctx, l), &stored), "{} k={k} l={l}", spec.id);
            }
        }
    }
}

#[test]
fn stored_fraction_relates_to_display() {
    for spec in FAMILIES {
        let Some((label, relation)) = spec.display_frac else { continue };
        for k in k_range(spec.p) {
            let ctx = FieldCtx::new(spec.p, k, None).unwrap();
            let stored = spec.stored_frac(&ctx).unwrap();
            let shown = FracPoly::parse(&ctx, display_fraction(label).unwrap().1).unwrap();
            if ctx.mu_subgroup(ctx.q() + 1).unwrap().into_iter().any(|z| stored.eval(&ctx, z).is_err()) {
                continue;
            }
            match relation {
                FracRelation::Equal => assert!(same_on_circle(&ctx, &stored, &shown), "{} k={k}", spec.id),
                FracRelation::Reciprocal => assert!(reciprocal_on_circle(&ctx, &stored, &shown), "{} k={k}", spec.id),
                FracRelation::Other => {}
            }
        }
    }
}

#[test]
fn sufficiency_against_full_field() {
    for spec in FAMILIES {
        let reports = verify_family(spec, k_range(spec.p), 0..=10, VerifyMode::Both, false).unwrap();
        for r in reports {
            assert_ne!(r.status, Status::Fail, "{} k={} l={}", r.family, r.k, r.l);
            if r.status == Status::Pass {
                assert_eq!(r.full_field, Some(true));
            }
        }
    }
}

#[test]
fn zieve_iff_both_directions() {
    let spec = fracperm::families::family("zieve_t1").unwrap();
    for r in verify_family(spec, 1..=6, 0..=10, VerifyMode::Both, true).unwrap() {
        if r.status == Status::Degenerate {
            continue;
        }
        assert_eq!(r.full_field, Some(r.conditions_hold), "k={} l={}", r.k, r.l);
        assert_eq!(r.status, Status::Pass);
    }
}
