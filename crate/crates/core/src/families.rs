//! Catalogue of trinomial families f = x^r h(x^{q-1}) with r = r0 + (q+1)l,
//! their hypotheses, batch verification, and the published criteria used
//! for comparison with other known classes.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::numtheory::{gcd, gcd_u64};
use crate::perm::{fractional_form, is_permutation_full, lemma1_check, permutes_mu, Method, PermVerdict};
use crate::poly::{instantiate_terms, FracPoly, SignedTerms, SparsePoly, Trinomial};

/// A congruence condition on k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KCond {
    Any,
    Even,
    Odd,
    /// k not congruent to `r` modulo `m`.
    NotCong {
        m: u32,
        r: u32,
    },
    /// k congruent to one of `rs` modulo `m`.
    CongAny {
        m: u32,
        rs: &'static [u32],
    },
}

impl KCond {
    pub fn holds(self, k: u32) -> bool {
        match self {
            KCond::Any => true,
            KCond::Even => k.is_multiple_of(2),
            KCond::Odd => k % 2 == 1,
            KCond::NotCong { m, r } => k % m != r,
            KCond::CongAny { m, rs } => rs.contains(&(k % m)),
        }
    }
}

impl fmt::Display for KCond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KCond::Any => write!(f, "k positive"),
            KCond::Even => write!(f, "k even"),
            KCond::Odd => write!(f, "k odd"),
            KCond::NotCong { m, r } => write!(f, "k!≡{r} mod {m}"),
            KCond::CongAny { m, rs } => {
                let rs: Vec<String> = rs.iter().map(u32::to_string).collect();
                write!(f, "k≡{} mod {m}", rs.join(","))
            }
        }
    }
}

/// gcd(a*l + b, q - 1) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcdCond {
    pub a: u64,
    pub b: u64,
}

impl GcdCond {
    pub fn holds(self, q: u64, l: u64) -> bool {
        gcd_u64(self.a * l + self.b, q - 1) == 1
    }
}

impl fmt::Display for GcdCond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lin = if self.a == 1 { "l".to_string() } else { format!("{}l", self.a) };
        write!(f, "gcd({lin}+{},q-1)=1", self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// Permutation exactly when the conditions hold.
    Iff,
    /// Conditions imply permutation; nothing claimed otherwise.
    Sufficient,
    /// Sufficiency stated as a conjecture.
    Conjectured,
}

/// How a family's derived fractional polynomial relates to the displayed
/// fraction it is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracRelation {
    Equal,
    Reciprocal,
    /// Displayed fraction is a different map on mu_{q+1}.
    Other,
}

#[derive(Debug, Clone, Copy)]
pub struct FamilySpec {
    /// Stable lowercase id used in reports and on the command line.
    pub id: &'static str,
    pub p: u32,
    /// r = r0 + (q+1) l.
    pub r0: u64,
    /// Single instance at l = 0 only.
    pub fixed: bool,
    /// Laurent terms of h as (exponent, sign), in display order.
    pub h: SignedTerms,
    pub k_cond: KCond,
    pub gcd_cond: Option<GcdCond>,
    pub claim: ClaimKind,
    /// fractional_form of the family as rendered over the prime field.
    pub frac: &'static str,
    /// Displayed fraction this family is tied to, and how.
    pub display_frac: Option<(&'static str, FracRelation)>,
    /// Where the family is stated.
    pub source: &'static str,
}

const PLUS: i8 = 1;
const MINUS: i8 = -1;

pub static FAMILIES: &[FamilySpec] = &[
    FamilySpec {
        id: "zieve_t1",
        p: 2,
        r0: 3,
        fixed: false,
        h: &[(0, PLUS), (1, PLUS), (3, PLUS)],
        k_cond: KCond::Any,
        gcd_cond: Some(GcdCond { a: 2, b: 3 }),
        claim: ClaimKind::Iff,
        frac: "(x^3+x^2+1)/(x^3+x+1)",
        display_frac: Some(("g6", FracRelation::Equal)),
        source: "Zieve",
    },
    FamilySpec {
        id: "tab1",
        p: 2,
        r0: 3,
        fixed: false,
        h: &[(0, PLUS), (4, PLUS), (-1, PLUS)],
        k_cond: KCond::Even,
        gcd_cond: Some(GcdCond { a: 2, b: 3 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^5+x^4+1)/(x^5+x+1)",
        display_frac: Some(("g1", FracRelation::Reciprocal)),
        source: "tab1",
    },
    FamilySpec {
        id: "rem2",
        p: 2,
        r0: 2,
        fixed: false,
        h: &[(0, PLUS), (2, PLUS), (-1, PLUS)],
        k_cond: KCond::NotCong { m: 3, r: 0 },
        gcd_cond: Some(GcdCond { a: 1, b: 1 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^4+x^3+x)/(x^3+x+1)",
        display_frac: Some(("g7", FracRelation::Equal)),
        source: "rem2",
    },
    FamilySpec {
        id: "tab2",
        p: 2,
        r0: 2,
        fixed: false,
        h: &[(0, PLUS), (4, PLUS), (-1, PLUS)],
        k_cond: KCond::CongAny { m: 6, rs: &[2, 4] },
        gcd_cond: Some(GcdCond { a: 1, b: 1 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^5+x^4+1)/(x^6+x^2+x)",
        display_frac: Some(("g2", FracRelation::Reciprocal)),
        source: "tab2",
    },
    FamilySpec {
        id: "th3",
        p: 2,
        r0: 3,
        fixed: false,
        h: &[(0, PLUS), (3, PLUS), (-1, PLUS)],
        k_cond: KCond::NotCong { m: 4, r: 2 },
        gcd_cond: Some(GcdCond { a: 2, b: 3 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^5+x^4+x)/(x^4+x+1)",
        display_frac: Some(("g3", FracRelation::Equal)),
        source: "th3",
    },
    FamilySpec {
        id: "th4",
        p: 2,
        r0: 1,
        fixed: false,
        h: &[(0, PLUS), (3, PLUS), (-1, PLUS)],
        k_cond: KCond::Even,
        gcd_cond: Some(GcdCond { a: 2, b: 1 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^4+x^3+1)/(x^5+x^2+x)",
        display_frac: Some(("g4", FracRelation::Equal)),
        source: "th4",
    },
    FamilySpec {
        id: "th5",
        p: 2,
        r0: 1,
        fixed: false,
        h: &[(0, PLUS), (4, PLUS), (-2, PLUS)],
        k_cond: KCond::NotCong { m: 3, r: 0 },
        gcd_cond: Some(GcdCond { a: 2, b: 1 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^6+x^4+1)/(x^7+x^3+x)",
        display_frac: Some(("g5", FracRelation::Equal)),
        source: "th5",
    },
    FamilySpec {
        id: "c3_3p1",
        p: 3,
        r0: 1,
        fixed: true,
        h: &[(0, PLUS), (2, MINUS), (-2, PLUS)],
        k_cond: KCond::NotCong { m: 4, r: 0 },
        gcd_cond: None,
        claim: ClaimKind::Sufficient,
        frac: "(x^5+x^3-x)/(-x^4+x^2+1)",
        display_frac: Some(("h3p1", FracRelation::Equal)),
        source: "3p1",
    },
    FamilySpec {
        id: "c3_3p2",
        p: 3,
        r0: 1,
        fixed: true,
        h: &[(0, PLUS), (3, PLUS), (-1, MINUS)],
        k_cond: KCond::Odd,
        gcd_cond: None,
        claim: ClaimKind::Sufficient,
        frac: "(-x^4+x^3+1)/(x^5+x^2-x)",
        display_frac: Some(("h3p2", FracRelation::Equal)),
        source: "3p2",
    },
    FamilySpec {
        id: "cor1",
        p: 3,
        r0: 1,
        fixed: false,
        h: &[(0, PLUS), (2, MINUS), (-2, PLUS)],
        k_cond: KCond::NotCong { m: 4, r: 0 },
        gcd_cond: Some(GcdCond { a: 2, b: 1 }),
        claim: ClaimKind::Sufficient,
        frac: "(x^5+x^3-x)/(-x^4+x^2+1)",
        display_frac: Some(("h3p1", FracRelation::Equal)),
        source: "cor1",
    },
    FamilySpec {
        id: "cor2",
        p: 3,
        r0: 1,
        fixed: false,
        h: &[(0, PLUS), (3, PLUS), (-1, MINUS)],
        k_cond: KCond::Odd,
        gcd_cond: Some(GcdCond { a: 2, b: 1 }),
        claim: ClaimKind::Sufficient,
        frac: "(-x^4+x^3+1)/(x^5+x^2-x)",
        display_frac: Some(("h3p2", FracRelation::Equal)),
        source: "cor2",
    },
    FamilySpec {
        id: "conj1a",
        p: 3,
        r0: 5,
        fixed: false,
        h: &[(0, PLUS), (5, PLUS), (-1, MINUS)],
        k_cond: KCond::Even,
        gcd_cond: Some(GcdCond { a: 2, b: 5 }),
        claim: ClaimKind::Conjectured,
        frac: "(-x^7+x^6+x)/(x^6+x-1)",
        display_frac: Some(("conj2a", FracRelation::Other)),
        source: "conj1(1)",
    },
    FamilySpec {
        id: "conj1b",
        p: 3,
        r0: 1,
        fixed: false,
        h: &[(0, PLUS), (4, MINUS), (-2, PLUS)],
        k_cond: KCond::Any,
        gcd_cond: Some(GcdCond { a: 2, b: 1 }),
        claim: ClaimKind::Conjectured,
        frac: "(x^6+x^4-1)/(-x^7+x^3+x)",
        display_frac: Some(("conj2b", FracRelation::Equal)),
        source: "conj1(2)",
    },
    FamilySpec {
        id: "conj1c",
        p: 3,
        r0: 1,
        fixed: false,
        h: &[(0, PLUS), (2, PLUS), (-2, MINUS)],
        k_cond: KCond::NotCong { m: 4, r: 2 },
        gcd_cond: Some(GcdCond { a: 2, b: 1 }),
        claim: ClaimKind::Conjectured,
        frac: "(-x^5+x^3+x)/(x^4+x^2-1)",
        display_frac: Some(("conj2c", FracRelation::Equal)),
        source: "conj1(3)",
    },
];

/// Looks a family up by id (case-insensitive).
pub fn family(id: &str) -> Option<&'static FamilySpec> {
    FAMILIES.iter().find(|f| f.id.eq_ignore_ascii_case(id))
}

/// Displayed fractional polynomials, by label.
pub static DISPLAY_FRACTIONS: &[(&str, u32, &str)] = &[
    ("g1", 2, "(x^5+x+1)/(x^5+x^4+1)"),
    ("g2", 2, "(x^6+x^2+x)/(x^5+x^4+1)"),
    ("g3", 2, "(x^5+x^4+x)/(x^4+x+1)"),
    ("g4", 2, "(x^4+x^3+1)/(x^5+x^2+x)"),
    ("g5", 2, "(x^6+x^4+1)/(x^7+x^3+x)"),
    ("g6", 2, "(x^3+x^2+1)/(x^3+x+1)"),
    ("g7", 2, "(x^4+x^3+x)/(x^3+x+1)"),
    ("h3p1", 3, "(x^5+x^3-x)/(-x^4+x^2+1)"),
    ("h3p2", 3, "(-x^4+x^3+1)/(x^5+x^2-x)"),
    ("conj2a", 3, "(-x^7+x^3+x)/(x^6+x^4-1)"),
    ("conj2b", 3, "(x^6+x^4-1)/(-x^7+x^3+x)"),
    ("conj2c", 3, "(-x^5+x^3+x)/(x^4+x^2-1)"),
];

pub fn display_fraction(label: &str) -> Option<(u32, &'static str)> {
    DISPLAY_FRACTIONS.iter().find(|f| f.0 == label).map(|f| (f.1, f.2))
}

/// A conjectured permutation of mu_{q+1} over F_{3^{2k}}.
#[derive(Debug, Clone, Copy)]
pub struct FracConjecture {
    pub id: &'static str,
    pub frac: &'static str,
    pub k_cond: KCond,
}

pub static FRAC_CONJECTURES: &[FracConjecture] = &[
    FracConjecture { id: "conj2a", frac: "(-x^7+x^3+x)/(x^6+x^4-1)", k_cond: KCond::Even },
    FracConjecture { id: "conj2b", frac: "(x^6+x^4-1)/(-x^7+x^3+x)", k_cond: KCond::Any },
    FracConjecture { id: "conj2c", frac: "(-x^5+x^3+x)/(x^4+x^2-1)", k_cond: KCond::NotCong { m: 4, r: 2 } },
];

pub fn frac_conjecture(id: &str) -> Option<&'static FracConjecture> {
    FRAC_CONJECTURES.iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

impl FamilySpec {
    pub fn conditions_hold(&self, k: u32, l: u64) -> bool {
        let q = (self.p as u64).pow(k);
        self.k_cond.holds(k) && self.gcd_cond.is_none_or(|g| g.holds(q, l))
    }

    /// Human-readable hypotheses.
    pub fn condition_text(&self) -> String {
        match (self.k_cond, self.gcd_cond) {
            (KCond::Any, Some(g)) => g.to_string(),
            (kc, Some(g)) => format!("{kc} && {g}"),
            (kc, None) => kc.to_string(),
        }
    }

    pub fn r(&self, q: u64, l: u64) -> u64 {
        self.r0 + (q + 1) * l
    }

    pub fn h(&self, ctx: &FieldCtx) -> SparsePoly {
        instantiate_terms(ctx, self.h)
    }

    /// Raw signed exponents r + e(q-1) before reduction.
    pub fn raw_terms(&self, q: u64, l: u64) -> [(i64, i8); 3] {
        let r = self.r(q, l) as i64;
        let q = q as i64;
        let t = |i: usize| (r + self.h[i].0 * (q - 1), self.h[i].1);
        [t(0), t(1), t(2)]
    }

    /// Exponent formulas in q and l, one per term of h.
    pub fn exponent_formulas(&self) -> [String; 3] {
        let f = |i: usize| {
            let e = self.h[i].0;
            let c = self.r0 as i64 - e;
            if self.fixed {
                fixed_formula(e, c)
            } else {
                let qpart = match e {
                    0 => "lq".to_string(),
                    e if e > 0 => format!("(l+{e})q"),
                    e => format!("(l{e})q"),
                };
                let cpart = match c {
                    0 => "l".to_string(),
                    c if c > 0 => format!("l+{c}"),
                    c => format!("l{c}"),
                };
                format!("{qpart}+{cpart}")
            }
        };
        [f(0), f(1), f(2)]
    }

    /// The trinomial over the field of `ctx`. Fixed families accept only
    /// l = 0.
    pub fn instantiate(&self, ctx: &FieldCtx, l: u64) -> Result<Trinomial> {
        if ctx.p() != self.p {
            return Err(Error::CharacteristicMismatch { family: self.p, field: ctx.p() });
        }
        if self.fixed && l != 0 {
            return Err(Error::Parse(format!("family {} has no parameter l", self.id)));
        }
        Trinomial::new(ctx, self.raw_terms(ctx.q(), l))
    }

    /// fractional_form of the instance, which does not depend on l.
    pub fn derived_frac(&self, ctx: &FieldCtx, l: u64) -> FracPoly {
        fractional_form(self.r(ctx.q(), l), &self.h(ctx), ctx.q())
    }

    pub fn stored_frac(&self, ctx: &FieldCtx) -> Result<FracPoly> {
        FracPoly::parse(ctx, self.frac)
    }

    fn l_values(&self, l_range: std::ops::RangeInclusive<u64>) -> Vec<u64> {
        if self.fixed {
            if l_range.contains(&0) {
                vec![0]
            } else {
                Vec::new()
            }
        } else {
            l_range.collect()
        }
    }
}

fn fixed_formula(e: i64, c: i64) -> String {
    // e q + c, lifted by q^2 - 1 when e is negative.
    let (lead, e, c) = if e < 0 { ("q^2", e, c - 1) } else { ("", e, c) };
    let mut s = lead.to_string();
    match e {
        0 => {}
        1 => s.push_str(if s.is_empty() { "q" } else { "+q" }),
        -1 => s.push_str("-q"),
        e if e > 0 => s.push_str(&format!("{}{e}q", if s.is_empty() { "" } else { "+" })),
        e => s.push_str(&format!("{e}q")),
    }
    if c != 0 || s.is_empty() {
        if c > 0 && !s.is_empty() {
            s.push('+');
        }
        s.push_str(&c.to_string());
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Lemma1,
    Full,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The asserted expectation held.
    Pass,
    /// The asserted expectation failed, or the two methods disagreed.
    Fail,
    /// Exponents collide after reduction, or one reduces to 0; not a
    /// trinomial.
    Degenerate,
    /// Conditions fail and the claim says nothing about this instance.
    Unasserted,
}

/// Outcome for one (family, k, l). Witness entries are dense element
/// indices of a colliding pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub p: u32,
    pub k: u32,
    pub l: u64,
    pub q: u64,
    pub conditions_hold: bool,
    pub exponents: Option<[u64; 3]>,
    pub is_permutation: bool,
    pub method: Method,
    pub witness: Option<(u32, u32)>,
    /// Full-field verdict in `both` mode.
    pub full_field: Option<bool>,
    pub status: Status,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

fn verdict_indices(ctx: &FieldCtx, v: &PermVerdict) -> Option<(u32, u32)> {
    v.witness.map(|(a, b)| (ctx.index(a), ctx.index(b)))
}

/// Verifies one instance. The Lemma 1 route uses (r, h) directly, so
/// degenerate instances still get a verdict for the collapsed polynomial.
pub fn verify_instance(spec: &FamilySpec, ctx: &FieldCtx, l: u64, mode: VerifyMode) -> Result<VerificationReport> {
    let start = Instant::now();
    let k = ctx.k();
    let q = ctx.q();
    let conditions_hold = spec.conditions_hold(k, l);
    let tri = match spec.instantiate(ctx, l) {
        Ok(t) => Some(t),
        Err(Error::ExponentCollision { .. } | Error::ZeroExponent(_)) => None,
        Err(e) => return Err(e),
    };
    let r = spec.r(q, l);
    let h = spec.h(ctx);
    let lemma = || lemma1_check(ctx, r, &h, q + 1);
    let full = || -> Result<PermVerdict> {
        match &tri {
            Some(t) => is_permutation_full(ctx, t),
            None => is_permutation_full(ctx, &crate::perm::assemble(ctx, r, &h, q + 1)?),
        }
    };
    let (verdict, full_field) = match mode {
        VerifyMode::Lemma1 => (lemma()?, None),
        VerifyMode::Full => (full()?, None),
        VerifyMode::Both => {
            let f = full()?;
            (lemma()?, Some(f.is_permutation))
        }
    };
    let agree = full_field.is_none_or(|f| f == verdict.is_permutation);
    let status = if tri.is_none() {
        Status::Degenerate
    } else if !agree {
        Status::Fail
    } else if conditions_hold {
        if verdict.is_permutation {
            Status::Pass
        } else {
            Status::Fail
        }
    } else if spec.claim == ClaimKind::Iff {
        if verdict.is_permutation {
            Status::Fail
        } else {
            Status::Pass
        }
    } else {
        Status::Unasserted
    };
    Ok(VerificationReport {
        family: spec.id.to_string(),
        p: ctx.p(),
        k,
        l,
        q,
        conditions_hold,
        exponents: tri.as_ref().map(|t| t.exps()),
        is_permutation: verdict.is_permutation,
        method: verdict.method,
        witness: verdict_indices(ctx, &verdict),
        full_field,
        status,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Batch verification over k and l ranges. Instances whose conditions fail
/// are included only when `negative` is set. Reports come back ordered by
/// (k, l).
pub fn verify_family(
    spec: &FamilySpec,
    k_range: std::ops::RangeInclusive<u32>,
    l_range: std::ops::RangeInclusive<u64>,
    mode: VerifyMode,
    negative: bool,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for k in k_range {
        let ls: Vec<u64> =
            spec.l_values(l_range.clone()).into_iter().filter(|&l| negative || spec.conditions_hold(k, l)).collect();
        if ls.is_empty() {
            continue;
        }
        let ctx = FieldCtx::new(spec.p, k, None)?;
        let reports: Vec<VerificationReport> =
            ls.par_iter().map(|&l| verify_instance(spec, &ctx, l, mode)).collect::<Result<_>>()?;
        out.extend(reports);
    }
    Ok(out)
}

/// Result of checking a fractional conjecture at one k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FracConjectureReport {
    pub id: String,
    pub k: u32,
    pub q: u64,
    pub condition_holds: bool,
    pub permutes: bool,
    pub witness: Option<(u32, u32)>,
}

pub fn verify_frac_conjecture(conj: &FracConjecture, k: u32) -> Result<FracConjectureReport> {
    let ctx = FieldCtx::new(3, k, None)?;
    let g = FracPoly::parse(&ctx, conj.frac)?;
    let v = permutes_mu(&ctx, &g, ctx.q() + 1)?;
    Ok(FracConjectureReport {
        id: conj.id.to_string(),
        k,
        q: ctx.q(),
        condition_holds: conj.k_cond.holds(k),
        permutes: v.is_permutation,
        witness: verdict_indices(&ctx, &v),
    })
}

/// Classical permutation trinomials x^a + x^b + x^c over F_{2^{2k}} that the
/// catalogue families are compared against.
#[derive(Debug, Clone, Copy)]
pub struct ClassicTrinomial {
    pub id: &'static str,
    pub formulas: [&'static str; 3],
    pub condition: &'static str,
    pub source: &'static str,
    pub parametric: bool,
    exps: fn(i64, i64) -> [i64; 3],
}

impl ClassicTrinomial {
    pub fn instantiate(&self, ctx: &FieldCtx, l: u64) -> Result<Trinomial> {
        if ctx.p() != 2 {
            return Err(Error::CharacteristicMismatch { family: 2, field: ctx.p() });
        }
        let e = (self.exps)(ctx.q() as i64, l as i64);
        Trinomial::new(ctx, [(e[0], 1), (e[1], 1), (e[2], 1)])
    }
}

pub static CLASSIC_TRINOMIALS: &[ClassicTrinomial] = &[
    ClassicTrinomial {
        id: "lqc_a",
        formulas: ["1", "q", "q^2/2-q/2+1"],
        condition: "gcd(3,k)=1",
        source: "Li-Qu-Chen",
        parametric: false,
        exps: |q, _| [1, q, q * q / 2 - q / 2 + 1],
    },
    ClassicTrinomial {
        id: "hou",
        formulas: ["1", "q", "2q-1"],
        condition: "k positive",
        source: "Hou",
        parametric: false,
        exps: |q, _| [1, q, 2 * q - 1],
    },
    ClassicTrinomial {
        id: "lqc_b",
        formulas: ["1", "q+2", "q^2/2+q/2+1"],
        condition: "k odd",
        source: "Li-Qu-Chen",
        parametric: false,
        exps: |q, _| [1, q + 2, q * q / 2 + q / 2 + 1],
    },
    ClassicTrinomial {
        id: "dqw",
        formulas: ["1", "lq-(l-1)", "q^2-lq+l"],
        condition: "k positive",
        source: "Ding-Qu-Wang",
        parametric: true,
        exps: |q, l| [1, l * q - (l - 1), q * q - l * q + l],
    },
];

/// One row of the comparison table of trinomials x^a + x^b + x^c over
/// F_{2^{2k}}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// "known" or "new".
    pub group: &'static str,
    pub id: &'static str,
    pub a: String,
    pub b: String,
    pub c: String,
    pub conditions: String,
    pub source: &'static str,
}

pub fn table_rows() -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = CLASSIC_TRINOMIALS
        .iter()
        .map(|c| TableRow {
            group: "known",
            id: c.id,
            a: c.formulas[0].to_string(),
            b: c.formulas[1].to_string(),
            c: c.formulas[2].to_string(),
            conditions: c.condition.to_string(),
            source: c.source,
        })
        .collect();
    let row = |group, spec: &'static FamilySpec| {
        let [a, b, c] = spec.exponent_formulas();
        TableRow { group, id: spec.id, a, b, c, conditions: spec.condition_text(), source: spec.source }
    };
    rows.push(row("known", family("zieve_t1").unwrap()));
    for id in ["tab1", "rem2", "tab2", "th3", "th4", "th5"] {
        rows.push(row("new", family(id).unwrap()));
    }
    rows
}

// ----- published criteria ------------------------------------------------

/// How the squareness tests in the criterion for a x + b x^q + x^{2q-1}
/// treat a zero discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HouReading {
    /// As printed: 0 counts as a square of F_q.
    Literal,
    /// Squares of F_q^* only.
    NonzeroSquare,
}

/// Criterion for f = a x + b x^q + x^{2q-1} over F_{q^2}, q = 3^k, evaluated
/// as printed: (i) (-a)^{(q+1)/2} in {-1, 3} and b = 0; (ii) ab != 0,
/// a = b^{1-q}, 1 - 4a/b^2 a square of F_q; (iii) ab(a - b^{1-q}) != 0,
/// 1 - 4a/b^2 a square of F_q, b^2 - a^2 b^{q-1} - 3a = 0. The constant 3
/// is read in the field, where it is 0.
pub fn hou_criterion(ctx: &FieldCtx, a: Elt, b: Elt) -> Result<bool> {
    hou_criterion_with(ctx, a, b, HouReading::Literal)
}

pub fn hou_criterion_with(ctx: &FieldCtx, a: Elt, b: Elt, reading: HouReading) -> Result<bool> {
    if ctx.p() != 3 {
        return Err(Error::RequiresCharacteristic(3));
    }
    let q = ctx.q();
    let three = ctx.scalar(3);
    let cond_i = {
        let v = ctx.pow_u(ctx.neg(a), q.div_ceil(2));
        b.is_zero() && (v == ctx.minus_one() || v == three)
    };
    if cond_i {
        return Ok(true);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(false);
    }
    let b_1mq = ctx.div(b, ctx.frobenius_q(b))?;
    let disc = hou_discriminant(ctx, a, b)?;
    let disc_square = ctx.in_subfield(disc)
        && ctx.is_square(disc, true)?
        && !(reading == HouReading::NonzeroSquare && disc.is_zero());
    let cond_ii = a == b_1mq && disc_square;
    let cond_iii = a != b_1mq && disc_square && {
        let b_qm1 = ctx.inv(b_1mq)?;
        let lhs = ctx.sub(ctx.sub(ctx.mul(b, b), ctx.mul(ctx.mul(a, a), b_qm1)), ctx.mul(three, a));
        lhs.is_zero()
    };
    Ok(cond_ii || cond_iii)
}

/// 1 - 4a/b^2 (b nonzero).
pub fn hou_discriminant(ctx: &FieldCtx, a: Elt, b: Elt) -> Result<Elt> {
    Ok(ctx.sub(Elt::ONE, ctx.div(ctx.scale(a, 4), ctx.mul(b, b))?))
}

/// The trinomial a x + b x^q + x^{2q-1} as a sparse polynomial.
pub fn hou_polynomial(ctx: &FieldCtx, a: Elt, b: Elt) -> SparsePoly {
    let q = ctx.q() as i64;
    SparsePoly::from_terms(ctx, [(1, a), (q, b), (2 * q - 1, Elt::ONE)])
}

/// One (a, b) where the criterion and brute force disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HouMismatch {
    pub a: u32,
    pub b: u32,
    pub criterion: bool,
    pub brute_force: bool,
    /// b != 0 and 1 - 4a/b^2 = 0.
    pub zero_discriminant: bool,
}

/// Compares the criterion with exhaustive checking over all (a, b).
pub fn hou_sweep(ctx: &FieldCtx, reading: HouReading) -> Result<Vec<HouMismatch>> {
    let elems: Vec<Elt> = ctx.elements().collect();
    let pairs: Vec<(Elt, Elt)> = elems.iter().flat_map(|&a| elems.iter().map(move |&b| (a, b))).collect();
    let out: Vec<Option<HouMismatch>> = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<HouMismatch>> {
            let criterion = hou_criterion_with(ctx, a, b, reading)?;
            let brute_force = is_permutation_full(ctx, &hou_polynomial(ctx, a, b))?.is_permutation;
            Ok((criterion != brute_force).then(|| HouMismatch {
                a: ctx.index(a),
                b: ctx.index(b),
                criterion,
                brute_force,
                zero_discriminant: !b.is_zero() && hou_discriminant(ctx, a, b).is_ok_and(|d| d.is_zero()),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

/// Criterion for f = x^r h(x^{q-1}) when h (degree d, h(0) != 0, ordinary
/// exponents) satisfies (x^d h(1/x))^q = beta h(x^q) for some beta in
/// mu_{q+1}. Returns None when that identity has no solution beta.
/// Otherwise f permutes exactly when gcd(r, q-1) = 1, gcd(r-d, q+1) = 1 and
/// h has no roots in mu_{q+1}.
pub fn zieve_selfreciprocal_criterion(ctx: &FieldCtx, r: u64, h: &SparsePoly) -> Result<Option<bool>> {
    if h.is_zero() || h.has_negative_exponent() {
        return Ok(None);
    }
    let d = h.max_exp().unwrap();
    let coeff = |i: i64| h.terms().iter().find(|t| t.0 == i).map_or(Elt::ZERO, |t| t.1);
    let c0 = coeff(0);
    if c0.is_zero() {
        return Ok(None);
    }
    // Coefficient of x^{qj}: c_{d-j}^q = beta c_j.
    let beta = ctx.div(ctx.frobenius_q(coeff(d)), c0)?;
    if ctx.pow_u(beta, ctx.q() + 1) != Elt::ONE {
        return Ok(None);
    }
    for j in 0..=d {
        if ctx.frobenius_q(coeff(d - j)) != ctx.mul(beta, coeff(j)) {
            return Ok(None);
        }
    }
    let q = ctx.q();
    let no_roots = ctx
        .mu_subgroup(q + 1)?
        .into_iter()
        .map(|z| h.eval(ctx, z))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|v| !v.is_zero());
    Ok(Some(gcd_u64(r, q - 1) == 1 && gcd(r as i64 - d, (q + 1) as i64) == 1 && no_roots))
}

/// Criterion for f = x^n h(x^{(Q-1)/3}) over the whole field F_Q of `ctx`,
/// h = a x^2 + b x + c: gcd(n, (Q-1)/3) = 1, h(eps^i) != 0 for i < 3, and
/// ind(h(1)/h(eps)) = ind(h(eps)/h(eps^2)) != n mod 3, where ind(y) is the
/// exponent i with y^{(Q-1)/3} = eps^i and eps = gen^{(Q-1)/3}.
pub fn lee_park_criterion(ctx: &FieldCtx, n: u64, a: Elt, b: Elt, c: Elt) -> Result<bool> {
    let big_q = ctx.size();
    if !(big_q - 1).is_multiple_of(3) {
        return Err(Error::NoCubeRoots(big_q));
    }
    let m = (big_q - 1) / 3;
    let eps = ctx.gen_pow(m);
    let h = |x: Elt| ctx.add(ctx.add(ctx.mul(a, ctx.mul(x, x)), ctx.mul(b, x)), c);
    let hv = [h(Elt::ONE), h(eps), h(ctx.mul(eps, eps))];
    if gcd_u64(n, m) != 1 || hv.iter().any(|v| v.is_zero()) {
        return Ok(false);
    }
    let ind = |y: Elt| -> u64 {
        let t = ctx.pow_u(y, m);
        (0..3).find(|&i| ctx.pow_u(eps, i) == t).expect("cube root of unity")
    };
    let i1 = ind(ctx.div(hv[0], hv[1])?);
    let i2 = ind(ctx.div(hv[1], hv[2])?);
    Ok(i1 == i2 && i1 != n % 3)
}

/// x^n (a x^{2(Q-1)/3} + b x^{(Q-1)/3} + c).
pub fn lee_park_polynomial(ctx: &FieldCtx, n: u64, a: Elt, b: Elt, c: Elt) -> SparsePoly {
    let m = ((ctx.size() - 1) / 3) as i64;
    let n = n as i64;
    SparsePoly::from_terms(ctx, [(n + 2 * m, a), (n + m, b), (n, c)])
}
