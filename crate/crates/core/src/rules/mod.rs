//! The certification rules: base facts and inductive steps, each
//! returning a certificate node or declining. All rule evaluations are
//! pure functions of their inputs.

mod certificate;
mod closed_form;
mod elliptic;

pub use certificate::{CertificateNode, EllipticConfig, EllipticPart, RuleId, RuleParams};
pub use closed_form::{
    closed_form_semistable, closed_form_semistable_degree_only, closed_form_stable,
    closed_form_stable_degree_only, genus_bound_semistable, genus_bound_stable,
    induction_genus_bound, line_rnc_bound, line_rnc_threshold, ClosedFormReason,
};
pub use elliptic::{
    canonical_b2_variant, canonical_uniform, search_elliptic_config, validate_elliptic_config,
    ConfigError, ConfigSearchOutcome, SearchConfig,
};

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::bn::{Status, Triple};
use crate::number_theory::{b2, split_witness, LineBudget};
use crate::DomainError;

/// Certification level a rule concludes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Semistable,
    Stable,
}

impl Level {
    pub fn status(self) -> Status {
        match self {
            Level::Semistable => Status::CertSemistable,
            Level::Stable => Status::CertStable,
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Level::Semistable => f.write_str("semistable"),
            Level::Stable => f.write_str("stable"),
        }
    }
}

/// Ground-field characteristic, as far as the rules care: the (7, 2, 4)
/// base fact needs characteristic different from 2; every other rule is
/// characteristic-independent at this numerical layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    Generic,
    Two,
}

/// Triples excluded from certification with terminal status, plus the
/// geometric reason.
const EXCEPTIONS: &[(i64, i64, i64, Status, &str)] = &[
    (
        5, 2, 3,
        Status::KnownUnstable,
        "genus-2 curves lie on a rational surface scroll swept out by the g^1_2 lines; the degree-12 line subbundle from the scroll destabilizes",
    ),
    (
        6, 2, 4,
        Status::KnownUnstable,
        "genus-2 curves lie on a rational surface scroll swept out by the g^1_2 lines; the degree-12 line subbundle from the scroll destabilizes",
    ),
    (
        7, 2, 5,
        Status::KnownUnstable,
        "genus-2 curves lie on a rational surface scroll swept out by the g^1_2 lines; the degree-12 line subbundle from the scroll destabilizes",
    ),
    (
        8, 2, 6,
        Status::KnownUnstable,
        "genus-2 curves lie on a rational surface scroll swept out by the g^1_2 lines; the degree-12 line subbundle from the scroll destabilizes",
    ),
    (
        6, 4, 3,
        Status::KnownUnstable,
        "the canonical genus-4 curve is a (2,3) complete intersection; the normal bundle in the quadric destabilizes",
    ),
    (
        10, 6, 5,
        Status::KnownUnstable,
        "the general canonical genus-6 curve lies on a quintic del Pezzo surface whose normal bundle destabilizes",
    ),
    (
        8, 5, 4,
        Status::KnownStrictlySemistable,
        "the canonical genus-5 curve is a (2,2,2) complete intersection with normal bundle O(2)^3: semistable, not stable",
    ),
];

/// Terminal status for registry triples; none otherwise.
pub fn exception_status(t: Triple) -> Option<Status> {
    EXCEPTIONS
        .iter()
        .find(|&&(d, g, r, _, _)| (d, g, r) == (t.d, t.g, t.r))
        .map(|&(_, _, _, s, _)| s)
}

/// Geometric explanation for a registry triple.
pub fn exception_reason(t: Triple) -> Option<&'static str> {
    EXCEPTIONS
        .iter()
        .find(|&&(d, g, r, _, _)| (d, g, r) == (t.d, t.g, t.r))
        .map(|&(_, _, _, _, reason)| reason)
}

/// Triples on which interpolation holds but the slope argument is known
/// to fail.
const INTERPOLATION_EXCLUDED: &[(i64, i64, i64)] = &[(5, 2, 3), (6, 4, 3), (7, 2, 5)];

/// Interpolation rule: when `r-1` divides `2d + 2g - 2` the slope is an
/// integer and interpolation forces semistability, away from three
/// excluded triples.
pub fn rule_interpolation(t: Triple) -> Option<CertificateNode> {
    if t.g < 1 || !t.is_bn() {
        return None;
    }
    if t.degree_residue() % (t.r - 1) != 0 {
        return None;
    }
    if INTERPOLATION_EXCLUDED.contains(&(t.d, t.g, t.r)) {
        return None;
    }
    Some(CertificateNode::leaf(
        t,
        Status::CertSemistable,
        RuleId::Interpolation,
        RuleParams::None,
    ))
}

/// Genus-1 base case: `(d, 1, r)` is semistable for every `d >= r+1`.
pub fn rule_genus1(t: Triple) -> Option<CertificateNode> {
    if t.g != 1 || t.d < t.r + 1 {
        return None;
    }
    Some(CertificateNode::leaf(
        t,
        Status::CertSemistable,
        RuleId::Genus1,
        RuleParams::None,
    ))
}

/// Genus-2 rule for `r >= 4`: stable when the degree reaches `b2(r)`,
/// when an explicit split witness exists, or when the 2-secant
/// rational-curve degeneration leaves a genus-1 component whose
/// restricted normal-bundle degree `(d-r+1)(r+1) + 2` is coprime to
/// `r-1`; semistable when only `d >= 2r` holds.
pub fn rule_genus2(t: Triple) -> Option<CertificateNode> {
    if t.g != 2 || t.r < 4 {
        return None;
    }
    let b2r = b2(t.r);
    if t.d >= b2r {
        return Some(CertificateNode::leaf(
            t,
            Status::CertStable,
            RuleId::Genus2StableB2,
            RuleParams::B2Threshold { b2: b2r },
        ));
    }
    if let Some(w) = split_witness(t.d, t.r) {
        return Some(CertificateNode::leaf(
            t,
            Status::CertStable,
            RuleId::Genus2StableSplit,
            RuleParams::Split { d1: w.d1, d2: w.d2 },
        ));
    }
    if t.d >= 2 * t.r {
        let restricted = (t.d - t.r + 1) * (t.r + 1) + 2;
        if (t.r - 1).gcd(&restricted) == 1 {
            return Some(CertificateNode::leaf(
                t,
                Status::CertStable,
                RuleId::Genus2StableGcd,
                RuleParams::GcdWitness {
                    elliptic_degree: t.d - t.r + 1,
                    restricted_degree: restricted,
                },
            ));
        }
        return Some(CertificateNode::leaf(
            t,
            Status::CertSemistable,
            RuleId::Genus2Semistable,
            RuleParams::None,
        ));
    }
    None
}

/// The cohomologically-proven stable triple (7, 2, 4); the proof needs
/// characteristic different from 2.
pub fn rule_special724(t: Triple, ch: Characteristic) -> Option<CertificateNode> {
    if (t.d, t.g, t.r) != (7, 2, 4) || ch != Characteristic::Generic {
        return None;
    }
    Some(CertificateNode::leaf(
        t,
        Status::CertStable,
        RuleId::Special724,
        RuleParams::None,
    ))
}

/// Attaching `r-1` rational normal curves of degree `r-1`, each
/// `(r+1)`-secant: fires when the source has `rho >= r-1`, equivalently
/// when the target `(d + (r-1)^2, g + r(r-1), r)` is still BN.
pub fn step_attach_rnc(node: &CertificateNode) -> Option<CertificateNode> {
    if !matches!(node.status, Status::CertSemistable | Status::CertStable) {
        return None;
    }
    let src = node.triple();
    if src.rho() < src.r - 1 {
        return None;
    }
    let target = Triple {
        d: src.d + (src.r - 1) * (src.r - 1),
        g: src.g + src.r * (src.r - 1),
        r: src.r,
    };
    debug_assert!(target.is_bn());
    Some(CertificateNode {
        d: target.d,
        g: target.g,
        r: target.r,
        status: node.status,
        rule: RuleId::AttachRnc,
        params: RuleParams::None,
        premises: vec![node.clone()],
    })
}

/// Attaching `a` lines, `b` of them 2-secant, through `c` points:
/// `(d, g) -> (d + a, g + b)` at the same status.
pub fn step_attach_lines(
    node: &CertificateNode,
    budget: LineBudget,
) -> Result<CertificateNode, DomainError> {
    budget.validate(node.r)?;
    assert!(
        matches!(node.status, Status::CertSemistable | Status::CertStable),
        "line attachment requires a certified premise"
    );
    let target = Triple {
        d: node.d + budget.a,
        g: node.g + budget.b,
        r: node.r,
    };
    debug_assert!(target.is_bn());
    Ok(CertificateNode {
        d: target.d,
        g: target.g,
        r: target.r,
        status: node.status,
        rule: RuleId::AttachLines,
        params: RuleParams::Budget {
            a: budget.a,
            b: budget.b,
            c: budget.c,
        },
        premises: vec![node.clone()],
    })
}

/// A semistable bundle whose degree is coprime to its rank is stable:
/// upgrades a semistable certificate when `gcd(r-1, 2d+2g-2) = 1`.
/// Restricted to genus at least 2 (no stability claims at genus 1).
pub fn step_coprime_upgrade(node: &CertificateNode) -> Option<CertificateNode> {
    if node.status != Status::CertSemistable || node.g < 2 {
        return None;
    }
    let residue = node.triple().degree_residue();
    if (node.r - 1).gcd(&residue) != 1 {
        return None;
    }
    Some(CertificateNode {
        d: node.d,
        g: node.g,
        r: node.r,
        status: Status::CertStable,
        rule: RuleId::CoprimeStable,
        params: RuleParams::Coprime {
            degree_residue: residue,
        },
        premises: vec![node.clone()],
    })
}
