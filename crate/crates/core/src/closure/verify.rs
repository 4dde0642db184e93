//! Certificate verification: re-checks every node of a derivation tree
//! against the rules, independently of how the closure produced it.

use num::Integer;

use crate::bn::{Status, Triple};
use crate::number_theory::{b2, LineBudget};
use crate::rules::{self, CertificateNode, Characteristic, EllipticConfig, RuleId, RuleParams};

/// The first failing node and its violated condition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("certificate node at ({d}, {g}, {r}) via {rule:?} rejected: {condition}")]
pub struct VerifyError {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub rule: RuleId,
    pub condition: String,
}

/// Recursively re-derives every node. `Ok(())` means the whole tree
/// re-derives; otherwise the first failing node is reported.
pub fn verify_certificate(
    cert: &CertificateNode,
    characteristic: Characteristic,
) -> Result<(), VerifyError> {
    for premise in &cert.premises {
        verify_certificate(premise, characteristic)?;
    }
    verify_node(cert, characteristic)
}

fn fail(node: &CertificateNode, condition: impl Into<String>) -> VerifyError {
    VerifyError {
        d: node.d,
        g: node.g,
        r: node.r,
        rule: node.rule,
        condition: condition.into(),
    }
}

fn check(node: &CertificateNode, ok: bool, condition: &str) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(fail(node, condition))
    }
}

fn expect_premises(node: &CertificateNode, n: usize) -> Result<(), VerifyError> {
    check(
        node,
        node.premises.len() == n,
        &format!("rule takes exactly {n} premise(s)"),
    )
}

fn verify_node(node: &CertificateNode, characteristic: Characteristic) -> Result<(), VerifyError> {
    let t = Triple::new(node.d, node.g, node.r).map_err(|e| fail(node, e.to_string()))?;

    check(
        node,
        matches!(node.status, Status::CertSemistable | Status::CertStable),
        "certificates conclude a certified status",
    )?;

    // Terminal triples never re-derive a contradicting status.
    match rules::exception_status(t) {
        Some(Status::KnownUnstable) => {
            return Err(fail(node, "triple is in the known-unstable registry"));
        }
        Some(Status::KnownStrictlySemistable) if node.status == Status::CertStable => {
            return Err(fail(node, "triple is known strictly semistable"));
        }
        _ => {}
    }

    match node.rule {
        RuleId::Interpolation => {
            expect_premises(node, 0)?;
            let re = rules::rule_interpolation(t)
                .ok_or_else(|| fail(node, "interpolation does not fire here"))?;
            check(node, re.status == node.status, "status mismatch")
        }
        RuleId::Genus1 => {
            expect_premises(node, 0)?;
            let re =
                rules::rule_genus1(t).ok_or_else(|| fail(node, "genus-1 rule does not fire"))?;
            check(node, re.status == node.status, "status mismatch")
        }
        RuleId::Genus2Semistable => {
            expect_premises(node, 0)?;
            check(
                node,
                t.g == 2 && t.r >= 4 && t.d >= 2 * t.r,
                "needs g = 2, r >= 4, d >= 2r",
            )?;
            check(
                node,
                node.status == Status::CertSemistable,
                "concludes semistable",
            )
        }
        RuleId::Genus2StableB2 => {
            expect_premises(node, 0)?;
            let RuleParams::B2Threshold { b2: stated } = node.params else {
                return Err(fail(node, "expected b2 threshold parameters"));
            };
            check(node, t.g == 2 && t.r >= 4, "needs g = 2, r >= 4")?;
            check(node, stated == b2(t.r), "recorded b2 differs from b2(r)")?;
            check(node, t.d >= stated, "degree below b2(r)")?;
            check(node, node.status == Status::CertStable, "concludes stable")
        }
        RuleId::Genus2StableSplit => {
            expect_premises(node, 0)?;
            let RuleParams::Split { d1, d2 } = node.params else {
                return Err(fail(node, "expected split parameters"));
            };
            check(node, t.g == 2 && t.r >= 4, "needs g = 2, r >= 4")?;
            check(node, d1 + d2 == t.d, "split must sum to d")?;
            check(
                node,
                d1 >= t.r + 1 && d2 >= t.r + 1,
                "split parts below r+1",
            )?;
            check(
                node,
                (t.r - 1).gcd(&(2 * d1 + 1)) == 1,
                "gcd(r-1, 2 d1 + 1) must be 1",
            )?;
            check(node, node.status == Status::CertStable, "concludes stable")
        }
        RuleId::Genus2StableGcd => {
            expect_premises(node, 0)?;
            let RuleParams::GcdWitness {
                elliptic_degree,
                restricted_degree,
            } = node.params
            else {
                return Err(fail(node, "expected gcd witness parameters"));
            };
            check(
                node,
                t.g == 2 && t.r >= 4 && t.d >= 2 * t.r,
                "needs g = 2, r >= 4, d >= 2r",
            )?;
            check(
                node,
                elliptic_degree == t.d - t.r + 1
                    && restricted_degree == elliptic_degree * (t.r + 1) + 2,
                "witness degrees inconsistent with (d, r)",
            )?;
            check(
                node,
                (t.r - 1).gcd(&restricted_degree) == 1,
                "restricted degree shares a factor with r-1",
            )?;
            check(node, node.status == Status::CertStable, "concludes stable")
        }
        RuleId::Special724 => {
            expect_premises(node, 0)?;
            check(node, (t.d, t.g, t.r) == (7, 2, 4), "only (7, 2, 4)")?;
            check(
                node,
                characteristic == Characteristic::Generic,
                "needs characteristic different from 2",
            )?;
            check(node, node.status == Status::CertStable, "concludes stable")
        }
        RuleId::EllipticConfig => {
            expect_premises(node, 0)?;
            let RuleParams::Config {
                parts,
                center_degree,
            } = &node.params
            else {
                return Err(fail(node, "expected configuration parameters"));
            };
            let cfg = EllipticConfig {
                parts: parts.clone(),
                center_degree: *center_degree,
            };
            let re =
                rules::validate_elliptic_config(t, &cfg).map_err(|e| fail(node, e.to_string()))?;
            check(
                node,
                re.status == node.status,
                "status differs from re-validation",
            )
        }
        RuleId::AttachRnc => {
            expect_premises(node, 1)?;
            let premise = &node.premises[0];
            check(node, premise.r == t.r, "ambient dimension changes")?;
            check(
                node,
                premise.g >= 2,
                "rational-curve attachment requires source genus >= 2",
            )?;
            check(
                node,
                premise.triple().rho() >= t.r - 1,
                "source rho below r-1",
            )?;
            check(
                node,
                t.d == premise.d + (t.r - 1) * (t.r - 1) && t.g == premise.g + t.r * (t.r - 1),
                "target is not the rnc shift of the premise",
            )?;
            check(
                node,
                node.status == premise.status,
                "status must match premise",
            )
        }
        RuleId::AttachLines => {
            expect_premises(node, 1)?;
            let premise = &node.premises[0];
            let RuleParams::Budget { a, b, c } = node.params else {
                return Err(fail(node, "expected line budget parameters"));
            };
            check(node, premise.r == t.r, "ambient dimension changes")?;
            LineBudget { a, b, c }
                .validate(t.r)
                .map_err(|e| fail(node, e.to_string()))?;
            check(
                node,
                t.d == premise.d + a && t.g == premise.g + b,
                "target is not the budget shift of the premise",
            )?;
            check(
                node,
                node.status == premise.status,
                "status must match premise",
            )
        }
        RuleId::CoprimeStable => {
            expect_premises(node, 1)?;
            let premise = &node.premises[0];
            check(
                node,
                (premise.d, premise.g, premise.r) == (t.d, t.g, t.r),
                "upgrade premise must be the same triple",
            )?;
            check(
                node,
                premise.status == Status::CertSemistable,
                "premise must be semistable",
            )?;
            check(node, t.g >= 2, "no stability claims at genus 1")?;
            let RuleParams::Coprime { degree_residue } = node.params else {
                return Err(fail(node, "expected coprimality parameters"));
            };
            check(
                node,
                degree_residue == t.degree_residue(),
                "recorded residue differs from 2d + 2g - 2",
            )?;
            check(
                node,
                (t.r - 1).gcd(&degree_residue) == 1,
                "degree residue shares a factor with r-1",
            )?;
            check(node, node.status == Status::CertStable, "concludes stable")
        }
    }
}
