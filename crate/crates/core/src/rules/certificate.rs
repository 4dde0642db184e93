//! Derivation certificates: every certified triple carries a tree
//! recording which rule produced it and with what parameters, so the
//! whole derivation can be re-checked rule by rule.

use serde::{Deserialize, Serialize};

use crate::bn::{Status, Triple};

/// Identifies the rule that concluded a certificate node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    /// Interpolation: `r-1 | 2d + 2g - 2` makes the slope integral and
    /// interpolation forces semistability.
    Interpolation,
    /// Genus-1 base case: `(d, 1, r)` is semistable for `d >= r+1`.
    Genus1,
    /// Genus-2: degree at least `2r` gives semistability.
    Genus2Semistable,
    /// Genus-2 stability via the 2-secant rational-curve degeneration
    /// whose genus-1 component has coprime restricted degree.
    Genus2StableGcd,
    /// Genus-2 stability via an explicit two-curve split witness.
    Genus2StableSplit,
    /// Genus-2 stability for every degree at or above the split
    /// threshold `b2(r)`.
    Genus2StableB2,
    /// The cohomologically-proven stable triple (7, 2, 4), valid away
    /// from characteristic 2.
    Special724,
    /// A configuration of secant genus-1 curves around a center curve.
    EllipticConfig,
    /// Attaching `r-1` rational normal curves: `(d,g) -> (d+(r-1)^2, g+r(r-1))`.
    AttachRnc,
    /// Attaching a budget of 1- and 2-secant lines: `(d,g) -> (d+a, g+b)`.
    AttachLines,
    /// Semistable with degree coprime to rank is stable.
    CoprimeStable,
}

impl RuleId {
    pub fn name(&self) -> &'static str {
        match self {
            RuleId::Interpolation => "interpolation",
            RuleId::Genus1 => "genus1",
            RuleId::Genus2Semistable => "genus2-semistable",
            RuleId::Genus2StableGcd => "genus2-stable-gcd",
            RuleId::Genus2StableSplit => "genus2-stable-split",
            RuleId::Genus2StableB2 => "genus2-stable-b2",
            RuleId::Special724 => "special-7-2-4",
            RuleId::EllipticConfig => "elliptic-config",
            RuleId::AttachRnc => "attach-rnc",
            RuleId::AttachLines => "attach-lines",
            RuleId::CoprimeStable => "coprime-stable",
        }
    }
}

/// One genus-1 attachment: a curve of this degree meeting the center
/// curve in `secancy` general points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EllipticPart {
    pub degree: i64,
    pub secancy: i64,
}

/// A configuration of secant genus-1 curves: `parts` attached to a
/// center genus-1 curve of degree `center_degree`, which must equal
/// `d - sum(part degrees)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticConfig {
    pub parts: Vec<EllipticPart>,
    pub center_degree: i64,
}

impl EllipticConfig {
    pub fn secancy_sum(&self) -> i64 {
        self.parts.iter().map(|p| p.secancy).sum()
    }

    pub fn parts_degree_sum(&self) -> i64 {
        self.parts.iter().map(|p| p.degree).sum()
    }
}

/// Rule-specific parameters recorded on a certificate node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleParams {
    None,
    /// Split witness for genus-2 stability: `d = d1 + d2`.
    Split {
        d1: i64,
        d2: i64,
    },
    /// Genus-2 gcd branch: the degeneration's genus-1 component degree
    /// and the degree of the restricted normal bundle, coprime to r-1.
    GcdWitness {
        elliptic_degree: i64,
        restricted_degree: i64,
    },
    /// Genus-2 split-threshold branch.
    B2Threshold {
        b2: i64,
    },
    /// Elliptic configuration parameters.
    Config {
        parts: Vec<EllipticPart>,
        center_degree: i64,
    },
    /// Line-attachment budget.
    Budget {
        a: i64,
        b: i64,
        c: i64,
    },
    /// Coprimality upgrade: `gcd(r-1, 2d+2g-2) = 1`.
    Coprime {
        degree_residue: i64,
    },
}

/// A node in a derivation tree. Re-running `rule` on `params` and the
/// premise conclusions must re-derive `(d, g, r, status)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateNode {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub status: Status,
    pub rule: RuleId,
    pub params: RuleParams,
    pub premises: Vec<CertificateNode>,
}

impl CertificateNode {
    pub fn leaf(t: Triple, status: Status, rule: RuleId, params: RuleParams) -> Self {
        CertificateNode {
            d: t.d,
            g: t.g,
            r: t.r,
            status,
            rule,
            params,
            premises: Vec::new(),
        }
    }

    pub fn triple(&self) -> Triple {
        Triple {
            d: self.d,
            g: self.g,
            r: self.r,
        }
    }

    /// Serializes the tree to JSON. The field order is fixed by the
    /// struct layout, so output is byte-stable.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Renders the derivation as an indented tree for terminal output.
    pub fn render_tree(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(&format!(
            "({}, {}, {}) {} via {}",
            self.d,
            self.g,
            self.r,
            self.status,
            self.rule.name()
        ));
        match &self.params {
            RuleParams::None => {}
            RuleParams::Split { d1, d2 } => out.push_str(&format!(" [d = {d1} + {d2}]")),
            RuleParams::GcdWitness {
                elliptic_degree,
                restricted_degree,
            } => out.push_str(&format!(
                " [elliptic degree {elliptic_degree}, restricted degree {restricted_degree}]"
            )),
            RuleParams::B2Threshold { b2 } => out.push_str(&format!(" [b2 = {b2}]")),
            RuleParams::Config {
                parts,
                center_degree,
            } => {
                let ps: Vec<String> = parts
                    .iter()
                    .map(|p| format!("({}, {})", p.degree, p.secancy))
                    .collect();
                out.push_str(&format!(
                    " [parts {{{}}}, e0 = {center_degree}]",
                    ps.join(", ")
                ));
            }
            RuleParams::Budget { a, b, c } => {
                out.push_str(&format!(" [a = {a}, b = {b}, c = {c}]"))
            }
            RuleParams::Coprime { degree_residue } => {
                out.push_str(&format!(" [2d+2g-2 = {degree_residue}]"))
            }
        }
        out.push('\n');
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
    }
}
