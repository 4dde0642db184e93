//! Configurations of secant genus-1 curves.
//!
//! A center genus-1 curve of degree `e0 >= r+1` with attached genus-1
//! curves of degrees `e_i >= r+1` meeting it in `j_i` general points,
//! `0 < j_i <= min(u_{e_i}, u_{e0})`, is a curve of degree `e0 + sum e_i`
//! and genus `1 + sum j_i` with semistable normal bundle; it is stable
//! as soon as `r-1` is coprime to `2 e0 + sum j_i` or to some
//! `2 e_i + j_i`.

use num::Integer;

use crate::bn::{genus_block_index, u_secancy, Status, Triple};
use crate::number_theory::{b2, least_valid_d1};
use crate::rules::certificate::{
    CertificateNode, EllipticConfig, EllipticPart, RuleId, RuleParams,
};

/// Why a proposed configuration is invalid for its triple.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("elliptic configurations require r >= 4, got r = {0}")]
    AmbientTooSmall(i64),
    #[error("elliptic configurations require genus >= 2, got g = {0}")]
    GenusTooSmall(i64),
    #[error("configuration has no attached curves")]
    Empty,
    #[error("center degree {stated} differs from d - sum(e_i) = {actual}")]
    CenterDegreeMismatch { stated: i64, actual: i64 },
    #[error("center degree {0} is below r + 1")]
    CenterDegreeTooSmall(i64),
    #[error("part {index}: degree {degree} is below r + 1")]
    PartDegreeTooSmall { index: usize, degree: i64 },
    #[error("part {index}: secancy {secancy} is not positive")]
    SecancyNotPositive { index: usize, secancy: i64 },
    #[error("part {index}: secancy {secancy} exceeds min(u_e = {u_part}, u_e0 = {u_center})")]
    SecancyExceedsBound {
        index: usize,
        secancy: i64,
        u_part: i64,
        u_center: i64,
    },
    #[error("secancy sum {sum} differs from g - 1 = {expected}")]
    SecancySumMismatch { sum: i64, expected: i64 },
}

/// Checks a configuration against the triple and, if valid, returns a
/// certificate: semistable always, stable when one of the gcd
/// conditions holds.
pub fn validate_elliptic_config(
    t: Triple,
    cfg: &EllipticConfig,
) -> Result<CertificateNode, ConfigError> {
    if t.r < 4 {
        return Err(ConfigError::AmbientTooSmall(t.r));
    }
    if t.g < 2 {
        return Err(ConfigError::GenusTooSmall(t.g));
    }
    if cfg.parts.is_empty() {
        return Err(ConfigError::Empty);
    }
    let actual_center = t.d - cfg.parts_degree_sum();
    if cfg.center_degree != actual_center {
        return Err(ConfigError::CenterDegreeMismatch {
            stated: cfg.center_degree,
            actual: actual_center,
        });
    }
    if cfg.center_degree < t.r + 1 {
        return Err(ConfigError::CenterDegreeTooSmall(cfg.center_degree));
    }
    let u_center = u_secancy(cfg.center_degree, t.r);
    for (index, p) in cfg.parts.iter().enumerate() {
        if p.degree < t.r + 1 {
            return Err(ConfigError::PartDegreeTooSmall {
                index,
                degree: p.degree,
            });
        }
        if p.secancy < 1 {
            return Err(ConfigError::SecancyNotPositive {
                index,
                secancy: p.secancy,
            });
        }
        let u_part = u_secancy(p.degree, t.r);
        if p.secancy > u_part.min(u_center) {
            return Err(ConfigError::SecancyExceedsBound {
                index,
                secancy: p.secancy,
                u_part,
                u_center,
            });
        }
    }
    let sum = cfg.secancy_sum();
    if sum != t.g - 1 {
        return Err(ConfigError::SecancySumMismatch {
            sum,
            expected: t.g - 1,
        });
    }

    let status = if config_is_stable(t.r, cfg) {
        Status::CertStable
    } else {
        Status::CertSemistable
    };
    Ok(CertificateNode::leaf(
        t,
        status,
        RuleId::EllipticConfig,
        RuleParams::Config {
            parts: cfg.parts.clone(),
            center_degree: cfg.center_degree,
        },
    ))
}

fn config_is_stable(r: i64, cfg: &EllipticConfig) -> bool {
    let center = 2 * cfg.center_degree + cfg.secancy_sum();
    if (r - 1).gcd(&center) == 1 {
        return true;
    }
    cfg.parts
        .iter()
        .any(|p| (r - 1).gcd(&(2 * p.degree + p.secancy)) == 1)
}

/// Enumeration limits for the configuration search.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub max_parts: usize,
    pub max_candidates: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_parts: 8,
            max_candidates: 500_000,
        }
    }
}

/// Result of the configuration search. When the candidate cap was hit,
/// the enumeration is abandoned and only the canonical families count.
#[derive(Debug, Clone)]
pub struct ConfigSearchOutcome {
    pub certificate: Option<CertificateNode>,
    pub budget_exceeded: bool,
}

/// Searches for a configuration certifying `t`, preferring stable over
/// semistable certificates.
///
/// Degrees are scanned in a window of width `r-1` above the minimum
/// `max(r+1, ceil(2 j (r-1)/(r+1)))`; the gcd conditions depend on the
/// degrees only mod `r-1`, so nothing is gained past the window. Two
/// canonical families are always tried first: uniform secancies of
/// `u = u_{r+1}` (fires for `d >= (k+1)(r+1)`) and its stable variant
/// with an extra 1-secant curve of degree `b2(r) - r - 1` (fires for
/// `d >= b2(r) + k(r+1)`).
pub fn search_elliptic_config(t: Triple, search: &SearchConfig) -> ConfigSearchOutcome {
    if t.r < 4 || t.g < 2 {
        return ConfigSearchOutcome {
            certificate: None,
            budget_exceeded: false,
        };
    }

    let canonical = canonical_best(t);
    if let Some(c) = &canonical {
        if c.status == Status::CertStable {
            return ConfigSearchOutcome {
                certificate: canonical,
                budget_exceeded: false,
            };
        }
    }

    let mut enumerator = Enumerator {
        t,
        search: *search,
        candidates: 0,
        best_semistable: None,
        exceeded: false,
    };
    let found_stable = enumerator.run();

    if enumerator.exceeded {
        return ConfigSearchOutcome {
            certificate: canonical,
            budget_exceeded: true,
        };
    }
    let certificate = found_stable.or(canonical).or(enumerator.best_semistable);
    ConfigSearchOutcome {
        certificate,
        budget_exceeded: false,
    }
}

/// Best certificate among the two canonical families, if either fires.
fn canonical_best(t: Triple) -> Option<CertificateNode> {
    let stable = canonical_b2_variant(t);
    if stable.is_some() {
        return stable;
    }
    canonical_uniform(t)
}

/// Uniform family: `k-1` curves of degree `r+1` that are `u`-secant plus
/// one `(g-1) - (k-1)u`-secant curve, around a center of degree
/// `d - k(r+1)`. Fires iff `d >= (k+1)(r+1)`.
pub fn canonical_uniform(t: Triple) -> Option<CertificateNode> {
    if t.r < 4 || t.g < 2 {
        return None;
    }
    let u = u_secancy(t.r + 1, t.r);
    let k = genus_block_index(t.g, t.r);
    if t.d < (k + 1) * (t.r + 1) {
        return None;
    }
    let rem = (t.g - 1) - (k - 1) * u;
    let mut parts = vec![
        EllipticPart {
            degree: t.r + 1,
            secancy: u,
        };
        (k - 1) as usize
    ];
    parts.push(EllipticPart {
        degree: t.r + 1,
        secancy: rem,
    });
    let cfg = EllipticConfig {
        center_degree: t.d - k * (t.r + 1),
        parts,
    };
    Some(validate_elliptic_config(t, &cfg).expect("canonical uniform family must validate"))
}

/// Stable variant: one secancy is dropped and a 1-secant curve of degree
/// `b2(r) - r - 1` is added; its gcd condition holds by the choice of
/// `b2`. Fires iff `d >= b2(r) + k(r+1)`.
pub fn canonical_b2_variant(t: Triple) -> Option<CertificateNode> {
    if t.r < 4 || t.g < 2 {
        return None;
    }
    let u = u_secancy(t.r + 1, t.r);
    let k = genus_block_index(t.g, t.r);
    let b2r = b2(t.r);
    if t.d < b2r + k * (t.r + 1) {
        return None;
    }
    let rem = (t.g - 1) - (k - 1) * u;
    let mut parts = vec![
        EllipticPart {
            degree: t.r + 1,
            secancy: u,
        };
        (k - 1) as usize
    ];
    if rem >= 2 {
        parts.push(EllipticPart {
            degree: t.r + 1,
            secancy: rem - 1,
        });
    }
    parts.push(EllipticPart {
        degree: least_valid_d1(t.r),
        secancy: 1,
    });
    let cfg = EllipticConfig {
        center_degree: t.d - parts.iter().map(|p| p.degree).sum::<i64>(),
        parts,
    };
    let cert = validate_elliptic_config(t, &cfg).expect("canonical b2 variant must validate");
    debug_assert_eq!(cert.status, Status::CertStable);
    Some(cert)
}

struct Enumerator {
    t: Triple,
    search: SearchConfig,
    candidates: u64,
    best_semistable: Option<CertificateNode>,
    exceeded: bool,
}

impl Enumerator {
    fn min_degree(&self, secancy: i64) -> i64 {
        let r = self.t.r;
        let lower = (2 * secancy * (r - 1) + r) / (r + 1); // ceil(2j(r-1)/(r+1))
        lower.max(r + 1)
    }

    /// Runs the bounded enumeration; returns the first stable
    /// certificate in enumeration order, if any.
    fn run(&mut self) -> Option<CertificateNode> {
        let m = self.t.g - 1;
        let budget = self.t.d - (self.t.r + 1);
        if budget < self.t.r + 1 {
            return None;
        }
        // Secancy capacity: sum(u_{e_i}) <= u(sum e_i) <= u(budget).
        if m > u_secancy(budget, self.t.r) {
            return None;
        }
        let mut parts: Vec<i64> = Vec::new();
        self.partitions(m, m, 0, &mut parts)
    }

    /// Center degree needed so that `u_{e0}` admits the largest secancy.
    fn needed_center(&self, max_secancy: i64) -> i64 {
        self.min_degree(max_secancy)
    }

    /// Enumerates partitions of `remaining` into descending parts
    /// bounded by `max_part`, with `min_e_sum` the committed minimal
    /// degree load.
    fn partitions(
        &mut self,
        remaining: i64,
        max_part: i64,
        min_e_sum: i64,
        parts: &mut Vec<i64>,
    ) -> Option<CertificateNode> {
        if self.exceeded {
            return None;
        }
        if remaining == 0 {
            return self.assign_with_partition(parts);
        }
        if parts.len() == self.search.max_parts {
            return None;
        }
        let slots_left = (self.search.max_parts - parts.len() - 1) as i64;
        let center_load = if parts.is_empty() {
            // First part is the largest; it fixes the center requirement.
            0
        } else {
            self.needed_center(parts[0])
        };
        for a in (1..=max_part.min(remaining)).rev() {
            // Parts are descending, so the rest must fit under `a`.
            if remaining - a > slots_left * a {
                break;
            }
            let center = if parts.is_empty() {
                self.needed_center(a)
            } else {
                center_load
            };
            if min_e_sum + self.min_degree(a) + center > self.t.d {
                continue;
            }
            parts.push(a);
            let found = self.partitions(remaining - a, a, min_e_sum + self.min_degree(a), parts);
            parts.pop();
            if found.is_some() || self.exceeded {
                return found;
            }
        }
        None
    }

    fn assign_with_partition(&mut self, secancies: &[i64]) -> Option<CertificateNode> {
        let mins: Vec<i64> = secancies.iter().map(|&j| self.min_degree(j)).collect();
        // Suffix sums of minimal loads for budget pruning.
        let mut suffix = vec![0i64; mins.len() + 1];
        for i in (0..mins.len()).rev() {
            suffix[i] = suffix[i + 1] + mins[i];
        }
        let needed_center = self.needed_center(secancies[0]);
        let mut degrees = vec![0i64; mins.len()];
        self.assign(secancies, &mins, &suffix, needed_center, 0, 0, &mut degrees)
    }

    /// Recursive degree assignment over windows `[min, min + r - 1]`,
    /// pruning whole subtrees that cannot leave the center its share.
    #[allow(clippy::too_many_arguments)]
    fn assign(
        &mut self,
        secancies: &[i64],
        mins: &[i64],
        suffix: &[i64],
        needed_center: i64,
        idx: usize,
        sum: i64,
        degrees: &mut Vec<i64>,
    ) -> Option<CertificateNode> {
        if self.exceeded {
            return None;
        }
        if idx == secancies.len() {
            self.candidates += 1;
            if self.candidates > self.search.max_candidates {
                self.exceeded = true;
                return None;
            }
            let cfg = EllipticConfig {
                parts: secancies
                    .iter()
                    .zip(degrees.iter())
                    .map(|(&secancy, &degree)| EllipticPart { degree, secancy })
                    .collect(),
                center_degree: self.t.d - sum,
            };
            if let Ok(cert) = validate_elliptic_config(self.t, &cfg) {
                if cert.status == Status::CertStable {
                    return Some(cert);
                }
                if self.best_semistable.is_none() {
                    self.best_semistable = Some(cert);
                }
            }
            return None;
        }
        for e in mins[idx]..=(mins[idx] + self.t.r - 1) {
            if sum + e + suffix[idx + 1] + needed_center > self.t.d {
                break;
            }
            degrees[idx] = e;
            let found = self.assign(
                secancies,
                mins,
                suffix,
                needed_center,
                idx + 1,
                sum + e,
                degrees,
            );
            if found.is_some() || self.exceeded {
                return found;
            }
        }
        None
    }
}
