//! Queries over a completed closure: per-genus thresholds, unknown-pair
//! tables, diffs against reference tables, and the closed-form
//! dominance cross-check.

use crate::bn::Status;
use crate::closure::{Level, StatusMap};
use crate::rules::{self, line_rnc_bound, CertificateNode, ClosedFormReason};

/// Guard band subtracted from `d_max` for cofinal threshold queries.
fn degree_guard(r: i64) -> i64 {
    r * (r - 1) + 2 * r
}

/// Least `d` such that every BN point `(d', g)` with
/// `d <= d' <= d_max - guard` is certified at the requested level;
/// `None` if no such degree exists in range.
pub fn thresholds_per_genus(map: &StatusMap, g: i64, level: Level) -> Option<i64> {
    let grid = map.grid();
    assert!(
        g >= 1 && g <= grid.g_max - grid.r * (grid.r - 1),
        "genus {g} outside the guarded threshold range"
    );
    let d_hi = grid.d_max - degree_guard(grid.r);
    let mut threshold = None;
    for d in (grid.d_min(g)..=d_hi).rev() {
        let ok = match (map.status(d, g), level) {
            (Some(s), Level::Semistable) => s.entails_semistable(),
            (Some(s), Level::Stable) => s.entails_stable(),
            (None, _) => false,
        };
        if ok {
            threshold = Some(d);
        } else {
            break;
        }
    }
    threshold
}

/// Unknown pairs at a level, sorted by `(g, d)`.
///
/// Semistable: points still `Unknown` (exception-registry points carry
/// terminal marks and are excluded). Stable: points certified
/// semistable but not stable, excluding the strictly-semistable mark.
pub fn unknown_pairs(map: &StatusMap, min_genus: i64, level: Level) -> Vec<(i64, i64)> {
    let mut pairs: Vec<(i64, i64)> = map
        .grid()
        .points()
        .filter(|&(d, g)| {
            g >= min_genus
                && match level {
                    Level::Semistable => {
                        map.status(d, g) == Some(Status::Unknown)
                            && rules::exception_status(map.grid().triple(d, g)).is_none()
                    }
                    Level::Stable => map.status(d, g) == Some(Status::CertSemistable),
                }
        })
        .collect();
    pairs.sort_by_key(|&(d, g)| (g, d));
    pairs
}

/// Exact set comparison between the engine's unknown pairs and a
/// reference list of unknown pairs.
#[derive(Debug, Clone, Default)]
pub struct TableDiff {
    /// Pairs the reference lists as unknown that the engine certified.
    /// Each comes with its certificate in `audit_certificates`.
    pub missing_from_engine: Vec<(i64, i64)>,
    /// Pairs the engine reports unknown beyond the reference.
    pub extra_in_engine: Vec<(i64, i64)>,
    /// Certificates for `missing_from_engine`, for manual audit.
    pub audit_certificates: Vec<CertificateNode>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.missing_from_engine.is_empty() && self.extra_in_engine.is_empty()
    }
}

pub fn compare_tables(map: &StatusMap, reference: &[(i64, i64)], level: Level) -> TableDiff {
    let engine = unknown_pairs(map, 2, level);
    let mut diff = TableDiff::default();
    for &p in reference {
        if !engine.contains(&p) {
            diff.missing_from_engine.push(p);
            if let Some(cert) = map.certificate(p.0, p.1) {
                diff.audit_certificates.push(cert.clone());
            }
        }
    }
    for &p in &engine {
        if !reference.contains(&p) {
            diff.extra_in_engine.push(p);
        }
    }
    diff.missing_from_engine.sort_by_key(|&(d, g)| (g, d));
    diff.extra_in_engine.sort_by_key(|&(d, g)| (g, d));
    diff
}

/// A grid triple where a closed-form predicate fires but the closure
/// certifies less.
#[derive(Debug, Clone)]
pub struct Violation {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub level: Level,
    pub reason: ClosedFormReason,
    pub status: Status,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}): closed form claims {} via {}, closure has {}",
            self.d, self.g, self.r, self.level, self.reason, self.status
        )
    }
}

/// Which closed-form conditions participate in a cross-check.
#[derive(Debug, Clone, Copy)]
pub struct CrosscheckOptions {
    /// Include the cubic-in-r genus bounds (useful only on grids tall
    /// enough to reach them).
    pub genus_bounds: bool,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        CrosscheckOptions { genus_bounds: true }
    }
}

/// Every closed form was derived from the rules, so the rule closure
/// must dominate: returns the grid triples where a closed form fires
/// but the closure status is lower. Expected empty.
pub fn crosscheck_closed_forms(map: &StatusMap, options: CrosscheckOptions) -> Vec<Violation> {
    let grid = map.grid();
    let mut violations = Vec::new();
    for (d, g) in grid.points() {
        let t = grid.triple(d, g);
        let status = map.status(d, g).unwrap();

        if !status.entails_semistable() {
            let fired = semistable_reason(map, t.d, t.g, options);
            if let Some(reason) = fired {
                violations.push(Violation {
                    d,
                    g,
                    r: grid.r,
                    level: Level::Semistable,
                    reason,
                    status,
                });
            }
        }
        if g >= 2 && grid.r >= 4 && !status.entails_stable() {
            // The strictly-semistable canonical curve is genuinely not
            // stable; a closed form firing there would be a defect in
            // the bound itself, so it stays in the check.
            if let Some(reason) = stable_reason(map, t.d, t.g, options) {
                violations.push(Violation {
                    d,
                    g,
                    r: grid.r,
                    level: Level::Stable,
                    reason,
                    status,
                });
            }
        }
    }
    violations
}

fn semistable_reason(
    map: &StatusMap,
    d: i64,
    g: i64,
    options: CrosscheckOptions,
) -> Option<ClosedFormReason> {
    let t = map.grid().triple(d, g);
    if options.genus_bounds {
        if let Some(reason) = rules::closed_form_semistable(t) {
            return Some(reason);
        }
    } else {
        // Degree-based conditions only.
        if g >= 2 {
            if let Some(reason) = rules::closed_form_semistable_degree_only(t) {
                return Some(reason);
            }
        }
    }
    line_rnc_bound(t, Level::Semistable)
}

fn stable_reason(
    map: &StatusMap,
    d: i64,
    g: i64,
    options: CrosscheckOptions,
) -> Option<ClosedFormReason> {
    let t = map.grid().triple(d, g);
    if options.genus_bounds {
        if let Some(reason) = rules::closed_form_stable(t) {
            return Some(reason);
        }
    } else if let Some(reason) = rules::closed_form_stable_degree_only(t) {
        return Some(reason);
    }
    line_rnc_bound(t, Level::Stable)
}
