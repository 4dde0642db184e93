//! Closed-form (semi)stability predicates derived from the inductive
//! rules. They never feed the closure; they exist so the closure can be
//! cross-checked against them (the rule closure must dominate every
//! closed form it proves).

use crate::bn::{genus_block_index, Triple};
use crate::number_theory::{b2, min_line_budget};
use crate::rules::Level;

/// Which closed-form condition fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormReason {
    /// Genus-1 curves always have semistable normal bundle.
    Genus1,
    /// Genus at or above the bound that exhausts every residue of the
    /// line/rational-curve induction.
    GenusBound { bound: i64 },
    /// Degree at or above the minimum of the three closed degree bounds.
    DegreeBound,
    /// Degree bound purely in `g` and `r` replacing the block-index term.
    DegreeBoundVariant,
    /// A direct line-budget plus rational-curve-chain threshold.
    LineRncBound { threshold: i64 },
}

impl std::fmt::Display for ClosedFormReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedFormReason::Genus1 => write!(f, "genus 1"),
            ClosedFormReason::GenusBound { bound } => write!(f, "genus bound g >= {bound}"),
            ClosedFormReason::DegreeBound => write!(f, "degree bound"),
            ClosedFormReason::DegreeBoundVariant => write!(f, "degree bound (variant)"),
            ClosedFormReason::LineRncBound { threshold } => {
                write!(f, "line/rnc threshold d >= {threshold}")
            }
        }
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0 && a >= 0);
    (a + b - 1) / b
}

fn binom2(c: i64) -> i64 {
    c * (c - 1) / 2
}

/// The genus bound obtained by climbing from a cofinal base row
/// `(d0, g0)`: `g0 + C(r-1, 2) + q0 r(r-1) + 1` with
/// `q0 = ceil((2 rho(d0,g0,r) + 5r^2 - 7r - 2) / (2(r-1)))`.
pub fn induction_genus_bound(d0: i64, g0: i64, r: i64) -> i64 {
    let t = Triple { d: d0, g: g0, r };
    debug_assert!(t.is_bn());
    let q0 = ceil_div(2 * t.rho() + 5 * r * r - 7 * r - 2, 2 * (r - 1));
    g0 + binom2(r - 1) + q0 * r * (r - 1) + 1
}

/// Genus bound for semistability (base: genus-1 curves of degree r+1).
pub fn genus_bound_semistable(r: i64) -> i64 {
    induction_genus_bound(r + 1, 1, r)
}

/// Genus bound for stability (base: genus-2 curves of degree b2(r)).
pub fn genus_bound_stable(r: i64) -> i64 {
    induction_genus_bound(b2(r), 2, r)
}

/// Semistability closed form: genus 1, the genus bound, the minimum of
/// the three degree bounds, or the pure-(g, r) variant.
pub fn closed_form_semistable(t: Triple) -> Option<ClosedFormReason> {
    if !t.is_bn() || t.g < 1 {
        return None;
    }
    if t.g == 1 {
        return Some(ClosedFormReason::Genus1);
    }
    let bound = genus_bound_semistable(t.r);
    if t.g >= bound {
        return Some(ClosedFormReason::GenusBound { bound });
    }
    closed_form_semistable_degree_only(t)
}

/// Stability closed form: the genus bound or `b2(r)` plus the minimum of
/// the three stable degree bounds. The stability machinery needs
/// `r >= 4` (b2 is defined there).
pub fn closed_form_stable(t: Triple) -> Option<ClosedFormReason> {
    if !t.is_bn() || t.g < 2 || t.r < 4 {
        return None;
    }
    let bound = genus_bound_stable(t.r);
    if t.g >= bound {
        return Some(ClosedFormReason::GenusBound { bound });
    }
    closed_form_stable_degree_only(t)
}

/// Just the degree-based semistability conditions (no genus bounds).
pub fn closed_form_semistable_degree_only(t: Triple) -> Option<ClosedFormReason> {
    if !t.is_bn() || t.g < 2 {
        return None;
    }
    let (d, g, r) = (t.d, t.g, t.r);
    let a = 4 * d >= 4 * g + r * r + 8 * r - 12;
    let k = genus_block_index(g, r);
    let b = d >= (k + 1) * (r + 1);
    let c = d >= (g - 1) * (2 * r - 3) + r + 1;
    if a || b || c {
        return Some(ClosedFormReason::DegreeBound);
    }
    if d * (r * r + 3) >= 2 * (r * r - 1) * (g - 1) + (2 * r + 2) * (r * r + 3) {
        return Some(ClosedFormReason::DegreeBoundVariant);
    }
    None
}

/// Just the degree-based stability conditions (no genus bound).
pub fn closed_form_stable_degree_only(t: Triple) -> Option<ClosedFormReason> {
    if !t.is_bn() || t.g < 2 || t.r < 4 {
        return None;
    }
    let (d, g, r) = (t.d, t.g, t.r);
    let b2r = b2(r);
    // d >= b2 + g + r^2/4 + r - 5, via 4(d - b2) >= 4g + r^2 + 4r - 20.
    let a = 4 * (d - b2r) >= 4 * g + r * r + 4 * r - 20;
    let k = genus_block_index(g, r);
    let b = d >= b2r + k * (r + 1);
    let c = d >= b2r + (g - 1) * (2 * r - 3);
    if a || b || c {
        return Some(ClosedFormReason::DegreeBound);
    }
    None
}

/// Sharpest direct line-budget/rational-curve-chain threshold for genus
/// `g`: minimizes `base + a_b + q(r-1)^2` over decompositions
/// `g = g0 + b + q r(r-1)`, where the base row is genus-1 curves (from
/// degree r+1, semistable) or genus-2 curves (from degree b2(r), stable).
pub fn line_rnc_threshold(g: i64, r: i64, level: Level) -> Option<i64> {
    let (g0, base) = match level {
        Level::Semistable => (1, r + 1),
        Level::Stable => {
            if r < 4 {
                return None;
            }
            (2, b2(r))
        }
    };
    if g < g0 {
        return None;
    }
    let m = g - g0;
    let period = r * (r - 1);
    let mut best: Option<i64> = None;
    for q in 0..=(m / period) {
        let b = m - q * period;
        let threshold = if b == 0 && q == 0 {
            base
        } else {
            base + min_line_budget(b, r).a + q * (r - 1) * (r - 1)
        };
        best = Some(best.map_or(threshold, |x| x.min(threshold)));
    }
    best
}

/// The line/rnc closed form as a predicate on triples.
pub fn line_rnc_bound(t: Triple, level: Level) -> Option<ClosedFormReason> {
    if !t.is_bn() || t.g < 1 {
        return None;
    }
    let threshold = line_rnc_threshold(t.g, t.r, level)?;
    if t.d >= threshold {
        Some(ClosedFormReason::LineRncBound { threshold })
    } else {
        None
    }
}
