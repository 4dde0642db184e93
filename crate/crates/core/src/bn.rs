//! Basic numerical objects of Brill-Noether theory: triples, the
//! Brill-Noether number, normal-bundle degree and slope, secancy bounds,
//! adjusted slopes of nodal subbundles, and the Farey neighbor test.

use num::bigint::BigInt;
use num::One;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::DomainError;

/// A candidate curve type `(d, g, r)`: degree `d >= 0`, genus `g >= 0`,
/// ambient projective dimension `r >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub d: i64,
    pub g: i64,
    pub r: i64,
}

impl Triple {
    pub fn new(d: i64, g: i64, r: i64) -> Result<Self, DomainError> {
        if d < 0 || g < 0 || r < 3 {
            return Err(DomainError::InvalidTriple { d, g, r });
        }
        Ok(Triple { d, g, r })
    }

    /// The Brill-Noether number `rho(d,g,r) = g - (r+1)(g - d + r)`.
    /// A general nondegenerate degree-d genus-g curve exists in P^r
    /// exactly when this is nonnegative.
    pub fn rho(&self) -> i64 {
        self.g - (self.r + 1) * (self.g - self.d + self.r)
    }

    /// True when `rho >= 0`.
    pub fn is_bn(&self) -> bool {
        self.rho() >= 0
    }

    /// Degree of the normal bundle: `d(r+1) + 2g - 2`.
    pub fn normal_bundle_degree(&self) -> i64 {
        self.d * (self.r + 1) + 2 * self.g - 2
    }

    /// Slope of the normal bundle as an exact fraction:
    /// `(d(r+1) + 2g - 2) / (r - 1)`.
    pub fn normal_bundle_slope(&self) -> Rational {
        Rational::new(self.normal_bundle_degree(), self.r - 1)
    }

    /// `2d + 2g - 2`, the residue class that controls whether the
    /// normal-bundle degree is coprime to its rank `r - 1`
    /// (`d(r+1) + 2g - 2 ≡ 2d + 2g - 2 mod r-1`).
    pub fn degree_residue(&self) -> i64 {
        2 * self.d + 2 * self.g - 2
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.d, self.g, self.r)
    }
}

/// Certification status of a triple.
///
/// `Unknown < CertSemistable < CertStable` form the chain the closure
/// climbs. `KnownUnstable` and `KnownStrictlySemistable` are terminal
/// marks from the exception registry: rules never touch them, and any
/// attempt to push a contradicting status onto one is a hard error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Unknown,
    CertSemistable,
    CertStable,
    KnownUnstable,
    KnownStrictlySemistable,
}

impl Status {
    /// True when the status entails semistability of the normal bundle.
    pub fn entails_semistable(&self) -> bool {
        matches!(
            self,
            Status::CertSemistable | Status::CertStable | Status::KnownStrictlySemistable
        )
    }

    /// True when the status entails stability of the normal bundle.
    pub fn entails_stable(&self) -> bool {
        matches!(self, Status::CertStable)
    }

    pub fn is_terminal(&self) -> bool {
        matches!(
            self,
            Status::KnownUnstable | Status::KnownStrictlySemistable
        )
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Unknown => "unknown",
            Status::CertSemistable => "semistable",
            Status::CertStable => "stable",
            Status::KnownUnstable => "known-unstable",
            Status::KnownStrictlySemistable => "known-strictly-semistable",
        };
        f.write_str(s)
    }
}

/// The secancy bound `u_e = floor((r+1) e / (2(r-1)))`: the largest
/// number of general points of a degree-e genus-1 attachment that still
/// admits general tangent directions.
pub fn u_secancy(e: i64, r: i64) -> i64 {
    assert!(e >= 1 && r >= 3, "u_secancy requires e >= 1, r >= 3");
    (r + 1) * e / (2 * (r - 1))
}

/// The unique `k >= 0` with `(k-1) u < g-1 <= k u`, where
/// `u = u_secancy(r+1, r)`; `k = 0` exactly when `g = 1`.
pub fn genus_block_index(g: i64, r: i64) -> i64 {
    assert!(g >= 1, "genus_block_index requires g >= 1");
    let u = u_secancy(r + 1, r);
    // ceil((g-1)/u) for g >= 1.
    (g - 1 + u - 1) / u
}

/// The integers entering the adjusted-slope formula for a subbundle of a
/// bundle on a nodal curve: rank and degree of the subbundle, plus the
/// codimension of the fiber match at each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalSubbundleDatum {
    pub sub_rank: i64,
    pub sub_degree: i64,
    pub node_codims: Vec<i64>,
}

impl NodalSubbundleDatum {
    pub fn new(sub_rank: i64, sub_degree: i64, node_codims: Vec<i64>) -> Result<Self, DomainError> {
        assert!(sub_rank >= 1, "subbundle rank must be positive");
        for &c in &node_codims {
            if c < 0 || c > sub_rank {
                return Err(DomainError::CodimOutOfRange {
                    value: c,
                    rank: sub_rank,
                });
            }
        }
        Ok(NodalSubbundleDatum {
            sub_rank,
            sub_degree,
            node_codims,
        })
    }
}

/// Adjusted slope of a nodal subbundle:
/// `deg/rank - (sum of node codimensions)/rank`, exactly.
pub fn adjusted_slope(datum: &NodalSubbundleDatum) -> Rational {
    let codim_sum: i64 = datum.node_codims.iter().sum();
    Rational::new(datum.sub_degree - codim_sum, datum.sub_rank)
}

/// Decides whether `lo < hi` are consecutive in the Farey sequence of
/// order `n` (all fractions with denominator at most `n`, extended
/// beyond the unit interval): the cross-difference must be 1 and the
/// denominators must sum past `n`, so that the mediant — the first
/// fraction to appear between them — needs a denominator larger than
/// `n`.
pub fn farey_consecutive(lo: &Rational, hi: &Rational, n: i64) -> Result<bool, DomainError> {
    assert!(n >= 1, "Farey order must be at least 1");
    let order = BigInt::from(n);
    for x in [lo, hi] {
        if x.denom() > &order {
            return Err(DomainError::DenominatorExceedsOrder {
                denom: x.denom().to_string(),
                order: n,
            });
        }
    }
    if lo >= hi {
        return Err(DomainError::NotOrdered);
    }
    let cross = hi.numer() * lo.denom() - lo.numer() * hi.denom();
    Ok(cross.is_one() && lo.denom() + hi.denom() > order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(d: i64, g: i64, r: i64) -> Triple {
        Triple::new(d, g, r).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(t(7, 2, 4).rho(), 7);
        for r in 3..=40 {
            assert_eq!(t(r + 1, 1, r).rho(), 1);
        }
        // rho(b2(r), 2, r) = (r+1) b2(r) - r(r+3)
        for r in 4..=40 {
            let b2 = crate::number_theory::b2(r);
            assert_eq!(t(b2, 2, r).rho(), (r + 1) * b2 - r * (r + 3));
        }
        assert_eq!(t(6, 4, 3).rho(), 0);
        assert!(!t(3, 2, 4).is_bn());
    }

    #[test]
    fn normal_bundle_degree_examples() {
        assert_eq!(t(7, 2, 4).normal_bundle_degree(), 37);
        for (d, r) in [(5, 4), (9, 6), (12, 3)] {
            assert_eq!(t(d, 1, r).normal_bundle_degree(), d * (r + 1));
            assert_eq!(t(d, 0, r).normal_bundle_degree(), d * (r + 1) - 2);
        }
    }

    #[test]
    fn normal_bundle_slope_examples() {
        assert_eq!(t(7, 2, 4).normal_bundle_slope(), Rational::new(37, 3));
        assert_eq!(t(5, 1, 4).normal_bundle_slope(), Rational::new(25, 3));
        assert!(t(4, 1, 3).normal_bundle_slope().eq_integer(8));
    }

    // slope * (r-1) = degree, exactly, and the slope equals the
    // alternative form d + 2(d+g-1)/(r-1).
    #[test]
    fn slope_degree_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let tr = t(
                rng.gen_range(0..400),
                rng.gen_range(0..400),
                rng.gen_range(3..40),
            );
            let slope = tr.normal_bundle_slope();
            let prod = slope.clone() * Rational::from_integer(tr.r - 1);
            assert!(prod.eq_integer(tr.normal_bundle_degree()));
            let alt = Rational::from_integer(tr.d) + Rational::new(2 * (tr.d + tr.g - 1), tr.r - 1);
            assert_eq!(slope, alt);
        }
    }

    // The shift underlying the rational-normal-curve attachment:
    // rho(d + (r-1)^2, g + r(r-1), r) = rho(d,g,r) - (r-1).
    #[test]
    fn rho_shift_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let tr = t(
                rng.gen_range(0..500),
                rng.gen_range(0..500),
                rng.gen_range(3..50),
            );
            let shifted = t(
                tr.d + (tr.r - 1) * (tr.r - 1),
                tr.g + tr.r * (tr.r - 1),
                tr.r,
            );
            assert_eq!(shifted.rho(), tr.rho() - (tr.r - 1));
        }
    }

    // Algebraic core of the line-attachment slope computation: both
    // slope differences collapse to N + e in exact arithmetic.
    #[test]
    fn line_attachment_slope_shift_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let s = rng.gen_range(1i64..=12);
            let e = rng.gen_range(0i64..=30);
            let n = rng.gen_range(0i64..=30);
            let a = rng.gen_range(-100i64..=100);
            let delta = rng.gen_range(-20i64..=20);
            let deg_n = rng.gen_range(-100i64..=200);
            let r = rng.gen_range(3i64..=20);

            let lhs = Rational::new(a + s * e + delta, s) - Rational::new(a - n * s + delta, s);
            let rhs = Rational::new(deg_n + 2 * n + e * (r - 1), r - 1)
                - Rational::new(deg_n - n * (r - 3), r - 1);
            assert_eq!(lhs, rhs);
            assert!(lhs.eq_integer(n + e));
        }
    }

    #[test]
    fn u_secancy_examples() {
        assert_eq!(u_secancy(5, 4), 4);
        assert_eq!(u_secancy(6, 4), 5);
        assert_eq!(u_secancy(4, 3), 4);
    }

    #[test]
    fn genus_block_examples() {
        assert_eq!(genus_block_index(2, 4), 1);
        assert_eq!(genus_block_index(1, 4), 0);
        assert_eq!(genus_block_index(6, 4), 2);
        // Defining inequalities (k-1)u < g-1 <= ku for a sweep.
        for r in 3..=12 {
            let u = u_secancy(r + 1, r);
            for g in 1..=200 {
                let k = genus_block_index(g, r);
                assert!((k - 1) * u < g - 1 && g - 1 <= k * u, "g={g} r={r} k={k}");
            }
        }
    }

    #[test]
    fn adjusted_slope_examples() {
        let d1 = NodalSubbundleDatum::new(1, 5, vec![1]).unwrap();
        assert!(adjusted_slope(&d1).eq_integer(4));
        let d2 = NodalSubbundleDatum::new(2, 6, vec![1, 2]).unwrap();
        assert_eq!(adjusted_slope(&d2), Rational::new(3, 2));
        let d3 = NodalSubbundleDatum::new(3, 12, vec![]).unwrap();
        assert!(adjusted_slope(&d3).eq_integer(4));
        assert!(NodalSubbundleDatum::new(2, 6, vec![3]).is_err());
    }

    #[test]
    fn farey_examples() {
        let f = |a, b| Rational::new(a, b);
        assert_eq!(farey_consecutive(&f(12, 1), &f(37, 3), 3), Ok(true));
        assert_eq!(farey_consecutive(&f(0, 1), &f(1, 1), 1), Ok(true));
        assert_eq!(farey_consecutive(&f(1, 3), &f(2, 5), 5), Ok(true));
        // Cross-difference 1 but the mediant 1/2 fits in order 2.
        assert_eq!(farey_consecutive(&f(0, 1), &f(1, 1), 2), Ok(false));
        assert!(matches!(
            farey_consecutive(&f(1, 7), &f(1, 2), 5),
            Err(DomainError::DenominatorExceedsOrder { .. })
        ));
        assert_eq!(
            farey_consecutive(&f(1, 2), &f(1, 3), 3),
            Err(DomainError::NotOrdered)
        );
    }

    // Brute-force equivalence on [0, 2] for small orders: consecutive
    // means adjacent in the sorted list of all fractions p/q, q <= n.
    #[test]
    fn farey_matches_enumeration_up_to_order_12() {
        for n in 1..=12i64 {
            let mut seq: Vec<Rational> = Vec::new();
            for q in 1..=n {
                for p in 0..=(2 * q) {
                    let f = Rational::new(p, q);
                    if !seq.contains(&f) {
                        seq.push(f);
                    }
                }
            }
            seq.sort();
            for w in seq.windows(2) {
                let adjacent = farey_consecutive(&w[0], &w[1], n).unwrap();
                assert!(adjacent, "order {n}: {} and {} are adjacent", w[0], w[1]);
            }
            // Non-adjacent pairs must be rejected.
            for i in 0..seq.len() {
                for j in (i + 2)..seq.len() {
                    assert!(!farey_consecutive(&seq[i], &seq[j], n).unwrap());
                }
            }
        }
    }
}
