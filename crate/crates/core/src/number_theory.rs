//! Arithmetic helpers behind the genus-2 and line-attachment rules: the
//! split threshold `b2(r)`, minimal line budgets, and small prime
//! searches — each with an independent brute-force oracle for testing.

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::DomainError;

/// A decomposition `d = d1 + d2` with `d1, d2 >= r+1` and
/// `gcd(r-1, 2 d1 + 1) = 1`, witnessing that a genus-2 curve of degree d
/// degenerates to two genus-1 curves whose restricted normal bundle
/// degrees make one side stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub d1: i64,
    pub d2: i64,
}

/// A line-attachment budget: `a` lines total, `b` of them 2-secant,
/// attached through `c` points with `a + b = c(r-1)`,
/// `b <= min(a, C(c,2))`. Adds `a` to the degree and `b` to the genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBudget {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl LineBudget {
    /// Checks the budget constraints for ambient dimension `r`.
    pub fn validate(&self, r: i64) -> Result<(), DomainError> {
        let err = |reason: &str| DomainError::InvalidBudget {
            a: self.a,
            b: self.b,
            c: self.c,
            r,
            reason: reason.to_string(),
        };
        if self.c < 1 || self.a < 1 || self.b < 0 {
            return Err(err("requires c >= 1, a >= 1, b >= 0"));
        }
        if self.a + self.b != self.c * (r - 1) {
            return Err(err("a + b must equal c(r-1)"));
        }
        if self.b > self.a {
            return Err(err("b exceeds a"));
        }
        if self.b > binom2(self.c) {
            return Err(err("b exceeds C(c,2)"));
        }
        Ok(())
    }
}

pub(crate) fn binom2(c: i64) -> i64 {
    c * (c - 1) / 2
}

/// Smallest valid split of `d` (minimal `d1`), if one exists.
pub fn split_witness(d: i64, r: i64) -> Option<SplitWitness> {
    assert!(r >= 4, "split_witness requires r >= 4");
    for d1 in (r + 1)..=(d - (r + 1)) {
        if (r - 1).gcd(&(2 * d1 + 1)) == 1 {
            return Some(SplitWitness { d1, d2: d - d1 });
        }
    }
    None
}

/// Least `d1 >= r+1` with `gcd(r-1, 2 d1 + 1) = 1`. Always exists within
/// `r-1` steps since `2 d1 + 1` sweeps the odd residues mod `r-1`.
pub(crate) fn least_valid_d1(r: i64) -> i64 {
    assert!(r >= 4);
    ((r + 1)..)
        .find(|&d1| (r - 1).gcd(&(2 * d1 + 1)) == 1)
        .unwrap()
}

/// Least threshold past which every degree splits: once `d1` is the least
/// valid summand, every `d >= d1 + r + 1` splits as `(d1, d - d1)`, and
/// `d1 + r` does not (all smaller `d1` fail by minimality). Agrees with
/// `b2_oracle` by this upward-closure argument.
pub fn b2(r: i64) -> i64 {
    least_valid_d1(r) + r + 1
}

/// Independent brute-force evaluation of `b2(r)`: scans every degree in
/// `[2r+2, scan_limit]` for a split and locates the least threshold whose
/// run of successes reaches `scan_limit`.
pub fn b2_oracle(r: i64, scan_limit: i64) -> Result<i64, DomainError> {
    assert!(r >= 4, "b2_oracle requires r >= 4");
    assert!(scan_limit >= 4 * r, "scan_limit must be at least 4r");
    if split_witness(scan_limit, r).is_none() {
        return Err(DomainError::ScanExhausted { scan_limit });
    }
    let mut d = scan_limit;
    while d > 2 * r + 2 && split_witness(d - 1, r).is_some() {
        d -= 1;
    }
    // d - 1 fails (explicitly, or vacuously at d = 2r+2 where no split
    // can exist because d1, d2 >= r+1 force d >= 2r+2).
    Ok(d)
}

/// Smallest prime `p >= 5` that does not divide `m`.
pub fn smallest_nondividing_prime(m: i64) -> i64 {
    assert!(m >= 1);
    let mut p = 5;
    loop {
        if is_prime(p) && m % p != 0 {
            return p;
        }
        p += 2;
    }
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// The minimal line budget realizing genus increment `b`: least `a` (with
/// its `c`) such that `a + b = c(r-1)` and `b <= min(a, C(c,2))`. `b = 0`
/// is allowed (pure degree bumps through 1-secant lines only; the
/// 2-secant constraint is vacuous).
pub fn min_line_budget(b: i64, r: i64) -> LineBudget {
    assert!(b >= 0 && r >= 3);
    for c in 1.. {
        let a = c * (r - 1) - b;
        if a >= 1 && a >= b && b <= binom2(c) {
            return LineBudget { a, b, c };
        }
    }
    unreachable!()
}
