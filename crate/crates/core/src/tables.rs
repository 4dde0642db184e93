//! Embedded r = 4 reference data: the per-genus threshold table and the
//! unknown-pair tables in their published family notation
//! `(d0 + 9k, g0 + 12k)`, expanded to explicit pairs at load time. The
//! published counts (48 and 63) are the data's own checksum and are
//! asserted on load, as is a content hash of the data file.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Raw bytes of the versioned reference-data file.
pub const REFERENCE_TABLES_JSON: &str = include_str!("../data/p4_reference_tables.json");

/// Pinned SHA-256 of `REFERENCE_TABLES_JSON`.
pub const REFERENCE_TABLES_SHA256: &str =
    "05845b3d05821034e521b950706dceb692cbdecacdad998dc20f0243dc5c8f46";

/// One row of the threshold table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub g: i64,
    pub d_min: i64,
    pub semistable: i64,
    pub stable: i64,
}

/// A family `(d0 + 9k, g0 + 12k)` for `0 <= k <= k_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairFamily {
    pub d0: i64,
    pub g0: i64,
    pub k_max: i64,
}

impl PairFamily {
    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..=self.k_max).map(|k| (self.d0 + 9 * k, self.g0 + 12 * k))
    }

    /// Rendered in the published notation.
    pub fn notation(&self) -> String {
        if self.k_max == 0 {
            format!("({}, {})", self.d0, self.g0)
        } else {
            format!(
                "(9k+{}, 12k+{}), 0 <= k <= {}",
                self.d0, self.g0, self.k_max
            )
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawTables {
    version: u32,
    #[allow(dead_code)]
    comment: String,
    table1: Vec<ThresholdRow>,
    table2_families: Vec<PairFamily>,
    table3_families: Vec<PairFamily>,
    char2_extra_semistable_unknown: Vec<RawPair>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
struct RawPair {
    d: i64,
    g: i64,
}

/// The embedded reference tables, expanded and checked.
#[derive(Debug, Clone)]
pub struct ReferenceTables {
    pub table1: Vec<ThresholdRow>,
    pub table2_families: Vec<PairFamily>,
    pub table3_families: Vec<PairFamily>,
    /// The 48 semistability-unknown pairs, sorted by (g, d).
    pub table2_pairs: Vec<(i64, i64)>,
    /// The 63 stability-unknown pairs, sorted by (g, d).
    pub table3_pairs: Vec<(i64, i64)>,
    /// Pairs that additionally become unknown in characteristic 2.
    pub char2_extra: Vec<(i64, i64)>,
}

impl ReferenceTables {
    /// Parses the embedded data and asserts its published checksums:
    /// 12 threshold rows, 48 pairs, 63 pairs.
    pub fn load() -> Self {
        let raw: RawTables =
            serde_json::from_str(REFERENCE_TABLES_JSON).expect("embedded reference data parses");
        assert_eq!(raw.version, 1, "unexpected reference data version");
        assert_eq!(raw.table1.len(), 12, "threshold table has 12 rows");

        let expand = |families: &[PairFamily]| -> Vec<(i64, i64)> {
            let mut pairs: Vec<(i64, i64)> = families.iter().flat_map(|f| f.pairs()).collect();
            pairs.sort_by_key(|&(d, g)| (g, d));
            pairs.dedup();
            pairs
        };
        let table2_pairs = expand(&raw.table2_families);
        let table3_pairs = expand(&raw.table3_families);
        assert_eq!(table2_pairs.len(), 48, "table 2 lists 48 pairs");
        assert_eq!(table3_pairs.len(), 63, "table 3 lists 63 pairs");

        ReferenceTables {
            table1: raw.table1,
            table2_families: raw.table2_families,
            table3_families: raw.table3_families,
            table2_pairs,
            table3_pairs,
            char2_extra: raw
                .char2_extra_semistable_unknown
                .iter()
                .map(|p| (p.d, p.g))
                .collect(),
        }
    }

    /// SHA-256 of the embedded data file, as recorded in the build.
    pub fn content_hash() -> String {
        let mut h = Sha256::new();
        h.update(REFERENCE_TABLES_JSON.as_bytes());
        let digest = h.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Groups explicit pairs back into maximal `(d0 + 9k, g0 + 12k)` chains,
/// sorted by `(g0, d0)`. Regrouping the expanded tables reproduces the
/// published family notation exactly.
pub fn group_into_families(pairs: &[(i64, i64)]) -> Vec<PairFamily> {
    use std::collections::BTreeSet;
    let set: BTreeSet<(i64, i64)> = pairs.iter().copied().collect();
    let mut families = Vec::new();
    for &(d, g) in &set {
        if set.contains(&(d - 9, g - 12)) {
            continue; // interior member of a chain
        }
        let mut k_max = 0;
        while set.contains(&(d + 9 * (k_max + 1), g + 12 * (k_max + 1))) {
            k_max += 1;
        }
        families.push(PairFamily {
            d0: d,
            g0: g,
            k_max,
        });
    }
    families.sort_by_key(|f| (f.g0, f.d0));
    families
}
