//! Closure runs on the default r = 4 grid against the published
//! reference data, plus the closure-level invariants.

use std::sync::LazyLock;

use bnstab::closure::{
    compare_tables, compute_closure, compute_closure_scheduled, thresholds_per_genus,
    unknown_pairs, Schedule,
};
use bnstab::tables::ReferenceTables;
use bnstab::{Characteristic, Grid, Level, RuleSet, Status, StatusMap};

static GENERIC: LazyLock<StatusMap> = LazyLock::new(|| {
    compute_closure(Grid::default_r4(Characteristic::Generic), RuleSet::full())
        .expect("generic closure")
});

static CHAR2: LazyLock<StatusMap> = LazyLock::new(|| {
    compute_closure(Grid::default_r4(Characteristic::Two), RuleSet::full()).expect("char-2 closure")
});

static DEGEN: LazyLock<StatusMap> = LazyLock::new(|| {
    compute_closure(
        Grid::default_r4(Characteristic::Generic),
        RuleSet::degeneration(),
    )
    .expect("degeneration closure")
});

static REF: LazyLock<ReferenceTables> = LazyLock::new(ReferenceTables::load);

#[test]
fn semistable_unknowns_match_table2() {
    let diff = compare_tables(&GENERIC, &REF.table2_pairs, Level::Semistable);
    assert!(
        diff.is_empty(),
        "missing_from_engine (engine certified): {:?}\nextra_in_engine (engine unknown): {:?}\naudit:\n{}",
        diff.missing_from_engine,
        diff.extra_in_engine,
        diff.audit_certificates
            .iter()
            .map(|c| c.render_tree())
            .collect::<Vec<_>>()
            .join("\n")
    );
}

#[test]
fn stable_unknowns_match_table3() {
    let diff = compare_tables(&GENERIC, &REF.table3_pairs, Level::Stable);
    assert!(
        diff.is_empty(),
        "missing_from_engine: {:?}\nextra_in_engine: {:?}\naudit:\n{}",
        diff.missing_from_engine,
        diff.extra_in_engine,
        diff.audit_certificates
            .iter()
            .map(|c| c.render_tree())
            .collect::<Vec<_>>()
            .join("\n")
    );
}

#[test]
fn degeneration_thresholds_match_table1() {
    for row in &REF.table1 {
        assert_eq!(
            DEGEN.grid().d_min(row.g),
            row.d_min,
            "d_min at g = {}",
            row.g
        );
        assert_eq!(
            thresholds_per_genus(&DEGEN, row.g, Level::Semistable),
            Some(row.semistable),
            "semistable threshold at g = {}",
            row.g
        );
        assert_eq!(
            thresholds_per_genus(&DEGEN, row.g, Level::Stable),
            Some(row.stable),
            "stable threshold at g = {}",
            row.g
        );
    }
}

// The characteristic-2 closure loses exactly the forward orbit of the
// (7,2,4) base fact: (7,2), its rnc shift (16,14), and the second shift
// (25,26) (rho(16,14,4) = 4 >= 3, so the chain has length three).
#[test]
fn char2_delta_is_the_724_orbit() {
    let generic = unknown_pairs(&GENERIC, 2, Level::Semistable);
    let char2 = unknown_pairs(&CHAR2, 2, Level::Semistable);
    let delta: Vec<(i64, i64)> = char2
        .iter()
        .filter(|p| !generic.contains(p))
        .copied()
        .collect();
    assert_eq!(delta, vec![(7, 2), (16, 14), (25, 26)]);
    // And nothing becomes unknown in the other direction.
    assert!(generic.iter().all(|p| char2.contains(p)));
}

// The unknown sets are a property of the whole BN range, not of the
// default grid: far beyond it (genus up to 230) nothing new becomes
// unknown and nothing listed becomes certified.
#[test]
fn tables_stable_on_enlarged_grid() {
    let grid = Grid::new(4, 220, 230, Characteristic::Generic).unwrap();
    let map = compute_closure(grid, RuleSet::full()).unwrap();
    assert!(compare_tables(&map, &REF.table2_pairs, Level::Semistable).is_empty());
    assert!(compare_tables(&map, &REF.table3_pairs, Level::Stable).is_empty());
}

// Injected discrepancy: deleting a reference pair must surface as one
// engine-side extra unknown.
#[test]
fn compare_tables_detects_injected_discrepancy() {
    let mut reference = REF.table2_pairs.clone();
    let removed = reference.pop().unwrap();
    let diff = compare_tables(&GENERIC, &reference, Level::Semistable);
    assert_eq!(diff.extra_in_engine, vec![removed]);
    assert!(diff.missing_from_engine.is_empty());
}

#[test]
fn spot_classifications() {
    let m = &GENERIC;
    assert_eq!(m.status(7, 2), Some(Status::CertStable));
    assert_eq!(m.status(6, 2), Some(Status::KnownUnstable));
    assert_eq!(m.status(8, 5), Some(Status::KnownStrictlySemistable));
    assert_eq!(m.status(8, 2), Some(Status::CertSemistable));
    assert_eq!(m.status(16, 14), Some(Status::CertStable));
    assert_eq!(CHAR2.status(7, 2), Some(Status::Unknown));
    assert_eq!(CHAR2.status(16, 14), Some(Status::Unknown));
}

// Five shuffled worklist schedules produce identical statuses (least
// fixed point of a monotone operator on a finite lattice).
#[test]
fn closure_is_schedule_independent() {
    let grid = Grid::new(4, 60, 50, Characteristic::Generic).unwrap();
    let base = compute_closure(grid, RuleSet::full()).unwrap();
    for seed in 0..5u64 {
        let shuffled =
            compute_closure_scheduled(grid, RuleSet::full(), Schedule::Shuffled(seed)).unwrap();
        for (d, g) in grid.points() {
            assert_eq!(
                base.status(d, g),
                shuffled.status(d, g),
                "status at ({d}, {g}) differs under seed {seed}"
            );
            assert_eq!(
                base.certificate(d, g),
                shuffled.certificate(d, g),
                "certificate at ({d}, {g}) differs under seed {seed}"
            );
        }
    }
}

// Enlarging the grid never demotes a status on the common region.
#[test]
fn closure_is_monotone_in_grid() {
    let small = compute_closure(
        Grid::new(4, 45, 40, Characteristic::Generic).unwrap(),
        RuleSet::full(),
    )
    .unwrap();
    let rank = |s: Status| match s {
        Status::Unknown => 0,
        Status::CertSemistable => 1,
        Status::CertStable => 2,
        Status::KnownUnstable | Status::KnownStrictlySemistable => 3,
    };
    for (d, g) in small.grid().points() {
        let lo = small.status(d, g).unwrap();
        let hi = GENERIC.status(d, g).unwrap();
        assert!(
            rank(hi) >= rank(lo),
            "({d}, {g}) demoted from {lo:?} to {hi:?}"
        );
    }
}

// Certified points carry certificates; unknown and terminal points do
// not. Periodicity echo: certified (d, g) with g >= 2 and rho >= 3
// yields (d+9, g+12) at the same-or-higher status.
#[test]
fn certificates_and_periodicity() {
    let grid = GENERIC.grid();
    for (d, g) in grid.points() {
        let status = GENERIC.status(d, g).unwrap();
        match status {
            Status::CertSemistable | Status::CertStable => {
                assert!(GENERIC.certificate(d, g).is_some(), "({d}, {g}) lacks cert");
            }
            _ => assert!(GENERIC.certificate(d, g).is_none()),
        }
        if g >= 2 && status == Status::CertSemistable || status == Status::CertStable {
            let t = grid.triple(d, g);
            if g >= 2 && t.rho() >= 3 && grid.contains(d + 9, g + 12) {
                let up = GENERIC.status(d + 9, g + 12).unwrap();
                assert!(
                    up.entails_semistable(),
                    "periodicity echo fails at ({d}, {g}) -> ({}, {})",
                    d + 9,
                    g + 12
                );
                if status == Status::CertStable {
                    assert!(up.entails_stable() || up == Status::KnownStrictlySemistable);
                }
            }
        }
    }
}

// Exception triples never receive certificates from any rule.
#[test]
fn exceptions_stay_terminal() {
    for &(d, g) in &[(6i64, 2i64), (8, 5)] {
        assert!(GENERIC.certificate(d, g).is_none());
        assert!(GENERIC.status(d, g).unwrap().is_terminal());
    }
}
