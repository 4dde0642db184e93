//! Monotone fixed-point closure of the certification rules over a
//! bounded `(d, g)` grid for a fixed ambient dimension.
//!
//! Every grid point is seeded with its exception status or with the base
//! rules (interpolation, genus 1, genus 2, the special (7,2,4) fact, and
//! elliptic configurations); the step rules (line attachment,
//! rational-normal-curve attachment, coprimality upgrade) then propagate
//! to a fixed point. Joins are monotone and commutative, so the result
//! is the least fixed point and independent of application order; the
//! per-point certificates are assigned afterwards by a deterministic
//! pass, so output is byte-stable.

mod analysis;
mod verify;

pub use analysis::{
    compare_tables, crosscheck_closed_forms, thresholds_per_genus, unknown_pairs,
    CrosscheckOptions, TableDiff, Violation,
};
pub use verify::{verify_certificate, VerifyError};

use std::collections::HashMap;

use num::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bn::{Status, Triple};
use crate::number_theory::{binom2, LineBudget};
use crate::rules::{self, CertificateNode, SearchConfig};
pub use crate::rules::{Characteristic, Level};
use crate::DomainError;

/// How the (7,2,4) base fact participates in a closure.
///
/// `SeedOnly` admits the fact itself but keeps it out of the step rules;
/// the published degeneration thresholds are computed that way, since
/// they track the cofinal reach of the degeneration constructions and
/// the isolated stable point (7,2,4) sits below its genus-2 threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Special724Mode {
    Off,
    SeedOnly,
    Full,
}

/// Which rules participate in a closure run.
#[derive(Debug, Clone)]
pub struct RuleSet {
    pub interpolation: bool,
    pub genus1: bool,
    pub genus2: bool,
    pub special724: Special724Mode,
    pub elliptic: bool,
    pub attach_lines: bool,
    pub attach_rnc: bool,
    pub coprime_upgrade: bool,
    pub search: SearchConfig,
}

impl RuleSet {
    /// Everything the engine knows. Used for the unknown-pair tables,
    /// classification, and the closed-form cross-checks.
    pub fn full() -> Self {
        RuleSet {
            interpolation: true,
            genus1: true,
            genus2: true,
            special724: Special724Mode::Full,
            elliptic: true,
            attach_lines: true,
            attach_rnc: true,
            coprime_upgrade: true,
            search: SearchConfig::default(),
        }
    }

    /// The degeneration arguments only: no interpolation, no
    /// coprimality upgrade, and the (7,2,4) fact as an isolated seed.
    /// This is the rule set whose cofinal thresholds reproduce the
    /// published per-genus threshold table.
    pub fn degeneration() -> Self {
        RuleSet {
            interpolation: false,
            genus1: true,
            genus2: true,
            special724: Special724Mode::SeedOnly,
            elliptic: true,
            attach_lines: true,
            attach_rnc: true,
            coprime_upgrade: false,
            search: SearchConfig::default(),
        }
    }

    /// Disables one named rule; used by the cross-check's mutation mode.
    pub fn disable(&mut self, name: &str) -> Result<(), String> {
        match name {
            "interpolation" => self.interpolation = false,
            "genus1" => self.genus1 = false,
            "genus2" => self.genus2 = false,
            "special724" => self.special724 = Special724Mode::Off,
            "elliptic" => self.elliptic = false,
            "attach-lines" => self.attach_lines = false,
            "attach-rnc" => self.attach_rnc = false,
            "coprime" => self.coprime_upgrade = false,
            other => return Err(format!("unknown rule name: {other}")),
        }
        Ok(())
    }
}

/// A bounded closure domain: the BN triples with `1 <= g <= g_max`,
/// `d <= d_max`, `rho(d, g, r) >= 0`, for a fixed `r` and ground-field
/// characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub r: i64,
    pub d_max: i64,
    pub g_max: i64,
    pub characteristic: Characteristic,
}

impl Grid {
    pub fn new(
        r: i64,
        d_max: i64,
        g_max: i64,
        characteristic: Characteristic,
    ) -> Result<Self, DomainError> {
        if r < 3 || g_max < 1 || d_max < r + 1 {
            return Err(DomainError::InvalidTriple {
                d: d_max,
                g: g_max,
                r,
            });
        }
        Ok(Grid {
            r,
            d_max,
            g_max,
            characteristic,
        })
    }

    /// The default r = 4 grid: wide enough to enclose the published
    /// unknown-pair tables (g up to 85) and the semistability genus
    /// bound 113 for the dominance cross-check.
    pub fn default_r4(characteristic: Characteristic) -> Self {
        Grid {
            r: 4,
            d_max: 130,
            g_max: 150,
            characteristic,
        }
    }

    /// Least degree making `(d, g, r)` a BN triple.
    pub fn d_min(&self, g: i64) -> i64 {
        g + self.r - g / (self.r + 1)
    }

    pub fn contains(&self, d: i64, g: i64) -> bool {
        g >= 1 && g <= self.g_max && d <= self.d_max && d >= self.d_min(g)
    }

    pub fn triple(&self, d: i64, g: i64) -> Triple {
        Triple { d, g, r: self.r }
    }

    /// All grid points, genus-major then degree-ascending.
    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (1..=self.g_max).flat_map(move |g| (self.d_min(g)..=self.d_max).map(move |d| (d, g)))
    }
}

/// Worklist discipline for the fixed-point iteration. The least fixed
/// point is schedule-independent; `Shuffled` exists to test that.
#[derive(Debug, Clone, Copy)]
pub enum Schedule {
    Deterministic,
    Shuffled(u64),
}

/// Closure failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("rule attempted to set {attempted} on terminal {existing} at ({d}, {g}, {r})")]
    ConflictingStatus {
        d: i64,
        g: i64,
        r: i64,
        attempted: Status,
        existing: Status,
    },
}

/// The closure's state: a status per grid point plus, for every
/// certified point, a verifying certificate.
pub struct StatusMap {
    grid: Grid,
    rules: RuleSet,
    rows: Vec<Row>,
    /// Outcome of the elliptic search at every point where it ran.
    config_cache: HashMap<(i64, i64), Option<CertificateNode>>,
}

struct Row {
    d_min: i64,
    states: Vec<PointState>,
}

#[derive(Clone)]
struct PointState {
    status: Status,
    cert: Option<CertificateNode>,
}

impl StatusMap {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn rule_set(&self) -> &RuleSet {
        &self.rules
    }

    fn state(&self, d: i64, g: i64) -> Option<&PointState> {
        if !self.grid.contains(d, g) {
            return None;
        }
        let row = &self.rows[(g - 1) as usize];
        row.states.get((d - row.d_min) as usize)
    }

    fn state_mut(&mut self, d: i64, g: i64) -> &mut PointState {
        let row = &mut self.rows[(g - 1) as usize];
        &mut row.states[(d - row.d_min) as usize]
    }

    /// Status of a grid point; `Unknown` outside the grid is not
    /// meaningful, so this returns `None` there.
    pub fn status(&self, d: i64, g: i64) -> Option<Status> {
        self.state(d, g).map(|s| s.status)
    }

    /// Certificate attached to a certified point.
    pub fn certificate(&self, d: i64, g: i64) -> Option<&CertificateNode> {
        self.state(d, g).and_then(|s| s.cert.as_ref())
    }

    /// All points with a given status.
    pub fn points_with_status(&self, status: Status) -> Vec<(i64, i64)> {
        self.grid
            .points()
            .filter(|&(d, g)| self.status(d, g) == Some(status))
            .collect()
    }
}

/// Runs the closure with the deterministic schedule.
pub fn compute_closure(grid: Grid, rules: RuleSet) -> Result<StatusMap, ClosureError> {
    compute_closure_scheduled(grid, rules, Schedule::Deterministic)
}

/// Runs the closure under an explicit worklist schedule.
pub fn compute_closure_scheduled(
    grid: Grid,
    rules: RuleSet,
    schedule: Schedule,
) -> Result<StatusMap, ClosureError> {
    let mut engine = Engine::new(grid, rules, schedule);
    engine.seed_base_rules()?;
    engine.propagate()?;
    engine.run_elliptic_searches()?;
    engine.propagate()?;
    engine.assign_certificates();
    Ok(engine.into_map())
}

struct Engine {
    map: StatusMap,
    queue: Vec<(i64, i64)>,
    rng: Option<ChaCha8Rng>,
}

impl Engine {
    fn new(grid: Grid, rules: RuleSet, schedule: Schedule) -> Self {
        let rows = (1..=grid.g_max)
            .map(|g| {
                let d_min = grid.d_min(g);
                let len = (grid.d_max - d_min + 1).max(0) as usize;
                Row {
                    d_min,
                    states: vec![
                        PointState {
                            status: Status::Unknown,
                            cert: None,
                        };
                        len
                    ],
                }
            })
            .collect();
        let rng = match schedule {
            Schedule::Deterministic => None,
            Schedule::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Engine {
            map: StatusMap {
                grid,
                rules,
                rows,
                config_cache: HashMap::new(),
            },
            queue: Vec::new(),
            rng,
        }
    }

    fn into_map(self) -> StatusMap {
        self.map
    }

    fn pop(&mut self) -> Option<(i64, i64)> {
        if self.queue.is_empty() {
            return None;
        }
        match &mut self.rng {
            None => self.queue.pop(),
            Some(rng) => {
                let i = rng.gen_range(0..self.queue.len());
                Some(self.queue.swap_remove(i))
            }
        }
    }

    /// Joins `level` into the point's status. Returns whether the
    /// status strictly rose; terminal marks reject contradictions.
    fn raise(&mut self, d: i64, g: i64, level: Level) -> Result<bool, ClosureError> {
        let r = self.map.grid.r;
        let state = self.map.state_mut(d, g);
        match (state.status, level) {
            (Status::Unknown, _) => {
                state.status = level.status();
                Ok(true)
            }
            (Status::CertSemistable, Level::Stable) => {
                state.status = Status::CertStable;
                Ok(true)
            }
            (Status::CertSemistable, Level::Semistable) | (Status::CertStable, _) => Ok(false),
            // A semistable conclusion at a strictly-semistable triple is
            // entailed, not an upgrade.
            (Status::KnownStrictlySemistable, Level::Semistable) => Ok(false),
            (existing @ Status::KnownStrictlySemistable, Level::Stable)
            | (existing @ Status::KnownUnstable, _) => Err(ClosureError::ConflictingStatus {
                d,
                g,
                r,
                attempted: level.status(),
                existing,
            }),
        }
    }

    fn raise_and_enqueue(&mut self, d: i64, g: i64, level: Level) -> Result<(), ClosureError> {
        if self.raise(d, g, level)? {
            self.queue.push((d, g));
        }
        Ok(())
    }

    /// Seeds every point with its exception status or the cheap base
    /// rules. The elliptic search is deferred until the first
    /// propagation settles, since most deep points become stable through
    /// steps and never need it.
    fn seed_base_rules(&mut self) -> Result<(), ClosureError> {
        let grid = self.map.grid;
        let points: Vec<(i64, i64)> = grid.points().collect();
        for (d, g) in points {
            let t = grid.triple(d, g);
            debug_assert!(t.is_bn());
            if let Some(status) = rules::exception_status(t) {
                self.map.state_mut(d, g).status = status;
                continue;
            }
            for cert in [
                self.map
                    .rules
                    .interpolation
                    .then(|| rules::rule_interpolation(t)),
                self.map.rules.genus1.then(|| rules::rule_genus1(t)),
                self.map.rules.genus2.then(|| rules::rule_genus2(t)),
                (self.map.rules.special724 != Special724Mode::Off)
                    .then(|| rules::rule_special724(t, grid.characteristic)),
            ]
            .into_iter()
            .flatten()
            .flatten()
            {
                let level = level_of(cert.status).expect("base rules conclude a certified level");
                self.raise_and_enqueue(d, g, level)?;
            }
        }
        Ok(())
    }

    /// Runs the elliptic search once at every point the cheap rules and
    /// steps left below stable, recording the outcome for certificate
    /// assembly.
    fn run_elliptic_searches(&mut self) -> Result<(), ClosureError> {
        if !self.map.rules.elliptic {
            return Ok(());
        }
        let grid = self.map.grid;
        if grid.r < 4 {
            return Ok(());
        }
        let search = self.map.rules.search;
        let points: Vec<(i64, i64)> = grid
            .points()
            .filter(|&(d, g)| {
                g >= 2
                    && matches!(
                        self.map.status(d, g),
                        Some(Status::Unknown) | Some(Status::CertSemistable)
                    )
            })
            .collect();
        for (d, g) in points {
            let t = grid.triple(d, g);
            let outcome = rules::search_elliptic_config(t, &search);
            self.map
                .config_cache
                .insert((d, g), outcome.certificate.clone());
            if let Some(cert) = outcome.certificate {
                let level = level_of(cert.status).expect("config certificates are certified");
                self.raise_and_enqueue(d, g, level)?;
            }
        }
        Ok(())
    }

    /// Applies the step rules until the worklist drains.
    fn propagate(&mut self) -> Result<(), ClosureError> {
        let grid = self.map.grid;
        let r = grid.r;
        while let Some((d, g)) = self.pop() {
            let status = self.map.status(d, g).expect("queued points are in grid");
            let Some(level) = level_of(status) else {
                continue; // terminal marks never act as sources
            };
            let t = grid.triple(d, g);

            if self.map.rules.special724 == Special724Mode::SeedOnly && (d, g, r) == (7, 2, 4) {
                continue;
            }

            // Coprimality upgrade on the point itself.
            if self.map.rules.coprime_upgrade
                && level == Level::Semistable
                && g >= 2
                && (r - 1).gcd(&t.degree_residue()) == 1
            {
                self.raise_and_enqueue(d, g, Level::Stable)?;
                continue; // re-queued; steps run at the stronger level
            }

            // Rational-normal-curve attachment. Only sources of genus at
            // least 2 participate: the published tables treat genus-1
            // rows purely as line-attachment bases.
            if self.map.rules.attach_rnc && g >= 2 && t.rho() >= r - 1 {
                let (td, tg) = (d + (r - 1) * (r - 1), g + r * (r - 1));
                if grid.contains(td, tg) {
                    self.raise_and_enqueue(td, tg, level)?;
                }
            }

            // Line attachments over every budget fitting in the grid.
            if self.map.rules.attach_lines {
                let c_max = ((grid.d_max - d) + (grid.g_max - g)) / (r - 1);
                for c in 1..=c_max {
                    let total = c * (r - 1);
                    let b_lo = (total - (grid.d_max - d)).max(0);
                    let b_hi = binom2(c).min(grid.g_max - g).min(total / 2);
                    for b in b_lo..=b_hi {
                        let a = total - b;
                        debug_assert!(LineBudget { a, b, c }.validate(r).is_ok());
                        let (td, tg) = (d + a, g + b);
                        if grid.contains(td, tg) {
                            self.raise_and_enqueue(td, tg, level)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic certificate assignment: walks points in (g, d)
    /// order and picks, for each certified point, the first derivation
    /// in rule-priority order that re-derives its final status.
    fn assign_certificates(&mut self) {
        let grid = self.map.grid;
        let mut memo: HashMap<(i64, i64, Level), CertificateNode> = HashMap::new();
        let points: Vec<(i64, i64)> = grid.points().collect();
        for (d, g) in points {
            let status = self.map.status(d, g).unwrap();
            let Some(level) = level_of(status) else {
                continue;
            };
            let cert = self.build_certificate(d, g, level, &mut memo);
            self.map.state_mut(d, g).cert = Some(cert);
        }
    }

    fn build_certificate(
        &self,
        d: i64,
        g: i64,
        level: Level,
        memo: &mut HashMap<(i64, i64, Level), CertificateNode>,
    ) -> CertificateNode {
        if let Some(c) = memo.get(&(d, g, level)) {
            return c.clone();
        }
        let cert = self
            .derive(d, g, level, memo)
            .unwrap_or_else(|| panic!("no derivation for certified point ({d}, {g}) at {level}"));
        debug_assert_eq!(cert.status, level.status());
        memo.insert((d, g, level), cert.clone());
        cert
    }

    /// Tries the rules in priority order; returns the first certificate
    /// concluding exactly `level`.
    fn derive(
        &self,
        d: i64,
        g: i64,
        level: Level,
        memo: &mut HashMap<(i64, i64, Level), CertificateNode>,
    ) -> Option<CertificateNode> {
        let grid = self.map.grid;
        let r = grid.r;
        let t = grid.triple(d, g);
        let want = level.status();

        if self.map.rules.interpolation {
            if let Some(c) = rules::rule_interpolation(t) {
                if c.status == want {
                    return Some(c);
                }
            }
        }
        if self.map.rules.genus1 {
            if let Some(c) = rules::rule_genus1(t) {
                if c.status == want {
                    return Some(c);
                }
            }
        }
        if self.map.rules.genus2 {
            if let Some(c) = rules::rule_genus2(t) {
                if c.status == want {
                    return Some(c);
                }
            }
        }
        if self.map.rules.special724 != Special724Mode::Off {
            if let Some(c) = rules::rule_special724(t, grid.characteristic) {
                if c.status == want {
                    return Some(c);
                }
            }
        }
        if self.map.rules.elliptic {
            let candidate = match self.map.config_cache.get(&(d, g)) {
                Some(cached) => cached.clone(),
                None => rules::canonical_b2_variant(t).or_else(|| rules::canonical_uniform(t)),
            };
            if let Some(c) = candidate {
                if c.status == want {
                    return Some(c);
                }
            }
        }

        // Rational-normal-curve attachment from the shifted source.
        if self.map.rules.attach_rnc {
            let (sd, sg) = (d - (r - 1) * (r - 1), g - r * (r - 1));
            if sg >= 2 && self.source_certified(sd, sg, level) {
                let premise = self.build_certificate(sd, sg, level, memo);
                if let Some(c) = rules::step_attach_rnc(&premise) {
                    debug_assert_eq!((c.d, c.g), (d, g));
                    return Some(c);
                }
            }
        }

        // Line attachments, budgets in (c, b) order.
        if self.map.rules.attach_lines {
            let c_max = (d + g) / (r - 1);
            for c in 1..=c_max {
                let total = c * (r - 1);
                for b in 0..=binom2(c).min(g - 1).min(total / 2) {
                    let a = total - b;
                    let (sd, sg) = (d - a, g - b);
                    if !self.source_certified(sd, sg, level) {
                        continue;
                    }
                    let premise = self.build_certificate(sd, sg, level, memo);
                    let cert = rules::step_attach_lines(&premise, LineBudget { a, b, c })
                        .expect("enumerated budgets are valid");
                    debug_assert_eq!((cert.d, cert.g), (d, g));
                    return Some(cert);
                }
            }
        }

        // Coprimality upgrade of this point's own semistable evidence.
        if self.map.rules.coprime_upgrade && level == Level::Stable {
            let premise = self.build_certificate(d, g, Level::Semistable, memo);
            if let Some(c) = rules::step_coprime_upgrade(&premise) {
                return Some(c);
            }
        }
        None
    }

    /// Whether `(sd, sg)` is a usable step source at `level`: in the
    /// grid, carrying a certified (non-terminal) status at least
    /// `level`, and not the isolated (7,2,4) seed.
    fn source_certified(&self, sd: i64, sg: i64, level: Level) -> bool {
        if !self.map.grid.contains(sd, sg) {
            return false;
        }
        if self.map.rules.special724 == Special724Mode::SeedOnly
            && (sd, sg, self.map.grid.r) == (7, 2, 4)
        {
            return false;
        }
        match self.map.status(sd, sg) {
            Some(Status::CertStable) => true,
            Some(Status::CertSemistable) => level == Level::Semistable,
            _ => false,
        }
    }
}

fn level_of(status: Status) -> Option<Level> {
    match status {
        Status::CertSemistable => Some(Level::Semistable),
        Status::CertStable => Some(Level::Stable),
        _ => None,
    }
}
