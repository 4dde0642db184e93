//! Batch interface to the certification engine: classify a triple, emit
//! unknown-pair tables and per-genus thresholds, compute b2 ranges,
//! verify certificates, and run the closed-form cross-checks.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bnstab::closure::{
    compare_tables, compute_closure, compute_closure_scheduled, crosscheck_closed_forms,
    thresholds_per_genus, unknown_pairs, verify_certificate, CrosscheckOptions, Schedule,
    TableDiff,
};
use bnstab::number_theory::{b2, smallest_nondividing_prime, split_witness};
use bnstab::render::{render_csv, render_json_lines, render_markdown, OutputFormat};
use bnstab::rules::exception_reason;
use bnstab::tables::{group_into_families, ReferenceTables, REFERENCE_TABLES_SHA256};
use bnstab::{CertificateNode, Characteristic, Grid, Level, RuleSet, Status, Triple};

// Exit codes: 0 success / certified / clean diff.
const EXIT_UNKNOWN: u8 = 10;
const EXIT_KNOWN_UNSTABLE: u8 = 11;
const EXIT_BELOW_REQUESTED: u8 = 12;
const EXIT_DIFF_NONEMPTY: u8 = 20;
const EXIT_VIOLATIONS: u8 = 21;
const EXIT_INVALID_CERT: u8 = 22;
const EXIT_PRECONDITION: u8 = 64;

#[derive(Parser)]
#[command(
    name = "bnstab",
    about = "Certifies (semi)stability of normal bundles of general Brill-Noether curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single triple (d, g, r) and print its certificate.
    Classify {
        d: i64,
        g: i64,
        r: i64,
        /// Ground field of characteristic 2.
        #[arg(long)]
        char_two: bool,
        /// Level the exit code reports on.
        #[arg(long, default_value = "semistable")]
        level: String,
        /// Write the certificate JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the unknown-pair table at a level; diffs against the
    /// published tables when r = 4.
    Table {
        #[arg(long, default_value_t = 4)]
        r: i64,
        #[arg(long, default_value = "semistable")]
        level: String,
        #[arg(long)]
        char_two: bool,
        #[arg(long)]
        d_max: Option<i64>,
        #[arg(long)]
        g_max: Option<i64>,
        #[arg(long, default_value_t = 2)]
        min_genus: i64,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-genus cofinal thresholds of the degeneration closure; diffs
    /// against the published threshold table when r = 4.
    Thresholds {
        #[arg(long, default_value_t = 4)]
        r: i64,
        /// Largest genus row to report.
        #[arg(long, default_value_t = 13)]
        g_upper: i64,
        #[arg(long)]
        d_max: Option<i64>,
        #[arg(long)]
        g_max: Option<i64>,
        #[arg(long)]
        char_two: bool,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split thresholds b2(r) with witnesses and bound checks.
    B2 {
        #[arg(long, default_value_t = 4)]
        r_min: i64,
        #[arg(long)]
        r_max: i64,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file produced by classify.
    VerifyCert {
        file: PathBuf,
        #[arg(long)]
        char_two: bool,
    },
    /// Closed-form dominance cross-check; optionally disable a rule to
    /// confirm the checker notices, or re-run under shuffled schedules.
    Crosscheck {
        /// Comma-separated ambient dimensions.
        #[arg(long, default_value = "4")]
        r: String,
        #[arg(long)]
        d_max: Option<i64>,
        #[arg(long)]
        g_max: Option<i64>,
        #[arg(long)]
        char_two: bool,
        /// Mutation mode: disable one rule by name.
        #[arg(long)]
        disable_rule: Option<String>,
        /// Also re-run each closure under this many shuffled schedules.
        #[arg(long, default_value_t = 0)]
        schedules: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Classify {
            d,
            g,
            r,
            char_two,
            level,
            out,
        } => classify(d, g, r, characteristic(char_two), parse_level(&level)?, out),
        Command::Table {
            r,
            level,
            char_two,
            d_max,
            g_max,
            min_genus,
            format,
            out,
        } => table(
            r,
            parse_level(&level)?,
            characteristic(char_two),
            d_max,
            g_max,
            min_genus,
            parse_format(&format)?,
            out,
        ),
        Command::Thresholds {
            r,
            g_upper,
            d_max,
            g_max,
            char_two,
            format,
            out,
        } => thresholds(
            r,
            g_upper,
            d_max,
            g_max,
            characteristic(char_two),
            parse_format(&format)?,
            out,
        ),
        Command::B2 {
            r_min,
            r_max,
            format,
            out,
        } => b2_rows(r_min, r_max, parse_format(&format)?, out),
        Command::VerifyCert { file, char_two } => verify_cert(&file, characteristic(char_two)),
        Command::Crosscheck {
            r,
            d_max,
            g_max,
            char_two,
            disable_rule,
            schedules,
            seed,
        } => crosscheck(
            &r,
            d_max,
            g_max,
            characteristic(char_two),
            disable_rule,
            schedules,
            seed,
        ),
    }
}

fn characteristic(char_two: bool) -> Characteristic {
    if char_two {
        Characteristic::Two
    } else {
        Characteristic::Generic
    }
}

fn parse_level(s: &str) -> Result<Level, String> {
    match s {
        "semistable" => Ok(Level::Semistable),
        "stable" => Ok(Level::Stable),
        other => Err(format!(
            "unknown level: {other} (expected semistable or stable)"
        )),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| format!("writing {path:?}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn default_grid(
    r: i64,
    d_max: Option<i64>,
    g_max: Option<i64>,
    ch: Characteristic,
) -> Result<Grid, String> {
    let (dd, gg) = if r == 4 { (130, 150) } else { (110, 60) };
    Grid::new(r, d_max.unwrap_or(dd), g_max.unwrap_or(gg), ch).map_err(|e| e.to_string())
}

fn classify(
    d: i64,
    g: i64,
    r: i64,
    ch: Characteristic,
    level: Level,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let t = Triple::new(d, g, r).map_err(|e| e.to_string())?;
    println!("triple: {t}");
    if g == 0 {
        println!("status: out of scope (the rules start at genus 1)");
        return Ok(ExitCode::from(EXIT_PRECONDITION));
    }
    println!("rho: {}", t.rho());
    if !t.is_bn() {
        println!("not a BN triple: rho < 0 (no general curve of this type exists)");
        return Ok(ExitCode::from(EXIT_PRECONDITION));
    }
    println!("normal bundle degree: {}", t.normal_bundle_degree());
    println!("normal bundle slope: {}", t.normal_bundle_slope());

    let grid = Grid::new(r, d, g.max(1), ch).map_err(|e| e.to_string())?;
    let map = compute_closure(grid, RuleSet::full()).map_err(|e| e.to_string())?;
    let status = map.status(d, g).expect("classified point is in its grid");
    println!("status: {status}");
    if let Some(reason) = exception_reason(t) {
        println!("reason: {reason}");
    }
    if let Some(cert) = map.certificate(d, g) {
        println!("certificate:\n{}", cert.render_tree());
        if let Some(path) = out {
            fs::write(&path, cert.to_json()).map_err(|e| format!("writing {path:?}: {e}"))?;
            println!("certificate written to {}", path.display());
        }
    }

    let code = match (status, level) {
        (Status::CertStable, _) => 0,
        (Status::CertSemistable | Status::KnownStrictlySemistable, Level::Semistable) => 0,
        (Status::CertSemistable | Status::KnownStrictlySemistable, Level::Stable) => {
            EXIT_BELOW_REQUESTED
        }
        (Status::KnownUnstable, _) => EXIT_KNOWN_UNSTABLE,
        (Status::Unknown, _) => EXIT_UNKNOWN,
    };
    Ok(ExitCode::from(code))
}

#[allow(clippy::too_many_arguments)]
fn table(
    r: i64,
    level: Level,
    ch: Characteristic,
    d_max: Option<i64>,
    g_max: Option<i64>,
    min_genus: i64,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let grid = default_grid(r, d_max, g_max, ch)?;
    let map = compute_closure(grid, RuleSet::full()).map_err(|e| e.to_string())?;
    let pairs = unknown_pairs(&map, min_genus, level);

    let mut text = String::new();
    match format {
        OutputFormat::Markdown => {
            if r == 4 {
                let families = group_into_families(&pairs);
                let rows: Vec<Vec<String>> = families
                    .iter()
                    .map(|f| {
                        vec![
                            f.notation(),
                            f.pairs()
                                .map(|(d, g)| format!("({d}, {g})"))
                                .collect::<Vec<_>>()
                                .join(" "),
                        ]
                    })
                    .collect();
                text.push_str(&render_markdown(&["family", "pairs"], &rows));
            } else {
                let rows: Vec<Vec<String>> = pairs
                    .iter()
                    .map(|&(d, g)| vec![d.to_string(), g.to_string()])
                    .collect();
                text.push_str(&render_markdown(&["d", "g"], &rows));
            }
            text.push_str(&format!("\n{} pairs with {} unknown\n", pairs.len(), level));
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = pairs
                .iter()
                .map(|&(d, g)| vec![d.to_string(), g.to_string()])
                .collect();
            text.push_str(&render_csv(&["d", "g"], &rows));
        }
        OutputFormat::JsonLines => {
            #[derive(serde::Serialize)]
            struct RowOut {
                d: i64,
                g: i64,
            }
            let rows: Vec<RowOut> = pairs.iter().map(|&(d, g)| RowOut { d, g }).collect();
            text.push_str(&render_json_lines(&rows));
        }
    }

    let mut clean = true;
    if r == 4 && matches!(format, OutputFormat::Markdown) {
        let reference = ReferenceTables::load();
        let mut expected = match level {
            Level::Semistable => reference.table2_pairs.clone(),
            Level::Stable => reference.table3_pairs.clone(),
        };
        if ch == Characteristic::Two && level == Level::Semistable {
            expected.extend(reference.char2_extra.iter().copied());
            expected.sort_by_key(|&(d, g)| (g, d));
        }
        let diff = compare_tables(&map, &expected, level);
        text.push_str(&render_diff(&diff));
        text.push_str(&format!(
            "reference data sha256: {REFERENCE_TABLES_SHA256}\n"
        ));
        clean = diff.is_empty();
    }

    emit(&text, out)?;
    Ok(if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_DIFF_NONEMPTY)
    })
}

fn render_diff(diff: &TableDiff) -> String {
    let mut s = String::new();
    if diff.is_empty() {
        s.push_str("\ndiff against reference: clean\n");
        return s;
    }
    s.push_str("\ndiff against reference: NOT CLEAN\n");
    if !diff.missing_from_engine.is_empty() {
        s.push_str(&format!(
            "engine certified (reference lists unknown): {:?}\n",
            diff.missing_from_engine
        ));
        for cert in &diff.audit_certificates {
            s.push_str("audit certificate:\n");
            s.push_str(&cert.render_tree());
        }
    }
    if !diff.extra_in_engine.is_empty() {
        s.push_str(&format!(
            "engine unknown (reference certifies): {:?}\n",
            diff.extra_in_engine
        ));
    }
    s
}

fn thresholds(
    r: i64,
    g_upper: i64,
    d_max: Option<i64>,
    g_max: Option<i64>,
    ch: Characteristic,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let grid = default_grid(r, d_max, g_max, ch)?;
    if g_upper < 2 || g_upper > grid.g_max - r * (r - 1) {
        return Err(format!(
            "g-upper must lie in [2, {}]",
            grid.g_max - r * (r - 1)
        ));
    }
    let map = compute_closure(grid, RuleSet::degeneration()).map_err(|e| e.to_string())?;

    #[derive(serde::Serialize)]
    struct RowOut {
        g: i64,
        d_min: i64,
        semistable: Option<i64>,
        stable: Option<i64>,
    }
    let rows_data: Vec<RowOut> = (2..=g_upper)
        .map(|g| RowOut {
            g,
            d_min: grid.d_min(g),
            semistable: thresholds_per_genus(&map, g, Level::Semistable),
            stable: thresholds_per_genus(&map, g, Level::Stable),
        })
        .collect();

    let fmt_opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
    let mut text = String::new();
    match format {
        OutputFormat::Markdown => {
            let rows: Vec<Vec<String>> = rows_data
                .iter()
                .map(|row| {
                    vec![
                        row.g.to_string(),
                        row.d_min.to_string(),
                        fmt_opt(row.semistable),
                        fmt_opt(row.stable),
                    ]
                })
                .collect();
            text.push_str(&render_markdown(
                &["g", "d_min", "semistable threshold", "stable threshold"],
                &rows,
            ));
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = rows_data
                .iter()
                .map(|row| {
                    vec![
                        row.g.to_string(),
                        row.d_min.to_string(),
                        fmt_opt(row.semistable),
                        fmt_opt(row.stable),
                    ]
                })
                .collect();
            text.push_str(&render_csv(&["g", "d_min", "semistable", "stable"], &rows));
        }
        OutputFormat::JsonLines => text.push_str(&render_json_lines(&rows_data)),
    }

    let mut clean = true;
    if r == 4 && ch == Characteristic::Generic && g_upper >= 13 {
        let reference = ReferenceTables::load();
        let mut mismatches = Vec::new();
        for want in &reference.table1 {
            let got = rows_data.iter().find(|row| row.g == want.g);
            let ok = got.is_some_and(|row| {
                row.d_min == want.d_min
                    && row.semistable == Some(want.semistable)
                    && row.stable == Some(want.stable)
            });
            if !ok {
                mismatches.push(want.g);
            }
        }
        if mismatches.is_empty() {
            text.push_str("\ndiff against reference thresholds: clean\n");
        } else {
            text.push_str(&format!(
                "\ndiff against reference thresholds: mismatched rows for g = {mismatches:?}\n"
            ));
            clean = false;
        }
    }

    emit(&text, out)?;
    Ok(if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_DIFF_NONEMPTY)
    })
}

fn b2_rows(
    r_min: i64,
    r_max: i64,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    if !(4 <= r_min && r_min <= r_max) {
        return Err("requires 4 <= r-min <= r-max".to_string());
    }

    #[derive(serde::Serialize)]
    struct RowOut {
        r: i64,
        b2: i64,
        witness_d1: i64,
        witness_d2: i64,
        eq_2r_plus_2: bool,
        prime_bound_ok: bool,
        linear_bound_ok: bool,
    }
    let rows_data: Vec<RowOut> = (r_min..=r_max)
        .map(|r| {
            let value = b2(r);
            let w = split_witness(value, r).expect("b2(r) splits by definition");
            let p = smallest_nondividing_prime(r - 1);
            let linear_bound_ok = if r % 2 == 0 {
                r < 8 || 2 * value <= 5 * r - 6
            } else {
                r < 9 || 2 * value <= 5 * r - 3
            };
            RowOut {
                r,
                b2: value,
                witness_d1: w.d1,
                witness_d2: w.d2,
                eq_2r_plus_2: value == 2 * r + 2,
                prime_bound_ok: 2 * value < 4 * r + p,
                linear_bound_ok,
            }
        })
        .collect();

    let mut text = String::new();
    match format {
        OutputFormat::Markdown | OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = rows_data
                .iter()
                .map(|row| {
                    vec![
                        row.r.to_string(),
                        row.b2.to_string(),
                        format!("{}+{}", row.witness_d1, row.witness_d2),
                        row.eq_2r_plus_2.to_string(),
                        row.prime_bound_ok.to_string(),
                        row.linear_bound_ok.to_string(),
                    ]
                })
                .collect();
            let headers = &[
                "r",
                "b2",
                "witness",
                "b2 = 2r+2",
                "prime bound",
                "linear bound",
            ];
            if matches!(format, OutputFormat::Markdown) {
                text.push_str(&render_markdown(headers, &rows));
            } else {
                text.push_str(&render_csv(headers, &rows));
            }
        }
        OutputFormat::JsonLines => text.push_str(&render_json_lines(&rows_data)),
    }
    emit(&text, out)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cert(file: &PathBuf, ch: Characteristic) -> Result<ExitCode, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("reading {file:?}: {e}"))?;
    let cert = CertificateNode::from_json(&text).map_err(|e| format!("parsing {file:?}: {e}"))?;
    match verify_certificate(&cert, ch) {
        Ok(()) => {
            println!(
                "certificate for ({}, {}, {}) verifies: {}",
                cert.d, cert.g, cert.r, cert.status
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("certificate rejected: {e}");
            Ok(ExitCode::from(EXIT_INVALID_CERT))
        }
    }
}

fn crosscheck(
    r_list: &str,
    d_max: Option<i64>,
    g_max: Option<i64>,
    ch: Characteristic,
    disable_rule: Option<String>,
    schedules: u64,
    seed: u64,
) -> Result<ExitCode, String> {
    let rs: Vec<i64> = r_list
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mut total = 0usize;
    for r in rs {
        let grid = default_grid(r, d_max, g_max, ch)?;
        let mut rules = RuleSet::full();
        if let Some(name) = &disable_rule {
            rules.disable(name)?;
        }
        let map = compute_closure(grid, rules.clone()).map_err(|e| e.to_string())?;
        let options = CrosscheckOptions {
            genus_bounds: r == 4,
        };
        let violations = crosscheck_closed_forms(&map, options);
        println!(
            "r = {r}: grid d <= {}, g <= {}: {} violation(s)",
            grid.d_max,
            grid.g_max,
            violations.len()
        );
        for v in &violations {
            println!("  {v}");
        }
        total += violations.len();

        for i in 0..schedules {
            let shuffled =
                compute_closure_scheduled(grid, rules.clone(), Schedule::Shuffled(seed + i))
                    .map_err(|e| e.to_string())?;
            let agree = grid
                .points()
                .all(|(d, g)| map.status(d, g) == shuffled.status(d, g));
            println!(
                "  schedule seed {}: statuses {}",
                seed + i,
                if agree { "identical" } else { "DIFFER" }
            );
            if !agree {
                total += 1;
            }
        }
    }
    Ok(if total == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATIONS)
    })
}
