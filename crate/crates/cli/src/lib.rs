//! The `pt` command: element lookup, chart rendering, configurations,
//! navigation and verification suites.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use so42_core::addresses::{
    address_of, atomic_number, configuration_diff, electron_configuration, element, element_at, element_by_symbol,
    enumerate_addresses, format_occupancies, reference_configuration, Address, ElementRecord, FillingRule, REFERENCE_Z_MAX,
};
use so42_core::boson::{build_so42, build_sp8, closure_report, verify_so42_relations};
use so42_core::catalog::{a1_cartan_verify, counting_table, exceptional_data, group_table, racah_and_commuting, ExceptionalName};
use so42_core::chart::{build_chart, move_address, render_with, Format, Layout, MoveKind};
use so42_core::{datasets, fock, Error};
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pt", about = "SO(4,2)xSU(2) periodic system toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Show an element by atomic number, symbol or address such as (4,3,5/2,-5/2)
    Element {
        query: String,
        #[arg(long)]
        json: bool,
    },
    /// Render the periodic chart
    Table {
        #[arg(long, default_value_t = 118)]
        max_z: u64,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        scerri_like: bool,
    },
    /// Electron configuration under a filling rule
    Config {
        z: u64,
        #[arg(long, default_value = "madelung")]
        rule: String,
        /// Compare against the reference configuration (Z <= 103)
        #[arg(long)]
        diff: bool,
    },
    /// Step from an address (or Z, or symbol) through the chart
    Navigate {
        address: String,
        #[arg(long = "move")]
        kind: String,
    },
    /// Run a verification suite
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Algebra,
    Casimirs,
    Catalog,
    Enumeration,
    Configs,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Runs `pt` with `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Element { query, json } => cmd_element(&query, json),
        Command::Table {
            max_z,
            format,
            scerri_like,
        } => cmd_table(max_z, &format, scerri_like),
        Command::Config { z, rule, diff } => cmd_config(z, &rule, diff),
        Command::Navigate { address, kind } => cmd_navigate(&address, &kind),
        Command::Verify { suite, nmax, tol, json } => return cmd_verify(suite, nmax, tol, json),
    };
    result.unwrap_or_else(Outcome::invalid)
}

fn lookup(query: &str) -> Result<ElementRecord, Error> {
    let q = query.trim();
    if let Ok(z) = q.parse::<u64>() {
        element(z)
    } else if q.contains(',') {
        element_at(&q.parse::<Address>()?)
    } else {
        element_by_symbol(q)
    }
}

fn describe(e: &ElementRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Z: {}", e.z);
    let _ = writeln!(out, "symbol: {}", e.symbol.as_deref().unwrap_or("/"));
    let _ = writeln!(out, "name: {}", e.name);
    let _ = writeln!(out, "address: {}", e.address);
    let _ = writeln!(out, "entry: {}", e.entry);
    let _ = writeln!(out, "sub-multiplet: j = {}", e.address.j());
    let _ = writeln!(out, "parity: {}", e.parity);
    if let Some(year) = e.discovery_year {
        let _ = writeln!(out, "discovered: {year}");
    }
    out
}

fn cmd_element(query: &str, json: bool) -> Result<Outcome, Error> {
    let e = lookup(query)?;
    if json {
        return Ok(Outcome::ok(to_json(&e)));
    }
    Ok(Outcome::ok(describe(&e)))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn cmd_table(max_z: u64, format: &str, scerri_like: bool) -> Result<Outcome, Error> {
    let format: Format = format.parse()?;
    let layout = if scerri_like { Layout::ScerriLike } else { Layout::Standard };
    let mut doc = render_with(&build_chart(max_z)?, format, layout)?;
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    Ok(Outcome::ok(doc))
}

fn cmd_config(z: u64, rule: &str, diff: bool) -> Result<Outcome, Error> {
    let rule: FillingRule = rule.parse()?;
    let config = electron_configuration(z, rule)?;
    let mut out = String::new();
    let _ = writeln!(out, "Z: {z}");
    let _ = writeln!(out, "rule: {rule}");
    let _ = writeln!(out, "configuration: {config}");
    let _ = writeln!(out, "closed core: {} electrons", config.closed_core_count);
    if diff {
        let reference = reference_configuration(z)
            .ok_or_else(|| Error::InvalidInput(format!("reference configurations stop at Z = {REFERENCE_Z_MAX}")))?;
        let found = configuration_diff(z, rule)?.into_iter().find(|d| d.z == z);
        match found {
            Some(d) => {
                let _ = writeln!(out, "reference: {}", format_occupancies(&reference, false));
                let _ = writeln!(out, "DIFFERS: predicted {} vs reference {}", d.predicted_text(), d.reference_text());
            }
            None => {
                let _ = writeln!(out, "reference: {}", format_occupancies(&reference, false));
                let _ = writeln!(out, "matches reference");
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn cmd_navigate(address: &str, kind: &str) -> Result<Outcome, Error> {
    let kind: MoveKind = kind.parse()?;
    let from = lookup(address)?;
    let target = move_address(&from.address, kind)?;
    let to = element(atomic_number(&target)?)?;
    let name = |e: &ElementRecord| e.symbol.clone().unwrap_or_else(|| format!("Z={}", e.z));
    Ok(Outcome::ok(format!(
        "{} {} (Z {}) -> {} {} (Z {})\n",
        from.address,
        name(&from),
        from.z,
        to.address,
        name(&to),
        to.z
    )))
}

#[derive(Debug, Serialize)]
struct SuiteResult {
    suite: &'static str,
    passed: bool,
    summary: String,
    details: Value,
}

fn suite_algebra() -> SuiteResult {
    let (gs, ledger) = build_so42();
    let rel = verify_so42_relations(&gs);
    let sp8 = closure_report(&build_sp8());
    let so42 = closure_report(gs.forms());
    let (sp8_closed, so42_closed) = (
        sp8.as_ref().is_ok_and(|r| r.closed),
        so42.as_ref().is_ok_and(|r| r.closed),
    );
    let failure = rel.first_failure().map(|c| format!("J{}{} with J{}{}", c.left.0, c.left.1, c.right.0, c.right.1));
    SuiteResult {
        suite: "algebra",
        passed: rel.all_hold() && sp8_closed && so42_closed,
        summary: format!(
            "{}/{} relations hold (exact); sp(8) closure {}; so(4,2) closure {}",
            rel.passed,
            rel.checks.len(),
            if sp8_closed { "ok" } else { "FAILED" },
            if so42_closed { "ok" } else { "FAILED" }
        ),
        details: json!({
            "relations_passed": rel.passed,
            "relations_total": rel.checks.len(),
            "first_failure": failure,
            "sp8_closed": sp8_closed,
            "so42_closed": so42_closed,
            "convention_ledger": ledger,
        }),
    }
}

fn suite_casimirs(n_max: u32, tol: f64) -> Result<SuiteResult, Error> {
    let r = fock::casimir_report(n_max)?;
    let passed = r.matches_expected(tol);
    Ok(SuiteResult {
        suite: "casimirs",
        passed,
        summary: format!(
            "N_max {} (dim {}): c1 = {:.9}, c2 = {:.9}, c3 = {:.9} (expected |c1| = 6, c2 = 0, |c3| = 12); scalar on interior: {}",
            r.n_max,
            r.dim,
            r.c1.value,
            r.c2.value + 0.0,
            r.c3.value,
            if r.is_scalar(tol) { "yes" } else { "no" }
        ),
        details: serde_json::to_value(&r).expect("serializable"),
    })
}

fn suite_catalog() -> SuiteResult {
    let a1 = a1_cartan_verify();
    let counting_ok = counting_table().iter().all(|row| {
        racah_and_commuting(row.report.order, row.report.rank).is_ok_and(|c| c == row.report)
    });
    let groups_ok = group_table()
        .iter()
        .all(|g| so42_core::catalog::family_data(g.algebra).order == g.order);
    let e8 = exceptional_data(ExceptionalName::E8);
    let passed = a1.hermitian_pairing_ok && counting_ok && groups_ok;
    SuiteResult {
        suite: "catalog",
        passed,
        summary: format!(
            "A1 roots {}, {}; counting table {}; group table {}; E8 order {} (printed {})",
            a1.root_values.0,
            a1.root_values.1,
            if counting_ok { "ok" } else { "FAILED" },
            if groups_ok { "ok" } else { "FAILED" },
            e8.order_standard,
            e8.order_paper
        ),
        details: json!({
            "a1_root_values": [a1.root_values.0.to_string(), a1.root_values.1.to_string()],
            "a1_hermitian_pairing_ok": a1.hermitian_pairing_ok,
            "a1_casimir_residual_norm": a1.casimir_identity_residual.norm.to_string(),
            "a1_casimir_residual_printed_norm": a1.casimir_identity_residual_printed.norm.to_string(),
            "a1_convention": a1.convention,
            "counting_table_ok": counting_ok,
            "group_table_ok": groups_ok,
            "e8": e8,
        }),
    }
}

fn suite_enumeration() -> SuiteResult {
    let bijection = enumerate_addresses(500)
        .iter()
        .enumerate()
        .all(|(k, a)| atomic_number(a).ok() == Some(k as u64 + 1) && address_of(k as u64 + 1).ok() == Some(*a));
    let table2 = datasets::table2().iter().filter(|row| {
        Address::new(row.n, row.l, row.jj, row.mm)
            .and_then(|a| atomic_number(&a))
            .is_ok_and(|z| z == row.z as u64)
    });
    let table2_matches = table2.count();
    let passed = bijection && table2_matches == datasets::table2().len();
    SuiteResult {
        suite: "enumeration",
        passed,
        summary: format!(
            "bijection 1..500 {}; {}/{} reference addresses reproduced",
            if bijection { "ok" } else { "FAILED" },
            table2_matches,
            datasets::table2().len()
        ),
        details: json!({ "bijection_500": bijection, "table2_matches": table2_matches }),
    }
}

/// Madelung exceptions up to Z = 99.
pub const MADELUNG_EXCEPTIONS: [u64; 20] = [24, 29, 41, 42, 43, 44, 45, 46, 47, 57, 64, 78, 79, 89, 90, 91, 92, 93, 96, 97];

fn suite_configs() -> Result<SuiteResult, Error> {
    let diffs = configuration_diff(99, FillingRule::MADELUNG)?;
    let zs: Vec<u64> = diffs.iter().map(|d| d.z).collect();
    let passed = zs == MADELUNG_EXCEPTIONS;
    Ok(SuiteResult {
        suite: "configs",
        passed,
        summary: format!("{} Madelung exceptions up to Z = 99: {:?}", zs.len(), zs),
        details: json!({
            "exceptions": diffs.iter().map(|d| json!({
                "z": d.z,
                "symbol": d.symbol,
                "predicted": d.predicted_text(),
                "reference": d.reference_text(),
            })).collect::<Vec<_>>(),
        }),
    })
}

fn cmd_verify(suite: Suite, n_max: u32, tol: f64, json: bool) -> Outcome {
    if !(tol > 0.0 && tol.is_finite()) {
        return Outcome::invalid("--tol must be positive");
    }
    let wanted: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Algebra, Suite::Casimirs, Suite::Catalog, Suite::Enumeration, Suite::Configs],
        s => vec![s],
    };
    let mut results = Vec::new();
    for s in wanted {
        let r = match s {
            Suite::Algebra => Ok(suite_algebra()),
            Suite::Casimirs => suite_casimirs(n_max, tol),
            Suite::Catalog => Ok(suite_catalog()),
            Suite::Enumeration => Ok(suite_enumeration()),
            Suite::Configs => suite_configs(),
            Suite::All => unreachable!(),
        };
        match r {
            Ok(r) => results.push(r),
            Err(e) => return Outcome::invalid(e),
        }
    }
    let all_passed = results.iter().all(|r| r.passed);
    let stdout = if json {
        let (_, ledger) = build_so42();
        to_json(&json!({
            "passed": all_passed,
            "n_max": n_max,
            "tolerance": tol,
            "convention_ledger": ledger,
            "suites": results,
        }))
    } else {
        results
            .iter()
            .map(|r| format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.summary))
            .collect()
    };
    Outcome {
        code: if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout,
        stderr: String::new(),
    }
}
