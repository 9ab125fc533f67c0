//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use so42_core::addresses::{
    address_of, atomic_number, configuration_diff, enumerate_addresses, Address, FillingRule,
};
use so42_core::boson::{build_so42, build_sp8, closure_report, verify_so42_relations};
use so42_core::catalog::{
    counting_table, exceptional_data, family_data, group_table, racah_and_commuting, ExceptionalName, FamilyId,
    FamilyLetter,
};
use so42_core::chart::{build_chart, move_address, render, Format, MoveKind};
use so42_core::datasets;
use so42_core::fock::{branching_report, casimir_report, reachability, so32_parity_check};
use std::time::Instant;

const TOL_SPECTRA: f64 = 1e-9;
const TOL_ZERO: f64 = 1e-12;
const CROSS_COUPLING_MIN: f64 = 0.1;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail.into())
    }
}

fn table2_reproduction() -> Outcome {
    for row in datasets::table2() {
        let a = Address::new(row.n, row.l, row.jj, row.mm).map_err(|e| e.to_string())?;
        let z = atomic_number(&a).map_err(|e| e.to_string())?;
        if z != row.z as u64 {
            return Err(format!("{a} gives Z = {z}, table says {}", row.z));
        }
        if address_of(z).map_err(|e| e.to_string())? != a {
            return Err(format!("address_of({z}) != {a}"));
        }
    }
    Ok(format!("{} rows exact", datasets::table2().len()))
}

fn enumeration_bijection() -> Outcome {
    for (k, a) in enumerate_addresses(500).iter().enumerate() {
        let z = atomic_number(a).map_err(|e| e.to_string())?;
        if z != k as u64 + 1 {
            return Err(format!("position {} holds {a} with Z = {z}", k + 1));
        }
    }
    Ok("positions 1..500 exact".into())
}

fn extended_blocks() -> Outcome {
    let entry = |z: u64| address_of(z).map(|a| a.entry().to_string()).unwrap_or_default();
    let in_entry = |range: std::ops::RangeInclusive<u64>, want: &str| range.clone().all(|z| entry(z) == want);
    let ok = in_entry(121..=138, "[9 5]")
        && in_entry(139..=152, "[9 6]")
        && in_entry(104..=112, "[8 6]")
        && in_entry(113..=118, "[8 7]")
        && in_entry(119..=120, "[8 8]");
    check(
        ok,
        "121-138 in [9 5], 139-152 in [9 6], 104-120 in [8 6],[8 7],[8 8]",
        "block assignment mismatch",
    )
}

fn exact_algebra() -> Outcome {
    let (gs, _) = build_so42();
    let relations = verify_so42_relations(&gs);
    let sp8 = closure_report(&build_sp8()).map_err(|e| e.to_string())?;
    let so42 = closure_report(gs.forms()).map_err(|e| e.to_string())?;
    check(
        relations.all_hold() && relations.passed == 105 && sp8.closed && so42.closed,
        format!("{}/105 relations exact; sp(8) and so(4,2) closed", relations.passed),
        format!(
            "relations {}/105, sp8 closed {}, so42 closed {}",
            relations.passed, sp8.closed, so42.closed
        ),
    )
}

fn casimir_spectra() -> Outcome {
    let r = casimir_report(8).map_err(|e| e.to_string())?;
    let detail = format!(
        "dim {}, c1 = {:+.12}, c2 = {:+.12}, c3 = {:+.12}, max residual {:.1e}",
        r.dim,
        r.c1.value,
        r.c2.value,
        r.c3.value,
        [&r.c1, &r.c2, &r.c3].iter().map(|m| m.max_residual.max(m.max_constancy_deviation)).fold(0.0, f64::max)
    );
    check(r.dim == 204 && r.matches_expected(TOL_SPECTRA), detail.clone(), format!("{detail}; want |c1| = 6, c2 = 0, |c3| = 12"))
}

fn branching() -> Outcome {
    for n in 1..=6 {
        let r = branching_report(n, 6).map_err(|e| e.to_string())?;
        if !r.holds(TOL_SPECTRA, TOL_ZERO) {
            return Err(format!("n = {n}: {r:?}"));
        }
    }
    Ok("n = 1..6: dim n^2, L^2 spectrum and a/b spin Casimirs agree".into())
}

fn parity_split() -> Outcome {
    let r = so32_parity_check(8).map_err(|e| e.to_string())?;
    let so32 = r.so32_max_cross();
    let j_a4 = [(1, 4), (2, 4), (3, 4)]
        .iter()
        .filter_map(|&(a, b)| r.coupling(a, b))
        .fold(0.0, f64::max);
    check(
        r.so32.len() == 10 && so32 < TOL_ZERO && j_a4 > CROSS_COUPLING_MIN,
        format!("10 so(3,2) generators max cross {so32:.1e}; max J_a4 cross {j_a4:.3}"),
        format!("so(3,2) cross {so32:.3e}, J_a4 cross {j_a4:.3e}"),
    )
}

fn reachability_dims() -> Outcome {
    let mut dims = Vec::new();
    for n_max in 2..=6u32 {
        let r = reachability(n_max).map_err(|e| e.to_string())?;
        let want: usize = (1..=n_max as usize).map(|n| n * n).sum();
        if r.reached_dim != want {
            return Err(format!("N_max = {n_max}: reached {} of {want}", r.reached_dim));
        }
        dims.push(r.reached_dim.to_string());
    }
    Ok(format!("dims {}", dims.join(", ")))
}

fn madelung_diff() -> Outcome {
    let got: Vec<u64> = configuration_diff(99, FillingRule::MADELUNG)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|d| d.z)
        .collect();
    let golden: Vec<u64> = include_str!("golden/madelung_exceptions.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.trim().parse().unwrap())
        .collect();
    let required = [24, 29, 46, 57, 64, 78, 79];
    check(
        (15..=25).contains(&got.len()) && required.iter().all(|z| got.contains(z)) && got == golden,
        format!("{} exceptions, equal to golden set", got.len()),
        format!("got {got:?}"),
    )
}

fn catalog_fidelity() -> Outcome {
    use FamilyLetter::*;
    // Family table: order and r - l for ranks from the canonical minimum.
    for (letter, order, minus) in [
        (A, (|l| l * (l + 2)) as fn(u64) -> u64, (|l| l * (l + 1)) as fn(u64) -> u64),
        (B, |l| l * (2 * l + 1), |l| 2 * l * l),
        (C, |l| l * (2 * l + 1), |l| 2 * l * l),
        (D, |l| l * (2 * l - 1), |l| 2 * l * (l - 1)),
    ] {
        for rank in letter.canonical_min_rank()..=12 {
            let d = family_data(FamilyId::new(letter, rank).unwrap());
            if (d.order, d.order_minus_rank) != (order(rank), minus(rank)) {
                return Err(format!("{letter}{rank}: {d:?}"));
            }
        }
    }
    let printed = [(ExceptionalName::G2, 2, 14, 12), (ExceptionalName::F4, 4, 52, 48), (ExceptionalName::E6, 6, 78, 72), (ExceptionalName::E7, 7, 133, 126), (ExceptionalName::E8, 8, 240, 232)];
    for (name, rank, order, minus) in printed {
        let d = exceptional_data(name);
        if (d.rank, d.order_paper, d.order_paper - d.rank) != (rank, order, minus) {
            return Err(format!("{name:?}: {d:?}"));
        }
    }
    let groups: Vec<(String, u64)> = group_table().iter().map(|g| (g.algebra.to_string(), g.order)).collect();
    let want_groups = [("A1", 3), ("D2", 6), ("B2", 10), ("B2", 10), ("D3", 15), ("A1", 3), ("A3", 15), ("C4", 36)];
    if groups.iter().map(|(a, o)| (a.as_str(), *o)).collect::<Vec<_>>() != want_groups {
        return Err(format!("group table {groups:?}"));
    }
    let want_counts = [(3, 1, 0, 2), (6, 2, 0, 4), (10, 2, 2, 6), (15, 3, 3, 9), (36, 4, 12, 20)];
    for (row, &(r, l, f, count)) in counting_table().iter().zip(&want_counts) {
        let computed = racah_and_commuting(r, l).map_err(|e| e.to_string())?;
        let stored = row.report;
        if (stored.order, stored.rank, stored.racah_number, stored.commuting_count) != (r, l, f, count) || computed != stored {
            return Err(format!("counting row {}: {stored:?} / {computed:?}", row.groups));
        }
    }
    Ok("family, exceptional, group and counting tables reproduced".into())
}

fn chart_structure() -> Outcome {
    // Entries with n + l <= 13 hold 462 elements and complete rows 1..7.
    let chart = build_chart(462).map_err(|e| e.to_string())?;
    for n in 1..=7u32 {
        let row = chart.row(n).ok_or(format!("row {n} missing"))?;
        if row.box_count() as u32 != 2 * n * n {
            return Err(format!("row {n} holds {} boxes", row.box_count()));
        }
        for e in &row.entries {
            let lens: Vec<u32> = e.sub_multiplets.iter().map(|s| s.boxes.len() as u32).collect();
            let want = if e.l == 0 { vec![2] } else { vec![2 * e.l, 2 * e.l + 2] };
            if lens != want {
                return Err(format!("entry [{} {}] split {lens:?}", e.shell_sum, e.n));
            }
        }
    }
    let text = render(&build_chart(120).map_err(|e| e.to_string())?, Format::Text).map_err(|e| e.to_string())?;
    let column_of = |sym: &str| -> Option<usize> {
        text.lines().find_map(|line| {
            line.match_indices(sym)
                .find(|(i, _)| {
                    let before = line[..*i].chars().last();
                    let after = line[i + sym.len()..].chars().next();
                    before == Some(' ') && after.is_none_or(|c| c == ' ')
                })
                .map(|(i, _)| i)
        })
    };
    let same_column = |syms: &[&str]| {
        let cols: Vec<Option<usize>> = syms.iter().map(|s| column_of(s)).collect();
        cols[0].is_some() && cols.iter().all(|c| *c == cols[0])
    };
    if !same_column(&["H", "Li", "Na", "K", "Rb", "Cs", "Fr"]) {
        return Err("H does not head the alkali column".into());
    }
    if !same_column(&["He", "Be", "Mg", "Ca", "Sr", "Ba", "Ra"]) {
        return Err("He does not head the alkaline-earth column".into());
    }
    let knight = |z: u64| -> Option<u64> {
        let target = move_address(&address_of(z).ok()?, MoveKind::Knight).ok()?;
        atomic_number(&target).ok()
    };
    let triple = [knight(30), knight(47), knight(48)];
    check(
        triple == [Some(50), Some(81), Some(82)],
        "rows 2n^2, splits (2l, 2l+2), H/He column heads, Zn->Sn Ag->Tl Cd->Pb",
        format!("knight triple {triple:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Table-2 reproduction", table2_reproduction),
        ("enumeration bijection", enumeration_bijection),
        ("extended-block predictions", extended_blocks),
        ("exact algebra", exact_algebra),
        ("Casimir spectra", casimir_spectra),
        ("branching", branching),
        ("SO(3,2) parity split", parity_split),
        ("reachability", reachability_dims),
        ("Madelung/reference diff", madelung_diff),
        ("catalog fidelity", catalog_fidelity),
        ("chart structure", chart_structure),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
