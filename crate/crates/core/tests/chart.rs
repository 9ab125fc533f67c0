//! Chart layout invariants and navigation moves against independent oracles.

use so42_core::addresses::{element, element_by_symbol, Address};
use so42_core::chart::*;
use so42_core::Error;
use std::collections::HashSet;

#[test]
fn every_z_appears_once_up_to_240() {
    for z_limit in [1, 2, 10, 57, 118, 120, 138, 152, 200, 240] {
        let chart = build_chart(z_limit).unwrap();
        let zs: Vec<u64> = chart.boxes().map(|b| b.element.z).collect();
        let unique: HashSet<u64> = zs.iter().copied().collect();
        assert_eq!(zs.len() as u64, z_limit);
        assert_eq!(unique, (1..=z_limit).collect());
        for row in &chart.rows {
            let available = (0..row.n).map(|l| 2 * (2 * l + 1)).sum::<u32>();
            assert_eq!(available, 2 * row.n * row.n);
            assert!(row.box_count() as u32 <= available);
            for b in row.entries.iter().flat_map(|e| e.boxes()) {
                assert_eq!(b.element.address.n, row.n);
            }
        }
    }
}

#[test]
fn complete_rows_hold_two_n_squared() {
    // rows 1..4 are complete by Z = 120
    let chart = build_chart(120).unwrap();
    for n in 1..=4 {
        assert_eq!(chart.row(n).unwrap().box_count() as u32, 2 * n * n);
    }
}

#[test]
fn sub_multiplet_lengths() {
    let chart = build_chart(240).unwrap();
    for e in chart.rows.iter().flat_map(|r| &r.entries) {
        if e.box_count() as u32 != 2 * (2 * e.l + 1) {
            continue; // partly filled
        }
        let lens: Vec<u32> = e.sub_multiplets.iter().map(|s| s.boxes.len() as u32).collect();
        let want = if e.l == 0 { vec![2] } else { vec![2 * e.l, 2 * e.l + 2] };
        assert_eq!(lens, want, "entry [{} {}]", e.shell_sum, e.n);
    }
}

#[test]
fn same_l_chain_from_hydrogen_is_the_alkali_column() {
    let mut a = element(1).unwrap().address;
    let mut chain = vec![element(1).unwrap().z];
    for _ in 0..6 {
        a = move_address(&a, MoveKind::SameLNext).unwrap();
        chain.push(element_at(&a));
    }
    let column: Vec<u64> = column_members(ColumnKey::new(0, 1, -1).unwrap(), 7)
        .unwrap()
        .iter()
        .map(|e| e.z)
        .collect();
    assert_eq!(chain, column);
    assert_eq!(column, [1, 3, 11, 19, 37, 55, 87]);
}

fn element_at(a: &Address) -> u64 {
    so42_core::addresses::atomic_number(a).unwrap()
}

#[test]
fn same_n_chain_walks_the_row_in_order() {
    // Walking row n with same_n_next visits every address of the row once.
    for n in 1..=6u32 {
        let mut a = Address::new(n, 0, 1, -1).unwrap();
        let mut seen = vec![a];
        while let Ok(next) = move_address(&a, MoveKind::SameNNext) {
            assert_eq!(next.n, n);
            assert!((next.l, next.jj, next.mm) > (a.l, a.jj, a.mm));
            seen.push(next);
            a = next;
        }
        assert_eq!(seen.len() as u32, 2 * n * n);
    }
}

/// Conventional 18-column coordinates with La..Yb and Ac..No as the f rows
/// (Lu and Lr in group 3), built from period lengths alone.
fn conventional(z: u64) -> Option<(u32, u32)> {
    let starts = [1u64, 3, 11, 19, 37, 55, 87, 119];
    let period = starts.iter().rposition(|&s| s <= z)? as u32 + 1;
    let k = z - starts[period as usize - 1];
    let len = [2, 8, 8, 18, 18, 32, 32][period as usize - 1];
    let group = match (len, k) {
        (2, 0) => 1,
        (2, _) => 18,
        (8, k) if k < 2 => k as u32 + 1,
        (8, k) => k as u32 + 11,
        (18, k) => k as u32 + 1,
        (32, k) if k < 2 => k as u32 + 1,
        (32, k) if k < 16 => return None, // f rows
        (32, k) => k as u32 - 13,
        _ => unreachable!(),
    };
    Some((period, group))
}

fn conventional_inverse(period: u32, group: u32) -> Option<u64> {
    (1..=118).find(|&z| conventional(z) == Some((period, group)))
}

#[test]
fn conventional_oracle_sanity() {
    assert_eq!(conventional(30), Some((4, 12)));
    assert_eq!(conventional(71), Some((6, 3)));
    assert_eq!(conventional(57), None);
    assert_eq!(conventional(86), Some((6, 18)));
    assert_eq!(conventional(2), Some((1, 18)));
}

#[test]
fn knight_matches_conventional_oracle_for_d_and_p_blocks() {
    let mut checked = 0;
    for z in 5..=100u64 {
        let e = element(z).unwrap();
        if !(e.address.l == 1 || e.address.l == 2) {
            continue;
        }
        let (period, group) = conventional(z).unwrap();
        let expected = conventional_inverse(period + 1, group + 2);
        match (move_address(&e.address, MoveKind::Knight), expected) {
            (Ok(target), Some(want)) => {
                assert_eq!(element_at(&target), want, "knight from Z = {z}");
                checked += 1;
            }
            (Err(Error::NoTarget(_)), None) => {}
            (got, want) => panic!("knight from Z = {z}: {got:?} vs {want:?}"),
        }
    }
    assert!(checked > 40);
}

#[test]
fn laing_triple() {
    let knight = |s: &str| {
        let a = element_by_symbol(s).unwrap().address;
        element_at(&move_address(&a, MoveKind::Knight).unwrap())
    };
    assert_eq!([knight("Zn"), knight("Ag"), knight("Cd")], [50, 81, 82]);
}

#[test]
fn html_is_a_table_with_every_element() {
    let chart = build_chart(118).unwrap();
    let html = render(&chart, Format::Html).unwrap();
    assert!(html.starts_with("<table"));
    assert_eq!(html.matches("data-z=").count(), 118);
    let scerri = render_with(&chart, Format::Html, Layout::ScerriLike).unwrap();
    assert_eq!(scerri.matches("data-z=").count(), 118);
}

#[test]
fn json_round_trips_box_fields() {
    let chart = build_chart(130).unwrap();
    let v: serde_json::Value = serde_json::from_str(&render(&chart, Format::Json).unwrap()).unwrap();
    let mut zs = Vec::new();
    for row in v["rows"].as_array().unwrap() {
        for entry in row["entries"].as_array().unwrap() {
            assert_eq!(entry["n"], row["n"]);
            for sub in entry["sub_multiplets"].as_array().unwrap() {
                for b in sub["boxes"].as_array().unwrap() {
                    let keys: Vec<&str> = b.as_object().unwrap().keys().map(String::as_str).collect();
                    assert_eq!(keys.len(), 4, "{keys:?}");
                    zs.push(b["z"].as_u64().unwrap());
                    if b["z"].as_u64().unwrap() > 116 {
                        assert!(b["symbol"].is_null());
                        assert_eq!(b["name"], "not named");
                    }
                }
            }
        }
    }
    zs.sort_unstable();
    assert_eq!(zs, (1..=130).collect::<Vec<_>>());
}
