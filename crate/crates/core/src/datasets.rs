//! Embedded reference tables: element addresses and names, ground-state
//! configurations up to Z = 103, and discovery years of the heaviest elements.

use std::sync::OnceLock;

const TABLE2: &str = include_str!("../data/table2.tsv");
const TABLE3: &str = include_str!("../data/table3.tsv");
const YEARS: &str = include_str!("../data/years.tsv");

/// Subshell order of the configuration table columns.
pub const TABLE3_SUBSHELLS: [(u32, u32); 18] = [
    (1, 0),
    (2, 0),
    (2, 1),
    (3, 0),
    (3, 1),
    (4, 0),
    (3, 2),
    (4, 1),
    (5, 0),
    (4, 2),
    (5, 1),
    (6, 0),
    (4, 3),
    (5, 2),
    (6, 1),
    (7, 0),
    (5, 3),
    (6, 2),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Row {
    pub n: u32,
    pub l: u32,
    pub jj: u32,
    pub mm: i32,
    pub z: u32,
    pub symbol: Option<String>,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table3Row {
    pub z: u32,
    pub symbol: String,
    /// Occupancies in [`TABLE3_SUBSHELLS`] order.
    pub occupancies: [u32; 18],
}

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('\t').collect())
}

fn num<T: std::str::FromStr>(field: &str) -> T {
    field
        .trim()
        .parse()
        .unwrap_or_else(|_| panic!("bad numeric field {field:?} in embedded table"))
}

pub fn table2() -> &'static [Table2Row] {
    static CELL: OnceLock<Vec<Table2Row>> = OnceLock::new();
    CELL.get_or_init(|| {
        rows(TABLE2)
            .map(|f| Table2Row {
                n: num(f[0]),
                l: num(f[1]),
                jj: num(f[2]),
                mm: num(f[3]),
                z: num(f[4]),
                symbol: Some(f[5].trim()).filter(|s| !s.is_empty()).map(str::to_owned),
                name: f[6].trim().to_owned(),
            })
            .collect()
    })
}

pub fn table3() -> &'static [Table3Row] {
    static CELL: OnceLock<Vec<Table3Row>> = OnceLock::new();
    CELL.get_or_init(|| {
        rows(TABLE3)
            .map(|f| {
                let mut occupancies = [0; 18];
                for (slot, field) in occupancies.iter_mut().zip(&f[2..]) {
                    *slot = num(field);
                }
                Table3Row {
                    z: num(f[0]),
                    symbol: f[1].trim().to_owned(),
                    occupancies,
                }
            })
            .collect()
    })
}

pub fn discovery_years() -> &'static [(u32, u32)] {
    static CELL: OnceLock<Vec<(u32, u32)>> = OnceLock::new();
    CELL.get_or_init(|| rows(YEARS).map(|f| (num(f[0]), num(f[1]))).collect())
}

pub fn table2_row(z: u32) -> Option<&'static Table2Row> {
    table2().get(z.checked_sub(1)? as usize).filter(|r| r.z == z)
}

pub fn table3_row(z: u32) -> Option<&'static Table3Row> {
    table3().get(z.checked_sub(1)? as usize).filter(|r| r.z == z)
}

pub fn discovery_year(z: u32) -> Option<u32> {
    discovery_years().iter().find(|&&(k, _)| k == z).map(|&(_, y)| y)
}
