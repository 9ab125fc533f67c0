//! The periodic chart in `(n, l)` layout: rows by `n`, entries by `l`, each
//! entry split into the `j = l - 1/2` and `j = l + 1/2` sub-multiplets.

use crate::addresses::{address_of, atomic_number, element, Address, ElementRecord, ShellEntry};
use crate::error::{invalid, Error, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartBox {
    pub element: ElementRecord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubMultiplet {
    pub jj: u32,
    pub boxes: Vec<ChartBox>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartEntry {
    pub shell_sum: u32,
    pub n: u32,
    pub l: u32,
    pub sub_multiplets: Vec<SubMultiplet>,
}

impl ChartEntry {
    pub fn boxes(&self) -> impl Iterator<Item = &ChartBox> {
        self.sub_multiplets.iter().flat_map(|s| &s.boxes)
    }

    pub fn box_count(&self) -> usize {
        self.sub_multiplets.iter().map(|s| s.boxes.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartRow {
    pub n: u32,
    pub entries: Vec<ChartEntry>,
}

impl ChartRow {
    pub fn box_count(&self) -> usize {
        self.entries.iter().map(ChartEntry::box_count).sum()
    }

    pub fn entry(&self, l: u32) -> Option<&ChartEntry> {
        self.entries.iter().find(|e| e.l == l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub z_limit: u64,
    pub rows: Vec<ChartRow>,
}

impl Chart {
    pub fn row(&self, n: u32) -> Option<&ChartRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn entry(&self, shell_sum: u32, n: u32) -> Option<&ChartEntry> {
        self.row(n)?.entry(shell_sum.checked_sub(n)?)
    }

    pub fn boxes(&self) -> impl Iterator<Item = &ChartBox> {
        self.rows.iter().flat_map(|r| &r.entries).flat_map(ChartEntry::boxes)
    }
}

/// Lays out every element with `Z <= z_limit`. Entries and rows without any
/// such element are left out; partly filled entries keep only their filled boxes.
pub fn build_chart(z_limit: u64) -> Result<Chart> {
    if z_limit == 0 {
        return Err(invalid("z_limit must be at least 1"));
    }
    let mut rows: Vec<ChartRow> = Vec::new();
    for z in 1..=z_limit {
        let e = element(z)?;
        let Address { n, l, jj, .. } = e.address;
        if rows.len() < n as usize {
            rows.extend((rows.len() as u32 + 1..=n).map(|n| ChartRow { n, entries: Vec::new() }));
        }
        let row = &mut rows[n as usize - 1];
        let entry = match row.entries.iter().position(|x| x.l == l) {
            Some(k) => &mut row.entries[k],
            None => {
                row.entries.push(ChartEntry {
                    shell_sum: n + l,
                    n,
                    l,
                    sub_multiplets: Vec::new(),
                });
                row.entries.sort_by_key(|x| x.l);
                let k = row.entries.iter().position(|x| x.l == l).unwrap();
                &mut row.entries[k]
            }
        };
        let sub = match entry.sub_multiplets.iter().position(|s| s.jj == jj) {
            Some(k) => &mut entry.sub_multiplets[k],
            None => {
                entry.sub_multiplets.push(SubMultiplet { jj, boxes: Vec::new() });
                entry.sub_multiplets.sort_by_key(|s| s.jj);
                let k = entry.sub_multiplets.iter().position(|s| s.jj == jj).unwrap();
                &mut entry.sub_multiplets[k]
            }
        };
        sub.boxes.push(ChartBox { element: e });
    }
    for sub in rows.iter_mut().flat_map(|r| &mut r.entries).flat_map(|e| &mut e.sub_multiplets) {
        sub.boxes.sort_by_key(|b| b.element.address.mm);
    }
    rows.retain(|r| !r.entries.is_empty());
    Ok(Chart { z_limit, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
    Html,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "html" => Ok(Self::Html),
            other => Err(invalid(format!("unknown format {other:?} (text, csv, json, html)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Rows `n`, columns `l` ascending.
    #[default]
    Standard,
    /// Rows `n + l`, columns `l` descending (the reflected, left-step form).
    ScerriLike,
}

pub fn render(chart: &Chart, format: Format) -> Result<String> {
    render_with(chart, format, Layout::Standard)
}

pub fn render_with(chart: &Chart, format: Format, layout: Layout) -> Result<String> {
    match (format, layout) {
        (Format::Text, Layout::Standard) => Ok(render_text(chart)),
        (Format::Text, Layout::ScerriLike) => Ok(render_text_scerri_like(chart)),
        (Format::Html, _) => Ok(render_html(chart, layout)),
        (Format::Csv, Layout::Standard) => Ok(render_csv(chart)),
        (Format::Json, Layout::Standard) => render_json(chart),
        (_, Layout::ScerriLike) => Err(invalid("the scerri-like layout applies to text and html only")),
    }
}

const CELL: usize = 3;

fn symbol_cell(b: &ChartBox) -> String {
    b.element.symbol.clone().unwrap_or_else(|| "/".to_owned())
}

/// Boxes of an entry laid out in a fixed-width slot of `2(2l+1)` cells, with
/// a gap between the sub-multiplets.
fn entry_cells(entry: Option<&ChartEntry>, l: u32) -> String {
    let width = entry_width(l);
    let Some(entry) = entry else {
        return " ".repeat(width);
    };
    let mut out = String::new();
    let lengths: Vec<u32> = if l == 0 { vec![2] } else { vec![2 * l, 2 * l + 2] };
    for (k, &len) in lengths.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let jj = if l == 0 { 1 } else { 2 * l - 1 + 2 * k as u32 };
        let boxes: Vec<&ChartBox> = entry
            .sub_multiplets
            .iter()
            .filter(|s| s.jj == jj)
            .flat_map(|s| &s.boxes)
            .collect();
        for slot in 0..len as usize {
            let text = boxes.get(slot).map(|b| symbol_cell(b)).unwrap_or_default();
            let _ = write!(out, "{text:<CELL$}");
        }
    }
    out
}

fn entry_width(l: u32) -> usize {
    2 * (2 * l as usize + 1) * CELL + usize::from(l > 0)
}

const SEP: &str = " | ";

pub fn render_text(chart: &Chart) -> String {
    let l_max = chart.rows.iter().flat_map(|r| &r.entries).map(|e| e.l).max().unwrap_or(0);
    let label_width = 6;
    let mut out = String::new();
    let header: Vec<String> = (0..=l_max)
        .map(|l| format!("{:<w$}", format!("l={l}"), w = entry_width(l)))
        .collect();
    let _ = writeln!(out, "{:<label_width$}{}", "", header.join(SEP).trim_end());
    for row in &chart.rows {
        let cells: Vec<String> = (0..=l_max).map(|l| entry_cells(row.entry(l), l)).collect();
        let _ = writeln!(out, "{:<label_width$}{}", format!("n={}", row.n), cells.join(SEP).trim_end());
    }
    out
}

/// Entries regrouped by `n + l`, higher `l` to the left.
pub fn render_text_scerri_like(chart: &Chart) -> String {
    let mut entries: Vec<&ChartEntry> = chart.rows.iter().flat_map(|r| &r.entries).collect();
    entries.sort_by_key(|e| (e.shell_sum, std::cmp::Reverse(e.l)));
    let l_max = entries.iter().map(|e| e.l).max().unwrap_or(0);
    let s_max = entries.iter().map(|e| e.shell_sum).max().unwrap_or(0);
    let label_width = 8;
    let mut out = String::new();
    let header: Vec<String> = (0..=l_max)
        .rev()
        .map(|l| format!("{:<w$}", format!("l={l}"), w = entry_width(l)))
        .collect();
    let _ = writeln!(out, "{:<label_width$}{}", "", header.join(SEP).trim_end());
    for s in 1..=s_max {
        let line: Vec<String> = (0..=l_max)
            .rev()
            .map(|l| entry_cells(entries.iter().copied().find(|e| e.shell_sum == s && e.l == l), l))
            .collect();
        let _ = writeln!(out, "{:<label_width$}{}", format!("n+l={s}"), line.join(SEP).trim_end());
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// One line per element, in atomic-number order.
pub fn render_csv(chart: &Chart) -> String {
    let mut boxes: Vec<&ChartBox> = chart.boxes().collect();
    boxes.sort_by_key(|b| b.element.z);
    let mut out = String::from("z,symbol,name,n,l,jj,mm,shell_sum,parity\n");
    for b in boxes {
        let e = &b.element;
        let a = e.address;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            e.z,
            csv_field(e.symbol.as_deref().unwrap_or("")),
            csv_field(&e.name),
            a.n,
            a.l,
            a.jj,
            a.mm,
            a.shell_sum(),
            e.parity
        );
    }
    out
}

pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct JsonChart<'a> {
    version: u32,
    rows: Vec<JsonRow<'a>>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    n: u32,
    entries: Vec<JsonEntry<'a>>,
}

#[derive(Serialize)]
struct JsonEntry<'a> {
    shell_sum: u32,
    n: u32,
    sub_multiplets: Vec<JsonSub<'a>>,
}

#[derive(Serialize)]
struct JsonSub<'a> {
    jj: u32,
    boxes: Vec<JsonBox<'a>>,
}

#[derive(Serialize)]
struct JsonBox<'a> {
    mm: i32,
    z: u64,
    symbol: Option<&'a str>,
    name: &'a str,
}

pub fn render_json(chart: &Chart) -> Result<String> {
    let doc = JsonChart {
        version: JSON_SCHEMA_VERSION,
        rows: chart
            .rows
            .iter()
            .map(|r| JsonRow {
                n: r.n,
                entries: r
                    .entries
                    .iter()
                    .map(|e| JsonEntry {
                        shell_sum: e.shell_sum,
                        n: e.n,
                        sub_multiplets: e
                            .sub_multiplets
                            .iter()
                            .map(|s| JsonSub {
                                jj: s.jj,
                                boxes: s
                                    .boxes
                                    .iter()
                                    .map(|b| JsonBox {
                                        mm: b.element.address.mm,
                                        z: b.element.z,
                                        symbol: b.element.symbol.as_deref(),
                                        name: &b.element.name,
                                    })
                                    .collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| invalid(e.to_string()))
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn html_entry(out: &mut String, entry: Option<&ChartEntry>, l: u32) {
    let Some(entry) = entry else {
        let _ = write!(out, "<td class=\"empty\" colspan=\"{}\"></td>", 2 * (2 * l + 1));
        return;
    };
    let _ = write!(out, "<td class=\"entry\" data-entry=\"[{} {}]\"><div class=\"entry\">", entry.shell_sum, entry.n);
    for sub in &entry.sub_multiplets {
        let _ = write!(out, "<div class=\"sub\" data-jj=\"{}\">", sub.jj);
        for b in &sub.boxes {
            let e = &b.element;
            let _ = write!(
                out,
                "<span class=\"box {}\" data-z=\"{}\" title=\"{} {} {}\"><small>{}</small>{}</span>",
                e.parity,
                e.z,
                e.z,
                html_escape(&e.name),
                e.address,
                e.z,
                html_escape(e.symbol.as_deref().unwrap_or("/"))
            );
        }
        out.push_str("</div>");
    }
    out.push_str("</div></td>");
}

/// A `<table>` fragment (no page chrome).
pub fn render_html(chart: &Chart, layout: Layout) -> String {
    let mut out = String::from("<table class=\"chart\">\n");
    match layout {
        Layout::Standard => {
            let l_max = chart.rows.iter().flat_map(|r| &r.entries).map(|e| e.l).max().unwrap_or(0);
            out.push_str("<tr><th></th>");
            for l in 0..=l_max {
                let _ = write!(out, "<th>l={l}</th>");
            }
            out.push_str("</tr>\n");
            for row in &chart.rows {
                let _ = write!(out, "<tr><th>n={}</th>", row.n);
                for l in 0..=l_max {
                    html_entry(&mut out, row.entry(l), l);
                }
                out.push_str("</tr>\n");
            }
        }
        Layout::ScerriLike => {
            let entries: Vec<&ChartEntry> = chart.rows.iter().flat_map(|r| &r.entries).collect();
            let l_max = entries.iter().map(|e| e.l).max().unwrap_or(0);
            let s_max = entries.iter().map(|e| e.shell_sum).max().unwrap_or(0);
            out.push_str("<tr><th></th>");
            for l in (0..=l_max).rev() {
                let _ = write!(out, "<th>l={l}</th>");
            }
            out.push_str("</tr>\n");
            for s in 1..=s_max {
                let _ = write!(out, "<tr><th>n+l={s}</th>");
                for l in (0..=l_max).rev() {
                    html_entry(&mut out, entries.iter().copied().find(|e| e.shell_sum == s && e.l == l), l);
                }
                out.push_str("</tr>\n");
            }
        }
    }
    out.push_str("</table>\n");
    out
}

/// `(l, jj, mm)`: a column of the chart, i.e. a family of analogs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ColumnKey {
    pub l: u32,
    pub jj: u32,
    pub mm: i32,
}

impl ColumnKey {
    pub fn new(l: u32, jj: u32, mm: i32) -> Result<Self> {
        Address::new(l + 1, l, jj, mm)?;
        Ok(Self { l, jj, mm })
    }

    pub fn of(a: &Address) -> Self {
        Self {
            l: a.l,
            jj: a.jj,
            mm: a.mm,
        }
    }
}

/// Elements sharing `key`, for `n` up to `n_max`, ordered by `n`.
pub fn column_members(key: ColumnKey, n_max: u32) -> Result<Vec<ElementRecord>> {
    ColumnKey::new(key.l, key.jj, key.mm)?;
    ((key.l + 1)..=n_max)
        .map(|n| element(atomic_number(&Address { n, l: key.l, jj: key.jj, mm: key.mm })?))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    SameNNext,
    SameLNext,
    Knight,
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "same-n" | "same-n-next" => Ok(Self::SameNNext),
            "same-l" | "same-l-next" => Ok(Self::SameLNext),
            "knight" => Ok(Self::Knight),
            other => Err(invalid(format!("unknown move {other:?} (same-n, same-l, knight)"))),
        }
    }
}

/// Block position in the conventional 18-column table: `(period, group)`.
fn conventional_coordinates(a: &Address) -> Result<(u32, u32)> {
    let index = entry_index(a);
    match a.l {
        1 => Ok((a.n, 13 + index)),
        2 => Ok((a.n + 1, 3 + index)),
        _ => Err(Error::NoTarget(format!(
            "knight's move is only defined from p- and d-block addresses, not {a}"
        ))),
    }
}

/// Position of the address inside its entry, counting from 0.
fn entry_index(a: &Address) -> u32 {
    let z = atomic_number(a).expect("validated address");
    (z - *a.entry().z_range().start()) as u32
}

fn from_conventional(period: u32, group: u32) -> Result<Address> {
    let (n, l, index) = match group {
        3..=12 => (period - 1, 2, group - 3),
        13..=18 => (period, 1, group - 13),
        _ => return Err(Error::NoTarget(format!("group {group} has no knight target"))),
    };
    let first = *ShellEntry::new(n, l).z_range().start();
    address_of(first + index as u64)
}

/// Steps through the chart. `SameNNext` is the successor in `(l, jj, mm)`
/// order at fixed `n`; `SameLNext` moves one row down in the same column;
/// `Knight` goes one period down and two groups right on the conventional table.
pub fn move_address(a: &Address, kind: MoveKind) -> Result<Address> {
    a.validate()?;
    match kind {
        MoveKind::SameLNext => Ok(Address { n: a.n + 1, ..*a }),
        MoveKind::SameNNext => {
            if a.mm < a.jj as i32 {
                Ok(Address { mm: a.mm + 2, ..*a })
            } else if a.jj < 2 * a.l + 1 {
                Ok(Address {
                    jj: a.jj + 2,
                    mm: -(a.jj as i32 + 2),
                    ..*a
                })
            } else if a.l + 1 < a.n {
                let l = a.l + 1;
                Ok(Address {
                    l,
                    jj: 2 * l - 1,
                    mm: -(2 * l as i32 - 1),
                    ..*a
                })
            } else {
                Err(Error::NoTarget(format!("{a} is the last address with n = {}", a.n)))
            }
        }
        MoveKind::Knight => {
            let (period, group) = conventional_coordinates(a)?;
            from_conventional(period + 1, group + 2)
        }
    }
}
