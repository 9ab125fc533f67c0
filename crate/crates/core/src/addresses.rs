//! Quantum-number addresses `(n, l, j, m)`, the closed-form atomic number,
//! filling rules and electron configurations.
//!
//! `j` and `m` are half-integers and are stored doubled (`jj = 2j`,
//! `mm = 2m`) so every check stays in integers.

use crate::datasets::{self, TABLE3_SUBSHELLS};
use crate::error::{invalid, Result};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const UNNAMED: &str = "not named";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Address {
    pub n: u32,
    pub l: u32,
    pub jj: u32,
    pub mm: i32,
}

impl Address {
    pub fn new(n: u32, l: u32, jj: u32, mm: i32) -> Result<Self> {
        let a = Self { n, l, jj, mm };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { n, l, jj, mm } = *self;
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        if l >= n {
            return Err(invalid(format!("l = {l} must be below n = {n}")));
        }
        if jj != 2 * l + 1 && (l == 0 || jj != 2 * l - 1) {
            return Err(invalid(format!("j = {jj}/2 is not l ± 1/2 for l = {l}")));
        }
        if mm % 2 == 0 || mm.unsigned_abs() > jj {
            return Err(invalid(format!("m = {mm}/2 is not in -j..j")));
        }
        Ok(())
    }

    pub fn shell_sum(&self) -> u32 {
        self.n + self.l
    }

    pub fn j(&self) -> Rational64 {
        Rational64::new(self.jj as i64, 2)
    }

    pub fn m(&self) -> Rational64 {
        Rational64::new(self.mm as i64, 2)
    }

    pub fn entry(&self) -> ShellEntry {
        ShellEntry::new(self.n, self.l)
    }

    pub fn subshell(&self) -> Subshell {
        Subshell { n: self.n, l: self.l }
    }
}

fn half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.l, half(self.jj as i64), half(self.mm as i64))
    }
}

fn parse_half(field: &str) -> Result<i64> {
    let field = field.trim().trim_start_matches('+');
    let bad = || invalid(format!("cannot read {field:?} as a half-integer"));
    let value: Rational64 = match field.split_once('/') {
        Some((num, den)) => Rational64::new(num.trim().parse().map_err(|_| bad())?, den.trim().parse().map_err(|_| bad())?),
        None => Rational64::from_integer(field.parse().map_err(|_| bad())?),
    };
    let doubled = value * 2;
    if !doubled.is_integer() {
        return Err(bad());
    }
    Ok(doubled.to_integer())
}

impl FromStr for Address {
    type Err = crate::Error;

    /// Accepts `(n,l,j,m)` with `j`, `m` written as `5/2`, `-1/2`, ...;
    /// parentheses and spaces are optional.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(invalid(format!("expected (n,l,j,m), got {s:?}")));
        }
        let n = parts[0].trim().parse().map_err(|_| invalid(format!("bad n in {s:?}")))?;
        let l = parts[1].trim().parse().map_err(|_| invalid(format!("bad l in {s:?}")))?;
        let jj = parse_half(parts[2])?;
        let mm = parse_half(parts[3])?;
        let jj = u32::try_from(jj).map_err(|_| invalid("j must be positive"))?;
        let mm = i32::try_from(mm).map_err(|_| invalid("m out of range"))?;
        Self::new(n, l, jj, mm)
    }
}

/// `Z(n l j m)`, evaluated exactly.
pub fn atomic_number(a: &Address) -> Result<u64> {
    a.validate()?;
    let r = |x: i64| Rational64::from_integer(x);
    let s = r(a.shell_sum() as i64);
    let l = r(a.l as i64);
    let sign = if a.shell_sum().is_multiple_of(2) { r(1) } else { r(-1) };
    let z = s * (s * s - r(1)) / r(6) + (s + r(1)) * (s + r(1)) / r(2) - (r(1) + sign) * (s + r(1)) / r(4)
        - r(4) * l * (l + r(1))
        + l
        + a.j() * (r(2) * l + r(1))
        + a.m()
        - r(1);
    assert!(z.is_integer() && z.is_positive(), "Z formula gave {z} for {a}");
    Ok(z.to_integer() as u64)
}

/// Addresses in atomic-number order: entries by `n + l`, then `n`; inside an
/// entry by `jj`, then `mm`.
#[derive(Debug, Clone)]
pub struct AddressIter {
    shell_sum: u32,
    n: u32,
    pending: std::vec::IntoIter<Address>,
}

impl AddressIter {
    fn entry_addresses(n: u32, l: u32) -> Vec<Address> {
        let jjs = if l == 0 { vec![1] } else { vec![2 * l - 1, 2 * l + 1] };
        jjs.into_iter()
            .flat_map(|jj| (-(jj as i32)..=jj as i32).step_by(2).map(move |mm| Address { n, l, jj, mm }))
            .collect()
    }

    /// Smallest `n` with `l = shell_sum - n < n`.
    fn first_n(shell_sum: u32) -> u32 {
        shell_sum / 2 + 1
    }
}

impl Default for AddressIter {
    fn default() -> Self {
        Self {
            shell_sum: 1,
            n: 1,
            pending: Vec::new().into_iter(),
        }
    }
}

impl Iterator for AddressIter {
    type Item = Address;

    fn next(&mut self) -> Option<Address> {
        loop {
            if let Some(a) = self.pending.next() {
                return Some(a);
            }
            if self.n > self.shell_sum {
                self.shell_sum += 1;
                self.n = Self::first_n(self.shell_sum);
            }
            self.pending = Self::entry_addresses(self.n, self.shell_sum - self.n).into_iter();
            self.n += 1;
        }
    }
}

pub fn addresses() -> AddressIter {
    AddressIter::default()
}

pub fn enumerate_addresses(count: usize) -> Vec<Address> {
    addresses().take(count).collect()
}

/// Entries in chart order: `(n + l)` ascending, then `n` ascending.
pub fn entries() -> impl Iterator<Item = ShellEntry> {
    (1u32..).flat_map(|s| (AddressIter::first_n(s)..=s).map(move |n| ShellEntry::new(n, s - n)))
}

/// Inverse of [`atomic_number`].
pub fn address_of(z: u64) -> Result<Address> {
    if z == 0 {
        return Err(invalid("Z must be at least 1"));
    }
    let mut before = 0u64;
    for entry in entries() {
        let cap = entry.capacity as u64;
        if before + cap >= z {
            let addr = AddressIter::entry_addresses(entry.n, entry.l)[(z - before - 1) as usize];
            return Ok(addr);
        }
        before += cap;
    }
    unreachable!("entries() is infinite")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

pub fn parity_class(a: &Address) -> Parity {
    if a.shell_sum() % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// `(n^2, 2n^2, E_n / E_1)`.
pub fn degeneracy_and_energy(n: u32) -> Result<(u64, u64, Rational64)> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let sq = (n as u64) * (n as u64);
    Ok((sq, 2 * sq, Rational64::new(1, sq as i64)))
}

/// The chart entry `[n+l, n]` holding `2(2l+1)` boxes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellEntry {
    pub shell_sum: u32,
    pub n: u32,
    pub l: u32,
    pub capacity: u32,
    pub sub_multiplet_lengths: Vec<u32>,
}

impl ShellEntry {
    pub fn new(n: u32, l: u32) -> Self {
        let sub_multiplet_lengths = if l == 0 { vec![2] } else { vec![2 * l, 2 * l + 2] };
        Self {
            shell_sum: n + l,
            n,
            l,
            capacity: 2 * (2 * l + 1),
            sub_multiplet_lengths,
        }
    }

    pub fn parity(&self) -> Parity {
        if self.shell_sum % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Atomic numbers covered by the entry.
    pub fn z_range(&self) -> std::ops::RangeInclusive<u64> {
        let first = AddressIter::entry_addresses(self.n, self.l)[0];
        let z = atomic_number(&first).expect("entry addresses are valid");
        z..=z + self.capacity as u64 - 1
    }
}

impl fmt::Display for ShellEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]", self.shell_sum, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub z: u64,
    pub name: String,
    pub symbol: Option<String>,
    pub address: Address,
    pub entry: ShellEntry,
    pub parity: Parity,
    pub discovery_year: Option<u32>,
}

pub fn element(z: u64) -> Result<ElementRecord> {
    let address = address_of(z)?;
    let row = u32::try_from(z).ok().and_then(datasets::table2_row);
    Ok(ElementRecord {
        z,
        name: row.map_or_else(|| UNNAMED.to_owned(), |r| r.name.clone()),
        symbol: row.and_then(|r| r.symbol.clone()),
        entry: address.entry(),
        parity: parity_class(&address),
        discovery_year: u32::try_from(z).ok().and_then(datasets::discovery_year),
        address,
    })
}

/// Case-insensitive symbol lookup.
pub fn element_by_symbol(symbol: &str) -> Result<ElementRecord> {
    let row = datasets::table2()
        .iter()
        .find(|r| r.symbol.as_deref().is_some_and(|s| s.eq_ignore_ascii_case(symbol.trim())))
        .ok_or_else(|| invalid(format!("unknown element symbol {symbol:?}")))?;
    element(row.z as u64)
}

pub fn element_at(a: &Address) -> Result<ElementRecord> {
    element(atomic_number(a)?)
}

const SUBSHELL_LETTERS: &[u8] = b"spdfghiklmnoqrtuv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subshell {
    pub n: u32,
    pub l: u32,
}

impl Subshell {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 || l >= n {
            return Err(invalid(format!("no subshell with n = {n}, l = {l}")));
        }
        Ok(Self { n, l })
    }

    /// Stoner capacity `2(2l+1)`.
    pub fn capacity(&self) -> u32 {
        2 * (2 * self.l + 1)
    }

    pub fn letter(l: u32) -> String {
        SUBSHELL_LETTERS
            .get(l as usize)
            .map_or_else(|| format!("[l={l}]"), |&c| (c as char).to_string())
    }
}

impl fmt::Display for Subshell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.n, Self::letter(self.l))
    }
}

impl Serialize for Subshell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Subshell {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        let n = s[..split].parse().map_err(|_| invalid(format!("bad subshell {s:?}")))?;
        let letter = &s.as_bytes()[split..];
        let l = match letter {
            [c] => SUBSHELL_LETTERS.iter().position(|x| x == c),
            _ => None,
        }
        .ok_or_else(|| invalid(format!("bad subshell {s:?}")))?;
        Self::new(n, l as u32)
    }
}

/// Orders subshells by the key `(n + q l, n, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FillingRule {
    q: Rational64,
}

impl FillingRule {
    pub const MADELUNG: Self = Self { q: Rational64::new_raw(1, 1) };
    pub const HYDROGENIC: Self = Self { q: Rational64::new_raw(0, 1) };
    pub const OSCILLATOR: Self = Self { q: Rational64::new_raw(-1, 2) };
    pub const HALF: Self = Self { q: Rational64::new_raw(1, 2) };

    /// `q <= -1` would let high-`l` subshells of every shell precede the
    /// ones below them, so no filling order exists.
    pub fn new(q: Rational64) -> Result<Self> {
        if q <= -Rational64::one() {
            return Err(invalid(format!("q = {q} must exceed -1")));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> Rational64 {
        self.q
    }

    pub fn name(&self) -> String {
        match *self {
            r if r == Self::MADELUNG => "madelung".into(),
            r if r == Self::HYDROGENIC => "hydrogenic".into(),
            r if r == Self::OSCILLATOR => "oscillator".into(),
            r if r == Self::HALF => "half".into(),
            r => format!("q={}", r.q),
        }
    }

    pub fn key(&self, s: &Subshell) -> (Rational64, u32, u32) {
        (Rational64::from_integer(s.n as i64) + self.q * s.l as i64, s.n, s.l)
    }

    /// Smallest key value reachable by any subshell with principal number `>= n`.
    fn key_floor(&self, n: u32) -> Rational64 {
        let n = Rational64::from_integer(n as i64);
        if self.q >= Rational64::zero() {
            n
        } else {
            n * (Rational64::one() + self.q) - self.q
        }
    }
}

impl Default for FillingRule {
    fn default() -> Self {
        Self::MADELUNG
    }
}

impl fmt::Display for FillingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FillingRule {
    type Err = crate::Error;

    /// `madelung`, `hydrogenic`, `oscillator`, `half` or `q=<rational>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "madelung" => Ok(Self::MADELUNG),
            "hydrogenic" => Ok(Self::HYDROGENIC),
            "oscillator" => Ok(Self::OSCILLATOR),
            "half" => Ok(Self::HALF),
            other => {
                let value = other
                    .strip_prefix("q=")
                    .ok_or_else(|| invalid(format!("unknown filling rule {s:?}")))?;
                let q: Rational64 = value
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("cannot read {value:?} as a rational")))?;
                Self::new(q)
            }
        }
    }
}

/// First `count` subshells in the rule's filling order.
pub fn shell_sequence(rule: FillingRule, count: usize) -> Vec<Subshell> {
    let mut n_bound = 4;
    loop {
        let mut all: Vec<Subshell> = (1..=n_bound)
            .flat_map(|n| (0..n).map(move |l| Subshell { n, l }))
            .collect();
        all.sort_by_key(|s| rule.key(s));
        // Anything with n > n_bound has key >= floor and, on a tie, a larger n.
        let floor = rule.key_floor(n_bound + 1);
        let settled: Vec<Subshell> = all.into_iter().take_while(|s| rule.key(s).0 <= floor).collect();
        if settled.len() >= count {
            return settled.into_iter().take(count).collect();
        }
        n_bound *= 2;
    }
}

fn superscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// `1s² 2s²` (or `1s2 2s2` when `plain`).
pub fn format_occupancies(occ: &[(Subshell, u32)], plain: bool) -> String {
    occ.iter()
        .map(|(s, k)| if plain { format!("{s}{k}") } else { format!("{s}{}", superscript(*k)) })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub z: u64,
    #[serde(serialize_with = "serialize_rule")]
    pub rule: FillingRule,
    pub occupancies: Vec<(Subshell, u32)>,
    /// Electrons in the subshells before the last one filled.
    pub closed_core_count: u64,
}

fn serialize_rule<S: Serializer>(r: &FillingRule, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl Configuration {
    pub fn total(&self) -> u64 {
        self.occupancies.iter().map(|&(_, k)| k as u64).sum()
    }

    /// ASCII form, e.g. `1s2 2s2 2p6`.
    pub fn plain(&self) -> String {
        format_occupancies(&self.occupancies, true)
    }

    pub fn as_map(&self) -> BTreeMap<Subshell, u32> {
        self.occupancies.iter().copied().collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_occupancies(&self.occupancies, false))
    }
}

/// Stoner filling of `z` electrons in the rule's order.
pub fn electron_configuration(z: u64, rule: FillingRule) -> Result<Configuration> {
    if z == 0 {
        return Err(invalid("Z must be at least 1"));
    }
    let mut count = 8;
    let sequence = loop {
        let seq = shell_sequence(rule, count);
        if seq.iter().map(|s| s.capacity() as u64).sum::<u64>() >= z {
            break seq;
        }
        count *= 2;
    };
    let mut left = z;
    let mut occupancies = Vec::new();
    for s in sequence {
        if left == 0 {
            break;
        }
        let k = left.min(s.capacity() as u64);
        occupancies.push((s, k as u32));
        left -= k;
    }
    let last = occupancies.last().map_or(0, |&(_, k)| k as u64);
    Ok(Configuration {
        z,
        rule,
        occupancies,
        closed_core_count: z - last,
    })
}

/// Table configuration for `z <= 103`, nonzero subshells in table column order.
pub fn reference_configuration(z: u64) -> Option<Vec<(Subshell, u32)>> {
    let row = datasets::table3_row(u32::try_from(z).ok()?)?;
    Some(
        TABLE3_SUBSHELLS
            .iter()
            .zip(row.occupancies)
            .filter(|&(_, k)| k > 0)
            .map(|(&(n, l), k)| (Subshell { n, l }, k))
            .collect(),
    )
}

pub const REFERENCE_Z_MAX: u64 = 103;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigDiff {
    pub z: u64,
    pub symbol: String,
    pub predicted: Vec<(Subshell, u32)>,
    pub reference: Vec<(Subshell, u32)>,
}

impl ConfigDiff {
    /// `(subshell, predicted, reference)` for each subshell whose occupancy differs.
    pub fn differing(&self) -> Vec<(Subshell, u32, u32)> {
        let p: BTreeMap<_, _> = self.predicted.iter().copied().collect();
        let r: BTreeMap<_, _> = self.reference.iter().copied().collect();
        let mut keys: Vec<Subshell> = p.keys().chain(r.keys()).copied().collect();
        keys.sort_by_key(|s| FillingRule::MADELUNG.key(s));
        keys.dedup();
        keys.into_iter()
            .map(|s| (s, p.get(&s).copied().unwrap_or(0), r.get(&s).copied().unwrap_or(0)))
            .filter(|(_, a, b)| a != b)
            .collect()
    }

    pub fn predicted_text(&self) -> String {
        let d = self.differing();
        format_occupancies(&d.iter().map(|&(s, a, _)| (s, a)).collect::<Vec<_>>(), false)
    }

    pub fn reference_text(&self) -> String {
        let d = self.differing();
        format_occupancies(&d.iter().map(|&(s, _, b)| (s, b)).collect::<Vec<_>>(), false)
    }
}

/// Elements `1..=z_max` whose rule prediction differs from the table.
pub fn configuration_diff(z_max: u64, rule: FillingRule) -> Result<Vec<ConfigDiff>> {
    if z_max > REFERENCE_Z_MAX {
        return Err(invalid(format!("reference configurations stop at Z = {REFERENCE_Z_MAX}")));
    }
    let mut out = Vec::new();
    for z in 1..=z_max {
        let predicted = electron_configuration(z, rule)?;
        let reference = reference_configuration(z).expect("rows 1..=103 are present");
        if predicted.as_map() != reference.iter().copied().collect::<BTreeMap<_, _>>() {
            out.push(ConfigDiff {
                z,
                symbol: datasets::table3_row(z as u32).unwrap().symbol.clone(),
                predicted: predicted.occupancies,
                reference,
            });
        }
    }
    Ok(out)
}
