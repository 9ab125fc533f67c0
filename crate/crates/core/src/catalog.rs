//! Cartan classification data and the counting theorems for commuting sets.
//!
//! Everything here is exact integer or rational arithmetic. The A1 worked
//! example is checked with 2x2 spin-1/2 matrices over the complex rationals.

use crate::error::{invalid, Error, Result};
use crate::exact::{czero, imag, rat, real, ComplexRational, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyLetter {
    A,
    B,
    C,
    D,
}

impl FamilyLetter {
    /// Smallest rank at which the family is listed without coincidences.
    pub fn canonical_min_rank(self) -> u64 {
        match self {
            FamilyLetter::A => 1,
            FamilyLetter::B => 2,
            FamilyLetter::C => 3,
            FamilyLetter::D => 4,
        }
    }
}

impl fmt::Display for FamilyLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A classical family member `X_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyId {
    pub letter: FamilyLetter,
    pub rank: u64,
}

impl FamilyId {
    pub fn new(letter: FamilyLetter, rank: u64) -> Result<Self> {
        if rank == 0 {
            return Err(invalid("family rank must be at least 1"));
        }
        Ok(Self { letter, rank })
    }

    pub fn below_canonical_rank(&self) -> bool {
        self.rank < self.letter.canonical_min_rank()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyData {
    pub order: u64,
    pub order_minus_rank: u64,
    pub representative_name: String,
}

pub fn family_data(family: FamilyId) -> FamilyData {
    let l = family.rank;
    let (order, representative_name) = match family.letter {
        FamilyLetter::A => (l * (l + 2), format!("su({})", l + 1)),
        FamilyLetter::B => (l * (2 * l + 1), format!("so({})", 2 * l + 1)),
        FamilyLetter::C => (l * (2 * l + 1), format!("sp({})", 2 * l)),
        FamilyLetter::D => (l * (2 * l - 1), format!("so({})", 2 * l)),
    };
    FamilyData {
        order,
        order_minus_rank: order - l,
        representative_name,
    }
}

/// Low-rank identification between families, if one applies.
pub fn coincidence(family: FamilyId) -> Option<&'static str> {
    use FamilyLetter::*;
    match (family.letter, family.rank) {
        (B, 1) | (C, 1) => Some("≅ A1"),
        (C, 2) => Some("≅ B2"),
        (D, 1) => Some("≅ so(2), abelian"),
        (D, 2) => Some("≅ A1 ⊕ A1"),
        (D, 3) => Some("≅ A3"),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExceptionalName {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl ExceptionalName {
    pub const ALL: [ExceptionalName; 5] = [Self::G2, Self::F4, Self::E6, Self::E7, Self::E8];
}

impl std::str::FromStr for ExceptionalName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(Self::G2),
            "F4" => Ok(Self::F4),
            "E6" => Ok(Self::E6),
            "E7" => Ok(Self::E7),
            "E8" => Ok(Self::E8),
            other => Err(invalid(format!("unknown exceptional algebra {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalId {
    pub name: ExceptionalName,
    pub rank: u64,
    pub order_standard: u64,
    /// Order as printed in the reference table; differs only for E8.
    pub order_paper: u64,
    pub discrepancy: bool,
}

pub fn exceptional_data(name: ExceptionalName) -> ExceptionalId {
    let (rank, order_standard, order_paper) = match name {
        ExceptionalName::G2 => (2, 14, 14),
        ExceptionalName::F4 => (4, 52, 52),
        ExceptionalName::E6 => (6, 78, 78),
        ExceptionalName::E7 => (7, 133, 133),
        ExceptionalName::E8 => (8, 248, 240),
    };
    ExceptionalId {
        name,
        rank,
        order_standard,
        order_paper,
        discrepancy: order_standard != order_paper,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub order: u64,
    pub rank: u64,
    pub racah_number: u64,
    pub commuting_count: u64,
}

/// Racah number `f = (r - 3l)/2` and the size `(r + l)/2` of a complete
/// commuting set `{H_i, C_i, O_beta}`.
pub fn racah_and_commuting(order: u64, rank: u64) -> Result<CountingReport> {
    if rank == 0 || order < rank {
        return Err(invalid("need order >= rank >= 1"));
    }
    let excess = order
        .checked_sub(3 * rank)
        .filter(|e| e % 2 == 0)
        .ok_or(Error::NotSemisimple { order, rank })?;
    let racah_number = excess / 2;
    Ok(CountingReport {
        order,
        rank,
        racah_number,
        commuting_count: 2 * rank + racah_number,
    })
}

/// One column of the table of groups used for the periodic system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupRow {
    pub group: &'static str,
    pub algebra: FamilyId,
    pub order: u64,
}

pub fn group_table() -> Vec<GroupRow> {
    use FamilyLetter::*;
    let row = |group, letter, rank, order| GroupRow {
        group,
        algebra: FamilyId { letter, rank },
        order,
    };
    vec![
        row("SO(3)", A, 1, 3),
        row("SO(4)", D, 2, 6),
        row("SO(4,1)", B, 2, 10),
        row("SO(3,2)", B, 2, 10),
        row("SO(4,2)", D, 3, 15),
        row("SU(2)", A, 1, 3),
        row("SU(2,2)", A, 3, 15),
        row("Sp(8,R)", C, 4, 36),
    ]
}

/// One column of the Racah counting table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingRow {
    pub groups: &'static str,
    pub algebra: FamilyId,
    pub report: CountingReport,
}

pub fn counting_table() -> Vec<CountingRow> {
    use FamilyLetter::*;
    let row = |groups, letter, rank, order, racah_number, commuting_count| CountingRow {
        groups,
        algebra: FamilyId { letter, rank },
        report: CountingReport {
            order,
            rank,
            racah_number,
            commuting_count,
        },
    };
    vec![
        row("SO(3) and SU(2)", B, 1, 3, 0, 2),
        row("SO(4) and SU(2)xSU(2)", D, 2, 6, 0, 4),
        row("SO(4,1) and SO(3,2)", B, 2, 10, 2, 6),
        row("SO(4,2) and SU(2,2)", D, 3, 15, 3, 9),
        row("Sp(8,R)", C, 4, 36, 12, 20),
    ]
}

/// A value `q * sqrt(2)` with rational `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtTwoMultiple(pub Rational);

impl fmt::Display for SqrtTwoMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // q*sqrt2 = 1/(k*sqrt2) when q = 1/(2k)
        let two_q = self.0.clone() * rat(2, 1);
        if two_q.numer().abs() == 1.into() {
            let sign = if two_q.is_negative() { "-" } else { "+" };
            let k = two_q.denom();
            if *k == 1.into() {
                write!(f, "{sign}1/√2")
            } else {
                write!(f, "{sign}1/({k}√2)")
            }
        } else {
            write!(f, "{}√2", self.0)
        }
    }
}

type Mat2 = [[ComplexRational; 2]; 2];

fn mat_zero() -> Mat2 {
    [[czero(), czero()], [czero(), czero()]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] = out[i][j].clone() + a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    out
}

fn mat_lin(ca: &ComplexRational, a: &Mat2, cb: &ComplexRational, b: &Mat2) -> Mat2 {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = ca.clone() * a[i][j].clone() + cb.clone() * b[i][j].clone();
        }
    }
    out
}

fn mat_adjoint(a: &Mat2) -> Mat2 {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    mat_lin(&real(1, 1), &mat_mul(a, b), &real(-1, 1), &mat_mul(b, a))
}

/// Largest `|re| + |im|` over the entries, exact.
fn mat_norm(a: &Mat2) -> Rational {
    a.iter()
        .flatten()
        .map(|z| z.re.abs() + z.im.abs())
        .fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

#[derive(Debug, Clone)]
pub struct A1CheckReport {
    /// Eigencoefficients of `ad H1` on `E_{+1}` and `E_{-1}`.
    pub root_values: (SqrtTwoMultiple, SqrtTwoMultiple),
    pub hermitian_pairing_ok: bool,
    /// Residual matrix of `1/2 sum X_a^2 - (H1^2 + E+E- + E-E+)` with
    /// `E_{±1} = (X1 ± i X2)/v`.
    pub casimir_identity_residual: Mat2Exact,
    /// Same residual with the printed normalisation `E_{±1} = (X1 ± i X2)/v^2`.
    pub casimir_identity_residual_printed: Mat2Exact,
    pub convention: &'static str,
}

/// Exact 2x2 complex-rational matrix with its max-entry norm.
#[derive(Debug, Clone)]
pub struct Mat2Exact {
    pub entries: [[ComplexRational; 2]; 2],
    pub norm: Rational,
}

impl Mat2Exact {
    fn new(entries: Mat2) -> Self {
        let norm = mat_norm(&entries);
        Self { entries, norm }
    }

    pub fn is_zero(&self) -> bool {
        self.norm.is_zero()
    }
}

/// Works with `sqrt2 * H1 = X3` and `sqrt2 * E = X1 ± iX2` so all entries stay
/// rational; the irrational factor is carried by [`SqrtTwoMultiple`].
pub fn a1_cartan_verify() -> A1CheckReport {
    // spin-1/2: X_a = sigma_a / 2, [X_a, X_b] = i eps_abc X_c
    let x1: Mat2 = [[czero(), real(1, 2)], [real(1, 2), czero()]];
    let x2: Mat2 = [[czero(), imag(-1, 2)], [imag(1, 2), czero()]];
    let x3: Mat2 = [[real(1, 2), czero()], [czero(), real(-1, 2)]];
    let one = real(1, 1);
    let i = imag(1, 1);

    let raise = mat_lin(&one, &x1, &i, &x2); // X1 + iX2 = sqrt2 * E+
    let lower = mat_lin(&one, &x1, &-i.clone(), &x2);

    // [X3, X±] = lambda X±  =>  [H1, E±] = (lambda / sqrt2) E±
    let root_of = |e: &Mat2| -> Rational {
        let c = commutator(&x3, e);
        let (r, col) = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .find(|&(r, c)| !e[r][c].is_zero())
            .expect("nonzero ladder operator");
        let lambda = c[r][col].clone() / e[r][col].clone();
        debug_assert!(lambda.im.is_zero());
        lambda.re * rat(1, 2)
    };
    let root_values = (
        SqrtTwoMultiple(root_of(&raise)),
        SqrtTwoMultiple(root_of(&lower)),
    );
    let hermitian_pairing_ok = mat_adjoint(&raise) == lower;

    let sum_sq = [&x1, &x2, &x3]
        .iter()
        .fold(mat_zero(), |acc, x| mat_lin(&one, &acc, &one, &mat_mul(x, x)));
    let lhs = mat_lin(&real(1, 2), &sum_sq, &czero(), &mat_zero());
    let h_sq = mat_lin(&real(1, 2), &mat_mul(&x3, &x3), &czero(), &mat_zero());
    let ladder = mat_lin(&one, &mat_mul(&raise, &lower), &one, &mat_mul(&lower, &raise));
    // E = ladder/v: E+E- + E-E+ = ladder/2; E = ladder/v^2: ladder/4.
    let residual = |ladder_scale: ComplexRational| {
        let rhs = mat_lin(&one, &h_sq, &ladder_scale, &ladder);
        Mat2Exact::new(mat_lin(&one, &lhs, &real(-1, 1), &rhs))
    };

    A1CheckReport {
        root_values,
        hermitian_pairing_ok,
        casimir_identity_residual: residual(real(1, 2)),
        casimir_identity_residual_printed: residual(real(1, 4)),
        convention: "[X_a, X_b] = i eps_abc X_c, X_a = sigma_a/2",
    }
}
