//! Exact complex-rational scalars and a small Gaussian-elimination solver.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Write;

pub type Rational = BigRational;
pub type ComplexRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn cq(re: Rational, im: Rational) -> ComplexRational {
    Complex::new(re, im)
}

/// Complex rational `num/den`.
pub fn real(num: i64, den: i64) -> ComplexRational {
    Complex::new(rat(num, den), Rational::zero())
}

/// `i * num/den`.
pub fn imag(num: i64, den: i64) -> ComplexRational {
    Complex::new(Rational::zero(), rat(num, den))
}

pub fn czero() -> ComplexRational {
    ComplexRational::zero()
}

pub fn cone() -> ComplexRational {
    ComplexRational::one()
}

pub fn to_c64(z: &ComplexRational) -> num_complex::Complex64 {
    num_complex::Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// Human-readable exact value, e.g. `1/2`, `-i/2`, `1 + 3/4i`.
pub fn format_cq(z: &ComplexRational) -> String {
    let fmt_im = |im: &Rational| -> String {
        let (sign, mag) = if im.is_negative() {
            ("-", -im.clone())
        } else {
            ("", im.clone())
        };
        let num = if mag.numer().is_one() {
            String::new()
        } else {
            mag.numer().to_string()
        };
        if mag.denom().is_one() {
            format!("{sign}{num}i")
        } else {
            format!("{sign}{num}i/{}", mag.denom())
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => fmt_im(&z.im),
        (false, false) => {
            let mut out = z.re.to_string();
            if z.im.is_negative() {
                let _ = write!(out, " - {}", fmt_im(&-z.im.clone()));
            } else {
                let _ = write!(out, " + {}", fmt_im(&z.im));
            }
            out
        }
    }
}

/// Row-reduced column space of a set of exact vectors.
///
/// Holds the elimination transform `E` with `E * A = R` (`R` in reduced row
/// echelon form) so that later right-hand sides can be expressed in the span
/// of the input columns without redoing the elimination.
#[derive(Debug, Clone)]
pub struct ColumnSpan {
    rows: usize,
    cols: usize,
    transform: Vec<Vec<ComplexRational>>,
    /// After reduction the pivot of column `pivot_cols[k]` sits in row `k`.
    pivot_cols: Vec<usize>,
}

impl ColumnSpan {
    /// `columns[j]` is the j-th input vector; all must share one length.
    pub fn new(columns: &[Vec<ComplexRational>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut a: Vec<Vec<ComplexRational>> = (0..rows)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut e: Vec<Vec<ComplexRational>> = (0..rows)
            .map(|r| (0..rows).map(|c| if r == c { cone() } else { czero() }).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            e.swap(row, p);
            let inv = cone() / a[row][col].clone();
            scale_row(&mut a[row], &inv);
            scale_row(&mut e[row], &inv);
            for r in 0..rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let (src_a, src_e) = (a[row].clone(), e[row].clone());
                    axpy_row(&mut a[r], &f, &src_a);
                    axpy_row(&mut e[r], &f, &src_e);
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Self {
            rows,
            cols,
            transform: e,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.cols
    }

    /// Coefficients `x` with `A x = b`, or `None` when `b` is outside the span.
    /// Free columns (dependent inputs) get coefficient zero.
    pub fn solve(&self, b: &[ComplexRational]) -> Option<Vec<ComplexRational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let nonzero: Vec<usize> = (0..self.rows).filter(|&i| !b[i].is_zero()).collect();
        let c: Vec<ComplexRational> = self
            .transform
            .iter()
            .map(|erow| {
                nonzero
                    .iter()
                    .filter(|&&i| !erow[i].is_zero())
                    .fold(czero(), |acc, &i| acc + erow[i].clone() * b[i].clone())
            })
            .collect();
        if c[self.rank()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![czero(); self.cols];
        for (k, &col) in self.pivot_cols.iter().enumerate() {
            x[col] = c[k].clone();
        }
        Some(x)
    }
}

fn scale_row(row: &mut [ComplexRational], f: &ComplexRational) {
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v = v.clone() * f.clone();
        }
    }
}

/// `row -= f * src`
fn axpy_row(row: &mut [ComplexRational], f: &ComplexRational, src: &[ComplexRational]) {
    for (v, s) in row.iter_mut().zip(src) {
        if !s.is_zero() {
            *v = v.clone() - f.clone() * s.clone();
        }
    }
}
