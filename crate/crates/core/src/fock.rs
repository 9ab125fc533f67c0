//! The so(4,2) generators as sparse matrices on a truncated Fock space.
//!
//! The constrained basis holds the states with `n1 + n2 = n3 + n4`, which is
//! where all hydrogen bound states live; the principal number of a state is
//! `n = n1 + n2 + 1`. Truncation keeps `n <= n_max`. A degree-`d` polynomial in
//! the generators is only trusted on interior states `n <= n_max - d`.

use crate::boson::{build_so42, doublet_spin, GeneratorSet, QuadraticForm, MODES};
use crate::error::{invalid, Result};
use crate::exact::to_c64;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;

/// Entries below this magnitude are dropped from sparse matrices.
pub const DROP_TOLERANCE: f64 = 1e-14;
pub const TOL_SPECTRA: f64 = 1e-9;
pub const TOL_ZERO: f64 = 1e-12;
pub const TOL_KRYLOV: f64 = 1e-8;

pub const EXPECTED_C1_ABS: f64 = 6.0;
pub const EXPECTED_C3_ABS: f64 = 12.0;

pub type FockState = [u32; MODES];

#[derive(Debug, Clone)]
pub struct FockBasis {
    states: Vec<FockState>,
    index: HashMap<FockState, usize>,
    pub n_max: u32,
    pub constrained: bool,
}

impl FockBasis {
    /// Constrained: all states with `n1+n2 = n3+n4 <= n_max - 1`. Full: all
    /// occupations with total quanta `<= 2(n_max - 1)`. Ordered by shell, then
    /// lexicographically.
    pub fn new(n_max: u32, constrained: bool) -> Result<Self> {
        if n_max == 0 {
            return Err(invalid("n_max must be at least 1"));
        }
        let mut states = Vec::new();
        if constrained {
            for k in 0..n_max {
                for n1 in 0..=k {
                    for n3 in 0..=k {
                        states.push([n1, k - n1, n3, k - n3]);
                    }
                }
            }
            for block in states.chunk_by_mut(|a, b| a[0] + a[1] == b[0] + b[1]) {
                block.sort_unstable();
            }
        } else {
            let max_total = 2 * (n_max - 1);
            for total in 0..=max_total {
                let mut shell = Vec::new();
                for n1 in 0..=total {
                    for n2 in 0..=(total - n1) {
                        for n3 in 0..=(total - n1 - n2) {
                            shell.push([n1, n2, n3, total - n1 - n2 - n3]);
                        }
                    }
                }
                shell.sort_unstable();
                states.extend(shell);
            }
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Ok(Self {
            states,
            index,
            n_max,
            constrained,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn index_of(&self, state: &FockState) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// `n = n1 + n2 + 1` (constrained basis); for the full basis the
    /// half-total `(sum n_i)/2 + 1`, rounded down.
    pub fn principal(&self, k: usize) -> u32 {
        let s = self.states[k];
        if self.constrained {
            s[0] + s[1] + 1
        } else {
            s.iter().sum::<u32>() / 2 + 1
        }
    }

    /// Index range of the `n`-block of a constrained basis.
    pub fn block(&self, n: u32) -> std::ops::Range<usize> {
        let start = self.states.partition_point(|s| s[0] + s[1] + 1 < n);
        let end = self.states.partition_point(|s| s[0] + s[1] < n);
        start..end
    }

    pub fn ground_state(&self) -> usize {
        self.index_of(&[0, 0, 0, 0]).expect("vacuum is always present")
    }
}

/// Row-major sparse complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl FockOperator {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(|i| vec![(i, Complex64::new(1.0, 0.0))]).collect(),
        }
    }

    fn from_row_maps(dim: usize, maps: Vec<HashMap<usize, Complex64>>) -> Self {
        let rows = maps
            .into_iter()
            .map(|m| {
                let mut row: Vec<_> = m.into_iter().filter(|(_, v)| v.norm() >= DROP_TOLERANCE).collect();
                row.sort_unstable_by_key(|&(c, _)| c);
                row
            })
            .collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map_or(Complex64::new(0.0, 0.0), |k| self.rows[i][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&(j, v)| (j, v * c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lin(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lin(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    /// `a * self + b * other`
    pub fn lin(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        assert_eq!(self.dim, other.dim);
        let maps = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(r1, r2)| {
                let mut m = HashMap::new();
                for &(j, v) in r1 {
                    *m.entry(j).or_default() += a * v;
                }
                for &(j, v) in r2 {
                    *m.entry(j).or_default() += b * v;
                }
                m
            })
            .collect();
        Self::from_row_maps(self.dim, maps)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let maps = self
            .rows
            .iter()
            .map(|r| {
                let mut m: HashMap<usize, Complex64> = HashMap::new();
                for &(k, v) in r {
                    for &(j, w) in &other.rows[k] {
                        *m.entry(j).or_default() += v * w;
                    }
                }
                m
            })
            .collect();
        Self::from_row_maps(self.dim, maps)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn adjoint(&self) -> Self {
        let mut maps = vec![HashMap::new(); self.dim];
        for (i, j, v) in self.entries() {
            maps[j].insert(i, v.conj());
        }
        Self::from_row_maps(self.dim, maps)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(j, a)| a * v[j]).sum())
            .collect()
    }

    /// Column `k`, i.e. the image of basis vector `k`.
    pub fn column(&self, k: usize) -> Vec<Complex64> {
        let mut e = vec![Complex64::new(0.0, 0.0); self.dim];
        e[k] = Complex64::new(1.0, 0.0);
        self.apply(&e)
    }

    /// Largest `|entry|` over rows and columns accepted by `keep`.
    pub fn max_abs_where(&self, keep: impl Fn(usize, usize) -> bool) -> f64 {
        self.entries()
            .filter(|&(i, j, _)| keep(i, j))
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Dense copy of the block `rows x cols`.
    pub fn dense_block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for i in rows.clone() {
            for &(j, v) in &self.rows[i] {
                if cols.contains(&j) {
                    m[(i - rows.start, j - cols.start)] = v;
                }
            }
        }
        m
    }
}

/// Matrix of `form` on `basis`, using `a†|n> = sqrt(n+1)|n+1>`,
/// `a|n> = sqrt(n)|n-1>`. Images outside the truncated basis are dropped.
pub fn matrixize(form: &QuadraticForm, basis: &FockBasis) -> Result<FockOperator> {
    if basis.constrained && !form.preserves_sector_balance() {
        return Err(invalid("form does not preserve n1+n2 = n3+n4"));
    }
    let no = form.normal_ordered();
    let to = |t: &[[crate::exact::ComplexRational; MODES]; MODES]| -> Vec<(usize, usize, Complex64)> {
        (0..MODES)
            .flat_map(|i| (0..MODES).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let c = to_c64(&t[i][j]);
                (c.norm() != 0.0).then_some((i, j, c))
            })
            .collect()
    };
    let number = to(&no.number);
    let raising = to(&no.raising);
    let lowering = to(&no.lowering);
    let scalar = to_c64(&no.scalar);

    let mut maps: Vec<HashMap<usize, Complex64>> = vec![HashMap::new(); basis.dim()];
    let push = |row: Option<usize>, col: usize, v: Complex64, maps: &mut Vec<HashMap<usize, Complex64>>| {
        if let Some(r) = row {
            *maps[r].entry(col).or_default() += v;
        }
    };
    for (col, state) in basis.states().iter().enumerate() {
        if scalar.norm() != 0.0 {
            push(Some(col), col, scalar, &mut maps);
        }
        for &(i, j, c) in &number {
            if let Some((s, amp)) = annihilate(*state, j).and_then(|(s, a)| create(s, i).map(|(s, b)| (s, a * b))) {
                push(basis.index_of(&s), col, c * amp, &mut maps);
            }
        }
        for &(i, j, c) in &raising {
            let (s, a) = create(*state, j).expect("creation always succeeds");
            let (s, b) = create(s, i).expect("creation always succeeds");
            push(basis.index_of(&s), col, c * 0.5 * a * b, &mut maps);
        }
        for &(i, j, c) in &lowering {
            if let Some((s, amp)) = annihilate(*state, j).and_then(|(s, a)| annihilate(s, i).map(|(s, b)| (s, a * b))) {
                push(basis.index_of(&s), col, c * 0.5 * amp, &mut maps);
            }
        }
    }
    Ok(FockOperator::from_row_maps(basis.dim(), maps))
}

fn create(mut s: FockState, i: usize) -> Option<(FockState, f64)> {
    s[i] += 1;
    Some((s, (s[i] as f64).sqrt()))
}

fn annihilate(mut s: FockState, i: usize) -> Option<(FockState, f64)> {
    if s[i] == 0 {
        return None;
    }
    let amp = (s[i] as f64).sqrt();
    s[i] -= 1;
    Some((s, amp))
}

/// The 15 generators as matrices, indexed one-based through [`Representation::j`].
#[derive(Debug, Clone)]
pub struct Representation {
    pub basis: FockBasis,
    pub generators: GeneratorSet,
    mats: HashMap<(usize, usize), FockOperator>,
}

impl Representation {
    pub fn new(n_max: u32) -> Result<Self> {
        let basis = FockBasis::new(n_max, true)?;
        let (generators, _) = build_so42();
        let mut mats = HashMap::new();
        for a in 1..=6 {
            for b in (a + 1)..=6 {
                let m = matrixize(&generators.get(a, b), &basis)?;
                mats.insert((b, a), m.scale(Complex64::new(-1.0, 0.0)));
                mats.insert((a, b), m);
            }
        }
        Ok(Self {
            basis,
            generators,
            mats,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `J_ab` (lower indices); zero when `a == b`.
    pub fn j(&self, a: usize, b: usize) -> FockOperator {
        self.mats
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| FockOperator::zero(self.dim()))
    }

    /// `J^ab = g^aa g^bb J_ab`.
    pub fn j_upper(&self, a: usize, b: usize) -> FockOperator {
        let g = self.generators.g(a) * self.generators.g(b);
        self.j(a, b).scale(Complex64::new(g as f64, 0.0))
    }

    fn is_interior(&self, k: usize, degree: u32) -> bool {
        self.basis.principal(k) + degree <= self.basis.n_max
    }

    /// `sum_{a,b} J_ab J^ab` over all ordered pairs.
    pub fn casimir_quadratic(&self) -> FockOperator {
        let mut acc = FockOperator::zero(self.dim());
        for a in 1..=6 {
            for b in 1..=6 {
                if a != b {
                    acc = acc.add(&self.j(a, b).mul(&self.j_upper(a, b)));
                }
            }
        }
        acc
    }

    /// `sum eps_abcdef J^ab J^cd J^ef`, reduced to the 15 pairings of
    /// `{1..6}` times 48 (pairs with disjoint indices commute).
    pub fn casimir_cubic(&self) -> FockOperator {
        let mut acc = FockOperator::zero(self.dim());
        for (pairs, sign) in perfect_matchings() {
            let [(a, b), (c, d), (e, f)] = pairs;
            let term = self.j_upper(a, b).mul(&self.j_upper(c, d)).mul(&self.j_upper(e, f));
            acc = acc.add(&term.scale(Complex64::new(48.0 * sign as f64, 0.0)));
        }
        acc
    }

    /// `sum J_ab J^bc J_cd J^da` via `P_a^c = sum_b J_ab J^bc` and
    /// `C = sum_{a,c} P_a^c P_c^a`.
    pub fn casimir_quartic(&self) -> FockOperator {
        let mut p: HashMap<(usize, usize), FockOperator> = HashMap::new();
        for a in 1..=6 {
            for c in 1..=6 {
                let mut acc = FockOperator::zero(self.dim());
                for b in 1..=6 {
                    if b != a && b != c {
                        acc = acc.add(&self.j(a, b).mul(&self.j_upper(b, c)));
                    }
                }
                p.insert((a, c), acc);
            }
        }
        let mut acc = FockOperator::zero(self.dim());
        for a in 1..=6 {
            for c in 1..=6 {
                acc = acc.add(&p[&(a, c)].mul(&p[&(c, a)]));
            }
        }
        acc
    }
}

/// The 15 ways to split `{1..6}` into pairs `a<b`, pairs ordered by first
/// element, with the sign of the permutation `(a b c d e f)`.
pub fn perfect_matchings() -> Vec<([(usize, usize); 3], i32)> {
    fn rec(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            let partner = rest[k];
            let remaining: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != partner).collect();
            acc.push((first, partner));
            rec(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    rec(&[1, 2, 3, 4, 5, 6], &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|m| {
            let perm: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
            let inversions = (0..6)
                .flat_map(|i| ((i + 1)..6).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            ([m[0], m[1], m[2]], sign)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CasimirMeasurement {
    pub degree: u32,
    pub value: f64,
    /// Max over interior states of `||C e_k - value e_k||`.
    pub max_residual: f64,
    /// Max over interior states of `|<e_k|C|e_k> - value|`.
    pub max_constancy_deviation: f64,
    pub interior_states: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CasimirReport {
    pub n_max: u32,
    pub dim: usize,
    pub c1: CasimirMeasurement,
    pub c2: CasimirMeasurement,
    pub c3: CasimirMeasurement,
    pub sign_convention: String,
}

impl CasimirReport {
    pub fn c1_value(&self) -> f64 {
        self.c1.value
    }

    pub fn c2_value(&self) -> f64 {
        self.c2.value
    }

    pub fn c3_value(&self) -> f64 {
        self.c3.value
    }

    /// All three operators act as the same scalar on every interior state.
    pub fn is_scalar(&self, tol: f64) -> bool {
        [&self.c1, &self.c2, &self.c3]
            .iter()
            .all(|m| m.max_residual < tol && m.max_constancy_deviation < tol)
    }

    /// Published magnitudes `|c1| = 6`, `c2 = 0`, `|c3| = 12`, plus scalarity.
    ///
    /// With the quartic contracted as `J_ab J^bc J_cd J^da` the measured value is
    /// -18, so this returns false; see the README.
    pub fn matches_expected(&self, tol: f64) -> bool {
        (self.c1.value.abs() - EXPECTED_C1_ABS).abs() < tol
            && self.c2.value.abs() < tol
            && (self.c3.value.abs() - EXPECTED_C3_ABS).abs() < tol
            && self.is_scalar(tol)
    }
}

fn measure(rep: &Representation, op: &FockOperator, degree: u32) -> Result<CasimirMeasurement> {
    let interior: Vec<usize> = (0..rep.dim()).filter(|&k| rep.is_interior(k, degree)).collect();
    let Some(&first) = interior.first() else {
        return Err(invalid(format!("no interior states for degree {degree}")));
    };
    let value = op.get(first, first).re;
    let mut max_residual: f64 = 0.0;
    let mut max_dev: f64 = 0.0;
    for &k in &interior {
        let mut col = op.column(k);
        let diag = col[k];
        max_dev = max_dev.max((diag - value).norm());
        col[k] -= value;
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        max_residual = max_residual.max(norm);
    }
    Ok(CasimirMeasurement {
        degree,
        value,
        max_residual,
        max_constancy_deviation: max_dev,
        interior_states: interior.len(),
    })
}

/// Evaluates the three invariants on the interior of the `n_max` basis.
pub fn casimir_report(n_max: u32) -> Result<CasimirReport> {
    if n_max < 6 {
        return Err(invalid("casimir_report needs n_max >= 6"));
    }
    let rep = Representation::new(n_max)?;
    let c1 = measure(&rep, &rep.casimir_quadratic(), 2)?;
    let c2 = measure(&rep, &rep.casimir_cubic(), 3)?;
    let c3 = measure(&rep, &rep.casimir_quartic(), 4)?;
    let sign_convention = format!(
        "ordered-pair sums, J^ab = g^aa g^bb J_ab, g = diag(-1,-1,-1,-1,1,1); measured c1 {:+.0}, c3 {:+.0}",
        c1.value, c3.value
    );
    Ok(CasimirReport {
        n_max,
        dim: rep.dim(),
        c1,
        c2,
        c3,
        sign_convention,
    })
}

fn hermitian_eigen(m: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// `l` from an `L^2` eigenvalue `l(l+1)`.
fn l_from_eigenvalue(lambda: f64) -> u32 {
    ((-1.0 + (1.0 + 4.0 * lambda.max(0.0)).sqrt()) / 2.0).round() as u32
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchingReport {
    pub n: u32,
    pub block_dim: usize,
    /// Sorted `L^2` eigenvalues on the block.
    pub l2_eigenvalues: Vec<f64>,
    /// `(l, multiplicity)` read from the spectrum.
    pub multiplets: Vec<(u32, usize)>,
    /// Max deviation of the spectrum from `{l(l+1) x (2l+1) : l < n}`.
    pub max_spectrum_error: f64,
    /// `j(j+1)` with `j = (n-1)/2`.
    pub expected_spin_casimir: f64,
    pub max_a_spin_error: f64,
    pub max_b_spin_error: f64,
    /// Max entry of `S_a^2 - S_b^2` over the whole constrained basis.
    pub max_ab_difference: f64,
}

impl BranchingReport {
    pub fn holds(&self, tol_spectra: f64, tol_zero: f64) -> bool {
        let n = self.n as usize;
        self.block_dim == n * n
            && self.multiplets == (0..self.n).map(|l| (l, 2 * l as usize + 1)).collect::<Vec<_>>()
            && self.max_spectrum_error < tol_spectra
            && self.max_a_spin_error < tol_spectra
            && self.max_b_spin_error < tol_spectra
            && self.max_ab_difference < tol_zero
    }
}

fn spin_square(offset: usize, basis: &FockBasis) -> Result<FockOperator> {
    let mut acc = FockOperator::zero(basis.dim());
    for k in 0..3 {
        let s = matrixize(&doublet_spin(offset, k), basis)?;
        acc = acc.add(&s.mul(&s));
    }
    Ok(acc)
}

fn l_squared(rep: &Representation) -> FockOperator {
    [(1, 2), (2, 3), (3, 1)]
        .iter()
        .map(|&(a, b)| rep.j(a, b).mul(&rep.j(a, b)))
        .fold(FockOperator::zero(rep.dim()), |acc, m| acc.add(&m))
}

/// SO(4) -> SO(3) decomposition of the `n`-block.
pub fn branching_report(n: u32, n_max: u32) -> Result<BranchingReport> {
    if n == 0 || n > n_max {
        return Err(invalid(format!("need 1 <= n <= n_max, got n = {n}, n_max = {n_max}")));
    }
    let rep = Representation::new(n_max)?;
    let block = rep.basis.block(n);
    let (values, _) = hermitian_eigen(l_squared(&rep).dense_block(block.clone(), block.clone()));

    let expected: Vec<f64> = (0..n)
        .flat_map(|l| std::iter::repeat_n((l * (l + 1)) as f64, 2 * l as usize + 1))
        .collect();
    let max_spectrum_error = if expected.len() == values.len() {
        values.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let mut multiplets: Vec<(u32, usize)> = Vec::new();
    for &v in &values {
        let l = l_from_eigenvalue(v);
        match multiplets.last_mut() {
            Some((last, count)) if *last == l => *count += 1,
            _ => multiplets.push((l, 1)),
        }
    }

    let j = (n - 1) as f64 / 2.0;
    let expected_spin = j * (j + 1.0);
    let sa = spin_square(0, &rep.basis)?;
    let sb = spin_square(2, &rep.basis)?;
    let spin_error = |op: &FockOperator| {
        let d = op.dense_block(block.clone(), block.clone());
        let mut err: f64 = 0.0;
        for r in 0..d.nrows() {
            for c in 0..d.ncols() {
                let want = if r == c { expected_spin } else { 0.0 };
                err = err.max((d[(r, c)] - want).norm());
            }
        }
        err
    };
    Ok(BranchingReport {
        n,
        block_dim: block.len(),
        l2_eigenvalues: values,
        multiplets,
        max_spectrum_error,
        expected_spin_casimir: expected_spin,
        max_a_spin_error: spin_error(&sa),
        max_b_spin_error: spin_error(&sb),
        max_ab_difference: sa.sub(&sb).max_abs_where(|_, _| true),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SectorParity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorCoupling {
    pub generator: (usize, usize),
    /// Largest `|<u|J|v>|` with `u`, `v` interior L^2 eigenvectors of opposite `n+l` parity.
    pub max_cross_element: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityReport {
    pub n_max: u32,
    pub odd_dim: usize,
    pub even_dim: usize,
    pub so32: Vec<GeneratorCoupling>,
    pub others: Vec<GeneratorCoupling>,
}

impl ParityReport {
    pub fn so32_max_cross(&self) -> f64 {
        self.so32.iter().map(|g| g.max_cross_element).fold(0.0, f64::max)
    }

    pub fn coupling(&self, a: usize, b: usize) -> Option<f64> {
        self.so32
            .iter()
            .chain(&self.others)
            .find(|g| g.generator == (a, b))
            .map(|g| g.max_cross_element)
    }
}

/// Generators with both indices in `{1,2,3,5,6}`.
pub fn so32_pairs() -> Vec<(usize, usize)> {
    crate::boson::generator_pairs()
        .into_iter()
        .filter(|&(a, b)| a != 4 && b != 4)
        .collect()
}

/// Splits the space by parity of `n + l` and measures how each generator
/// couples the two sectors.
pub fn so32_parity_check(n_max: u32) -> Result<ParityReport> {
    if n_max < 4 {
        return Err(invalid("so32_parity_check needs n_max >= 4"));
    }
    let rep = Representation::new(n_max)?;
    let l2 = l_squared(&rep);
    let mut blocks = Vec::new();
    let (mut odd_dim, mut even_dim) = (0, 0);
    for n in 1..=n_max {
        let range = rep.basis.block(n);
        let (values, vectors) = hermitian_eigen(l2.dense_block(range.clone(), range.clone()));
        let parities: Vec<SectorParity> = values
            .iter()
            .map(|&v| {
                if (n + l_from_eigenvalue(v)) % 2 == 1 {
                    SectorParity::Odd
                } else {
                    SectorParity::Even
                }
            })
            .collect();
        odd_dim += parities.iter().filter(|&&p| p == SectorParity::Odd).count();
        even_dim += parities.iter().filter(|&&p| p == SectorParity::Even).count();
        blocks.push((n, range, vectors, parities));
    }
    let interior: Vec<_> = blocks.iter().filter(|b| b.0 < n_max).collect();

    let coupling = |a: usize, b: usize| -> GeneratorCoupling {
        let m = rep.j(a, b);
        let mut max_cross: f64 = 0.0;
        for (_, r_range, r_vecs, r_par) in &interior {
            for (_, c_range, c_vecs, c_par) in &interior {
                let raw = m.dense_block(r_range.clone(), c_range.clone());
                if raw.iter().all(|z| z.norm() == 0.0) {
                    continue;
                }
                let rotated = r_vecs.adjoint() * raw * c_vecs;
                for (i, pi) in r_par.iter().enumerate() {
                    for (k, pk) in c_par.iter().enumerate() {
                        if pi != pk {
                            max_cross = max_cross.max(rotated[(i, k)].norm());
                        }
                    }
                }
            }
        }
        GeneratorCoupling {
            generator: (a, b),
            max_cross_element: max_cross,
        }
    };
    let so32 = so32_pairs();
    let others = crate::boson::generator_pairs()
        .into_iter()
        .filter(|p| !so32.contains(p))
        .map(|(a, b)| coupling(a, b))
        .collect();
    Ok(ParityReport {
        n_max,
        odd_dim,
        even_dim,
        so32: so32.into_iter().map(|(a, b)| coupling(a, b)).collect(),
        others,
    })
}

/// Dimension of the smallest subspace containing `start` and closed under
/// `ops`, by repeated application with Gram-Schmidt (twice) against the
/// accumulated orthonormal set.
pub fn krylov_span(ops: &[FockOperator], start: Vec<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let mut span: Vec<Vec<Complex64>> = Vec::new();
    let push = |v: Vec<Complex64>, span: &mut Vec<Vec<Complex64>>| {
        let mut v = v;
        for _ in 0..2 {
            for q in span.iter() {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= overlap * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > tol {
            span.push(v.into_iter().map(|z| z / norm).collect());
        }
    };
    push(start, &mut span);
    let mut next = 0;
    while next < span.len() {
        let v = span[next].clone();
        for op in ops {
            push(op.apply(&v), &mut span);
        }
        next += 1;
    }
    span
}

#[derive(Debug, Clone, Serialize)]
pub struct ReachabilityReport {
    pub n_max: u32,
    pub basis_dim: usize,
    pub reached_dim: usize,
    pub so4_only_dim: usize,
    pub ground_j56: f64,
}

/// Span generated from the ground state by `J45 - J46` and the six so(4)
/// generators.
pub fn reachability(n_max: u32) -> Result<ReachabilityReport> {
    if n_max < 2 {
        return Err(invalid("reachability needs n_max >= 2"));
    }
    let rep = Representation::new(n_max)?;
    let so4: Vec<FockOperator> = [(1, 2), (2, 3), (3, 1), (1, 4), (2, 4), (3, 4)]
        .iter()
        .map(|&(a, b)| rep.j(a, b))
        .collect();
    let shift = rep.j(4, 5).sub(&rep.j(4, 6));
    let ground = rep.basis.ground_state();
    let mut start = vec![Complex64::new(0.0, 0.0); rep.dim()];
    start[ground] = Complex64::new(1.0, 0.0);

    let mut all = so4.clone();
    all.push(shift);
    let reached_dim = krylov_span(&all, start.clone(), TOL_KRYLOV).len();
    let so4_only_dim = krylov_span(&so4, start, TOL_KRYLOV).len();
    Ok(ReachabilityReport {
        n_max,
        basis_dim: rep.dim(),
        reached_dim,
        so4_only_dim,
        ground_j56: rep.j(5, 6).get(ground, ground).re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_dimensions() {
        assert!(FockBasis::new(0, true).is_err());
        let b1 = FockBasis::new(1, true).unwrap();
        assert_eq!(b1.states(), &[[0, 0, 0, 0]]);
        assert_eq!(FockBasis::new(3, true).unwrap().dim(), 14);
        assert_eq!(FockBasis::new(10, true).unwrap().dim(), 385);
        // full basis with total quanta <= 2: 1 + 4 + 10
        assert_eq!(FockBasis::new(2, false).unwrap().dim(), 15);
    }

    #[test]
    fn basis_ordering_is_by_shell_then_lexicographic() {
        let b = FockBasis::new(3, true).unwrap();
        for w in b.states().windows(2) {
            let (na, nb) = (w[0][0] + w[0][1], w[1][0] + w[1][1]);
            assert!(na < nb || (na == nb && w[0] < w[1]));
        }
        assert_eq!(b.block(2), 1..5);
        assert_eq!(b.block(3).len(), 9);
    }

    #[test]
    fn j56_is_principal_number() {
        let rep = Representation::new(4).unwrap();
        let j56 = rep.j(5, 6);
        for k in 0..rep.dim() {
            assert!((j56.get(k, k).re - rep.basis.principal(k) as f64).abs() < 1e-14);
        }
        assert_eq!(j56.nnz(), rep.dim());
    }

    #[test]
    fn j45_connects_shells() {
        let rep = Representation::new(3).unwrap();
        let j45 = rep.j(4, 5);
        let ground = rep.basis.ground_state();
        let n2 = rep.basis.block(2);
        assert!(n2.clone().any(|k| j45.get(k, ground).norm() > 0.1));
    }

    #[test]
    fn zero_form_is_zero_matrix() {
        let b = FockBasis::new(3, true).unwrap();
        assert_eq!(matrixize(&QuadraticForm::zero(), &b).unwrap().nnz(), 0);
    }

    #[test]
    fn constraint_violation_rejected() {
        let b = FockBasis::new(3, true).unwrap();
        assert!(matrixize(&QuadraticForm::number(0, 2), &b).is_err());
        let full = FockBasis::new(3, false).unwrap();
        assert!(matrixize(&QuadraticForm::number(0, 2), &full).is_ok());
    }

    #[test]
    fn matchings_are_fifteen_with_signs() {
        let m = perfect_matchings();
        assert_eq!(m.len(), 15);
        assert_eq!(m[0], ([(1, 2), (3, 4), (5, 6)], 1));
        // Pfaffian of the all-ones upper triangle is 1
        assert_eq!(m.iter().map(|(_, s)| s).sum::<i32>(), 1);
    }

    #[test]
    fn casimir_needs_room() {
        assert!(casimir_report(5).is_err());
    }

    #[test]
    fn casimir_values_small_basis() {
        let r = casimir_report(6).unwrap();
        assert!((r.c1.value + 6.0).abs() < 1e-9, "{r:?}");
        assert!(r.c2.value.abs() < 1e-9);
        assert!((r.c3.value + 18.0).abs() < 1e-9, "{r:?}");
        assert!(r.is_scalar(1e-9));
        assert!(!r.matches_expected(1e-9));
    }

    #[test]
    fn branching_n3() {
        let r = branching_report(3, 4).unwrap();
        assert_eq!(r.multiplets, vec![(0, 1), (1, 3), (2, 5)]);
        assert!((r.expected_spin_casimir - 2.0).abs() < 1e-15);
        assert!(r.holds(1e-9, 1e-12));
        assert_eq!(branching_report(4, 4).unwrap().block_dim, 16);
        assert!(branching_report(5, 4).is_err());
    }

    #[test]
    fn parity_sector_dims() {
        let r = so32_parity_check(4).unwrap();
        assert_eq!((r.odd_dim, r.even_dim), (20, 10));
        assert_eq!(r.so32.len(), 10);
        assert!(r.so32_max_cross() < 1e-12);
        assert!(r.coupling(1, 4).unwrap() > 0.1);
    }

    #[test]
    fn reachability_small() {
        let r = reachability(3).unwrap();
        assert_eq!(r.reached_dim, 14);
        assert_eq!(r.so4_only_dim, 1);
        assert!((r.ground_j56 - 1.0).abs() < 1e-15);
    }
}
