//! Representation checks against independent oracles: dense Kronecker-product
//! ladder operators, brute-force index sums and direct commutators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use so42_core::boson::{build_so42, generator_pairs, QuadraticForm, MODES};
use so42_core::exact::to_c64;
use so42_core::fock::{matrixize, FockBasis, FockOperator, Representation};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Single-mode annihilator truncated at `cut` quanta.
fn ladder(cut: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(cut + 1, cut + 1, |r, col| if col == r + 1 { c((col as f64).sqrt()) } else { c(0.0) })
}

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

/// `a_i` on the 4-mode tensor product space, modes ordered 0..3 (mode 0 most significant).
fn mode_op(i: usize, cut: usize) -> DMatrix<Complex64> {
    let id = DMatrix::<Complex64>::identity(cut + 1, cut + 1);
    (0..MODES)
        .map(|k| if k == i { ladder(cut) } else { id.clone() })
        .reduce(|acc, m| kron(&acc, &m))
        .unwrap()
}

fn tensor_index(state: &[u32; 4], cut: usize) -> usize {
    state.iter().fold(0, |acc, &n| acc * (cut + 1) + n as usize)
}

/// Applies the generator to a dense tensor-space vector straight from its
/// coefficient tables, using the symmetrized convention.
fn dense_apply(form: &QuadraticForm, ann: &[DMatrix<Complex64>], v: &DVector<Complex64>) -> DVector<Complex64> {
    let cre: Vec<_> = ann.iter().map(|m| m.adjoint()).collect();
    let mut out = v * to_c64(&form.scalar);
    for i in 0..MODES {
        for j in 0..MODES {
            let (cc, r, l) = (
                to_c64(&form.conserving[i][j]),
                to_c64(&form.raising[i][j]),
                to_c64(&form.lowering[i][j]),
            );
            if cc.norm() > 0.0 {
                out += (&cre[i] * (&ann[j] * v) + &ann[j] * (&cre[i] * v)) * (cc * 0.5);
            }
            if r.norm() > 0.0 {
                out += &cre[i] * (&cre[j] * v) * (r * 0.5);
            }
            if l.norm() > 0.0 {
                out += &ann[i] * (&ann[j] * v) * (l * 0.5);
            }
        }
    }
    out
}

#[test]
fn matrices_match_dense_kronecker_oracle() {
    // Interior states (n <= 2) see no truncation artefacts with cut = 3.
    let n_max = 3;
    let cut: usize = 3;
    let dim = (cut + 1).pow(MODES as u32);
    let rep = Representation::new(n_max).unwrap();
    let ann: Vec<_> = (0..MODES).map(|i| mode_op(i, cut)).collect();
    for (a, b) in generator_pairs() {
        let form = rep.generators.get(a, b);
        let sparse = rep.j(a, b);
        for (k, sk) in rep.basis.states().iter().enumerate() {
            if rep.basis.principal(k) >= n_max {
                continue;
            }
            let mut e = DVector::<Complex64>::zeros(dim);
            e[tensor_index(sk, cut)] = c(1.0);
            let image = dense_apply(&form, &ann, &e);
            for (r, sr) in rep.basis.states().iter().enumerate() {
                let want = image[tensor_index(sr, cut)];
                assert!((sparse.get(r, k) - want).norm() < 1e-12, "J{a}{b} at ({r},{k})");
            }
            // nothing leaks outside the constrained subspace
            let inside: f64 = rep.basis.states().iter().map(|s| image[tensor_index(s, cut)].norm_sqr()).sum();
            assert!((image.norm_squared() - inside).abs() < 1e-12);
        }
    }
}

#[test]
fn hermitian_generators_give_hermitian_matrices() {
    let rep = Representation::new(5).unwrap();
    for (a, b) in generator_pairs() {
        let m = rep.j(a, b);
        let diff = m.sub(&m.adjoint());
        assert!(diff.max_abs_where(|_, _| true) < 1e-12, "J{a}{b}");
    }
}

#[test]
fn matrixization_is_a_lie_morphism_on_interior() {
    let n_max = 5;
    let rep = Representation::new(n_max).unwrap();
    let gs = &rep.generators;
    let interior = |k: usize| rep.basis.principal(k) < n_max;
    for (a, b) in generator_pairs() {
        for (cc, d) in generator_pairs() {
            let lhs = rep.j(a, b).commutator(&rep.j(cc, d));
            let rhs = matrixize(&gs.get(a, b).commutator(&gs.get(cc, d)), &rep.basis).unwrap();
            let err = lhs.sub(&rhs).max_abs_where(|_, k| interior(k));
            assert!(err < 1e-12, "[J{a}{b}, J{cc}{d}] err {err}");
        }
    }
}

#[test]
fn full_basis_contains_constrained_action() {
    let full = FockBasis::new(3, false).unwrap();
    let constrained = FockBasis::new(3, true).unwrap();
    let (gs, _) = build_so42();
    let on_full = matrixize(&gs.get(4, 5), &full).unwrap();
    let on_con = matrixize(&gs.get(4, 5), &constrained).unwrap();
    for (k, sk) in constrained.states().iter().enumerate() {
        for (r, sr) in constrained.states().iter().enumerate() {
            let fk = full.index_of(sk).unwrap();
            let fr = full.index_of(sr).unwrap();
            assert!((on_full.get(fr, fk) - on_con.get(r, k)).norm() < 1e-14);
        }
    }
}

fn brute_quadratic(rep: &Representation) -> FockOperator {
    let mut acc = FockOperator::zero(rep.dim());
    for a in 1..=6 {
        for b in 1..=6 {
            acc = acc.add(&rep.j(a, b).mul(&rep.j_upper(a, b)));
        }
    }
    acc
}

fn brute_quartic(rep: &Representation) -> FockOperator {
    let mut acc = FockOperator::zero(rep.dim());
    for a in 1..=6 {
        for b in 1..=6 {
            for cc in 1..=6 {
                for d in 1..=6 {
                    if a == b || b == cc || cc == d || d == a {
                        continue;
                    }
                    let t = rep.j(a, b).mul(&rep.j_upper(b, cc)).mul(&rep.j(cc, d)).mul(&rep.j_upper(d, a));
                    acc = acc.add(&t);
                }
            }
        }
    }
    acc
}

/// Full epsilon sum over all 720 index orderings.
fn brute_cubic(rep: &Representation) -> FockOperator {
    fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for k in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(k);
            for mut p in permutations(rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let mut acc = FockOperator::zero(rep.dim());
    for p in permutations((1..=6).collect()) {
        let inversions = (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let t = rep.j_upper(p[0], p[1]).mul(&rep.j_upper(p[2], p[3])).mul(&rep.j_upper(p[4], p[5]));
        acc = acc.add(&t.scale(c(sign)));
    }
    acc
}

#[test]
fn casimir_shortcuts_match_brute_force_sums() {
    let n_max = 6;
    let rep = Representation::new(n_max).unwrap();
    let pairs = [
        (rep.casimir_quadratic(), brute_quadratic(&rep), 2),
        (rep.casimir_cubic(), brute_cubic(&rep), 3),
        (rep.casimir_quartic(), brute_quartic(&rep), 4),
    ];
    for (fast, slow, degree) in pairs {
        let err = fast.sub(&slow).max_abs_where(|_, k| rep.basis.principal(k) + degree <= n_max);
        assert!(err < 1e-9, "degree {degree}: {err}");
    }
}

#[test]
fn ground_state_casimir_values() {
    let rep = Representation::new(6).unwrap();
    let g = rep.basis.ground_state();
    assert!((rep.casimir_quadratic().get(g, g) - c(-6.0)).norm() < 1e-12);
    assert!(rep.casimir_cubic().get(g, g).norm() < 1e-12);
    assert!((rep.casimir_quartic().get(g, g) - c(-18.0)).norm() < 1e-12);
}

#[test]
fn casimirs_commute_with_generators_on_interior() {
    let n_max = 6;
    let rep = Representation::new(n_max).unwrap();
    let c1 = rep.casimir_quadratic();
    for (a, b) in generator_pairs() {
        let err = c1.commutator(&rep.j(a, b)).max_abs_where(|_, k| rep.basis.principal(k) + 3 <= n_max);
        assert!(err < 1e-9, "J{a}{b}");
    }
}
