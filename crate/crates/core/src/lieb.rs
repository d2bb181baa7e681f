//! DKP-like description of low-energy carriers on the Lieb lattice and the
//! one-loop polarization integrals.
//!
//! The Hamiltonian H = v_F[β⁰,β¹]k₁ + v_F[β⁰,β²]k₂ + mβ⁰ is built from the
//! 3×3 β-matrices. Its spectrum is a flat band at zero between the two
//! dispersive bands ±√(m² + v_F²k²).

use std::sync::OnceLock;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{beta_matrices, ExactMatrix, RepKind};
use crate::error::{Error, Result};
use crate::quad::{adaptive_gauss_kronrod, QuadResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiebParams {
    pub v_f: f64,
    /// Bandgap; its sign is physical.
    pub m: f64,
    pub e_charge: f64,
}

impl LiebParams {
    pub fn new(v_f: f64, m: f64, e_charge: f64) -> Result<Self> {
        if !(v_f > 0.0 && v_f.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Fermi velocity must be positive, got {v_f}"
            )));
        }
        if !m.is_finite() || !e_charge.is_finite() {
            return Err(Error::InvalidParameter("m and e must be finite".into()));
        }
        Ok(LiebParams { v_f, m, e_charge })
    }
}

/// [β⁰,β¹], [β⁰,β²] and β⁰, each verified Hermitian in exact arithmetic.
struct Generators {
    comm1: Matrix3<Complex64>,
    comm2: Matrix3<Complex64>,
    beta0: Matrix3<Complex64>,
    beta: [Matrix3<Complex64>; 3],
}

fn to_matrix3(m: &ExactMatrix) -> Matrix3<Complex64> {
    Matrix3::from_fn(|i, j| {
        let z = m.get(i, j);
        Complex64::new(z.re as f64, z.im as f64)
    })
}

fn generators() -> &'static Generators {
    static CELL: OnceLock<Generators> = OnceLock::new();
    CELL.get_or_init(|| {
        let bs = beta_matrices(RepKind::ThreeDim);
        let b = &bs.beta;
        let comm = |i: usize| &(&b[0] * &b[i]) - &(&b[i] * &b[0]);
        let (c1, c2) = (comm(1), comm(2));
        for m in [&c1, &c2, &b[0]] {
            assert_eq!(
                &m.conj_transpose(),
                m,
                "Hamiltonian generator is not Hermitian"
            );
        }
        Generators {
            comm1: to_matrix3(&c1),
            comm2: to_matrix3(&c2),
            beta0: to_matrix3(&b[0]),
            beta: [to_matrix3(&b[0]), to_matrix3(&b[1]), to_matrix3(&b[2])],
        }
    })
}

/// H(k) = v_F[β⁰,β¹]k₁ + v_F[β⁰,β²]k₂ + mβ⁰.
pub fn hamiltonian_k(k1: f64, k2: f64, lp: &LiebParams) -> Matrix3<Complex64> {
    let g = generators();
    g.comm1 * Complex64::from(lp.v_f * k1)
        + g.comm2 * Complex64::from(lp.v_f * k2)
        + g.beta0 * Complex64::from(lp.m)
}

/// Eigenpairs of H(k), ascending in energy; column j of the matrix is the
/// eigenvector of the j-th eigenvalue.
pub fn eigensystem(k1: f64, k2: f64, lp: &LiebParams) -> ([f64; 3], Matrix3<Complex64>) {
    let eig = hamiltonian_k(k1, k2, lp).symmetric_eigen();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.map(|i| eig.eigenvalues[i]);
    let vectors = Matrix3::from_columns(&order.map(|i| eig.eigenvectors.column(i).into_owned()));
    (values, vectors)
}

/// Three real band energies at k, ascending.
pub fn dispersion(k1: f64, k2: f64, lp: &LiebParams) -> [f64; 3] {
    eigensystem(k1, k2, lp).0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandRow {
    pub k1: f64,
    pub k2: f64,
    pub energies: [f64; 3],
}

/// Bands along k₁ at fixed k₂; rows come back in grid order.
pub fn band_structure(k1_values: &[f64], k2: f64, lp: &LiebParams) -> Vec<BandRow> {
    k1_values
        .par_iter()
        .map(|&k1| BandRow {
            k1,
            k2,
            energies: dispersion(k1, k2, lp),
        })
        .collect()
}

/// ‖v_F β^i β⁰β⁰ p_i Φ − m(1 − β⁰β⁰)Φ‖ / (‖Φ‖ · max(|m|, v_F|k|)), with the
/// covariant momenta p_i = −k_i of the metric (+, −, −).
pub fn constraint_residual(k1: f64, k2: f64, lp: &LiebParams, phi: &Vector3<Complex64>) -> f64 {
    let g = generators();
    let b00 = g.beta0 * g.beta0;
    let (p1, p2) = (-k1, -k2);
    let lhs = (g.beta[1] * b00 * Complex64::from(lp.v_f * p1)
        + g.beta[2] * b00 * Complex64::from(lp.v_f * p2))
        * phi;
    let rhs = (Matrix3::identity() - b00) * phi * Complex64::from(lp.m);
    let scale = phi.norm() * lp.m.abs().max(lp.v_f * k1.hypot(k2));
    (lhs - rhs).norm() / scale
}

fn check_threshold(s: f64) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::InvalidParameter("p~^2/m^2 must be finite".into()));
    }
    if s > 4.0 {
        return Err(Error::AboveThreshold { value: s });
    }
    Ok(())
}

/// Absolute target for the adaptive rule; well inside the 1e-10 contract.
pub const QUAD_TOL: f64 = 1e-13;
const MAX_INTERVALS: usize = 4000;

// Folding x ↦ u = |1 − 2x| maps x(1−x) to (1 − u²)/4 and the radicand
// 1 − x(1−x)s to (1 − s/4) + su²/4 on u ∈ [0, 1].
fn folded_radicand(s: f64, u: f64) -> f64 {
    (1.0 - 0.25 * s) + 0.25 * s * u * u
}

/// Π_even(s) = ∫₀¹ x(1−x)(1 − s/4)/√(1 − x(1−x)s) dx with s = p̃²/m².
pub fn pi_even(s: f64) -> Result<QuadResult> {
    check_threshold(s)?;
    let prefactor = 1.0 - 0.25 * s;
    if prefactor == 0.0 {
        // the prefactor vanishes faster than the integral's log divergence
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let r = adaptive_gauss_kronrod(
        |u| 0.25 * (1.0 - u * u) / folded_radicand(s, u).sqrt(),
        0.0,
        1.0,
        QUAD_TOL / prefactor.abs(),
        MAX_INTERVALS,
    );
    Ok(QuadResult {
        value: prefactor * r.value,
        error: prefactor.abs() * r.error,
        intervals: r.intervals,
    })
}

/// Π_odd(s) = sign(m) ∫₀¹ √(1 − x(1−x)s) dx.
pub fn pi_odd(s: f64, sign_m: f64) -> Result<QuadResult> {
    check_threshold(s)?;
    if sign_m != 1.0 && sign_m != -1.0 {
        return Err(Error::InvalidParameter(format!(
            "sign(m) must be ±1, got {sign_m}"
        )));
    }
    let r = adaptive_gauss_kronrod(
        |u| folded_radicand(s, u).max(0.0).sqrt(),
        0.0,
        1.0,
        QUAD_TOL,
        MAX_INTERVALS,
    );
    Ok(QuadResult {
        value: sign_m * r.value,
        ..r
    })
}

/// p̃² = p₀² − v_F²(p₁² + p₂²). The definition is a convention;
/// this is the only place the convention lives.
pub fn ptilde_squared(p0: f64, p1: f64, p2: f64, v_f: f64) -> f64 {
    p0 * p0 - v_f * v_f * (p1 * p1 + p2 * p2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizationPoint {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub ptilde2_over_m2: f64,
    pub pi_even: f64,
    pub pi_odd: f64,
    pub pi00: Complex64,
    pub pi12: Complex64,
    pub pi21: Complex64,
}

/// Π^{ij} = (e²/2π)[v_F² p_i p_j Π_even/|m| − iε^{ij0} p₀ Π_odd] for i ≠ j
/// with ε^{120} = +1, and Π⁰⁰ = (e²/2π)(p₁² + p₂²) Π_even/|m|.
pub fn polarization_tensor(
    p0: f64,
    p1: f64,
    p2: f64,
    lp: &LiebParams,
) -> Result<PolarizationPoint> {
    if lp.m == 0.0 {
        return Err(Error::ZeroGap);
    }
    let s = ptilde_squared(p0, p1, p2, lp.v_f) / (lp.m * lp.m);
    let even = pi_even(s)?.value;
    let odd = pi_odd(s, lp.m.signum())?.value;
    let coupling = lp.e_charge * lp.e_charge / (2.0 * std::f64::consts::PI);
    let am = lp.m.abs();
    let sym = lp.v_f * lp.v_f * p1 * p2 * even / am;
    let anti = p0 * odd;
    Ok(PolarizationPoint {
        p0,
        p1,
        p2,
        ptilde2_over_m2: s,
        pi_even: even,
        pi_odd: odd,
        pi00: Complex64::new(coupling * (p1 * p1 + p2 * p2) * even / am, 0.0),
        pi12: coupling * Complex64::new(sym, -anti),
        pi21: coupling * Complex64::new(sym, anti),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(v: f64, m: f64) -> LiebParams {
        LiebParams::new(v, m, 1.0).unwrap()
    }

    /// Roots of the characteristic polynomial −λ³ + λ(v²k² + m²).
    fn char_poly_roots(k1: f64, k2: f64, p: &LiebParams) -> [f64; 3] {
        let w = (p.m * p.m + p.v_f * p.v_f * (k1 * k1 + k2 * k2)).sqrt();
        [-w, 0.0, w]
    }

    // Closed forms with a = 1 − s/4, b = s/4 after the fold.
    fn i0(a: f64, b: f64) -> f64 {
        if b > 0.0 {
            (b / a).sqrt().asinh() / b.sqrt()
        } else if b < 0.0 {
            (-b / a).sqrt().asin() / (-b).sqrt()
        } else {
            1.0 / a.sqrt()
        }
    }

    fn pi_odd_exact(s: f64) -> f64 {
        let (a, b) = (1.0 - 0.25 * s, 0.25 * s);
        if b == 0.0 {
            return 1.0;
        }
        if a == 0.0 {
            return 0.5;
        }
        0.5 * ((a + b).sqrt() + a * i0(a, b))
    }

    fn pi_even_exact(s: f64) -> f64 {
        let (a, b) = (1.0 - 0.25 * s, 0.25 * s);
        if b == 0.0 {
            return 1.0 / 6.0;
        }
        if a == 0.0 {
            return 0.0;
        }
        let i_0 = i0(a, b);
        let i_2 = ((a + b).sqrt() - a * i_0) / (2.0 * b);
        0.25 * a * (i_0 - i_2)
    }

    #[test]
    fn hamiltonian_entries() {
        let p = lp(0.8, 1.3);
        let h = hamiltonian_k(0.7, 0.0, &p);
        let vk = 0.8 * 0.7;
        let i = Complex64::i();
        let expected = Matrix3::new(
            0.0.into(),
            -i * vk,
            0.0.into(),
            i * vk,
            0.0.into(),
            i * 1.3,
            0.0.into(),
            -i * 1.3,
            0.0.into(),
        );
        assert_eq!(h, expected);
        assert_eq!(h.adjoint(), h);
        // mβ⁰ is imaginary as well, so k → −k pairs with m → −m
        let hm = hamiltonian_k(-0.7, -0.4, &p);
        assert_eq!(hm, hamiltonian_k(0.7, 0.4, &lp(0.8, -1.3)).conjugate());
        assert_ne!(hm, hamiltonian_k(0.7, 0.4, &p).conjugate());
    }

    #[test]
    fn gamma_point_and_unit_example() {
        let d = dispersion(0.0, 0.0, &lp(1.0, 2.0));
        assert!((d[0] + 2.0).abs() < 1e-14 && d[1].abs() < 1e-14 && (d[2] - 2.0).abs() < 1e-14);
        let d = dispersion(1.0, 0.0, &lp(1.0, 1.0));
        let s2 = 2.0_f64.sqrt();
        assert!((d[0] + s2).abs() < 1e-14 && d[1].abs() < 1e-14 && (d[2] - s2).abs() < 1e-14);
    }

    #[test]
    fn constraint_on_dispersive_bands() {
        let p = lp(1.0, 1.0);
        let (vals, vecs) = eigensystem(1.0, 0.0, &p);
        assert!(constraint_residual(1.0, 0.0, &p, &vecs.column(0).into_owned()) < 1e-10);
        assert!(constraint_residual(1.0, 0.0, &p, &vecs.column(2).into_owned()) < 1e-10);
        let flat = constraint_residual(1.0, 0.0, &p, &vecs.column(1).into_owned());
        assert!(flat > 0.1, "flat band residual {flat}, E = {}", vals[1]);
    }

    #[test]
    fn negative_gap_keeps_constraint() {
        let p = lp(1.7, -0.6);
        for &(k1, k2) in &[(0.3, -1.1), (2.0, 0.5), (0.0, 0.0)] {
            let (_, vecs) = eigensystem(k1, k2, &p);
            for j in [0, 2] {
                assert!(constraint_residual(k1, k2, &p, &vecs.column(j).into_owned()) < 1e-10);
            }
        }
    }

    #[test]
    fn band_structure_keeps_order() {
        let ks: Vec<f64> = (0..50).map(|i| -2.0 + 0.08 * i as f64).collect();
        let rows = band_structure(&ks, 0.3, &lp(1.0, 0.5));
        assert_eq!(rows.iter().map(|r| r.k1).collect::<Vec<_>>(), ks);
    }

    #[test]
    fn polarization_reference_values() {
        assert!((pi_even(0.0).unwrap().value - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(pi_even(4.0).unwrap().value, 0.0);
        assert!((pi_odd(0.0, 1.0).unwrap().value - 1.0).abs() < 1e-12);
        assert!((pi_odd(0.0, -1.0).unwrap().value + 1.0).abs() < 1e-12);
        assert!((pi_odd(4.0, 1.0).unwrap().value - 0.5).abs() < 1e-12);
        // spacelike example: ∫ x(1−x)·2/√(1+4x(1−x)) dx = 1/4
        assert!((pi_even(-4.0).unwrap().value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn polarization_matches_closed_forms() {
        for k in 0..=40 {
            let s = -20.0 + 24.0 * k as f64 / 40.0;
            let e = pi_even(s).unwrap();
            let o = pi_odd(s, 1.0).unwrap();
            assert!((e.value - pi_even_exact(s)).abs() < 1e-12, "s={s}");
            assert!((o.value - pi_odd_exact(s)).abs() < 1e-12, "s={s}");
        }
        let near = 4.0 - 1e-9;
        assert!((pi_even(near).unwrap().value - pi_even_exact(near)).abs() < 1e-10);
    }

    #[test]
    fn above_threshold_is_an_error() {
        assert_eq!(pi_even(4.5).unwrap_err().code(), "AboveThreshold");
        assert_eq!(pi_odd(4.0001, 1.0).unwrap_err().code(), "AboveThreshold");
        assert!(pi_odd(1.0, 0.5).is_err());
    }

    #[test]
    fn tensor_structure() {
        let p = lp(0.9, 1.5);
        let t = polarization_tensor(0.0, 0.4, -0.3, &p).unwrap();
        assert_eq!(t.pi12.im, 0.0);
        assert_eq!(t.pi12, t.pi21);

        let t = polarization_tensor(0.7, 0.4, -0.3, &p).unwrap();
        let sum = t.pi12 + t.pi21;
        assert!(sum.im.abs() < 1e-15);
        assert!((sum.re - 2.0 * t.pi12.re).abs() < 1e-15);
        assert!(t.pi12.im < 0.0);
        assert!(t.pi00.re > 0.0 && t.pi00.im == 0.0);

        assert_eq!(
            polarization_tensor(0.1, 0.0, 0.0, &lp(1.0, 0.0)).unwrap_err(),
            Error::ZeroGap
        );
        assert_eq!(
            polarization_tensor(10.0, 0.0, 0.0, &p).unwrap_err().code(),
            "AboveThreshold"
        );
    }

    #[test]
    fn large_gap_limit() {
        let mut last_even = f64::INFINITY;
        for m in [1.0, 10.0, 100.0] {
            let t = polarization_tensor(0.3, 0.5, 0.4, &lp(1.0, -m)).unwrap();
            let coupling = 1.0 / (2.0 * std::f64::consts::PI);
            let even_term = t.pi12.re / coupling;
            assert!(even_term < last_even);
            last_even = even_term;
            // even term · |m| → v²p₁p₂/6
            if m == 100.0 {
                assert!((even_term * m - 0.2 / 6.0).abs() < 1e-5);
                assert!((t.pi_odd + 1.0).abs() < 1e-5);
            }
        }
    }

    proptest! {
        #[test]
        fn flat_band_and_mirror(k1 in -5.0..5.0f64, k2 in -5.0..5.0f64, v in 0.1..3.0f64, m in -3.0..3.0f64) {
            let p = lp(v, m);
            let d = dispersion(k1, k2, &p);
            let oracle = char_poly_roots(k1, k2, &p);
            for (a, b) in d.iter().zip(oracle) {
                prop_assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
            }
            prop_assert!((d[0] + d[2]).abs() < 1e-12 * d[2].abs().max(1.0));
        }

        #[test]
        fn odd_part_decreases(a in 0.0..4.0f64, b in 0.0..4.0f64) {
            prop_assume!((a - b).abs() > 1e-6);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(pi_odd(lo, 1.0).unwrap().value > pi_odd(hi, 1.0).unwrap().value);
        }

        #[test]
        fn quadrature_is_converged(s in -30.0..4.0f64) {
            let coarse = pi_even(s).unwrap();
            let exact = pi_even_exact(s);
            prop_assert!((coarse.value - exact).abs() <= coarse.error.max(1e-13) * 10.0 + 1e-13);
            prop_assert!((coarse.value - exact).abs() < 1e-10);
        }

        #[test]
        fn depends_only_on_ptilde(p0 in 0.0..1.0f64, p1 in -1.0..1.0f64, theta in 0.0..std::f64::consts::TAU) {
            let p = lp(1.0, 1.0);
            let norm = p1.abs();
            let a = polarization_tensor(p0, p1, 0.0, &p).unwrap();
            let b = polarization_tensor(p0, norm * theta.cos(), norm * theta.sin(), &p).unwrap();
            prop_assert!((a.pi_even - b.pi_even).abs() < 1e-13);
            prop_assert!((a.pi_odd - b.pi_odd).abs() < 1e-13);
        }
    }
}
