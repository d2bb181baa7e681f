//! Closed forms for the two particular cases: the pure oscillator (ω̃ = 0)
//! and the pure magnetic field (ω = 0).

use serde::Serialize;

use super::{classify, EnergyLevel, OscillatorParams, QuantumNumbers, SolverOptions};
use crate::error::{Error, Result};

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// The ± roots of a closed form, each classified like a solver candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormPair {
    pub plus: EnergyLevel,
    pub minus: EnergyLevel,
}

impl ClosedFormPair {
    pub fn admissible(&self) -> Vec<f64> {
        [self.plus, self.minus]
            .iter()
            .filter(|l| l.is_admissible())
            .map(|l| l.energy)
            .collect()
    }
}

fn dkpo_raw(m: f64, omega: f64, q: &QuantumNumbers) -> (f64, f64) {
    let l = q.l as f64;
    let root = ((omega * l).abs() + m).powi(2)
        + 2.0 * m * omega.abs() * (2.0 * q.n_r as f64 + 1.0 - sgn(omega));
    let s = root.sqrt();
    (-omega * l + s, -omega * l - s)
}

fn magnetic_raw(m: f64, omega_tilde: f64, q: &QuantumNumbers) -> (f64, f64) {
    let l = q.l as f64;
    let wt = omega_tilde;
    let root = (wt.abs() + m).powi(2)
        + 2.0 * m * wt.abs() * (2.0 * q.n_r as f64 + l.abs() * (1.0 - sgn(wt) * sgn(l)));
    let s = root.sqrt();
    (-wt + s, -wt - s)
}

/// E = −ωl ± √((|ωl| + m)² + 2m|ω|(2n_r + 1 − sgn ω)), valid for ω̃ = 0.
pub fn closed_form_dkpo(
    p: &OscillatorParams,
    q: &QuantumNumbers,
    opts: &SolverOptions,
) -> Result<ClosedFormPair> {
    p.validate()?;
    if p.omega == 0.0 || p.omega_tilde != 0.0 {
        return Err(Error::InvalidParameter(
            "oscillator closed form needs omega != 0 and omega_tilde = 0".into(),
        ));
    }
    let (ep, em) = dkpo_raw(p.m, p.omega, q);
    Ok(ClosedFormPair {
        plus: classify(ep, p, q, opts),
        minus: classify(em, p, q, opts),
    })
}

/// E = −ω̃ ± √((|ω̃| + m)² + 2m|ω̃|{2n_r + |l|[1 − sgn ω̃ sgn l]}), valid
/// for ω = 0.
pub fn closed_form_magnetic(
    p: &OscillatorParams,
    q: &QuantumNumbers,
    opts: &SolverOptions,
) -> Result<ClosedFormPair> {
    p.validate()?;
    if p.omega_tilde == 0.0 || p.omega != 0.0 {
        return Err(Error::InvalidParameter(
            "magnetic closed form needs omega_tilde != 0 and omega = 0".into(),
        ));
    }
    let (ep, em) = magnetic_raw(p.m, p.omega_tilde, q);
    Ok(ClosedFormPair {
        plus: classify(ep, p, q, opts),
        minus: classify(em, p, q, opts),
    })
}

const SYMMETRY_TOL: f64 = 1e-10;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Tests |E₊ + |ω|l| = |E₋ − |ω|l| between the ω = +|ω| level with radial
/// number `n_plus` and the ω = −|ω| level with `n_minus`, on both branches.
pub fn symmetry_check_dkpo(m: f64, omega_abs: f64, l: i32, n_minus: u32, n_plus: u32) -> bool {
    let w = omega_abs.abs();
    let (pp, pm) = dkpo_raw(m, w, &QuantumNumbers::new(n_plus, l));
    let (mp, mm) = dkpo_raw(m, -w, &QuantumNumbers::new(n_minus, l));
    let shift = w * l as f64;
    close((pp + shift).abs(), (mp - shift).abs()) && close((pm + shift).abs(), (mm - shift).abs())
}

/// Tests |E₊ + |ω̃|| = |E₋ − |ω̃|| between the ω̃ = +|ω̃| level with
/// `n_plus` and the ω̃ = −|ω̃| level with `n_minus`, on both branches.
pub fn symmetry_check_magnetic(
    m: f64,
    omega_tilde_abs: f64,
    l: i32,
    n_minus: u32,
    n_plus: u32,
) -> bool {
    let w = omega_tilde_abs.abs();
    let (pp, pm) = magnetic_raw(m, w, &QuantumNumbers::new(n_plus, l));
    let (mp, mm) = magnetic_raw(m, -w, &QuantumNumbers::new(n_minus, l));
    close((pp + w).abs(), (mp - w).abs()) && close((pm + w).abs(), (mm - w).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LimitCase {
    Dkpo,
    Magnetic,
}

/// ε ≃ |w|{2n_r + 1 − sgn w + |l|[1 − sgn w sgn l]} with w = ω or ω̃.
pub fn nonrel_limit(p: &OscillatorParams, q: &QuantumNumbers, case: LimitCase) -> f64 {
    let w = match case {
        LimitCase::Dkpo => p.omega,
        LimitCase::Magnetic => p.omega_tilde,
    };
    let l = q.l as f64;
    w.abs() * (2.0 * q.n_r as f64 + 1.0 - sgn(w) + l.abs() * (1.0 - sgn(w) * sgn(l)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonRelDeviation {
    pub epsilon: f64,
    /// E₊ − m from the exact closed form.
    pub binding: f64,
    pub absolute: f64,
    /// |(E₊ − m) − ε| / |ε|, absent when ε = 0.
    pub relative: Option<f64>,
}

pub fn nonrel_deviation(
    p: &OscillatorParams,
    q: &QuantumNumbers,
    case: LimitCase,
) -> Result<NonRelDeviation> {
    p.validate()?;
    let e_plus = match case {
        LimitCase::Dkpo if p.omega != 0.0 && p.omega_tilde == 0.0 => dkpo_raw(p.m, p.omega, q).0,
        LimitCase::Magnetic if p.omega_tilde != 0.0 && p.omega == 0.0 => {
            magnetic_raw(p.m, p.omega_tilde, q).0
        }
        _ => {
            return Err(Error::InvalidParameter(
                "parameters do not match the requested particular case".into(),
            ))
        }
    };
    let epsilon = nonrel_limit(p, q, case);
    let binding = e_plus - p.m;
    let absolute = (binding - epsilon).abs();
    Ok(NonRelDeviation {
        epsilon,
        binding,
        absolute,
        relative: (epsilon != 0.0).then(|| absolute / epsilon.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn dkpo_values() {
        let p = OscillatorParams::new(1.0, 0.5, 0.0).unwrap();
        let pair = closed_form_dkpo(&p, &QuantumNumbers::new(1, 1), &opts()).unwrap();
        let s = 4.25_f64.sqrt();
        assert!((pair.plus.energy - (-0.5 + s)).abs() < 1e-15);
        assert!((pair.minus.energy - (-0.5 - s)).abs() < 1e-15);
        assert!((pair.plus.energy - 1.561_553).abs() < 1e-6);
        assert!(pair.plus.is_admissible() && pair.minus.is_admissible());
    }

    #[test]
    fn dkpo_ground_state_absent_for_positive_omega() {
        let p = OscillatorParams::new(1.0, 0.7, 0.0).unwrap();
        let pair = closed_form_dkpo(&p, &QuantumNumbers::new(0, 0), &opts()).unwrap();
        assert_eq!(pair.plus.energy, 1.0);
        assert_eq!(pair.minus.energy, -1.0);
        assert!(!pair.plus.is_admissible() && !pair.minus.is_admissible());
        assert!(!pair.plus.flags.not_pm_m);
    }

    #[test]
    fn dkpo_negative_omega_ground_state() {
        let p = OscillatorParams::new(1.0, -1.0, 0.0).unwrap();
        let pair = closed_form_dkpo(&p, &QuantumNumbers::new(0, 0), &opts()).unwrap();
        assert!((pair.plus.energy - 5.0_f64.sqrt()).abs() < 1e-15);
        assert!((pair.minus.energy + 5.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(pair.admissible().len(), 2);
    }

    #[test]
    fn magnetic_values() {
        let p = OscillatorParams::new(1.0, 0.0, 0.5).unwrap();
        let pair = closed_form_magnetic(&p, &QuantumNumbers::new(1, 1), &opts()).unwrap();
        let s = 4.25_f64.sqrt();
        assert!((pair.plus.energy - (-0.5 + s)).abs() < 1e-15);
        assert!((pair.minus.energy - (-0.5 - s)).abs() < 1e-15);

        let pair = closed_form_magnetic(&p, &QuantumNumbers::new(0, 1), &opts()).unwrap();
        assert_eq!(pair.plus.energy, 1.0);
        assert!(!pair.plus.is_admissible());
        assert_eq!(pair.minus.energy, -2.0);
        assert!(pair.minus.is_admissible());
    }

    #[test]
    fn magnetic_l0_reflection() {
        for n in 0..4 {
            let q = QuantumNumbers::new(n, 0);
            let a =
                closed_form_magnetic(&OscillatorParams::new(1.0, 0.0, 0.3).unwrap(), &q, &opts())
                    .unwrap();
            let b =
                closed_form_magnetic(&OscillatorParams::new(1.0, 0.0, -0.3).unwrap(), &q, &opts())
                    .unwrap();
            let mut ea = a.admissible();
            let mut eb: Vec<f64> = b.admissible().iter().map(|e| -e).collect();
            ea.sort_by(f64::total_cmp);
            eb.sort_by(f64::total_cmp);
            assert_eq!(ea.len(), eb.len());
            for (x, y) in ea.iter().zip(&eb) {
                assert!((x - y).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn wrong_case_is_rejected() {
        let p = OscillatorParams::new(1.0, 0.5, 0.1).unwrap();
        assert!(closed_form_dkpo(&p, &QuantumNumbers::new(0, 0), &opts()).is_err());
        assert!(closed_form_magnetic(&p, &QuantumNumbers::new(0, 0), &opts()).is_err());
    }

    #[test]
    fn symmetry_offsets() {
        assert!(symmetry_check_dkpo(1.0, 0.7, 2, 0, 1));
        assert!(!symmetry_check_dkpo(1.0, 0.7, 2, 0, 0));
        assert!(symmetry_check_magnetic(1.0, 0.4, 3, 0, 3));
        assert!(!symmetry_check_magnetic(1.0, 0.4, 3, 0, 2));
    }

    #[test]
    fn nonrel_limits() {
        let p = OscillatorParams::new(100.0, 0.1, 0.0).unwrap();
        let eps = nonrel_limit(&p, &QuantumNumbers::new(1, 1), LimitCase::Dkpo);
        assert!((eps - 0.2).abs() < 1e-15);

        let p = OscillatorParams::new(100.0, 0.0, -0.1).unwrap();
        let eps = nonrel_limit(&p, &QuantumNumbers::new(0, 1), LimitCase::Magnetic);
        assert!((eps - 0.4).abs() < 1e-15);
    }

    #[test]
    fn nonrel_zero_limit_reports_absolute() {
        let p = OscillatorParams::new(10.0, 0.1, 0.0).unwrap();
        let d = nonrel_deviation(&p, &QuantumNumbers::new(0, 1), LimitCase::Dkpo).unwrap();
        assert_eq!(d.epsilon, 0.0);
        assert!(d.relative.is_none());
        assert!(d.absolute < 1e-12);
    }

    #[test]
    fn nonrel_convergence() {
        let mut last = f64::INFINITY;
        for m in [10.0, 100.0, 1000.0] {
            let p = OscillatorParams::new(m, 0.1, 0.0).unwrap();
            let d = nonrel_deviation(&p, &QuantumNumbers::new(1, 1), LimitCase::Dkpo).unwrap();
            let rel = d.relative.unwrap();
            assert!(rel < last);
            assert!(rel <= 20.0 * 0.1 / m);
            last = rel;
        }
    }
}
