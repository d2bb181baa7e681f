use serde::Serialize;

use super::OscillatorParams;

/// Where κ²(E) > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KappaWindow {
    /// E > ε₊ or E < ε₋.
    Outside { eps_minus: f64, eps_plus: f64 },
    /// μ² + m² − ν < 0: every E qualifies.
    Everywhere,
}

/// Where α²(E) > 0, i.e. 2Eωω̃ > −m(ω² + ω̃²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AlphaHalfLine {
    Everywhere,
    Above(f64),
    Below(f64),
}

/// {α² > 0} ∩ {κ² > 0} ∩ {E ≠ ±m}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AllowedEnergySet {
    pub mass: f64,
    pub kappa: KappaWindow,
    pub alpha: AlphaHalfLine,
}

impl AllowedEnergySet {
    pub fn kappa_allows(&self, energy: f64) -> bool {
        match self.kappa {
            KappaWindow::Everywhere => true,
            KappaWindow::Outside {
                eps_minus,
                eps_plus,
            } => energy > eps_plus || energy < eps_minus,
        }
    }

    pub fn alpha_allows(&self, energy: f64) -> bool {
        match self.alpha {
            AlphaHalfLine::Everywhere => true,
            AlphaHalfLine::Above(e0) => energy > e0,
            AlphaHalfLine::Below(e0) => energy < e0,
        }
    }

    /// Full membership test; `mass_window` is relative to m.
    pub fn contains(&self, energy: f64, mass_window: f64) -> bool {
        let gap = mass_window * self.mass;
        self.kappa_allows(energy)
            && self.alpha_allows(energy)
            && (energy - self.mass).abs() > gap
            && (energy + self.mass).abs() > gap
    }

    pub fn eps(&self) -> Option<(f64, f64)> {
        match self.kappa {
            KappaWindow::Outside {
                eps_minus,
                eps_plus,
            } => Some((eps_minus, eps_plus)),
            KappaWindow::Everywhere => None,
        }
    }
}

/// ε± = −μ ± √(μ² + m² − ν) with μ = ωl + ω̃ and ν = 2m(ω̃l + ω), plus the
/// α² half-line.
pub fn constraint_window(p: &OscillatorParams, l: i32) -> AllowedEnergySet {
    let (m, w, wt) = (p.m, p.omega, p.omega_tilde);
    let l = l as f64;
    let mu = w * l + wt;
    let nu = 2.0 * m * (wt * l + w);
    let disc = mu * mu + m * m - nu;
    let kappa = if disc >= 0.0 {
        let s = disc.sqrt();
        KappaWindow::Outside {
            eps_minus: -mu - s,
            eps_plus: -mu + s,
        }
    } else {
        KappaWindow::Everywhere
    };
    let slope = 2.0 * w * wt;
    let alpha = if slope == 0.0 {
        AlphaHalfLine::Everywhere
    } else {
        let e0 = -m * (w * w + wt * wt) / slope;
        if slope > 0.0 {
            AlphaHalfLine::Above(e0)
        } else {
            AlphaHalfLine::Below(e0)
        }
    };
    AllowedEnergySet {
        mass: m,
        kappa,
        alpha,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dkpo_window_is_everywhere_for_strong_oscillator() {
        let p = OscillatorParams::new(1.0, 1.0, 0.0).unwrap();
        let w = constraint_window(&p, 0);
        assert_eq!(w.kappa, KappaWindow::Everywhere);
        assert_eq!(w.alpha, AlphaHalfLine::Everywhere);
        assert!(w.contains(0.3, 1e-9));
        assert!(!w.contains(1.0, 1e-9));
        assert!(!w.contains(-1.0, 1e-9));
    }

    #[test]
    fn magnetic_window_endpoints() {
        let p = OscillatorParams::new(1.0, 0.0, 0.5).unwrap();
        let w = constraint_window(&p, 1);
        let (lo, hi) = w.eps().unwrap();
        assert!((lo + 1.0).abs() < 1e-15);
        assert!(hi.abs() < 1e-15);
        assert!(w.contains(0.5, 1e-9));
        assert!(!w.contains(-0.5, 1e-9));
        assert!(w.contains(-1.5, 1e-9));
    }

    #[test]
    fn alpha_half_line_orientation() {
        let p = OscillatorParams::new(1.0, 0.3, 0.4).unwrap();
        match constraint_window(&p, 0).alpha {
            AlphaHalfLine::Above(e0) => assert!((e0 + 0.25 / 0.24).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
        let p = OscillatorParams::new(1.0, 0.3, -0.4).unwrap();
        assert!(matches!(
            constraint_window(&p, 0).alpha,
            AlphaHalfLine::Below(_)
        ));
        for (w, wt) in [(0.0, 0.7), (0.7, 0.0)] {
            let p = OscillatorParams::new(1.0, w, wt).unwrap();
            assert_eq!(constraint_window(&p, 2).alpha, AlphaHalfLine::Everywhere);
        }
    }

    #[test]
    fn window_matches_kappa_sign() {
        let p = OscillatorParams::new(1.0, 0.3, 0.4).unwrap();
        let w = constraint_window(&p, 0);
        let (lo, _) = w.eps().unwrap();
        assert!((lo + 0.4 + 0.56_f64.sqrt()).abs() < 1e-14);
        for i in 0..200 {
            let e = -4.0 + 8.0 * i as f64 / 199.0;
            let k = super::super::quantization_rhs(e, &p, 0);
            if k.abs() > 1e-9 {
                assert_eq!(w.kappa_allows(e), k > 0.0, "E = {e}");
            }
        }
    }
}
