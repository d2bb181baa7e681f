//! Bound-state energies of the DKP oscillator in a uniform magnetic field.
//!
//! The quantization condition
//!
//! ```text
//! 2 √α²(E) · (2n_r + 1 + |l|) = 2ω(El + m) + 2ω̃(E + ml) + E² − m²
//! ```
//!
//! is squared into a quartic in E. Squaring introduces roots where the right
//! side is negative, so every real quartic root is classified against the
//! constraints α² > 0, κ² > 0 (the right side), E ≠ ±m, and the unsquared
//! residual before it is accepted as a level.

mod closed_form;
mod quartic;
mod sweep;
mod window;

pub use closed_form::{
    closed_form_dkpo, closed_form_magnetic, nonrel_deviation, nonrel_limit, symmetry_check_dkpo,
    symmetry_check_magnetic, ClosedFormPair, LimitCase, NonRelDeviation,
};
pub use quartic::{quartic_coefficients, real_quartic_roots};
pub use sweep::{axis_grid, sweep, sweep_constraints, Axis, ConstraintPoint, SweepRow, SweepSpec};
pub use window::{constraint_window, AllowedEnergySet, AlphaHalfLine, KappaWindow};

use serde::Serialize;

use crate::error::{Error, Result};

/// Physical inputs in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorParams {
    pub m: f64,
    pub omega: f64,
    pub omega_tilde: f64,
    /// Charge and field strength when ω̃ was derived from them.
    pub charge_field: Option<(f64, f64)>,
}

impl OscillatorParams {
    pub fn new(m: f64, omega: f64, omega_tilde: f64) -> Result<Self> {
        let p = OscillatorParams {
            m,
            omega,
            omega_tilde,
            charge_field: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// ω̃ = qB / (2m).
    pub fn with_field(m: f64, omega: f64, charge: f64, field: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {m}"
            )));
        }
        let p = OscillatorParams {
            m,
            omega,
            omega_tilde: charge * field / (2.0 * m),
            charge_field: Some((charge, field)),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive and finite, got {}",
                self.m
            )));
        }
        if !self.omega.is_finite() || !self.omega_tilde.is_finite() {
            return Err(Error::InvalidParameter("frequencies must be finite".into()));
        }
        if let Some((q, b)) = self.charge_field {
            let expected = q * b / (2.0 * self.m);
            if (expected - self.omega_tilde).abs() > 4.0 * f64::EPSILON * expected.abs() {
                return Err(Error::InvalidParameter(
                    "omega_tilde does not match qB/(2m)".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn is_degenerate(&self) -> bool {
        self.omega == 0.0 && self.omega_tilde == 0.0
    }

    pub fn with_omega(self, omega: f64) -> Self {
        OscillatorParams { omega, ..self }
    }

    pub fn with_omega_tilde(self, omega_tilde: f64) -> Self {
        OscillatorParams {
            omega_tilde,
            charge_field: None,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers {
    pub n_r: u32,
    pub l: i32,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, l: i32) -> Self {
        QuantumNumbers { n_r, l }
    }

    /// 2n_r + 1 + |l|.
    pub fn principal(&self) -> f64 {
        (2 * self.n_r + 1) as f64 + self.l.unsigned_abs() as f64
    }
}

/// α², β, γ and κ² evaluated at a trial energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralCoefficients {
    pub alpha2: f64,
    pub beta_c: f64,
    pub gamma_c: f64,
    pub kappa2: f64,
}

impl SpectralCoefficients {
    pub fn at(energy: f64, p: &OscillatorParams, l: i32) -> Self {
        let (m, w, wt) = (p.m, p.omega, p.omega_tilde);
        let alpha2 = m * m * (w * w + wt * wt) + 2.0 * energy * m * w * wt;
        let beta_c = energy * wt + m * w;
        let gamma_c = energy * w + m * wt;
        let kappa2 = 2.0 * beta_c + energy * energy - m * m + 2.0 * l as f64 * gamma_c;
        SpectralCoefficients {
            alpha2,
            beta_c,
            gamma_c,
            kappa2,
        }
    }
}

/// Right side of the quantization condition; identical to κ²(E).
pub fn quantization_rhs(energy: f64, p: &OscillatorParams, l: i32) -> f64 {
    let (m, w, wt) = (p.m, p.omega, p.omega_tilde);
    let l = l as f64;
    2.0 * w * (energy * l + m) + 2.0 * wt * (energy + m * l) + energy * energy - m * m
}

/// 2√α²(E)·(2n_r+1+|l|) − RHS(E).
pub fn quantization_residual(energy: f64, p: &OscillatorParams, q: &QuantumNumbers) -> Result<f64> {
    let alpha2 = SpectralCoefficients::at(energy, p, q.l).alpha2;
    if !(alpha2 > 0.0) {
        return Err(Error::NonPositiveAlpha2 { energy, alpha2 });
    }
    Ok(2.0 * alpha2.sqrt() * q.principal() - quantization_rhs(energy, p, q.l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Particle,
    Antiparticle,
}

impl Branch {
    pub fn of(energy: f64) -> Self {
        if energy > 0.0 {
            Branch::Particle
        } else {
            Branch::Antiparticle
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Particle => "particle",
            Branch::Antiparticle => "antiparticle",
        }
    }

    pub fn sign(&self) -> f64 {
        match self {
            Branch::Particle => 1.0,
            Branch::Antiparticle => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelFlags {
    pub alpha2_positive: bool,
    pub kappa2_positive: bool,
    pub not_pm_m: bool,
    /// Membership in the constraint window computed from ε± and the α²
    /// half-line.
    pub window_ok: bool,
}

impl LevelFlags {
    pub fn all(&self) -> bool {
        self.alpha2_positive && self.kappa2_positive && self.not_pm_m && self.window_ok
    }
}

/// Tolerances used when classifying candidate energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Bound on the unsquared residual, relative to max(1, E², m²).
    pub residual_tol: f64,
    /// |E ∓ m| ≤ mass_window · m rejects a candidate.
    pub mass_window: f64,
    /// Roots closer than dedup · max(1, |E|) are merged.
    pub dedup: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            residual_tol: 1e-10,
            mass_window: 1e-9,
            dedup: 1e-8,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolverOptions {
            residual_tol: tol,
            ..Self::default()
        }
    }
}

/// A classified candidate energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub energy: f64,
    pub branch: Branch,
    /// |unsquared residual|, infinite when α² ≤ 0.
    pub residual: f64,
    pub residual_ok: bool,
    pub flags: LevelFlags,
}

impl EnergyLevel {
    pub fn is_admissible(&self) -> bool {
        self.flags.all() && self.residual_ok
    }

    /// Solves the unsquared equation and lies inside the α², κ² constraints;
    /// only the E ≠ ±m exclusion may still reject it.
    pub fn is_genuine(&self) -> bool {
        self.residual_ok && self.flags.alpha2_positive && self.flags.kappa2_positive
    }

    /// Names of the failing checks, empty for admissible levels.
    pub fn rejection_reasons(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.flags.alpha2_positive {
            out.push("alpha2_nonpositive");
        }
        if !self.flags.kappa2_positive {
            out.push("kappa2_nonpositive");
        }
        if !self.flags.not_pm_m {
            out.push("energy_at_mass");
        }
        if !self.flags.window_ok {
            out.push("outside_window");
        }
        if !self.residual_ok {
            out.push("residual");
        }
        out
    }
}

/// Evaluates every admissibility check at `energy`.
pub fn classify(
    energy: f64,
    p: &OscillatorParams,
    q: &QuantumNumbers,
    opts: &SolverOptions,
) -> EnergyLevel {
    let coeffs = SpectralCoefficients::at(energy, p, q.l);
    let rhs = quantization_rhs(energy, p, q.l);
    let residual = quantization_residual(energy, p, q)
        .map(f64::abs)
        .unwrap_or(f64::INFINITY);
    let scale = 1.0_f64.max(energy * energy).max(p.m * p.m);
    let mass_gap = opts.mass_window * p.m;
    let flags = LevelFlags {
        alpha2_positive: coeffs.alpha2 > 0.0,
        kappa2_positive: rhs > 0.0,
        not_pm_m: (energy - p.m).abs() > mass_gap && (energy + p.m).abs() > mass_gap,
        window_ok: constraint_window(p, q.l).contains(energy, opts.mass_window),
    };
    EnergyLevel {
        energy,
        branch: Branch::of(energy),
        residual,
        residual_ok: residual <= opts.residual_tol * scale,
        flags,
    }
}

/// All distinct real roots of the squared quantization condition, each
/// classified; spurious roots are kept and flagged.
pub fn classified_roots(
    p: &OscillatorParams,
    q: &QuantumNumbers,
    opts: &SolverOptions,
) -> Result<Vec<EnergyLevel>> {
    p.validate()?;
    if p.is_degenerate() {
        return Err(Error::DegenerateProblem);
    }
    Ok(real_quartic_roots(p, q, opts.dedup)
        .into_iter()
        .map(|e| classify(e, p, q, opts))
        .collect())
}

/// Admissible energies for fixed quantum numbers, ascending.
pub fn solve_spectrum(
    p: &OscillatorParams,
    q: &QuantumNumbers,
    opts: &SolverOptions,
) -> Result<Vec<EnergyLevel>> {
    if !(opts.residual_tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    Ok(classified_roots(p, q, opts)?
        .into_iter()
        .filter(EnergyLevel::is_admissible)
        .collect())
}
