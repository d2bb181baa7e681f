//! Bound-state spinors: the Laguerre radial solution, reconstruction of the
//! remaining components, the conserved charge and its normalization.
//!
//! The first component is Φ₁ = e^{ilφ} φ₁(r)/√r with
//! φ₁(r) = N r^{|l|+½} e^{−αr²/2} L_{n_r}^{(|l|)}(αr²). The other two follow
//! from the first-order system,
//!
//! ```text
//! Φ₂ = (iE π⁺ₓ − m π⁺ᵧ) Φ₁ / (E² − m²)
//! Φ₃ = (iE π⁺ᵧ + m π⁺ₓ) Φ₁ / (E² − m²)
//! ```
//!
//! with π±ₓ = pₓ ∓ imωx + mω̃y, π±ᵧ = p_y ∓ imωy − mω̃x and p = −i∇.

mod checks;

pub use checks::{
    first_order_closure, planar_operator_residual, radial_equation_residual, residual_second_order,
    ClosureReport, RadialResidual,
};

use std::f64::consts::{LN_10, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{beta_matrices, eta0, lift_three_to_six, RepKind, SpinorSix, SpinorThree};
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::special::{laguerre, laguerre_derivative, laguerre_second_derivative};
use crate::spectrum::{
    Branch, EnergyLevel, OscillatorParams, QuantumNumbers, SpectralCoefficients,
};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Largest tolerated |a + n_r| when assembling a state.
pub const KUMMER_TOL: f64 = 1e-6;

/// |E² − m²| ≤ this · m² is treated as E = ±m.
pub const MASS_SHELL_TOL: f64 = 1e-9;

/// Charges below this cannot be normalized.
pub const NULL_CHARGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub params: OscillatorParams,
    pub qnums: QuantumNumbers,
    pub energy: f64,
    pub branch: Branch,
    /// +√α²(E).
    pub alpha: f64,
    pub kappa2: f64,
    /// a = ½(|l| + 1 − κ²/(2α)).
    pub kummer_a: f64,
    /// b = |l| + 1.
    pub kummer_b: f64,
    pub norm: f64,
}

/// Assembles the state for an energy level. The initial normalization makes
/// ∫₀^∞ φ₁² dr = 1; the charge normalization is applied by [`normalize`].
pub fn build_state(
    p: &OscillatorParams,
    q: &QuantumNumbers,
    level: &EnergyLevel,
) -> Result<BoundState> {
    let state = BoundState::assemble(p, q, level.energy)?;
    if (state.kummer_a + q.n_r as f64).abs() > KUMMER_TOL {
        return Err(Error::QuantizationMismatch {
            kummer_a: state.kummer_a,
            n_r: q.n_r,
        });
    }
    Ok(state)
}

impl BoundState {
    /// α, a, b and N without the quantization check; used directly only
    /// for negative controls.
    pub(crate) fn assemble(p: &OscillatorParams, q: &QuantumNumbers, energy: f64) -> Result<Self> {
        p.validate()?;
        let c = SpectralCoefficients::at(energy, p, q.l);
        if !(c.alpha2 > 0.0) {
            return Err(Error::NonPositiveAlpha2 {
                energy,
                alpha2: c.alpha2,
            });
        }
        let alpha = c.alpha2.sqrt();
        let al = q.l.unsigned_abs();
        let kummer_b = al as f64 + 1.0;
        let kummer_a = 0.5 * (kummer_b - c.kappa2 / (2.0 * alpha));
        // Γ(n+|l|+1)/n! = (n+1)(n+2)...(n+|l|)
        let ratio: f64 = (1..=al).map(|k| (q.n_r + k) as f64).product();
        let norm = (2.0 * alpha.powi(al as i32 + 1) / ratio).sqrt();
        Ok(BoundState {
            params: *p,
            qnums: *q,
            energy,
            branch: Branch::of(energy),
            alpha,
            kappa2: c.kappa2,
            kummer_a,
            kummer_b,
            norm,
        })
    }

    pub fn with_norm(&self, norm: f64) -> Self {
        BoundState { norm, ..*self }
    }

    fn abs_l(&self) -> i32 {
        self.qnums.l.abs()
    }

    /// φ₁(r) = N r^{|l|+½} e^{−αr²/2} L_{n_r}^{(|l|)}(αr²).
    pub fn radial_phi1(&self, r: f64) -> f64 {
        let a = self.abs_l();
        let x = self.alpha * r * r;
        self.norm
            * r.powf(a as f64 + 0.5)
            * (-0.5 * x).exp()
            * laguerre(self.qnums.n_r, a as f64, x)
    }

    /// g = φ₁/√r and its first two derivatives at r > 0, plus g/r. Terms
    /// with a vanishing power-law prefactor are dropped so that r = 0 stays
    /// finite where the function is regular.
    pub(crate) fn jet(&self, r: f64) -> RadialJet {
        let a = self.abs_l();
        let af = a as f64;
        let n = self.qnums.n_r;
        let alpha = self.alpha;
        let x = alpha * r * r;
        let env = self.norm * (-0.5 * x).exp();
        let lag = laguerre(n, af, x);
        let dlag = laguerre_derivative(n, af, x);
        let d2lag = laguerre_second_derivative(n, af, x);

        let ra = r.powi(a);
        let ra_m1 = if a >= 1 { r.powi(a - 1) } else { 0.0 };
        let ra_m2 = if a >= 2 { r.powi(a - 2) } else { 0.0 };

        let p0 = ra;
        let p1 = af * ra_m1 - alpha * ra * r;
        let p2 =
            af * (af - 1.0) * ra_m2 - alpha * (2.0 * af + 1.0) * ra + alpha * alpha * ra * r * r;
        // d/dr L(αr²) = 2αr L', d²/dr² = 2αL' + 4α²r²L''
        let l1 = 2.0 * alpha * r * dlag;
        let l2 = 2.0 * alpha * dlag + 4.0 * alpha * alpha * r * r * d2lag;

        RadialJet {
            g: env * p0 * lag,
            g1: env * (p1 * lag + p0 * l1),
            g2: env * (p2 * lag + 2.0 * p1 * l1 + p0 * l2),
            g_over_r: env * ra_m1 * lag,
        }
    }

    /// Φ₁ at a Cartesian point.
    pub fn phi1_at(&self, x: f64, y: f64) -> Complex64 {
        let r = x.hypot(y);
        let phase = Complex64::cis(self.qnums.l as f64 * y.atan2(x));
        phase * self.jet(r).g
    }

    fn mass_shell_gap(&self) -> Result<f64> {
        let m = self.params.m;
        let gap = self.energy * self.energy - m * m;
        if gap.abs() <= MASS_SHELL_TOL * m * m {
            return Err(Error::EnergyAtMass {
                energy: self.energy,
            });
        }
        Ok(gap)
    }

    /// (π⁺ₓΦ₁, π⁺ᵧΦ₁, Φ₁) with analytic derivatives.
    pub(crate) fn pi_plus_phi1(&self, x: f64, y: f64) -> (Complex64, Complex64, Complex64) {
        let OscillatorParams {
            m,
            omega,
            omega_tilde,
            ..
        } = self.params;
        let r = x.hypot(y);
        let angle = y.atan2(x);
        let (s, c) = angle.sin_cos();
        let l = self.qnums.l as f64;
        let phase = Complex64::cis(l * angle);
        let jet = self.jet(r);
        let g_over_r = if self.qnums.l == 0 { 0.0 } else { jet.g_over_r };

        let phi1 = phase * jet.g;
        let dx = phase * Complex64::new(c * jet.g1, -l * s * g_over_r);
        let dy = phase * Complex64::new(s * jet.g1, l * c * g_over_r);

        let pix = -I * dx + Complex64::new(m * omega_tilde * y, -m * omega * x) * phi1;
        let piy = -I * dy + Complex64::new(-m * omega_tilde * x, -m * omega * y) * phi1;
        (pix, piy, phi1)
    }

    /// (Φ₁, Φ₂, Φ₃) at a Cartesian point.
    pub fn components_at(&self, x: f64, y: f64) -> Result<SpinorThree> {
        let gap = self.mass_shell_gap()?;
        Ok(self.components_unchecked(x, y, gap))
    }

    pub(crate) fn components_unchecked(&self, x: f64, y: f64, gap: f64) -> SpinorThree {
        let (m, e) = (self.params.m, self.energy);
        let (pix, piy, phi1) = self.pi_plus_phi1(x, y);
        SpinorThree::new(
            phi1,
            (I * e * pix - m * piy) / gap,
            (I * e * piy + m * pix) / gap,
        )
    }

    /// Radius beyond which the charge density is below 1e-18 of its scale.
    pub fn decay_radius(&self) -> f64 {
        // x^k e^{−x} relative to its peak at x = k drops below 1e-18
        let k = self.qnums.principal() + 2.0;
        let floor = -18.0 * LN_10;
        let mut x = (36.0 * LN_10).max(2.0 * k);
        while k * (x / k).ln() - (x - k) > floor {
            x += 1.0;
        }
        (x / self.alpha).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RadialJet {
    pub g: f64,
    pub g1: f64,
    pub g2: f64,
    pub g_over_r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialMapping {
    /// Nodes uniform in r.
    Linear,
    /// Nodes uniform in s = √r, denser near the origin.
    Sqrt,
}

/// Polar sampling grid; points are ordered r-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldGrid {
    r_nodes: Vec<f64>,
    phi_nodes: Vec<f64>,
    mapping: Option<RadialMapping>,
}

impl FieldGrid {
    pub fn new(r_nodes: Vec<f64>, phi_nodes: Vec<f64>) -> Result<Self> {
        if r_nodes.is_empty() || phi_nodes.is_empty() {
            return Err(Error::MalformedGrid("grid has no nodes".into()));
        }
        if r_nodes.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::MalformedGrid("radial nodes must be positive".into()));
        }
        if phi_nodes.iter().any(|p| !(0.0..2.0 * PI).contains(p)) {
            return Err(Error::MalformedGrid("angles must lie in [0, 2π)".into()));
        }
        let ascending = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
        if !ascending(&r_nodes) || !ascending(&phi_nodes) {
            return Err(Error::MalformedGrid(
                "nodes must be strictly ascending".into(),
            ));
        }
        Ok(FieldGrid {
            r_nodes,
            phi_nodes,
            mapping: None,
        })
    }

    /// `n_r` radial nodes spanning [r_min, r_max] uniformly in the mapped
    /// variable and `n_phi` equally spaced angles starting at 0.
    pub fn polar(
        r_min: f64,
        r_max: f64,
        n_r: usize,
        n_phi: usize,
        mapping: RadialMapping,
    ) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || n_r < 2 || n_phi == 0 {
            return Err(Error::MalformedGrid(format!(
                "need 0 < r_min < r_max, n_r >= 2, n_phi >= 1; got [{r_min}, {r_max}], {n_r}, {n_phi}"
            )));
        }
        let (s0, s1) = match mapping {
            RadialMapping::Linear => (r_min, r_max),
            RadialMapping::Sqrt => (r_min.sqrt(), r_max.sqrt()),
        };
        let h = (s1 - s0) / (n_r - 1) as f64;
        let r_nodes = (0..n_r)
            .map(|i| {
                let s = s0 + i as f64 * h;
                match mapping {
                    RadialMapping::Linear => s,
                    RadialMapping::Sqrt => s * s,
                }
            })
            .collect();
        let phi_nodes = (0..n_phi)
            .map(|j| 2.0 * PI * j as f64 / n_phi as f64)
            .collect();
        let mut grid = FieldGrid::new(r_nodes, phi_nodes)?;
        grid.mapping = Some(mapping);
        Ok(grid)
    }

    /// Grid adapted to a state: from 0.01/√α out to the decay radius.
    pub fn for_state(
        state: &BoundState,
        n_r: usize,
        n_phi: usize,
        mapping: RadialMapping,
    ) -> Result<Self> {
        let r_min = 0.01 / state.alpha.sqrt();
        FieldGrid::polar(r_min, state.decay_radius(), n_r, n_phi, mapping)
    }

    pub fn r_nodes(&self) -> &[f64] {
        &self.r_nodes
    }

    pub fn phi_nodes(&self) -> &[f64] {
        &self.phi_nodes
    }

    pub fn mapping(&self) -> Option<RadialMapping> {
        self.mapping
    }

    pub fn len(&self) -> usize {
        self.r_nodes.len() * self.phi_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (r, φ) pairs, r-major.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.r_nodes
            .iter()
            .flat_map(move |&r| self.phi_nodes.iter().map(move |&p| (r, p)))
    }
}

/// Components and charge density sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledField {
    pub grid: FieldGrid,
    pub phi1: Vec<Complex64>,
    pub phi2: Vec<Complex64>,
    pub phi3: Vec<Complex64>,
    pub j0: Vec<f64>,
}

/// Φ₂ and Φ₃ on every grid point.
pub fn components_phi23(
    state: &BoundState,
    grid: &FieldGrid,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let gap = state.mass_shell_gap()?;
    Ok(grid
        .points()
        .map(|(r, p)| {
            let c = state.components_unchecked(r * p.cos(), r * p.sin(), gap);
            (c.phi2, c.phi3)
        })
        .unzip())
}

/// All three components and J⁰ on the grid.
pub fn sample_fields(state: &BoundState, grid: &FieldGrid) -> Result<SampledField> {
    let gap = state.mass_shell_gap()?;
    let op = ChargeOperator::new();
    let n = grid.len();
    let mut out = SampledField {
        grid: grid.clone(),
        phi1: Vec::with_capacity(n),
        phi2: Vec::with_capacity(n),
        phi3: Vec::with_capacity(n),
        j0: Vec::with_capacity(n),
    };
    for (r, p) in grid.points() {
        let c = state.components_unchecked(r * p.cos(), r * p.sin(), gap);
        out.phi1.push(c.phi1);
        out.phi2.push(c.phi2);
        out.phi3.push(c.phi3);
        out.j0.push(op.six(&lift_to_six(&c)).re);
    }
    Ok(out)
}

/// The six-component spinor carrying the same content as Φ.
pub fn lift_to_six(phi: &SpinorThree) -> SpinorSix {
    lift_three_to_six(phi)
}

/// ½ψ†η⁰β⁰ψ in both representations, built from the exact β-matrices.
struct ChargeOperator {
    six: nalgebra::DMatrix<Complex64>,
    three: nalgebra::DMatrix<Complex64>,
}

impl ChargeOperator {
    fn new() -> Self {
        let build = |rep| {
            let bs = beta_matrices(rep);
            (&eta0(&bs) * &bs.beta[0]).to_complex()
        };
        ChargeOperator {
            six: build(RepKind::SixDim),
            three: build(RepKind::ThreeDim),
        }
    }

    fn form(m: &nalgebra::DMatrix<Complex64>, v: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..v.len() {
            for j in 0..v.len() {
                acc += v[i].conj() * m[(i, j)] * v[j];
            }
        }
        0.5 * acc
    }

    /// Complex so that callers can check the imaginary part vanishes.
    fn six(&self, psi: &SpinorSix) -> Complex64 {
        Self::form(&self.six, &psi.to_array())
    }

    fn three(&self, phi: &SpinorThree) -> Complex64 {
        Self::form(&self.three, &phi.to_array())
    }
}

/// J⁰(x, y) = ½ψ†η⁰β⁰ψ for the lifted six-spinor.
pub fn charge_density(state: &BoundState, x: f64, y: f64) -> Result<f64> {
    let c = state.components_at(x, y)?;
    Ok(ChargeOperator::new().six(&lift_to_six(&c)).re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargeReport {
    /// ∫J⁰ dτ with the six-component current.
    pub charge: f64,
    /// Same integral with the 3×3 current, as a diagnostic.
    pub charge_three: f64,
    /// Largest |Im ψ†η⁰β⁰ψ| over the quadrature nodes.
    pub max_imag: f64,
}

impl ChargeReport {
    pub fn six_to_three_ratio(&self) -> f64 {
        self.charge / self.charge_three
    }
}

const RADIAL_PANELS: usize = 16;
const RADIAL_ORDER: usize = 32;
const ANGULAR_NODES: usize = 64;

/// ∫J⁰ r dr dφ by Gauss–Legendre in r on [0, R] and the trapezoid rule in φ,
/// which is exact for the finite Fourier content of J⁰.
pub fn total_charge(state: &BoundState) -> Result<ChargeReport> {
    let gap = state.mass_shell_gap()?;
    let op = ChargeOperator::new();
    let rule = GaussLegendre::new(RADIAL_ORDER);
    let dphi = 2.0 * PI / ANGULAR_NODES as f64;
    let mut charge = 0.0;
    let mut charge_three = 0.0;
    let mut max_imag: f64 = 0.0;
    for (r, w) in rule.composite_points(0.0, state.decay_radius(), RADIAL_PANELS) {
        let mut ring6 = 0.0;
        let mut ring3 = 0.0;
        for j in 0..ANGULAR_NODES {
            let (s, c) = (j as f64 * dphi).sin_cos();
            let phi = state.components_unchecked(r * c, r * s, gap);
            let j6 = op.six(&lift_to_six(&phi));
            ring6 += j6.re;
            ring3 += op.three(&phi).re;
            max_imag = max_imag.max(j6.im.abs());
        }
        charge += w * r * dphi * ring6;
        charge_three += w * r * dphi * ring3;
    }
    Ok(ChargeReport {
        charge,
        charge_three,
        max_imag,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalized {
    pub state: BoundState,
    /// Charge before rescaling.
    pub charge_before: ChargeReport,
    /// sign(∫J⁰); the normalized integral equals this.
    pub charge_sign: f64,
}

/// Rescales N so that |∫J⁰ dτ| = 1. The sign of the integral is a property
/// of the state and is reported, not imposed.
pub fn normalize(state: &BoundState) -> Result<Normalized> {
    let report = total_charge(state)?;
    if !(report.charge.abs() >= NULL_CHARGE) {
        return Err(Error::NullCharge {
            charge: report.charge,
        });
    }
    Ok(Normalized {
        state: state.with_norm(state.norm / report.charge.abs().sqrt()),
        charge_before: report,
        charge_sign: report.charge.signum(),
    })
}

/// Normalizes the state and samples J⁰ of the normalized state on `grid`.
pub fn charge_density_and_normalize(
    state: &BoundState,
    grid: &FieldGrid,
) -> Result<(Vec<f64>, Normalized)> {
    let normalized = normalize(state)?;
    let fields = sample_fields(&normalized.state, grid)?;
    Ok((fields.j0, normalized))
}
