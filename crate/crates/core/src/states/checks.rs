//! Finite-difference checks of the equations of motion.

use num_complex::Complex64;
use serde::Serialize;

use super::{BoundState, FieldGrid, RadialMapping};
use crate::error::{Error, Result};
use crate::spectrum::SpectralCoefficients;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest radial grid the 5-point stencil can be applied to meaningfully.
pub const MIN_RADIAL_NODES: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialResidual {
    pub max_abs: f64,
    /// max |κ² φ₁| over the grid.
    pub scale: f64,
    pub relative: f64,
    pub nodes: usize,
}

/// φ₁'' − α²r²φ₁ − (l² − ¼)φ₁/r² + κ²φ₁ with the analytic second derivative.
pub fn radial_equation_residual(state: &BoundState, r: f64) -> f64 {
    let jet = state.jet(r);
    let sr = r.sqrt();
    // φ₁ = √r g
    let phi = sr * jet.g;
    let phi2 = -jet.g / (4.0 * r * sr) + jet.g1 / sr + sr * jet.g2;
    radial_operator(state, r, phi, phi2)
}

fn radial_operator(state: &BoundState, r: f64, phi: f64, phi_rr: f64) -> f64 {
    let l = state.qnums.l as f64;
    phi_rr - state.alpha * state.alpha * r * r * phi - (l * l - 0.25) / (r * r) * phi
        + state.kappa2 * phi
}

/// Maximum of the radial-equation residual over the interior nodes of
/// `grid`, with φ₁'' from a fourth-order central difference.
///
/// The grid must be uniform in its mapped variable. On a √r grid the chain
/// rule gives d²/dr² = (f_ss − f_s/s)/(4s²), which resolves the √r
/// behaviour of φ₁ near the origin far better than a uniform r grid.
pub fn residual_second_order(state: &BoundState, grid: &FieldGrid) -> Result<RadialResidual> {
    let r = grid.r_nodes();
    let n = r.len();
    if n < MIN_RADIAL_NODES {
        return Err(Error::GridTooCoarse {
            nodes: n,
            required: MIN_RADIAL_NODES,
        });
    }
    let mapping = grid.mapping().ok_or_else(|| {
        Error::MalformedGrid("second-order residual needs a uniformly mapped grid".into())
    })?;
    let s: Vec<f64> = match mapping {
        RadialMapping::Linear => r.to_vec(),
        RadialMapping::Sqrt => r.iter().map(|r| r.sqrt()).collect(),
    };
    let h = (s[n - 1] - s[0]) / (n - 1) as f64;
    let phi: Vec<f64> = r.iter().map(|&r| state.radial_phi1(r)).collect();

    let mut max_abs: f64 = 0.0;
    for i in 2..n - 2 {
        let f = |k: isize| phi[(i as isize + k) as usize];
        let f_ss = (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / (12.0 * h * h);
        let phi_rr = match mapping {
            RadialMapping::Linear => f_ss,
            RadialMapping::Sqrt => {
                let f_s = (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h);
                (f_ss - f_s / s[i]) / (4.0 * s[i] * s[i])
            }
        };
        max_abs = max_abs.max(radial_operator(state, r[i], phi[i], phi_rr).abs());
    }
    let scale = phi
        .iter()
        .map(|p| (state.kappa2 * p).abs())
        .fold(0.0, f64::max);
    Ok(RadialResidual {
        max_abs,
        scale,
        relative: max_abs / scale,
        nodes: n,
    })
}

/// Relative residuals of the three first-order equations
///
/// ```text
/// mΦ₁ = −π⁻ᵧΦ₂ + π⁻ₓΦ₃,   mΦ₂ = iEΦ₃ + π⁺ᵧΦ₁,   mΦ₃ = −iEΦ₂ − π⁺ₓΦ₁
/// ```
///
/// with every π applied by fourth-order finite differences in x and y, so
/// the analytic derivatives used to build Φ₂ and Φ₃ are cross-checked too.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureReport {
    pub eq1: f64,
    pub eq2: f64,
    pub eq3: f64,
    /// m · max|Φ| over the grid; the residuals are divided by it.
    pub scale: f64,
    pub points: usize,
    pub step: f64,
}

impl ClosureReport {
    pub fn max(&self) -> f64 {
        self.eq1.max(self.eq2).max(self.eq3)
    }
}

fn d1(f: impl Fn(f64) -> [Complex64; 3], t: f64, h: f64) -> [Complex64; 3] {
    let (a, b, c, d) = (f(t - 2.0 * h), f(t - h), f(t + h), f(t + 2.0 * h));
    std::array::from_fn(|k| (a[k] - 8.0 * b[k] + 8.0 * c[k] - d[k]) / (12.0 * h))
}

/// Evaluates the closure on every grid point with step `step` (default
/// 10⁻³/√α).
pub fn first_order_closure(
    state: &BoundState,
    grid: &FieldGrid,
    step: Option<f64>,
) -> Result<ClosureReport> {
    let gap = state.mass_shell_gap()?;
    let h = step.unwrap_or(1e-3 / state.alpha.sqrt());
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(
            "finite-difference step must be positive".into(),
        ));
    }
    let (m, e) = (state.params.m, state.energy);
    let (w, wt) = (state.params.omega, state.params.omega_tilde);
    let fields = |x: f64, y: f64| state.components_unchecked(x, y, gap).to_array();

    let (mut r1, mut r2, mut r3, mut amp) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for (r, p) in grid.points() {
        let (x, y) = (r * p.cos(), r * p.sin());
        let v = fields(x, y);
        let dx = d1(|t| fields(t, y), x, h);
        let dy = d1(|t| fields(x, t), y, h);
        // π±ₓ = −i∂ₓ ∓ imωx + mω̃y, π±ᵧ = −i∂ᵧ ∓ imωy − mω̃x
        let pi_x =
            |k: usize, sign: f64| -I * dx[k] + Complex64::new(m * wt * y, -sign * m * w * x) * v[k];
        let pi_y = |k: usize, sign: f64| {
            -I * dy[k] + Complex64::new(-m * wt * x, -sign * m * w * y) * v[k]
        };

        r1 = r1.max((m * v[0] + pi_y(1, -1.0) - pi_x(2, -1.0)).norm());
        r2 = r2.max((m * v[1] - I * e * v[2] - pi_y(0, 1.0)).norm());
        r3 = r3.max((m * v[2] + I * e * v[1] + pi_x(0, 1.0)).norm());
        amp = v.iter().fold(amp, |a, c| a.max(c.norm()));
    }
    let scale = m * amp;
    Ok(ClosureReport {
        eq1: r1 / scale,
        eq2: r2 / scale,
        eq3: r3 / scale,
        scale,
        points: grid.len(),
        step: h,
    })
}

/// (p² + α²r² − 2γL_z − 2β − E² + m²)Φ₁ at (x, y), with p = −i∇ and
/// L_z = xp_y − yp_x applied by fourth-order finite differences.
pub fn planar_operator_residual(
    state: &BoundState,
    x: f64,
    y: f64,
    step: Option<f64>,
) -> Complex64 {
    let h = step.unwrap_or(2e-3 / state.alpha.sqrt());
    let f = |x: f64, y: f64| state.phi1_at(x, y);
    let f0 = f(x, y);
    let second = |g: &dyn Fn(f64) -> Complex64, t: f64| {
        (-g(t - 2.0 * h) + 16.0 * g(t - h) - 30.0 * g(t) + 16.0 * g(t + h) - g(t + 2.0 * h))
            / (12.0 * h * h)
    };
    let first = |g: &dyn Fn(f64) -> Complex64, t: f64| {
        (g(t - 2.0 * h) - 8.0 * g(t - h) + 8.0 * g(t + h) - g(t + 2.0 * h)) / (12.0 * h)
    };
    let along_x = |t: f64| f(t, y);
    let along_y = |t: f64| f(x, t);
    let laplacian = second(&along_x, x) + second(&along_y, y);
    let lz = -I * (x * first(&along_y, y) - y * first(&along_x, x));

    let c = SpectralCoefficients::at(state.energy, &state.params, state.qnums.l);
    let (beta, gamma) = (c.beta_c, c.gamma_c);
    let (m, e) = (state.params.m, state.energy);
    let r2 = x * x + y * y;
    -laplacian + (state.alpha * state.alpha * r2 - 2.0 * beta - e * e + m * m) * f0
        - 2.0 * gamma * lz
}
