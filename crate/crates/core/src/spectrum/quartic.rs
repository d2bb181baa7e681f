use nalgebra::Matrix4;

use super::{quantization_rhs, OscillatorParams, QuantumNumbers, SpectralCoefficients};

/// Monic coefficients [c0, c1, c2, c3] of
/// E⁴ + c3 E³ + c2 E² + c1 E + c0 = RHS(E)² − 4α²(E)N².
pub fn quartic_coefficients(p: &OscillatorParams, q: &QuantumNumbers) -> [f64; 4] {
    let (m, w, wt) = (p.m, p.omega, p.omega_tilde);
    let l = q.l as f64;
    let n2 = q.principal().powi(2);
    // RHS = E² + 2μE + c,  α² = a0 + a1 E
    let mu = w * l + wt;
    let c = 2.0 * m * (wt * l + w) - m * m;
    let a0 = m * m * (w * w + wt * wt);
    let a1 = 2.0 * m * w * wt;
    [
        c * c - 4.0 * n2 * a0,
        4.0 * mu * c - 4.0 * n2 * a1,
        4.0 * mu * mu + 2.0 * c,
        4.0 * mu,
    ]
}

fn eval_quartic(c: &[f64; 4], x: f64) -> (f64, f64) {
    let v = (((x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
    let d = ((4.0 * x + 3.0 * c[3]) * x + 2.0 * c[2]) * x + c[1];
    (v, d)
}

/// Real roots of the squared quantization condition, deduplicated and
/// sorted ascending.
///
/// Roots come from the eigenvalues of the companion matrix of the quartic
/// in the scaled variable E/m; each near-real eigenvalue is polished by
/// Newton on the quartic and then, where the unsquared residual is defined
/// and the right side non-negative, by Newton on the unsquared residual.
pub fn real_quartic_roots(p: &OscillatorParams, q: &QuantumNumbers, dedup: f64) -> Vec<f64> {
    let m = p.m;
    let scaled = OscillatorParams {
        m: 1.0,
        omega: p.omega / m,
        omega_tilde: p.omega_tilde / m,
        charge_field: None,
    };
    let c = quartic_coefficients(&scaled, q);
    let companion = Matrix4::new(
        0.0, 0.0, 0.0, -c[0], //
        1.0, 0.0, 0.0, -c[1], //
        0.0, 1.0, 0.0, -c[2], //
        0.0, 0.0, 1.0, -c[3],
    );
    let eigen = companion.complex_eigenvalues();

    let mut roots: Vec<f64> = eigen
        .iter()
        .filter(|z| z.im.abs() <= 1e-6 * z.re.abs().max(1.0))
        .map(|z| {
            let x = polish_quartic(&c, z.re);
            polish_unsquared(p, q, x * m)
        })
        .filter(|e| e.is_finite())
        .collect();
    roots.sort_by(f64::total_cmp);

    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for e in roots {
        match out.last() {
            Some(&prev) if (e - prev).abs() <= dedup * prev.abs().max(1.0) => {}
            _ => out.push(e),
        }
    }
    out
}

fn polish_quartic(c: &[f64; 4], mut x: f64) -> f64 {
    let (mut v, _) = eval_quartic(c, x);
    for _ in 0..100 {
        let (_, d) = eval_quartic(c, x);
        if d == 0.0 {
            break;
        }
        let next = x - v / d;
        let (vn, _) = eval_quartic(c, next);
        // Near double roots Newton stalls; stop once it no longer improves.
        if !(vn.abs() < v.abs()) {
            break;
        }
        x = next;
        v = vn;
        if v == 0.0 {
            break;
        }
    }
    x
}

fn polish_unsquared(p: &OscillatorParams, q: &QuantumNumbers, mut e: f64) -> f64 {
    let n = q.principal();
    let residual = |e: f64| -> Option<f64> {
        let alpha2 = SpectralCoefficients::at(e, p, q.l).alpha2;
        (alpha2 > 0.0).then(|| 2.0 * alpha2.sqrt() * n - quantization_rhs(e, p, q.l))
    };
    if quantization_rhs(e, p, q.l) < 0.0 {
        return e;
    }
    let Some(mut f) = residual(e) else {
        return e;
    };
    let a1 = 2.0 * p.m * p.omega * p.omega_tilde;
    let mu = p.omega * q.l as f64 + p.omega_tilde;
    for _ in 0..30 {
        let alpha = SpectralCoefficients::at(e, p, q.l).alpha2.sqrt();
        let df = n * a1 / alpha - 2.0 * (e + mu);
        if df == 0.0 || f == 0.0 {
            break;
        }
        let next = e - f / df;
        match residual(next) {
            Some(fn_) if fn_.abs() < f.abs() => {
                e = next;
                f = fn_;
            }
            _ => break,
        }
    }
    e
}
