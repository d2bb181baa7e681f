//! Generalized Laguerre polynomials.

/// L_n^{(alpha)}(x) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1+α−x) L_k − (k+α) L_{k−1}.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx L_n^{(α)}(x) = −L_{n−1}^{(α+1)}(x).
pub fn laguerre_derivative(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1.0, x)
    }
}

/// d²/dx² L_n^{(α)}(x) = L_{n−2}^{(α+2)}(x).
pub fn laguerre_second_derivative(n: u32, alpha: f64, x: f64) -> f64 {
    if n < 2 {
        0.0
    } else {
        laguerre(n - 2, alpha + 2.0, x)
    }
}
