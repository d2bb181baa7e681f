//! Square matrices over the Gaussian integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};

pub type GaussInt = Complex<i64>;

const ZERO: GaussInt = Complex::new(0, 0);
const ONE: GaussInt = Complex::new(1, 0);

/// Dense square matrix with Gaussian-integer entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    data: Vec<GaussInt>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from `(re, im)` pairs given row by row.
    ///
    /// Panics if `rows` is not square.
    pub fn from_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix rows must be square");
            data.extend(row.iter().map(|&(re, im)| Complex::new(re, im)));
        }
        ExactMatrix { dim, data }
    }

    /// Builds a real matrix from integer rows.
    pub fn from_real(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix rows must be square");
            data.extend(row.iter().map(|&re| Complex::new(re, 0)));
        }
        ExactMatrix { dim, data }
    }

    /// Places `upper_right` and `lower_left` as off-diagonal blocks of a
    /// matrix twice their size.
    pub fn off_diagonal_blocks(upper_right: &ExactMatrix, lower_left: &ExactMatrix) -> Self {
        assert_eq!(upper_right.dim, lower_left.dim);
        let n = upper_right.dim;
        let mut m = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, n + j, upper_right.get(i, j));
                m.set(n + i, j, lower_left.get(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> GaussInt {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussInt) {
        self.data[row * self.dim + col] = value;
    }

    /// The `size × size` block starting at `(row0, col0)`.
    pub fn block(&self, row0: usize, col0: usize, size: usize) -> ExactMatrix {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, self.get(row0 + i, col0 + j));
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn conj_transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn scale(&self, k: GaussInt) -> Self {
        ExactMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> f64 {
        self.data
            .iter()
            .map(|z| ((z.re * z.re + z.im * z.im) as f64).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.data
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let z = self.get(i, j);
            Complex64::new(z.re as f64, z.im as f64)
        })
    }

    /// Matrix-vector product in floating point.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(Complex64::new(0.0, 0.0), |acc, j| {
                    let z = self.get(i, j);
                    acc + Complex64::new(z.re as f64, z.im as f64) * v[j]
                })
            })
            .collect()
    }

    /// Renders `self · (names)ᵀ` as one linear form per row, e.g. `-b` or
    /// `a1 + i*d2`.
    pub fn render_linear_forms(&self, names: &[&str]) -> Vec<String> {
        assert_eq!(names.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut out = String::new();
                for (j, name) in names.iter().enumerate() {
                    let z = self.get(i, j);
                    if z == ZERO {
                        continue;
                    }
                    let (negative, coeff) = match (z.re, z.im) {
                        (1, 0) => (false, String::new()),
                        (-1, 0) => (true, String::new()),
                        (0, 1) => (false, "i*".to_string()),
                        (0, -1) => (true, "i*".to_string()),
                        (re, 0) if re < 0 => (true, format!("{}*", -re)),
                        (re, 0) => (false, format!("{re}*")),
                        (re, im) => (false, format!("({re}{im:+}i)*")),
                    };
                    match (out.is_empty(), negative) {
                        (true, true) => out.push('-'),
                        (true, false) => {}
                        (false, true) => out.push_str(" - "),
                        (false, false) => out.push_str(" + "),
                    }
                    out.push_str(&coeff);
                    out.push_str(name);
                }
                if out.is_empty() {
                    out.push('0');
                }
                out
            })
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{}{:+}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ExactMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ExactMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}
