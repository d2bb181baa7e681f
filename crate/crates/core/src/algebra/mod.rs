//! β-matrix representations of the (2+1)-dimensional DKP algebra.
//!
//! Both canonical representations have Gaussian-integer entries, so every
//! structural identity here (the trilinear algebra, projector antisymmetry,
//! η⁰² = 1) is checked in exact integer arithmetic.

mod exact;
mod spinor;

pub use exact::{ExactMatrix, GaussInt};
pub use spinor::{lift_three_to_six, reduce_six_to_three, Reduction, SpinorSix, SpinorThree};

use num_complex::{Complex, Complex64};
use serde::Serialize;

use crate::error::{Error, Result};

/// Minkowski signature (+, −, −).
pub const METRIC: [i64; 3] = [1, -1, -1];

/// Names of the six-spinor slots, in storage order.
pub const SIX_SPINOR_NAMES: [&str; 6] = ["a1", "a2", "b", "d1", "d2", "e"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RepKind {
    ThreeDim,
    SixDim,
}

impl RepKind {
    pub fn dim(self) -> usize {
        match self {
            RepKind::ThreeDim => 3,
            RepKind::SixDim => 6,
        }
    }
}

/// A concrete representation (β⁰, β¹, β²) together with the metric diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaSet {
    pub rep: RepKind,
    pub beta: [ExactMatrix; 3],
    pub metric: [i64; 3],
}

impl BetaSet {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    fn check_dims(&self) -> Result<()> {
        let expected = self.rep.dim();
        for b in &self.beta {
            if b.dim() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: b.dim(),
                });
            }
        }
        Ok(())
    }

    /// Copy of `self` with a single entry of β^μ replaced; used to build
    /// negative controls.
    pub fn with_entry(&self, mu: usize, row: usize, col: usize, value: GaussInt) -> BetaSet {
        let mut out = self.clone();
        out.beta[mu].set(row, col, value);
        out
    }

    /// β⁰ must be Hermitian, β¹ and β² anti-Hermitian.
    pub fn has_expected_hermiticity(&self) -> bool {
        let [b0, b1, b2] = &self.beta;
        b0.conj_transpose() == *b0 && b1.conj_transpose() == -b1 && b2.conj_transpose() == -b2
    }

    pub fn to_complex(&self) -> [nalgebra::DMatrix<Complex64>; 3] {
        [
            self.beta[0].to_complex(),
            self.beta[1].to_complex(),
            self.beta[2].to_complex(),
        ]
    }
}

/// The ρ-blocks from which the six-dimensional set is assembled.
pub fn rho_blocks() -> [ExactMatrix; 3] {
    [
        ExactMatrix::from_real(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 0]]),
        ExactMatrix::from_real(&[&[0, 0, 1], &[0, 0, 0], &[0, 1, 0]]),
        ExactMatrix::from_real(&[&[0, 0, 0], &[0, 0, 1], &[-1, 0, 0]]),
    ]
}

/// The canonical β-matrices for the requested representation.
pub fn beta_matrices(rep: RepKind) -> BetaSet {
    let beta = match rep {
        RepKind::ThreeDim => [
            ExactMatrix::from_pairs(&[
                &[(0, 0), (0, 0), (0, 0)],
                &[(0, 0), (0, 0), (0, 1)],
                &[(0, 0), (0, -1), (0, 0)],
            ]),
            ExactMatrix::from_real(&[&[0, 0, -1], &[0, 0, 0], &[1, 0, 0]]),
            ExactMatrix::from_real(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]),
        ],
        RepKind::SixDim => {
            let [rho0, rho1, rho2] = rho_blocks();
            [
                ExactMatrix::off_diagonal_blocks(&rho0, &rho0),
                ExactMatrix::off_diagonal_blocks(&rho1, &-&rho1.transpose()),
                ExactMatrix::off_diagonal_blocks(&rho2, &-&rho2.transpose()),
            ]
        }
    };
    BetaSet {
        rep,
        beta,
        metric: METRIC,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub triples_checked: usize,
    /// Largest entry modulus of β^μβ^νβ^η + β^ηβ^νβ^μ − g^{μν}β^η − g^{ην}β^μ.
    pub max_deviation: f64,
    pub failing_triples: Vec<[usize; 3]>,
}

impl AlgebraReport {
    pub fn holds(&self) -> bool {
        self.failing_triples.is_empty()
    }
}

/// Checks the trilinear DKP algebra for all 27 index triples.
pub fn verify_dkp_algebra(bs: &BetaSet) -> Result<AlgebraReport> {
    bs.check_dims()?;
    let mut max_deviation = 0.0_f64;
    let mut failing_triples = Vec::new();
    let mut triples_checked = 0;
    for mu in 0..3 {
        for nu in 0..3 {
            for eta in 0..3 {
                triples_checked += 1;
                let b = &bs.beta;
                let lhs = &(&(&b[mu] * &b[nu]) * &b[eta]) + &(&(&b[eta] * &b[nu]) * &b[mu]);
                let mut rhs = ExactMatrix::zeros(bs.dim());
                if mu == nu {
                    rhs = &rhs + &b[eta].scale(Complex::new(bs.metric[mu], 0));
                }
                if eta == nu {
                    rhs = &rhs + &b[mu].scale(Complex::new(bs.metric[eta], 0));
                }
                let diff = &lhs - &rhs;
                if !diff.is_zero() {
                    failing_triples.push([mu, nu, eta]);
                    max_deviation = max_deviation.max(diff.max_modulus());
                }
            }
        }
    }
    Ok(AlgebraReport {
        triples_checked,
        max_deviation,
        failing_triples,
    })
}

/// η⁰ = 2β⁰β⁰ − 1.
pub fn eta0(bs: &BetaSet) -> ExactMatrix {
    let b0sq = &bs.beta[0] * &bs.beta[0];
    &b0sq.scale(Complex::new(2, 0)) - &ExactMatrix::identity(bs.dim())
}

/// Projection operator R^μ = (β¹)²(β²)²(β^μβ⁰ − g^{μ0}).
pub fn projector(mu: usize, bs: &BetaSet) -> ExactMatrix {
    assert!(mu < 3, "index out of range");
    let b = &bs.beta;
    let prefactor = &(&b[1] * &b[1]) * &(&b[2] * &b[2]);
    let mut inner = &b[mu] * &b[0];
    if mu == 0 {
        inner = &inner - &ExactMatrix::identity(bs.dim()).scale(Complex::new(bs.metric[0], 0));
    }
    &prefactor * &inner
}

/// R^{μν} = R^μ β^ν.
pub fn projector_pair(mu: usize, nu: usize, bs: &BetaSet) -> ExactMatrix {
    &projector(mu, bs) * &bs.beta[nu]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanRank {
    pub rank: usize,
    /// True when the rank at `max_word_length` was already reached at a
    /// shorter word length.
    pub saturated: bool,
    /// Rank of the span of all words of length `1..=k`, indexed by `k - 1`.
    pub rank_by_length: Vec<usize>,
    /// Whether the identity lies in the span (it is never itself a word).
    pub identity_in_span: bool,
}

/// Rank of the linear span of all β-words of length 1..=`max_word_length`.
pub fn monomial_span_rank(bs: &BetaSet, max_word_length: usize) -> Result<SpanRank> {
    if max_word_length == 0 {
        return Err(Error::InvalidParameter(
            "max_word_length must be at least 1".into(),
        ));
    }
    bs.check_dims()?;
    let mut basis = SpanBasis::new(bs.dim() * bs.dim());
    let mut frontier: Vec<ExactMatrix> = vec![ExactMatrix::identity(bs.dim())];
    let mut rank_by_length = Vec::with_capacity(max_word_length);
    for _ in 0..max_word_length {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for word in &frontier {
            for b in &bs.beta {
                let w = word * b;
                basis.insert(&w);
                next.push(w);
            }
        }
        // Words that repeat exactly add nothing; dropping them keeps the
        // frontier small without changing the span.
        next.sort_by(|a, b| {
            a.entries()
                .iter()
                .map(|z| (z.re, z.im))
                .cmp(b.entries().iter().map(|z| (z.re, z.im)))
        });
        next.dedup();
        frontier = next;
        rank_by_length.push(basis.rank());
    }
    let rank = basis.rank();
    let saturated = max_word_length >= 2 && rank_by_length[max_word_length - 2] == rank;
    let identity_in_span = basis.contains(&ExactMatrix::identity(bs.dim()));
    Ok(SpanRank {
        rank,
        saturated,
        rank_by_length,
        identity_in_span,
    })
}

/// Orthonormal basis grown by modified Gram–Schmidt with one
/// re-orthogonalization pass.
struct SpanBasis {
    len: usize,
    vectors: Vec<Vec<Complex64>>,
}

const SPAN_TOL: f64 = 1e-9;

impl SpanBasis {
    fn new(len: usize) -> Self {
        SpanBasis {
            len,
            vectors: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.vectors.len()
    }

    fn residual(&self, m: &ExactMatrix) -> (Vec<Complex64>, f64, f64) {
        let mut v: Vec<Complex64> = m
            .entries()
            .iter()
            .map(|z| Complex64::new(z.re as f64, z.im as f64))
            .collect();
        let norm0 = norm(&v);
        for _ in 0..2 {
            for q in &self.vectors {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let n = norm(&v);
        (v, norm0, n)
    }

    fn contains(&self, m: &ExactMatrix) -> bool {
        let (_, norm0, n) = self.residual(m);
        n <= SPAN_TOL * norm0.max(1.0)
    }

    fn insert(&mut self, m: &ExactMatrix) {
        if self.vectors.len() == self.len {
            return;
        }
        let (v, norm0, n) = self.residual(m);
        if n > SPAN_TOL * norm0.max(1.0) {
            self.vectors.push(v.into_iter().map(|z| z / n).collect());
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
