use num_complex::Complex64;
use serde::Serialize;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Six-component DKP spinor (a₁, a₂, b, d₁, d₂, e).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorSix {
    pub a1: Complex64,
    pub a2: Complex64,
    pub b: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub e: Complex64,
}

impl SpinorSix {
    pub fn from_array(c: [Complex64; 6]) -> Self {
        SpinorSix {
            a1: c[0],
            a2: c[1],
            b: c[2],
            d1: c[3],
            d2: c[4],
            e: c[5],
        }
    }

    pub fn to_array(&self) -> [Complex64; 6] {
        [self.a1, self.a2, self.b, self.d1, self.d2, self.e]
    }
}

/// Three-component spinor (Φ₁, Φ₂, Φ₃) of a single irreducible block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorThree {
    pub phi1: Complex64,
    pub phi2: Complex64,
    pub phi3: Complex64,
}

impl SpinorThree {
    pub fn new(phi1: Complex64, phi2: Complex64, phi3: Complex64) -> Self {
        SpinorThree { phi1, phi2, phi3 }
    }

    pub fn to_array(&self) -> [Complex64; 3] {
        [self.phi1, self.phi2, self.phi3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reduction {
    pub phi: SpinorThree,
    /// max(|a₁ + i d₂|, |a₂ − i d₁|, |b + i e|).
    pub consistency_residual: f64,
}

impl Reduction {
    pub fn is_consistent(&self, tol: f64) -> bool {
        self.consistency_residual <= tol
    }
}

/// Projects a six-spinor onto (Φ₁, Φ₂, Φ₃) = (i b, −a₂, a₁) and reports how
/// far it is from the pairing relations a₁ = −i d₂, a₂ = i d₁, b = −i e.
pub fn reduce_six_to_three(psi: &SpinorSix) -> Reduction {
    let phi = SpinorThree::new(I * psi.b, -psi.a2, psi.a1);
    let consistency_residual = [
        (psi.a1 + I * psi.d2).norm(),
        (psi.a2 - I * psi.d1).norm(),
        (psi.b + I * psi.e).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Reduction {
        phi,
        consistency_residual,
    }
}

/// Inverse of [`reduce_six_to_three`] on spinors obeying the pairing
/// relations: (Φ₃, −Φ₂, −iΦ₁, iΦ₂, iΦ₃, Φ₁).
pub fn lift_three_to_six(phi: &SpinorThree) -> SpinorSix {
    SpinorSix {
        a1: phi.phi3,
        a2: -phi.phi2,
        b: -I * phi.phi1,
        d1: I * phi.phi2,
        d2: I * phi.phi3,
        e: phi.phi1,
    }
}
