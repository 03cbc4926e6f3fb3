//! The Chern class `Ch: H¹(L, ℋ*) → Alt²(L, ℤ)` and its splitting `σ`.
//!
//! With `A = e^{2πi a(l,v)}` the class is the four-term expression
//!
//! ```text
//! Ch(l₁, l₂) = a(l₂, v+l₁) + a(l₁, v) − a(l₂, v) − a(l₁, v+l₂)
//! ```
//!
//! which is an integer independent of `v`. Two routes compute it:
//! [`chern_symbolic`] evaluates the expression exactly in `ℚ(√D)` on the
//! normal form, and [`chern_numeric`] evaluates it in floating point from the
//! closed-form exponent and rounds.

use std::ops::{Add, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::pseudolattice::{LatticeVector, Pseudolattice};

/// Distance to the nearest integer (and size of the imaginary part) accepted
/// by [`chern_numeric`].
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Alternating form `η(aω₁ + bω₂, cω₁ + dω₂) = s·(ad − bc)`; every element of
/// `Alt²(L, ℤ)` has this shape for a unique integer `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AltForm(pub i64);

impl AltForm {
    pub fn s(self) -> i64 {
        self.0
    }

    pub fn eval(self, l1: LatticeVector, l2: LatticeVector) -> i64 {
        alt_eval(self, l1, l2)
    }
}

impl Add for AltForm {
    type Output = AltForm;
    fn add(self, rhs: Self) -> Self {
        AltForm(self.0 + rhs.0)
    }
}

impl Neg for AltForm {
    type Output = AltForm;
    fn neg(self) -> Self {
        AltForm(-self.0)
    }
}

/// `s·(a₁b₂ − a₂b₁)`.
pub fn alt_eval(eta: AltForm, l1: LatticeVector, l2: LatticeVector) -> i64 {
    eta.0 * (l1.a * l2.b - l2.a * l1.b)
}

/// Exact four-term Chern sum on `(l₁, l₂)`.
///
/// Character and coboundary parts of the exponent cancel identically in the
/// four-term sum (`b₂ + b₁ − b₂ − b₁ = 0`, and the shifts of `g` telescope), so
/// only the `σ̂`-part is evaluated, as an affine function of `v` in `ℚ(√D)`.
/// The `v`-coefficient must vanish and the constant must be an integer.
pub fn chern_exact(a: &Cocycle, l1: LatticeVector, l2: LatticeVector) -> i64 {
    let lat = a.lattice();
    let (x1, x2) = (lat.real_value(l1), lat.real_value(l2));
    let sum = a
        .sigma_exponent_exact(l2)
        .shifted(x1)
        .plus(&a.sigma_exponent_exact(l1))
        .minus(&a.sigma_exponent_exact(l2))
        .minus(&a.sigma_exponent_exact(l1).shifted(x2));
    assert!(sum.slope.is_zero(), "four-term Chern sum depends on v");
    let n = sum
        .constant
        .as_integer()
        .expect("four-term Chern sum is a rational integer");
    i64::try_from(n).expect("Chern value fits in i64")
}

/// The Chern class of `A`, read off from its value on the basis `(ω₁, ω₂)`.
pub fn chern_symbolic(a: &Cocycle) -> AltForm {
    AltForm(chern_exact(a, LatticeVector::OMEGA1, LatticeVector::OMEGA2))
}

/// Floating-point four-term Chern sum at `v`, rounded to the nearest integer.
///
/// Fails with a consistency error when the sum is not within
/// [`INTEGRALITY_TOLERANCE`] of an integer.
pub fn chern_numeric(a: &Cocycle, l1: LatticeVector, l2: LatticeVector, v: Complex64) -> Result<i64> {
    let lat = a.lattice();
    let (x1, x2) = (lat.real_value_f64(l1), lat.real_value_f64(l2));
    let sum = a.exponent(l2, v + x1).0 + a.exponent(l1, v).0 - a.exponent(l2, v).0 - a.exponent(l1, v + x2).0;
    let nearest = sum.re.round();
    if sum.im.abs() > INTEGRALITY_TOLERANCE || (sum.re - nearest).abs() > INTEGRALITY_TOLERANCE {
        return Err(Error::consistency(format!(
            "four-term Chern sum {sum} at v = {v} is not an integer"
        )));
    }
    Ok(nearest as i64)
}

/// `σ(η)`: the cocycle `σ̂(s_η)` with `c = 1`, `g = 0`; `Ch ∘ σ = id`.
pub fn sigma_section(eta: AltForm, lattice: Pseudolattice) -> Cocycle {
    Cocycle::sigma(lattice, eta.0)
}
