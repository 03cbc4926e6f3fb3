//! Holomorphic line bundles as cocycles `A ∈ Z¹(L, ℋ*)` in a finite normal form.
//!
//! A [`Cocycle`] with data `(s, c, g)` stands for
//!
//! ```text
//! A_l(v) = c^b · exp(s·(πi/ω₁)·[b²ω₂ + 2bv]) · exp(2πi·[g(v+l) − g(v)]),   l = aω₁ + bω₂
//! ```
//!
//! i.e. a character `γ_c`, the Chern-class carrier `σ̂(s)` and the coboundary of
//! `e^{2πi g}` for an exponent polynomial `g`. Every cohomology class has a
//! representative of this shape. The cocycle identity
//! `A_{l₁+l₂}(v) = A_{l₁}(v+l₂)·A_{l₂}(v)` holds by construction: the exponent
//! defect is the integer `−s·b₁·a₂` (see [`cocycle_defect`]).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{self, complex_json, log_relative_residual, QuadReal, Rational};
use crate::pseudolattice::{LatticeVector, Pseudolattice};
use crate::sampling::Sampler;

/// Largest supported degree of an exponent polynomial.
pub const MAX_DEGREE: usize = 6;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Polynomial `g(v) = Σ gⱼ vʲ` with complex coefficients, used as an exponent
/// `e^{2πi g(v)}`. Trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExponentPoly {
    coeffs: Vec<Complex64>,
}

impl ExponentPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        for c in &coeffs {
            numeric::ensure_finite(*c, "exponent coefficient")?;
        }
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::domain(format!(
                "exponent polynomial of degree {} exceeds the cap {MAX_DEGREE}",
                coeffs.len() - 1
            )));
        }
        Ok(ExponentPoly { coeffs })
    }

    pub fn zero() -> Self {
        ExponentPoly::default()
    }

    /// `β·v`.
    pub fn linear(beta: Complex64) -> Self {
        ExponentPoly::new(vec![Complex64::new(0.0, 0.0), beta]).expect("degree 1")
    }

    /// `c·vᵏ`.
    pub fn monomial(k: usize, c: Complex64) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        ExponentPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, v: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * v + c)
    }

    /// `g(v + l) − g(v)`.
    pub fn shift_difference(&self, v: Complex64, l: f64) -> Complex64 {
        self.eval(v + l) - self.eval(v)
    }

    /// The part of degree ≥ 2.
    pub fn nonlinear_part(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().take(2) {
            *c = Complex64::new(0.0, 0.0);
        }
        ExponentPoly::new(coeffs).expect("degree does not grow")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| f(self.coefficient(j), other.coefficient(j)))
            .collect();
        ExponentPoly::new(coeffs).expect("degree does not grow")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn neg(&self) -> Self {
        ExponentPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Serialize for ExponentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        complex_json::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for ExponentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let coeffs = complex_json::vec::deserialize(de)?;
        ExponentPoly::new(coeffs).map_err(serde::de::Error::custom)
    }
}

/// The exponent `a(l, v)` of a cocycle value, `A_l(v) = e^{2πi·a(l,v)}`.
/// Meaningful modulo ℤ when comparing different representations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentValue(pub Complex64);

/// Normal-form cocycle `(s, c, g)` on a pseudolattice.
#[derive(Clone, Debug)]
pub struct Cocycle {
    s: i64,
    c: Complex64,
    log_c: Complex64,
    g: ExponentPoly,
    lattice: Pseudolattice,
}

impl PartialEq for Cocycle {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.c == other.c && self.g == other.g && self.lattice == other.lattice
    }
}

impl Cocycle {
    pub fn new(lattice: Pseudolattice, s: i64, c: Complex64, g: ExponentPoly) -> Result<Self> {
        numeric::ensure_finite(c, "character value c")?;
        if c == Complex64::new(0.0, 0.0) {
            return Err(Error::domain("character value c must be nonzero"));
        }
        Ok(Cocycle {
            s,
            c,
            log_c: c.ln(),
            g,
            lattice,
        })
    }

    pub fn trivial(lattice: Pseudolattice) -> Self {
        Self::new(lattice, 0, Complex64::new(1.0, 0.0), ExponentPoly::zero()).expect("valid")
    }

    /// `σ̂(s)_l(v) = exp(s·(πi/ω₁)·[b²ω₂ + 2bv])`.
    pub fn sigma(lattice: Pseudolattice, s: i64) -> Self {
        Self::new(lattice, s, Complex64::new(1.0, 0.0), ExponentPoly::zero()).expect("valid")
    }

    /// The character `γ_c(aω₁ + bω₂) = c^b`.
    pub fn character(lattice: Pseudolattice, c: Complex64) -> Result<Self> {
        Self::new(lattice, 0, c, ExponentPoly::zero())
    }

    /// `exp(−(πi/ω₁)·[b²ω₂ + 2bv])`, the standard nontrivial example, which is
    /// `σ̂(−1)`.
    ///
    /// The variant with `−2bv` inside the bracket is not a cocycle: its defect
    /// `e^{−4πi b₁b₂θ}` is not 1. The sign of the `v`-term here is the one for
    /// which `g(v+ω₂) − g(v) = −(ω₂ + 2v)/ω₁`, i.e. the `b = 1` case.
    pub fn existence(lattice: Pseudolattice) -> Self {
        Self::sigma(lattice, -1)
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// Principal logarithm of `c`, fixed at construction.
    pub fn log_c(&self) -> Complex64 {
        self.log_c
    }

    pub fn g(&self) -> &ExponentPoly {
        &self.g
    }

    pub fn lattice(&self) -> &Pseudolattice {
        &self.lattice
    }

    /// The same `(s, c)` with the coboundary part dropped.
    pub fn without_coboundary(&self) -> Self {
        Cocycle {
            g: ExponentPoly::zero(),
            ..self.clone()
        }
    }

    /// Natural logarithm of `A_l(v)` in closed form (not reduced).
    pub fn log_value(&self, l: LatticeVector, v: Complex64) -> Complex64 {
        let b = l.b as f64;
        let mut z = self.log_c * b;
        if self.s != 0 {
            let theta = self.lattice.theta().approx;
            let w1 = self.lattice.omega1_f64();
            z += I * (PI * self.s as f64) * (b * b * theta + v * (2.0 * b / w1));
        }
        if !self.g.is_zero() {
            let lf = self.lattice.real_value_f64(l);
            z += I * TAU * self.g.shift_difference(v, lf);
        }
        z
    }

    /// `a(l, v)` with `A_l(v) = e^{2πi·a(l,v)}`:
    /// `b·log(c)/(2πi) + (s/2ω₁)(b²ω₂ + 2bv) + g(v+l) − g(v)`.
    pub fn exponent(&self, l: LatticeVector, v: Complex64) -> ExponentValue {
        ExponentValue(self.log_value(l, v) / (I * TAU))
    }

    /// `A_l(v)`; a range error when the real part of the logarithm leaves
    /// `[−700, 700]`.
    pub fn evaluate(&self, l: LatticeVector, v: Complex64) -> Result<Complex64> {
        let z = self.log_value(l, v);
        if z.re.abs() > 700.0 || !z.re.is_finite() {
            return Err(Error::Range { re: z.re, im: z.im });
        }
        Ok(z.exp())
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::domain("cocycles live on different pseudolattices"))
        }
    }

    /// `A ⊗ B`, componentwise `(s_A + s_B, c_A·c_B, g_A + g_B)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        Cocycle::new(self.lattice, self.s + other.s, self.c * other.c, self.g.add(&other.g))
    }

    /// `(−s, 1/c, −g)`.
    pub fn inverse(&self) -> Self {
        Cocycle::new(self.lattice, -self.s, self.c.inv(), self.g.neg())
            .expect("inverse of a nonzero finite value")
    }

    /// Exact `σ̂`-part of the exponent as an affine function of `v`:
    /// `(s b²θ/2) + (s b/ω₁)·v`.
    pub(crate) fn sigma_exponent_exact(&self, l: LatticeVector) -> AffineExponent {
        let b = l.b as i128;
        let theta = self.lattice.theta().exact;
        let w1_inv = self.lattice.omega1().inverse().expect("omega1 nonzero");
        AffineExponent {
            constant: theta.scale(Rational::new(self.s as i128 * b * b, 2)),
            slope: w1_inv.scale_int(self.s as i128 * b),
        }
    }
}

/// `constant + slope·v` with exact coefficients in `ℚ(√D)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct AffineExponent {
    pub constant: QuadReal,
    pub slope: QuadReal,
}

impl AffineExponent {
    /// Substitutes `v ↦ v + x`.
    pub fn shifted(&self, x: QuadReal) -> Self {
        AffineExponent {
            constant: self.constant + self.slope * x,
            slope: self.slope,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        AffineExponent {
            constant: self.constant + other.constant,
            slope: self.slope + other.slope,
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        AffineExponent {
            constant: self.constant - other.constant,
            slope: self.slope - other.slope,
        }
    }
}

/// Coboundary of `h(v) = e^{2πi(g(v) + βv)}`; the linear part `βv` is the
/// character `l ↦ e^{2πiβl}` and is folded into the exponent polynomial.
pub fn coboundary(g: &ExponentPoly, beta: Complex64, lattice: Pseudolattice) -> Cocycle {
    let h = g.add(&ExponentPoly::linear(beta));
    Cocycle::new(lattice, 0, Complex64::new(1.0, 0.0), h).expect("valid")
}

/// Exact integer `a(l₁+l₂, v) − a(l₁, v+l₂) − a(l₂, v)`.
///
/// The character and coboundary parts cancel identically; the `σ̂`-part is
/// evaluated in `ℚ(√D)` and must come out as the integer `−s·b₁·a₂`.
pub fn cocycle_defect(a: &Cocycle, l1: LatticeVector, l2: LatticeVector) -> Result<i64> {
    let l2_val = a.lattice.real_value(l2);
    let total = a
        .sigma_exponent_exact(l1 + l2)
        .minus(&a.sigma_exponent_exact(l1).shifted(l2_val))
        .minus(&a.sigma_exponent_exact(l2));
    if !total.slope.is_zero() {
        return Err(Error::consistency("cocycle defect depends on v"));
    }
    total
        .constant
        .as_integer()
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| Error::consistency(format!("cocycle defect {} is not an integer", total.constant)))
}

/// Per-sample residuals of the cocycle identity, normalized by
/// `max(1, |A_{l₁+l₂}(v)|)`.
pub fn cocycle_identity_residuals(a: &Cocycle, samples: usize, seed: u64) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::precondition("need at least one sample"));
    }
    let mut sampler = Sampler::new(seed);
    (0..samples)
        .map(|_| {
            let l1 = sampler.lattice_vector();
            let l2 = sampler.lattice_vector();
            let v = sampler.point();
            let shift = a.lattice.real_value_f64(l2);
            let lhs = a.log_value(l1 + l2, v);
            let rhs = a.log_value(l1, v + shift) + a.log_value(l2, v);
            log_relative_residual(lhs, rhs)
        })
        .collect()
}

/// Largest residual of the cocycle identity over seeded samples with
/// `|a|, |b| ≤ 10` and `v ∈ [−5, 5]²`.
pub fn verify_cocycle_identity(a: &Cocycle, samples: usize, seed: u64) -> Result<f64> {
    Ok(cocycle_identity_residuals(a, samples, seed)?
        .into_iter()
        .fold(0.0, f64::max))
}

#[derive(Serialize, Deserialize)]
struct CocycleRepr {
    s: i64,
    #[serde(with = "complex_json")]
    c: Complex64,
    #[serde(default)]
    g: ExponentPoly,
    lattice: Pseudolattice,
}

impl Serialize for Cocycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CocycleRepr {
            s: self.s,
            c: self.c,
            g: self.g.clone(),
            lattice: self.lattice,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cocycle {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = CocycleRepr::deserialize(de)?;
        Cocycle::new(r.lattice, r.s, r.c, r.g).map_err(serde::de::Error::custom)
    }
}
