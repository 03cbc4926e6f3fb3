//! `K(ℒ)`, `Λ(ℒ)`, the Heisenberg group and the commutator pairing `e^ℒ`.
//!
//! For `Ch(ℒ) = s ≠ 0` the translates `x̃ ∈ ℝ` with `t_x̃^*ℒ ≅ ℒ` form
//! `Λ(ℒ) = (1/|s|)L`, and `K(ℒ) = Λ(ℒ)/L ≅ (ℤ/s)²`. For `s = 0` every
//! translate works and `K(ℒ) = Z_L`.
//!
//! Elements of the Heisenberg group are pairs `(x̃, h)` with
//! `A_l(v+x̃)/A_l(v) = h(v+l)/h(v)`; on normal-form cocycles
//! `h(v) = λ·e^{2πiσβv/ω₁}` for `x̃ = (αω₁+βω₂)/|s|` and `σ = sign(s)`.

use std::f64::consts::TAU;
use std::ops::{Add, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chern::chern_symbolic;
use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::numeric::{complex_json, log_relative_residual, unit_from_turns, QuadReal, Rational, Tolerance};
use crate::pseudolattice::{LatticeVector, Pseudolattice};
use crate::sampling::Sampler;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The two fixed base points at which `H_v` is evaluated.
pub const PAIRING_BASE_POINTS: [Complex64; 2] = [Complex64 { re: 0.3, im: 0.2 }, Complex64 { re: 1.7, im: -0.9 }];

/// Number of sampled pairs in the `s = 0` branch of [`dichotomy_check`].
pub const FLAT_PAIR_SAMPLES: usize = 100;

/// `x̃ = (αω₁ + βω₂)/s` with `s > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaPoint {
    pub alpha: i64,
    pub beta: i64,
    pub s: i64,
}

impl LambdaPoint {
    pub fn new(alpha: i64, beta: i64, s: i64) -> Result<Self> {
        if s <= 0 {
            return Err(Error::domain(format!("denominator s = {s} must be positive")));
        }
        Ok(LambdaPoint { alpha, beta, s })
    }

    pub fn zero(s: i64) -> Result<Self> {
        Self::new(0, 0, s)
    }

    /// `x̃` as an exact element of `ℚ(√D)`.
    pub fn value(&self, lattice: &Pseudolattice) -> QuadReal {
        lattice
            .real_value(LatticeVector::new(self.alpha, self.beta))
            .scale(Rational::new(1, self.s as i128))
    }

    pub fn value_f64(&self, lattice: &Pseudolattice) -> f64 {
        self.value(lattice).to_f64()
    }

    /// `x̃/ω₁ = (α + βθ)/s`, exactly.
    fn turns_over_omega1(&self, lattice: &Pseudolattice) -> QuadReal {
        let theta = lattice.theta().exact;
        (theta.scale_int(self.beta as i128) + QuadReal::one(lattice.d()).unwrap().scale_int(self.alpha as i128))
            .scale(Rational::new(1, self.s as i128))
    }

    /// `x̃ + l`.
    pub fn translate(&self, l: LatticeVector) -> Self {
        LambdaPoint {
            alpha: self.alpha + self.s * l.a,
            beta: self.beta + self.s * l.b,
            s: self.s,
        }
    }

    /// Splits `x̃ = r + l` with `r` having coordinates in `[0, s)` and `l ∈ L`.
    pub fn reduced(&self) -> (LambdaPoint, LatticeVector) {
        let (qa, ra) = (self.alpha.div_euclid(self.s), self.alpha.rem_euclid(self.s));
        let (qb, rb) = (self.beta.div_euclid(self.s), self.beta.rem_euclid(self.s));
        (LambdaPoint { alpha: ra, beta: rb, s: self.s }, LatticeVector::new(qa, qb))
    }

    /// Whether `x̃ ∈ L`, i.e. `x = 0` in `K(ℒ)`.
    pub fn is_in_lattice(&self) -> bool {
        self.alpha % self.s == 0 && self.beta % self.s == 0
    }

    fn check_same_s(&self, other: &Self) -> Result<()> {
        if self.s != other.s {
            return Err(Error::domain(format!(
                "points with denominators {} and {} do not live in the same Λ",
                self.s, other.s
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_s(other)?;
        Ok(LambdaPoint {
            alpha: self.alpha + other.alpha,
            beta: self.beta + other.beta,
            s: self.s,
        })
    }
}

impl Add for LambdaPoint {
    type Output = LambdaPoint;
    /// Panics on mismatched denominators; see [`LambdaPoint::checked_add`].
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("same denominator")
    }
}

impl Neg for LambdaPoint {
    type Output = LambdaPoint;
    fn neg(self) -> Self {
        LambdaPoint {
            alpha: -self.alpha,
            beta: -self.beta,
            s: self.s,
        }
    }
}

/// `(x̃, h)` with `h(v) = scalar·e^{2πiσβv/ω₁}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub point: LambdaPoint,
    #[serde(with = "complex_json")]
    pub scalar: Complex64,
}

impl HeisenbergElement {
    pub fn identity(s: i64) -> Result<Self> {
        Ok(HeisenbergElement {
            point: LambdaPoint::zero(s)?,
            scalar: Complex64::new(1.0, 0.0),
        })
    }

    /// The central element `(0, λ)`.
    pub fn central(s: i64, scalar: Complex64) -> Result<Self> {
        Ok(HeisenbergElement {
            point: LambdaPoint::zero(s)?,
            scalar,
        })
    }
}

/// `K(ℒ)` up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum KGroupDescription {
    /// `(ℤ/sℤ)²`.
    Finite { s: u64 },
    /// All of `Z_L`.
    FullTorus,
}

impl KGroupDescription {
    /// `s²` for the finite case.
    pub fn order(&self) -> Option<u64> {
        match self {
            KGroupDescription::Finite { s } => Some(s * s),
            KGroupDescription::FullTorus => None,
        }
    }
}

pub fn k_group(a: &Cocycle) -> KGroupDescription {
    match chern_symbolic(a).s() {
        0 => KGroupDescription::FullTorus,
        s => KGroupDescription::Finite { s: s.unsigned_abs() },
    }
}

/// `(σ, |s|)` for a cocycle with `s ≠ 0`, after checking `x` lives in `Λ(ℒ)`.
fn chern_data(a: &Cocycle, points: &[LambdaPoint]) -> Result<(i64, i64)> {
    let s = chern_symbolic(a).s();
    if s == 0 {
        return Err(Error::domain("Λ(ℒ) is all of ℝ when Ch(ℒ) = 0; use dichotomy_check"));
    }
    for x in points {
        if x.s != s.abs() {
            return Err(Error::domain(format!(
                "point {:?} has denominator {} but Λ(ℒ) = (1/{})L",
                x,
                x.s,
                s.abs()
            )));
        }
    }
    Ok((s.signum(), s.abs()))
}

/// The multiplier for `x̃`: `h(v) = e^{2πiσβv/ω₁}`, `h(0) = 1`.
pub fn membership_multiplier(a: &Cocycle, x: LambdaPoint) -> Result<HeisenbergElement> {
    chern_data(a, &[x])?;
    Ok(HeisenbergElement {
        point: x,
        scalar: Complex64::new(1.0, 0.0),
    })
}

/// `log h(v)` for the element `g`.
fn log_multiplier(a: &Cocycle, g: &HeisenbergElement, v: Complex64) -> Complex64 {
    let sigma = chern_symbolic(a).s().signum() as f64;
    g.scalar.ln() + I * TAU * sigma * g.point.beta as f64 * v / a.lattice().omega1_f64()
}

/// Evaluates `h(v)`.
pub fn multiplier_value(a: &Cocycle, g: &HeisenbergElement, v: Complex64) -> Complex64 {
    log_multiplier(a, g, v).exp()
}

/// Largest residual of `A_l(v+x̃)/A_l(v) = h(v+l)/h(v)` over seeded samples,
/// on the normal form of `A`.
pub fn multiplier_residual(a: &Cocycle, g: &HeisenbergElement, samples: usize, seed: u64) -> Result<f64> {
    chern_data(a, &[g.point])?;
    if samples == 0 {
        return Err(Error::precondition("need at least one sample"));
    }
    let nf = a.without_coboundary();
    let lat = nf.lattice();
    let x = g.point.value_f64(lat);
    let mut sampler = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let l = sampler.lattice_vector();
        let v = sampler.point();
        let lhs = nf.log_value(l, v + x) - nf.log_value(l, v);
        let rhs = log_multiplier(&nf, g, v + lat.real_value_f64(l)) - log_multiplier(&nf, g, v);
        worst = worst.max(log_relative_residual(lhs, rhs)?);
    }
    Ok(worst)
}

/// `(x̃₁, h₁)·(x̃₂, h₂) = (x̃₁ + x̃₂, h₂(v + x̃₁)·h₁(v))`.
///
/// The scalar picks up `h₂(x̃₁)/λ₂ = e^{2πiσβ₂(α₁+β₁θ)/s}`, computed from
/// the exact fractional part.
pub fn heisenberg_multiply(g1: &HeisenbergElement, g2: &HeisenbergElement, a: &Cocycle) -> Result<HeisenbergElement> {
    g1.point.check_same_s(&g2.point)?;
    let (sigma, _) = chern_data(a, &[g1.point, g2.point])?;
    let lat = a.lattice();
    let turns = g1.point.turns_over_omega1(lat).scale_int((sigma * g2.point.beta) as i128);
    Ok(HeisenbergElement {
        point: g1.point + g2.point,
        scalar: g1.scalar * g2.scalar * unit_from_turns(&turns),
    })
}

/// Inverse: `(−x̃, λ⁻¹e^{2πiσβ(α+βθ)/s}·e^{−2πiσβv/ω₁})`.
pub fn heisenberg_inverse(g: &HeisenbergElement, a: &Cocycle) -> Result<HeisenbergElement> {
    let (sigma, _) = chern_data(a, &[g.point])?;
    let turns = g.point.turns_over_omega1(a.lattice()).scale_int((sigma * g.point.beta) as i128);
    Ok(HeisenbergElement {
        point: -g.point,
        scalar: g.scalar.inv() * unit_from_turns(&turns),
    })
}

/// `g₁g₂g₁⁻¹g₂⁻¹`, which is central.
pub fn group_commutator(g1: &HeisenbergElement, g2: &HeisenbergElement, a: &Cocycle) -> Result<HeisenbergElement> {
    let g12 = heisenberg_multiply(g1, g2, a)?;
    let i1 = heisenberg_inverse(g1, a)?;
    let i2 = heisenberg_inverse(g2, a)?;
    heisenberg_multiply(&heisenberg_multiply(&g12, &i1, a)?, &i2, a)
}

/// `e^{2πi(ad−bc)/s}` with `s` signed.
pub fn pairing_closed_form(s: i64, x1: LambdaPoint, x2: LambdaPoint) -> Complex64 {
    let det = x1.alpha * x2.beta - x1.beta * x2.alpha;
    Complex64::from_polar(1.0, TAU * (det.rem_euclid(s.abs()) as f64) * s.signum() as f64 / s.abs() as f64)
}

/// Result of [`commutator_pairing`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    #[serde(with = "complex_json")]
    pub value: Complex64,
    #[serde(with = "complex_json")]
    pub closed_form: Complex64,
    pub agree: bool,
}

/// `H_v(x̃₁, x̃₂) = h_{x̃₂}(v + x̃₁)/h_{x̃₂}(v)`.
fn h_v(a: &Cocycle, x1: LambdaPoint, x2: LambdaPoint, v: Complex64) -> Result<Complex64> {
    let g2 = membership_multiplier(a, x2)?;
    let shift = x1.value_f64(a.lattice());
    Ok(multiplier_value(a, &g2, v + shift) / multiplier_value(a, &g2, v))
}

/// `e^ℒ(x₁, x₂) = H_v(x̃₁, x̃₂)/H_v(x̃₂, x̃₁)`, evaluated at both
/// [`PAIRING_BASE_POINTS`] and compared with [`pairing_closed_form`].
pub fn commutator_pairing(a: &Cocycle, x1: LambdaPoint, x2: LambdaPoint) -> Result<PairingReport> {
    commutator_pairing_with(a, x1, x2, Tolerance::default())
}

pub fn commutator_pairing_with(a: &Cocycle, x1: LambdaPoint, x2: LambdaPoint, tol: Tolerance) -> Result<PairingReport> {
    let nf = a.without_coboundary();
    let (sigma, abs_s) = chern_data(&nf, &[x1, x2])?;
    let values = PAIRING_BASE_POINTS
        .iter()
        .map(|&v| Ok(h_v(&nf, x1, x2, v)? / h_v(&nf, x2, x1, v)?))
        .collect::<Result<Vec<_>>>()?;
    if (values[0] - values[1]).norm() > tol.abs_eps {
        return Err(Error::consistency(format!(
            "pairing depends on the base point: {} vs {}",
            values[0], values[1]
        )));
    }
    let closed_form = pairing_closed_form(sigma * abs_s, x1, x2);
    Ok(PairingReport {
        value: values[0],
        closed_form,
        agree: (values[0] - closed_form).norm() <= tol.abs_eps,
    })
}

/// Which half of the dichotomy applies, with its evidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch")]
pub enum DichotomyBranch {
    /// `Ch ≠ 0`: the pair `(ω₁/|s|, ω₂/|s|)` and its pairing.
    Nondegenerate {
        x1: LambdaPoint,
        x2: LambdaPoint,
        #[serde(with = "complex_json")]
        value: Complex64,
        nondegenerate: bool,
    },
    /// `Ch = 0`: sampled pairs `x̃₁, x̃₂ ∈ ℝ` and the worst `|e^ℒ − 1|`.
    Flat { pairs: usize, max_deviation: f64, identically_one: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub chern: i64,
    pub k_group: KGroupDescription,
    #[serde(flatten)]
    pub branch: DichotomyBranch,
}

/// `H_v(x̃₁, x̃₂)` for a flat class, via
/// `h_x(w) = e^{2πi[g(w+x) − g(w) − g(x) + g(0)]}`.
fn flat_h_v(a: &Cocycle, x1: f64, x2: f64, v: Complex64) -> Complex64 {
    let g = a.g();
    let zero = Complex64::new(0.0, 0.0);
    let log_h = |x: f64, w: Complex64| I * TAU * (g.eval(w + x) - g.eval(w) - g.eval(zero + x) + g.eval(zero));
    (log_h(x2, v + x1) - log_h(x2, v)).exp()
}

/// Checks the dichotomy for `A`: either `Ch ≠ 0`, `K` is finite and `e^ℒ` is
/// nondegenerate, or `Ch = 0`, `K = Z_L` and `e^ℒ ≡ 1`.
pub fn dichotomy_check(a: &Cocycle, seed: u64) -> Result<DichotomyReport> {
    dichotomy_check_with(a, seed, Tolerance::default())
}

pub fn dichotomy_check_with(a: &Cocycle, seed: u64, tol: Tolerance) -> Result<DichotomyReport> {
    let s = chern_symbolic(a).s();
    let branch = if s != 0 {
        let x1 = LambdaPoint::new(1, 0, s.abs())?;
        let x2 = LambdaPoint::new(0, 1, s.abs())?;
        let report = commutator_pairing_with(a, x1, x2, tol)?;
        DichotomyBranch::Nondegenerate {
            x1,
            x2,
            value: report.value,
            nondegenerate: (report.value - 1.0).norm() > tol.abs_eps,
        }
    } else {
        let mut sampler = Sampler::new(seed);
        let v = PAIRING_BASE_POINTS[0];
        let mut worst: f64 = 0.0;
        for _ in 0..FLAT_PAIR_SAMPLES {
            let x1 = sampler.real(-5.0, 5.0);
            let x2 = sampler.real(-5.0, 5.0);
            let e = flat_h_v(a, x1, x2, v) / flat_h_v(a, x2, x1, v);
            worst = worst.max((e - 1.0).norm());
        }
        DichotomyBranch::Flat {
            pairs: FLAT_PAIR_SAMPLES,
            max_deviation: worst,
            identically_one: worst <= tol.abs_eps,
        }
    };
    Ok(DichotomyReport {
        chern: s,
        k_group: k_group(a),
        branch,
    })
}
