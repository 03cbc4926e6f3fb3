//! Pseudolattices `L = ℤω₁ + ℤω₂ ⊂ ℝ` with `ω₂/ω₁` irrational, and the
//! continued-fraction machinery that produces lattice vectors of vanishing
//! length with unbounded coefficients.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{QuadReal, Rational};

/// Lattice point `l = aω₁ + bω₂`, stored by its coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { a: 0, b: 0 };
    pub const OMEGA1: LatticeVector = LatticeVector { a: 1, b: 0 };
    pub const OMEGA2: LatticeVector = LatticeVector { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        LatticeVector { a, b }
    }

    pub fn scale(self, n: i64) -> Self {
        LatticeVector::new(self.a * n, self.b * n)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> Self {
        LatticeVector::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> Self {
        LatticeVector::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector::new(-self.a, -self.b)
    }
}

/// Continued-fraction convergent `p/q` of `θ = ω₂/ω₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub p: i64,
    pub q: i64,
    pub index: usize,
}

impl Convergent {
    /// The lattice vector `pω₁ − qω₂`, which is short when `p/q ≈ θ`.
    pub fn small_vector(&self) -> LatticeVector {
        LatticeVector::new(self.p, -self.q)
    }
}

/// The slope `θ = ω₂/ω₁`, exact and approximate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slope {
    pub exact: QuadReal,
    pub approx: f64,
}

/// `L = ℤω₁ + ℤω₂` with both periods in a common field `ℚ(√D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pseudolattice {
    omega1: QuadReal,
    omega2: QuadReal,
    slope: QuadReal,
}

impl Pseudolattice {
    /// Fails unless `ω₁ ≠ 0`, both periods share `D`, and `ω₂/ω₁ ∉ ℚ`.
    pub fn new(omega1: QuadReal, omega2: QuadReal) -> Result<Self> {
        if omega1.d() != omega2.d() {
            return Err(Error::domain(format!(
                "periods live in different fields (D = {} and D = {})",
                omega1.d(),
                omega2.d()
            )));
        }
        if omega1.is_zero() {
            return Err(Error::domain("omega1 must be nonzero"));
        }
        // ω₂/ω₁ ∈ ℚ iff (a₂, b₂) is a rational multiple of (a₁, b₁)
        if omega1.a() * omega2.b() - omega1.b() * omega2.a() == Rational::from_integer(0) {
            return Err(Error::domain(format!(
                "omega2/omega1 = ({omega2})/({omega1}) is rational; L would not be dense"
            )));
        }
        let slope = omega2.checked_div(&omega1)?;
        Ok(Pseudolattice {
            omega1,
            omega2,
            slope,
        })
    }

    /// `ℤ + ℤ√2`.
    pub fn sqrt2() -> Self {
        Self::new(QuadReal::one(2).unwrap(), QuadReal::sqrt_d(2).unwrap()).unwrap()
    }

    /// `ℤ + ℤ(1+√5)/2`.
    pub fn golden() -> Self {
        let half = Rational::new(1, 2);
        Self::new(QuadReal::one(5).unwrap(), QuadReal::new(half, half, 5).unwrap()).unwrap()
    }

    pub fn omega1(&self) -> QuadReal {
        self.omega1
    }

    pub fn omega2(&self) -> QuadReal {
        self.omega2
    }

    pub fn d(&self) -> i64 {
        self.omega1.d()
    }

    pub fn omega1_f64(&self) -> f64 {
        self.omega1.to_f64()
    }

    pub fn omega2_f64(&self) -> f64 {
        self.omega2.to_f64()
    }

    pub fn theta(&self) -> Slope {
        Slope {
            exact: self.slope,
            approx: self.slope.to_f64(),
        }
    }

    /// Exact value `aω₁ + bω₂`.
    pub fn real_value(&self, l: LatticeVector) -> QuadReal {
        self.omega1.scale_int(l.a as i128) + self.omega2.scale_int(l.b as i128)
    }

    pub fn real_value_f64(&self, l: LatticeVector) -> f64 {
        self.real_value(l).to_f64()
    }

    /// Rational coordinates `(r, t)` with `x = rω₁ + tω₂`.
    pub fn coordinates(&self, x: &QuadReal) -> Result<(Rational, Rational)> {
        if x.d() != self.d() {
            return Err(Error::domain("point and lattice live in different fields"));
        }
        let (a1, b1) = (self.omega1.a(), self.omega1.b());
        let (a2, b2) = (self.omega2.a(), self.omega2.b());
        let det = a1 * b2 - a2 * b1;
        let (p, q) = (x.a(), x.b());
        Ok(((p * b2 - a2 * q) / det, (a1 * q - p * b1) / det))
    }

    /// The lattice vector whose value is `x`, if `x ∈ L`.
    pub fn lattice_vector_of(&self, x: &QuadReal) -> Result<Option<LatticeVector>> {
        let (r, t) = self.coordinates(x)?;
        if !(r.is_integer() && t.is_integer()) {
            return Ok(None);
        }
        let a = i64::try_from(r.to_integer()).map_err(|_| Error::domain("coordinate overflow"))?;
        let b = i64::try_from(t.to_integer()).map_err(|_| Error::domain("coordinate overflow"))?;
        Ok(Some(LatticeVector::new(a, b)))
    }

    /// First `n` partial quotients of `θ`, by exact floors in `ℚ(√D)`.
    pub fn partial_quotients(&self, n: usize) -> Vec<i128> {
        let mut x = self.slope;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let a = x.floor();
            out.push(a);
            let rem = x - QuadReal::from_ints(a, 0, self.d()).expect("valid field");
            // θ is irrational, so the remainder never vanishes
            x = rem.inverse().expect("irrational remainder is nonzero");
        }
        out
    }

    /// First `n` convergents of `θ`.
    ///
    /// `q` never decreases and increases strictly from index 1 on; `q₀ = q₁`
    /// exactly when the first partial quotient after `a₀` equals 1.
    pub fn convergents(&self, n: usize) -> Result<Vec<Convergent>> {
        if n == 0 {
            return Err(Error::precondition("need at least one convergent"));
        }
        let overflow = || Error::domain("convergent exceeds 64-bit range");
        let (mut p_prev, mut p) = (0i128, 1i128);
        let (mut q_prev, mut q) = (1i128, 0i128);
        let mut out = Vec::with_capacity(n);
        for (index, a) in self.partial_quotients(n).into_iter().enumerate() {
            let p_next = a.checked_mul(p).and_then(|x| x.checked_add(p_prev)).ok_or_else(overflow)?;
            let q_next = a.checked_mul(q).and_then(|x| x.checked_add(q_prev)).ok_or_else(overflow)?;
            (p_prev, p) = (p, p_next);
            (q_prev, q) = (q, q_next);
            out.push(Convergent {
                p: i64::try_from(p).map_err(|_| overflow())?,
                q: i64::try_from(q).map_err(|_| overflow())?,
                index,
            });
        }
        Ok(out)
    }

    /// Vectors `pₖω₁ − qₖω₂` from the first `n` convergents.
    pub fn small_vector_sequence(&self, n: usize) -> Result<Vec<LatticeVector>> {
        Ok(self.convergents(n)?.iter().map(Convergent::small_vector).collect())
    }

    /// Exact test of `|pω₁ − qω₂| < |ω₁|/q`, i.e. `q·|pω₁ − qω₂| < |ω₁|`.
    pub fn satisfies_convergent_bound(&self, c: &Convergent) -> bool {
        let x = self.real_value(c.small_vector()).abs();
        (self.omega1.abs() - x.scale_int(c.q as i128)).signum() > 0
    }

    /// A lattice point within `eps` of `target`, built from a multiple of the
    /// first convergent vector shorter than `eps`.
    pub fn approximate(&self, target: f64, eps: f64) -> Result<LatticeVector> {
        if eps.is_nan() || eps <= 0.0 || !target.is_finite() {
            return Err(Error::precondition("need finite target and eps > 0"));
        }
        let mut n = 1;
        loop {
            let convs = self.convergents(n)?;
            let c = convs.last().expect("n >= 1");
            let step = self.real_value_f64(c.small_vector());
            if step.abs() < eps {
                let k = (target / step).round();
                if k.abs() > (i64::MAX / c.q.max(c.p.abs()).max(1)) as f64 {
                    return Err(Error::domain("approximation needs coefficients beyond 64 bits"));
                }
                let l = c.small_vector().scale(k as i64);
                let err = (self.real_value_f64(l) - target).abs();
                if err < eps {
                    return Ok(l);
                }
                return Err(Error::consistency(format!(
                    "rounded multiple misses target by {err}"
                )));
            }
            n += 1;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PseudolatticeRepr {
    omega1: QuadReal,
    omega2: QuadReal,
}

impl Serialize for Pseudolattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PseudolatticeRepr {
            omega1: self.omega1,
            omega2: self.omega2,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pseudolattice {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = PseudolatticeRepr::deserialize(de)?;
        Pseudolattice::new(repr.omega1, repr.omega2).map_err(serde::de::Error::custom)
    }
}
