//! Exact arithmetic in a real quadratic field and the floating-point
//! conventions used for analytic values.
//!
//! Lattice data (periods, lattice points, the slope `ω₂/ω₁`) lives in
//! [`QuadReal`], an exact element `a + b√D` of `ℚ(√D)`. Values of cocycles and
//! theta functions are [`ComplexApprox`] (`f64` pairs) compared under a
//! [`Tolerance`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced rational number with positive denominator.
pub type Rational = Ratio<i128>;

/// A complex value carried in double precision.
pub type ComplexApprox = Complex64;

/// Environment variable overriding both components of the default tolerance.
pub const TOLERANCE_ENV: &str = "QTLINE_TOLERANCE";

/// Returns `true` when `d` has no repeated prime factor.
pub fn is_square_free(d: i64) -> bool {
    if d <= 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Converts a rational to `f64` (correctly rounded when numerator and
/// denominator are below 2^53, within 1.5 ulp otherwise).
pub fn rational_to_f64(r: &Rational) -> f64 {
    // `as` casts from i128 round to nearest
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact element `a + b√D` of the real quadratic field `ℚ(√D)`.
///
/// Equality is componentwise, which coincides with numerical equality because
/// `√D` is irrational. Arithmetic operators panic when the two operands live in
/// different fields; the `checked_*` methods return a domain error instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadReal {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::domain(format!(
                "D = {d} must be a square-free integer greater than 1"
            )));
        }
        Ok(QuadReal { a, b, d })
    }

    /// Builds `a + b√D` from integer parts.
    pub fn from_ints(a: i128, b: i128, d: i64) -> Result<Self> {
        Self::new(Rational::from_integer(a), Rational::from_integer(b), d)
    }

    pub fn zero(d: i64) -> Result<Self> {
        Self::from_ints(0, 0, d)
    }

    pub fn one(d: i64) -> Result<Self> {
        Self::from_ints(1, 0, d)
    }

    /// `√D` itself.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        Self::from_ints(0, 1, d)
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "mismatched quadratic fields: D = {} vs D = {}",
                self.d, other.d
            )))
        }
    }

    fn with(&self, a: Rational, b: Rational) -> Self {
        QuadReal { a, b, d: self.d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational integer `n` if the value equals `n`.
    pub fn as_integer(&self) -> Option<i128> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.a + other.a, self.b + other.b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.a - other.a, self.b - other.b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let dd = Rational::from_integer(self.d as i128);
        Ok(self.with(
            self.a * other.a + dd * self.b * other.b,
            self.a * other.b + self.b * other.a,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    /// Galois conjugate `a − b√D`.
    pub fn conjugate(&self) -> Self {
        self.with(self.a, -self.b)
    }

    /// Field norm `a² − D b²`.
    pub fn norm(&self) -> Rational {
        self.a * self.a - Rational::from_integer(self.d as i128) * self.b * self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero in Q(sqrt D)"));
        }
        let n = self.norm();
        Ok(self.with(self.a / n, -self.b / n))
    }

    pub fn scale(&self, r: Rational) -> Self {
        self.with(self.a * r, self.b * r)
    }

    pub fn scale_int(&self, n: i128) -> Self {
        self.scale(Rational::from_integer(n))
    }

    /// Exact sign (−1, 0, 1), decided by comparing `a²` with `D b²`.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: the larger of |a| and |b|√D wins
        match rat_sign(&self.norm()) {
            1 => sa,
            -1 => sb,
            _ => unreachable!("norm vanishes only at zero for square-free D"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -*self
        } else {
            *self
        }
    }

    /// Exact floor, obtained from a float estimate corrected by exact sign tests.
    pub fn floor(&self) -> i128 {
        let estimate = self.to_f64().floor();
        let mut f = if estimate.is_finite() { estimate as i128 } else { 0 };
        loop {
            let lower = *self - QuadReal::from_int_unchecked(f, self.d);
            if lower.signum() < 0 {
                f -= 1;
                continue;
            }
            let upper = *self - QuadReal::from_int_unchecked(f + 1, self.d);
            if upper.signum() >= 0 {
                f += 1;
                continue;
            }
            return f;
        }
    }

    /// Fractional part `x − ⌊x⌋ ∈ [0, 1)`, exact.
    pub fn fract(&self) -> Self {
        *self - QuadReal::from_int_unchecked(self.floor(), self.d)
    }

    fn from_int_unchecked(n: i128, d: i64) -> Self {
        QuadReal {
            a: Rational::from_integer(n),
            b: Rational::zero(),
            d,
        }
    }

    /// Nearest `f64` to `a + b√D`, within a few ulp.
    ///
    /// When `a` and `b√D` have opposite signs the value is computed as
    /// `(a² − D b²)/(a − b√D)` so no cancellation occurs.
    pub fn to_f64(&self) -> f64 {
        let fa = rational_to_f64(&self.a);
        if self.b.is_zero() {
            return fa;
        }
        let fb = rational_to_f64(&self.b) * (self.d as f64).sqrt();
        if self.a.is_zero() {
            return fb;
        }
        if rat_sign(&self.a) == rat_sign(&self.b) {
            fa + fb
        } else {
            rational_to_f64(&self.norm()) / (fa - fb)
        }
    }

    /// Parses expressions such as `1`, `sqrtD`, `3-2sqrtD`, `1/2+1/2*sqrtD`
    /// or `(1+sqrtD)/2`. The irrational unit may be written `sqrtD`, `√D`,
    /// `sqrt(D)` or `sqrt<n>` with `n` equal to `d`.
    pub fn parse(expr: &str, d: i64) -> Result<Self> {
        let mut s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        for alias in [format!("sqrt({d})"), format!("sqrt{d}"), "sqrt(D)".into(), "sqrtD".into(), "√D".into(), format!("√{d}")] {
            s = s.replace(&alias, "$");
        }
        if s.is_empty() {
            return Err(Error::parse(format!("empty quadratic expression {expr:?}")));
        }
        parse_expr(&s, d).map_err(|e| match e {
            Error::Parse(m) => Error::parse(format!("{m} in {expr:?}")),
            other => other,
        })
    }
}

fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, q)) => {
            let n: i128 = n.parse().map_err(|_| bad())?;
            let q: i128 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_expr(s: &str, d: i64) -> Result<QuadReal> {
    if let Some(rest) = s.strip_prefix('(') {
        let mut depth = 1;
        let close = rest
            .char_indices()
            .find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                depth == 0
            })
            .map(|(i, _)| i)
            .ok_or_else(|| Error::parse("unbalanced parenthesis"))?;
        let inner = parse_expr(&rest[..close], d)?;
        let tail = &rest[close + 1..];
        if tail.is_empty() {
            return Ok(inner);
        }
        if let Some(den) = tail.strip_prefix('/') {
            let den = parse_rational(den)?;
            if den.is_zero() {
                return Err(Error::parse("division by zero"));
            }
            return Ok(inner.scale(den.recip()));
        }
        return Err(Error::parse(format!("unexpected trailing {tail:?}")));
    }
    let mut value = QuadReal::zero(d)?;
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/') {
            value = value + parse_term(&s[start..i], d)?;
            start = i;
        }
    }
    Ok(value)
}

fn parse_term(t: &str, d: i64) -> Result<QuadReal> {
    let (sign, body) = match t.as_bytes().first() {
        Some(b'+') => (1, &t[1..]),
        Some(b'-') => (-1, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return Err(Error::parse("empty term"));
    }
    let sign = Rational::from_integer(sign);
    if let Some(coeff) = body.strip_suffix('$') {
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let b = if coeff.is_empty() { Rational::one() } else { parse_rational(coeff)? };
        QuadReal::new(Rational::zero(), sign * b, d)
    } else if body.contains('$') {
        Err(Error::parse(format!("bad term {t:?}")))
    } else {
        QuadReal::new(sign * parse_rational(body)?, Rational::zero(), d)
    }
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("QuadReal addition across fields")
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("QuadReal subtraction across fields")
    }
}

impl Mul for QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("QuadReal multiplication across fields")
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> Self {
        self.with(-self.a, -self.b)
    }
}

impl PartialOrd for QuadReal {
    /// Exact comparison; `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(diff.signum().cmp(&0))
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√{}", self.b, self.d),
            (false, false) if self.b.is_negative() => {
                write!(f, "{} - {}√{}", self.a, -self.b, self.d)
            }
            _ => write!(f, "{} + {}√{}", self.a, self.b, self.d),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRealRepr {
    a: [i64; 2],
    b: [i64; 2],
    #[serde(rename = "D")]
    d: i64,
}

fn rational_repr(r: &Rational) -> std::result::Result<[i64; 2], String> {
    let n = i64::try_from(*r.numer()).map_err(|_| "numerator exceeds i64".to_string())?;
    let d = i64::try_from(*r.denom()).map_err(|_| "denominator exceeds i64".to_string())?;
    Ok([n, d])
}

fn rational_from_repr(p: [i64; 2]) -> std::result::Result<Rational, String> {
    if p[1] <= 0 {
        return Err(format!("denominator must be positive, got {}", p[1]));
    }
    Ok(Rational::new(p[0] as i128, p[1] as i128))
}

impl Serialize for QuadReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = QuadRealRepr {
            a: rational_repr(&self.a).map_err(serde::ser::Error::custom)?,
            b: rational_repr(&self.b).map_err(serde::ser::Error::custom)?,
            d: self.d,
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadReal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = QuadRealRepr::deserialize(de)?;
        let a = rational_from_repr(repr.a).map_err(serde::de::Error::custom)?;
        let b = rational_from_repr(repr.b).map_err(serde::de::Error::custom)?;
        QuadReal::new(a, b, repr.d).map_err(serde::de::Error::custom)
    }
}

/// Returns `e^{2πi·t}` for an exact real `t`, reducing `t` modulo 1 exactly
/// before going to floating point.
pub fn unit_from_turns(t: &QuadReal) -> Complex64 {
    let f = t.fract().to_f64();
    Complex64::from_polar(1.0, std::f64::consts::TAU * f)
}

/// Comparison thresholds for analytic values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(abs_eps) || !ok(rel_eps) {
            return Err(Error::domain(format!(
                "tolerances must be positive and finite (abs {abs_eps}, rel {rel_eps})"
            )));
        }
        Ok(Tolerance { abs_eps, rel_eps })
    }

    /// Default tolerance, overridden by `QTLINE_TOLERANCE` (one float used for
    /// both components) when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TOLERANCE_ENV) {
            Ok(raw) => {
                let eps: f64 = raw.trim().parse().map_err(|_| {
                    Error::parse(format!("{TOLERANCE_ENV}={raw:?} is not a float"))
                })?;
                Tolerance::new(eps, eps)
            }
            Err(_) => Ok(Tolerance::default()),
        }
    }
}

/// `|x − y| ≤ abs_eps + rel_eps·max(|x|, |y|)`.
pub fn approx_eq(x: ComplexApprox, y: ComplexApprox, tol: Tolerance) -> bool {
    (x - y).norm() <= tol.abs_eps + tol.rel_eps * x.norm().max(y.norm())
}

/// Relative residual `|e^{z1} − e^{z2}| / max(1, |e^{z1}|)` computed from the
/// logarithms, so huge or tiny magnitudes neither overflow nor underflow.
pub fn log_relative_residual(z1: Complex64, z2: Complex64) -> Result<f64> {
    let m = z1.re.min(0.0);
    let d = z2 - z1;
    let shifted = d + m;
    if shifted.re > 700.0 {
        return Err(Error::Range {
            re: z2.re,
            im: z2.im,
        });
    }
    Ok((Complex64::new(m, 0.0).exp() - shifted.exp()).norm())
}

pub(crate) fn ensure_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::domain(format!("{what} is not finite: {z}")))
    }
}

/// Serde helpers encoding a complex number as `[re, im]`.
pub mod complex_json {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq([z.re, z.im])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(de)?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(serde::de::Error::custom("complex components must be finite"));
        }
        Ok(Complex64::new(re, im))
    }

    pub mod vec {
        use num_complex::Complex64;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(zs.len()))?;
            for z in zs {
                seq.serialize_element(&[z.re, z.im])?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Complex64>, D::Error> {
            let raw = Vec::<[f64; 2]>::deserialize(de)?;
            raw.into_iter()
                .map(|[re, im]| {
                    if re.is_finite() && im.is_finite() {
                        Ok(Complex64::new(re, im))
                    } else {
                        Err(serde::de::Error::custom("complex components must be finite"))
                    }
                })
                .collect()
        }
    }
}
