//! `Pic⁰(Z_L)`, triviality testing and the Appell-Humbert normal form.
//!
//! A class with `Ch = 0` is represented by a character `φ ∈ Hom(L, ℂ^×)`,
//! well defined up to characters of the form `l ↦ k^l = e^{l·log k}`. Fixing
//! `φ(ω₁) = 1` by such a twist leaves the single number `φ̂(ω₂)`; the
//! remaining freedom multiplies it by `e^{2πimθ}`, `m ∈ ℤ`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chern::{chern_symbolic, sigma_section, AltForm};
use crate::cocycle::{Cocycle, ExponentPoly};
use crate::error::{Error, Result};
use crate::numeric::{complex_json, unit_from_turns, Tolerance};
use crate::pseudolattice::{LatticeVector, Pseudolattice};

/// Default bound on `|m|` in [`triviality_test`].
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A character `φ: L → ℂ^×`, given on the basis.
///
/// `log_phi_omega1` is a logarithm of `φ(ω₁)` carried along with it; it fixes
/// the twist `k^l` used by [`Character::normalized_omega2`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    #[serde(with = "complex_json")]
    pub phi_omega1: Complex64,
    #[serde(with = "complex_json")]
    pub phi_omega2: Complex64,
    #[serde(with = "complex_json")]
    pub log_phi_omega1: Complex64,
}

impl Character {
    /// Character with the principal logarithm of `φ(ω₁)`.
    pub fn new(phi_omega1: Complex64, phi_omega2: Complex64) -> Result<Self> {
        if phi_omega1 == Complex64::new(0.0, 0.0) || phi_omega2 == Complex64::new(0.0, 0.0) {
            return Err(Error::domain("character values must be nonzero"));
        }
        Ok(Character {
            phi_omega1,
            phi_omega2,
            log_phi_omega1: phi_omega1.ln(),
        })
    }

    /// `φ(aω₁ + bω₂) = φ(ω₁)^a φ(ω₂)^b`.
    pub fn eval(&self, l: LatticeVector) -> Complex64 {
        self.phi_omega1.powi(l.a as i32) * self.phi_omega2.powi(l.b as i32)
    }

    /// `φ̂(ω₂) = φ(ω₂)·k^{ω₂}` with `k^x = e^{−x·log φ(ω₁)/ω₁}`, so `φ̂(ω₁) = 1`.
    pub fn normalized_omega2(&self, lattice: &Pseudolattice) -> Complex64 {
        self.phi_omega2 * (-self.log_phi_omega1 * lattice.theta().approx).exp()
    }

    /// The same character as a normal-form cocycle: `(0, φ̂(ω₂), βv)` with
    /// `β = log φ(ω₁) / (2πi ω₁)`.
    pub fn to_cocycle(&self, lattice: Pseudolattice) -> Result<Cocycle> {
        let beta = self.log_phi_omega1 / (I * TAU * lattice.omega1_f64());
        Cocycle::new(lattice, 0, self.normalized_omega2(&lattice), ExponentPoly::linear(beta))
    }
}

fn require_flat(a: &Cocycle) -> Result<()> {
    let s = chern_symbolic(a).s();
    if s != 0 {
        return Err(Error::precondition(format!(
            "the class has Chern class s = {s}; Pic⁰ needs s = 0"
        )));
    }
    Ok(())
}

/// A constant cocycle cohomologous to `A` (which must have `s = 0`).
///
/// With `g = g₀ + g₁v + n(v)`, the part `n` is the coboundary of
/// `H = e^{2πi n}` (see [`reduction_coboundary`]) and `g₁v` contributes the
/// character `e^{2πig₁l}`, so `φ(ω₁) = e^{2πig₁ω₁}` and
/// `φ(ω₂) = c·e^{2πig₁ω₂}`. `log φ(ω₁)` is taken to be `2πig₁ω₁` itself.
pub fn reduce_to_constant(a: &Cocycle) -> Result<Character> {
    require_flat(a)?;
    let lat = a.lattice();
    let g1 = a.g().coefficient(1);
    let log1 = I * TAU * g1 * lat.omega1_f64();
    let log2 = I * TAU * g1 * lat.omega2_f64();
    Ok(Character {
        phi_omega1: log1.exp(),
        phi_omega2: a.c() * log2.exp(),
        log_phi_omega1: log1,
    })
}

/// Exponent `n(v)` with `A_l(v) = φ(l)·H(v+l)/H(v)`, `H = e^{2πi n}`, where
/// `φ = reduce_to_constant(A)`.
pub fn reduction_coboundary(a: &Cocycle) -> ExponentPoly {
    a.g().nonlinear_part()
}

/// `φ̂(ω₂)` for the class of `A` (which must have `s = 0`).
///
/// For `A = γ_c` this is exactly `c`; in general it is `c` up to rounding.
pub fn pic0_invariant(a: &Cocycle) -> Result<Complex64> {
    let phi = reduce_to_constant(a)?;
    Ok(phi.normalized_omega2(a.lattice()))
}

/// Why a class is certainly nontrivial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NontrivialReason {
    /// `Ch ≠ 0`.
    NonzeroChern { s: i64 },
    /// `|φ̂(ω₂)| ≠ 1`, while every `e^{2πimθ}` has modulus 1.
    ModulusNotOne { modulus: f64 },
}

/// Three-valued answer of [`triviality_test`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum TrivialityVerdict {
    /// `φ̂(ω₂) ≈ e^{2πimθ}`, so `φ(l) = k^l` with `k = e^{2πim/ω₁}` after the
    /// normalizing twist.
    TrivialWithWitness { m: i64 },
    NontrivialCertified { reason: NontrivialReason },
    /// No `|m| ≤ bound` matched.
    UnknownWithinBound { bound: u64 },
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityVerdict::TrivialWithWitness { .. })
    }

    pub fn is_certified_nontrivial(&self) -> bool {
        matches!(self, TrivialityVerdict::NontrivialCertified { .. })
    }
}

/// [`triviality_test_with`] at the default tolerance.
pub fn triviality_test(a: &Cocycle, bound: u64) -> Result<TrivialityVerdict> {
    triviality_test_with(a, bound, Tolerance::default())
}

/// Decides whether `A` is a coboundary, searching the witness
/// `m = 0, 1, −1, 2, −2, …` up to `|m| ≤ bound`.
///
/// `e^{−2πimθ}` is formed from the exact fractional part of `mθ`.
pub fn triviality_test_with(a: &Cocycle, bound: u64, tol: Tolerance) -> Result<TrivialityVerdict> {
    if bound == 0 {
        return Err(Error::precondition("search bound must be at least 1"));
    }
    let s = chern_symbolic(a).s();
    if s != 0 {
        return Ok(TrivialityVerdict::NontrivialCertified {
            reason: NontrivialReason::NonzeroChern { s },
        });
    }
    let hat = pic0_invariant(a)?;
    let modulus = hat.norm();
    if (modulus - 1.0).abs() > tol.abs_eps {
        return Ok(TrivialityVerdict::NontrivialCertified {
            reason: NontrivialReason::ModulusNotOne { modulus },
        });
    }
    let theta = a.lattice().theta().exact;
    let bound_i = i64::try_from(bound).map_err(|_| Error::domain("search bound too large"))?;
    let hit = |m: i64| (hat * unit_from_turns(&theta.scale_int(-(m as i128))) - 1.0).norm() < tol.abs_eps;
    if hit(0) {
        return Ok(TrivialityVerdict::TrivialWithWitness { m: 0 });
    }
    for k in 1..=bound_i {
        for m in [k, -k] {
            if hit(m) {
                return Ok(TrivialityVerdict::TrivialWithWitness { m });
            }
        }
    }
    Ok(TrivialityVerdict::UnknownWithinBound { bound })
}

/// Appell-Humbert data `(χ, E)`: a semicharacter `χ` on `L` with
/// `χ(l₁+l₂) = χ(l₁)χ(l₂)e^{πiE(l₁,l₂)}`, here `χ(aω₁+bω₂) = c^b e^{πi s ab}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AHData {
    pub chi_omega1: Complex64,
    pub chi_omega2: Complex64,
    pub chi_omega1_plus_omega2: Complex64,
    pub e: AltForm,
    pub lattice: Pseudolattice,
}

impl AHData {
    /// The Pic⁰ coordinate `c = χ(ω₂)`.
    pub fn c(&self) -> Complex64 {
        self.chi_omega2
    }

    /// `χ(aω₁ + bω₂)`, extended from the basis values.
    pub fn chi(&self, l: LatticeVector) -> Complex64 {
        let sign = if (self.e.s() * l.a * l.b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        self.chi_omega1.powi(l.a as i32) * self.chi_omega2.powi(l.b as i32) * sign
    }

    /// `|χ(l₁+l₂) − χ(l₁)χ(l₂)e^{πiE(l₁,l₂)}|`.
    pub fn semicharacter_defect(&self, l1: LatticeVector, l2: LatticeVector) -> f64 {
        let twist = Complex64::from_polar(1.0, PI * self.e.eval(l1, l2) as f64);
        (self.chi(l1 + l2) - self.chi(l1) * self.chi(l2) * twist).norm()
    }

    /// Componentwise comparison at tolerance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        use crate::numeric::approx_eq;
        self.e == other.e
            && self.lattice == other.lattice
            && approx_eq(self.chi_omega1, other.chi_omega1, tol)
            && approx_eq(self.chi_omega2, other.chi_omega2, tol)
            && approx_eq(self.chi_omega1_plus_omega2, other.chi_omega1_plus_omega2, tol)
    }
}

/// `(γ_c χ_s, s)` where `s = Ch(A)` and `c` is the Pic⁰ invariant of
/// `A ⊗ σ(Ch A)^{-1}`.
pub fn ah_normal_form(a: &Cocycle) -> AHData {
    let e = chern_symbolic(a);
    let flat = a
        .tensor(&sigma_section(e, *a.lattice()).inverse())
        .expect("same lattice");
    let c = pic0_invariant(&flat).expect("flat by construction");
    let sign = if e.s().rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    AHData {
        chi_omega1: Complex64::new(1.0, 0.0),
        chi_omega2: c,
        chi_omega1_plus_omega2: c * sign,
        e,
        lattice: *a.lattice(),
    }
}

/// `(χ₁, E₁)·(χ₂, E₂) = (χ₁χ₂, E₁ + E₂)`.
pub fn ah_group_law(x: &AHData, y: &AHData) -> Result<AHData> {
    if x.lattice != y.lattice {
        return Err(Error::domain("Appell-Humbert data on different pseudolattices"));
    }
    Ok(AHData {
        chi_omega1: x.chi_omega1 * y.chi_omega1,
        chi_omega2: x.chi_omega2 * y.chi_omega2,
        chi_omega1_plus_omega2: x.chi_omega1_plus_omega2 * y.chi_omega1_plus_omega2,
        e: x.e + y.e,
        lattice: x.lattice,
    })
}

#[derive(Serialize, Deserialize)]
struct ChiRepr {
    #[serde(with = "complex_json")]
    omega1: Complex64,
    #[serde(with = "complex_json")]
    omega2: Complex64,
    #[serde(with = "complex_json")]
    omega1_plus_omega2: Complex64,
}

#[derive(Serialize, Deserialize)]
struct AHRepr {
    #[serde(rename = "E")]
    e: AltForm,
    #[serde(with = "complex_json")]
    c: Complex64,
    chi: ChiRepr,
    lattice: Pseudolattice,
}

impl Serialize for AHData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AHRepr {
            e: self.e,
            c: self.c(),
            chi: ChiRepr {
                omega1: self.chi_omega1,
                omega2: self.chi_omega2,
                omega1_plus_omega2: self.chi_omega1_plus_omega2,
            },
            lattice: self.lattice,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AHData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = AHRepr::deserialize(de)?;
        Ok(AHData {
            chi_omega1: r.chi.omega1,
            chi_omega2: r.chi.omega2,
            chi_omega1_plus_omega2: r.chi.omega1_plus_omega2,
            e: r.e,
            lattice: r.lattice,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::coboundary;
    use crate::numeric::log_relative_residual;
    use crate::sampling::Sampler;
    use proptest::prelude::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn l1() -> Pseudolattice {
        Pseudolattice::sqrt2()
    }

    fn theta_character(lat: Pseudolattice, m: i64) -> Cocycle {
        let c = unit_from_turns(&lat.theta().exact.scale_int(m as i128));
        Cocycle::character(lat, c).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let c = cx(0.6, -2.0);
        let phi = reduce_to_constant(&Cocycle::character(l1(), c).unwrap()).unwrap();
        assert_eq!(phi.phi_omega1, cx(1.0, 0.0));
        assert_eq!(phi.phi_omega2, c);

        let beta = cx(0.37, 0.1);
        let phi = reduce_to_constant(&coboundary(&ExponentPoly::zero(), beta, l1())).unwrap();
        let expect1 = (I * TAU * beta).exp();
        let expect2 = (I * TAU * beta * 2f64.sqrt()).exp();
        assert!((phi.phi_omega1 - expect1).norm() < 1e-12);
        assert!((phi.phi_omega2 - expect2).norm() < 1e-12);

        assert!(reduce_to_constant(&Cocycle::sigma(l1(), 1)).is_err());
    }

    /// `A_l(v)/φ(l) = H(v+l)/H(v)` with `H = e^{2πi n}` at seeded samples.
    fn assert_cohomologous(a: &Cocycle) {
        let phi = reduce_to_constant(a).unwrap();
        let n = reduction_coboundary(a);
        let lat = a.lattice();
        let mut sampler = Sampler::new(11);
        for _ in 0..200 {
            let l = LatticeVector::new(sampler.int(-4, 4), sampler.int(-4, 4));
            let v = cx(sampler.real(-1.0, 1.0), sampler.real(-1.0, 1.0));
            let x = lat.real_value_f64(l);
            let lhs = a.log_value(l, v);
            let b = (l.b) as f64;
            let log_phi = phi.log_phi_omega1 * l.a as f64 + phi.phi_omega2.ln() * b;
            let rhs = log_phi + I * TAU * (n.eval(v + x) - n.eval(v));
            assert!(log_relative_residual(lhs, rhs).unwrap() < 1e-9, "l = {l:?}, v = {v}");
        }
    }

    #[test]
    fn reduction_is_cohomologous() {
        let g = ExponentPoly::new(vec![cx(0.2, 0.0), cx(0.3, -0.1), cx(0.25, 0.0), cx(0.0, 0.05)]).unwrap();
        assert_cohomologous(&Cocycle::new(l1(), 0, cx(1.5, 0.5), g).unwrap());
        assert_cohomologous(&Cocycle::new(l1(), 0, cx(1.0, 0.0), ExponentPoly::monomial(2, cx(1.0, 0.0)).unwrap()).unwrap());
    }

    #[test]
    fn pic0_examples() {
        for c in [cx(5.0, 0.0), cx(0.0, 1.0), cx(-0.3, 0.7)] {
            assert_eq!(pic0_invariant(&Cocycle::character(l1(), c).unwrap()).unwrap(), c);
        }
        assert_eq!(pic0_invariant(&Cocycle::trivial(l1())).unwrap(), cx(1.0, 0.0));
        // k^l with k = e^{πi/ω₁}: trivial, invariant 1
        let beta = cx(0.5 / l1().omega1_f64(), 0.0);
        let a = coboundary(&ExponentPoly::zero(), beta, l1());
        assert!((pic0_invariant(&a).unwrap() - 1.0).norm() < 1e-12);
        assert_eq!(triviality_test(&a, 10).unwrap(), TrivialityVerdict::TrivialWithWitness { m: 0 });
        assert!(pic0_invariant(&Cocycle::existence(l1())).is_err());
    }

    #[test]
    fn character_lift_round_trip() {
        let phi = Character::new(cx(0.0, 2.0), cx(-1.0, 0.5)).unwrap();
        let a = phi.to_cocycle(l1()).unwrap();
        let back = reduce_to_constant(&a).unwrap();
        for l in [LatticeVector::OMEGA1, LatticeVector::OMEGA2, LatticeVector::new(2, -3)] {
            assert!((back.eval(l) - phi.eval(l)).norm() < 1e-9 * phi.eval(l).norm().max(1.0));
        }
    }

    #[test]
    fn triviality_examples() {
        assert_eq!(
            triviality_test(&Cocycle::trivial(l1()), 10).unwrap(),
            TrivialityVerdict::TrivialWithWitness { m: 0 }
        );
        assert_eq!(
            triviality_test(&Cocycle::sigma(l1(), 1), 10).unwrap(),
            TrivialityVerdict::NontrivialCertified { reason: NontrivialReason::NonzeroChern { s: 1 } }
        );
        assert_eq!(
            triviality_test(&theta_character(l1(), 1), 10).unwrap(),
            TrivialityVerdict::TrivialWithWitness { m: 1 }
        );
        assert_eq!(
            triviality_test(&theta_character(Pseudolattice::golden(), -7), 10).unwrap(),
            TrivialityVerdict::TrivialWithWitness { m: -7 }
        );
        assert_eq!(
            triviality_test(&theta_character(l1(), 50), 10).unwrap(),
            TrivialityVerdict::UnknownWithinBound { bound: 10 }
        );
        assert!(matches!(
            triviality_test(&Cocycle::character(l1(), cx(2.0, 0.0)).unwrap(), 10).unwrap(),
            TrivialityVerdict::NontrivialCertified { reason: NontrivialReason::ModulusNotOne { .. } }
        ));
        assert!(triviality_test(&Cocycle::trivial(l1()), 0).is_err());
    }

    #[test]
    fn witness_satisfies_construction() {
        // k = e^{2πim/ω₁}: k^{ω₁} = 1 and k^{ω₂} = e^{2πimθ} = φ̂(ω₂)
        let lat = Pseudolattice::golden();
        let a = theta_character(lat, 3);
        let TrivialityVerdict::TrivialWithWitness { m } = triviality_test(&a, 100).unwrap() else {
            panic!("expected a witness");
        };
        let log_k = I * TAU * m as f64 / lat.omega1_f64();
        assert!(((log_k * lat.omega1_f64()).exp() - 1.0).norm() < 1e-12);
        assert!(((log_k * lat.omega2_f64()).exp() - pic0_invariant(&a).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn normal_form_examples() {
        let ah = ah_normal_form(&Cocycle::sigma(l1(), 1));
        assert_eq!(ah.e, AltForm(1));
        assert_eq!(ah.c(), cx(1.0, 0.0));
        assert_eq!(ah.chi_omega1_plus_omega2, cx(-1.0, 0.0));

        let ah = ah_normal_form(&Cocycle::trivial(l1()));
        assert_eq!((ah.e, ah.chi_omega1, ah.chi_omega2, ah.chi_omega1_plus_omega2), (AltForm(0), cx(1.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0)));

        let ah = ah_normal_form(&Cocycle::character(l1(), cx(5.0, 0.0)).unwrap());
        assert_eq!((ah.e, ah.c(), ah.chi_omega2), (AltForm(0), cx(5.0, 0.0), cx(5.0, 0.0)));
    }

    #[test]
    fn group_law_examples() {
        let one = ah_normal_form(&Cocycle::trivial(l1()));
        assert_eq!(ah_group_law(&one, &one).unwrap(), one);
        let x = ah_normal_form(&Cocycle::new(l1(), 1, cx(2.0, 0.0), ExponentPoly::zero()).unwrap());
        let y = ah_normal_form(&Cocycle::new(l1(), 2, cx(3.0, 0.0), ExponentPoly::zero()).unwrap());
        let xy = ah_group_law(&x, &y).unwrap();
        assert_eq!((xy.e, xy.chi_omega2), (AltForm(3), cx(6.0, 0.0)));
        let other = ah_normal_form(&Cocycle::trivial(Pseudolattice::golden()));
        assert!(ah_group_law(&x, &other).is_err());
    }

    #[test]
    fn ah_json_shape() {
        let ah = ah_normal_form(&Cocycle::new(l1(), 3, cx(0.0, 2.0), ExponentPoly::zero()).unwrap());
        let v = serde_json::to_value(ah).unwrap();
        assert_eq!(v["E"], 3);
        assert_eq!(v["c"], serde_json::json!([0.0, 2.0]));
        assert!(v["chi"]["omega1_plus_omega2"].is_array());
        let back: AHData = serde_json::from_value(v).unwrap();
        assert_eq!(back, ah);
    }

    #[test]
    fn verdict_json_shape() {
        let v = serde_json::to_value(TrivialityVerdict::NontrivialCertified {
            reason: NontrivialReason::NonzeroChern { s: -1 },
        })
        .unwrap();
        assert_eq!(v, serde_json::json!({"verdict": "NontrivialCertified", "reason": {"kind": "NonzeroChern", "s": -1}}));
    }

    fn flat_cocycle() -> impl Strategy<Value = Cocycle> {
        ((0.3f64..3.0, -3.1f64..3.1), proptest::collection::vec((-0.3f64..0.3, -0.3f64..0.3), 0..4))
            .prop_map(|((r, arg), g)| {
                let g = ExponentPoly::new(g.into_iter().map(|(a, b)| cx(a, b)).collect()).unwrap();
                Cocycle::new(l1(), 0, Complex64::from_polar(r, arg), g).unwrap()
            })
    }

    fn any_cocycle() -> impl Strategy<Value = Cocycle> {
        (-5i64..=5, flat_cocycle()).prop_map(|(s, a)| Cocycle::new(l1(), s, a.c(), a.g().clone()).unwrap())
    }

    proptest! {
        #[test]
        fn pic0_multiplicative(a in flat_cocycle(), b in flat_cocycle()) {
            let ab = pic0_invariant(&a.tensor(&b).unwrap()).unwrap();
            let prod = pic0_invariant(&a).unwrap() * pic0_invariant(&b).unwrap();
            prop_assert!((ab - prod).norm() <= 1e-9 * prod.norm().max(1.0));
        }

        #[test]
        fn semicharacter_law(a in any_cocycle(), x in -5i64..5, y in -5i64..5, z in -5i64..5, w in -5i64..5) {
            let ah = ah_normal_form(&a);
            let d = ah.semicharacter_defect(LatticeVector::new(x, y), LatticeVector::new(z, w));
            let scale = ah.chi(LatticeVector::new(x + z, y + w)).norm().max(1.0);
            prop_assert!(d <= 1e-9 * scale);
        }

        #[test]
        fn ah_homomorphism(a in any_cocycle(), b in any_cocycle()) {
            let lhs = ah_normal_form(&a.tensor(&b).unwrap());
            let rhs = ah_group_law(&ah_normal_form(&a), &ah_normal_form(&b)).unwrap();
            prop_assert!(lhs.approx_eq(&rhs, Tolerance::default()));
        }

        #[test]
        fn classification_faithful(a in flat_cocycle(), m in -20i64..20, beta in -1.0f64..1.0, g2 in -0.5f64..0.5) {
            // B = A ⊗ (character e^{2πimθ}) ⊗ (coboundary) is isomorphic to A
            let cob = coboundary(&ExponentPoly::monomial(2, cx(g2, 0.0)).unwrap(), cx(beta, 0.0), l1());
            let b = a.tensor(&theta_character(l1(), m)).unwrap().tensor(&cob).unwrap();
            let verdict = triviality_test(&b.tensor(&a.inverse()).unwrap(), 100).unwrap();
            prop_assert!(verdict.is_trivial(), "{verdict:?}");
            let (ha, hb) = (ah_normal_form(&a), ah_normal_form(&b));
            let TrivialityVerdict::TrivialWithWitness { m: found } = verdict else { unreachable!() };
            let shift = unit_from_turns(&l1().theta().exact.scale_int(found as i128));
            prop_assert_eq!(ha.e, hb.e);
            prop_assert!((ha.c() * shift - hb.c()).norm() <= 1e-9 * hb.c().norm().max(1.0));
        }
    }
}
