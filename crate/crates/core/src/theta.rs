//! Theta functions: nonvanishing entire `θ` with `θ(v+l) = A_l(v)θ(v)`.
//!
//! Within the normal-form family a solution exists exactly when the class of
//! `A` is trivial, and then it has the shape `θ(v) = A·e^{2πi(u(v) + αv)}`.
//! [`solve_theta`] builds it from a triviality witness or returns the reason
//! none exists.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cocycle::{Cocycle, ExponentPoly};
use crate::error::{Error, Result};
use crate::numeric::{complex_json, log_relative_residual, Tolerance};
use crate::picard::{pic0_invariant, triviality_test_with, NontrivialReason, TrivialityVerdict};
use crate::pseudolattice::LatticeVector;
use crate::sampling::Sampler;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `θ(v) = amplitude · e^{2πi·unit_exponent(v)} · e^{2πi·alpha·v}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaCandidate {
    #[serde(with = "complex_json")]
    pub amplitude: Complex64,
    #[serde(with = "complex_json")]
    pub alpha: Complex64,
    #[serde(default)]
    pub unit_exponent: ExponentPoly,
}

impl ThetaCandidate {
    pub fn new(amplitude: Complex64, alpha: Complex64, unit_exponent: ExponentPoly) -> Result<Self> {
        if amplitude == Complex64::new(0.0, 0.0) || !amplitude.is_finite() || !alpha.is_finite() {
            return Err(Error::domain("theta amplitude must be nonzero and finite"));
        }
        Ok(ThetaCandidate {
            amplitude,
            alpha,
            unit_exponent,
        })
    }

    /// `θ ≡ 1`.
    pub fn one() -> Self {
        ThetaCandidate {
            amplitude: Complex64::new(1.0, 0.0),
            alpha: Complex64::new(0.0, 0.0),
            unit_exponent: ExponentPoly::zero(),
        }
    }

    pub fn log_value(&self, v: Complex64) -> Complex64 {
        self.amplitude.ln() + I * TAU * (self.unit_exponent.eval(v) + self.alpha * v)
    }

    pub fn eval(&self, v: Complex64) -> Complex64 {
        self.log_value(v).exp()
    }
}

/// One sampled residual of the functional equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSample {
    pub l: LatticeVector,
    #[serde(with = "complex_json")]
    pub v: Complex64,
    pub residual: f64,
}

/// `|θ(v+l) − A_l(v)θ(v)| / max(1, |θ(v+l)|)` at seeded samples.
pub fn theta_residuals(a: &Cocycle, t: &ThetaCandidate, samples: usize, seed: u64) -> Result<Vec<ThetaSample>> {
    if samples == 0 {
        return Err(Error::precondition("need at least one sample"));
    }
    let lat = a.lattice();
    let mut sampler = Sampler::new(seed);
    (0..samples)
        .map(|_| {
            let l = sampler.lattice_vector();
            let v = sampler.point();
            let lhs = t.log_value(v + lat.real_value_f64(l));
            let rhs = a.log_value(l, v) + t.log_value(v);
            Ok(ThetaSample {
                l,
                v,
                residual: log_relative_residual(lhs, rhs)?,
            })
        })
        .collect()
}

/// Largest of [`theta_residuals`].
pub fn theta_residual(a: &Cocycle, t: &ThetaCandidate, samples: usize, seed: u64) -> Result<f64> {
    Ok(theta_residuals(a, t, samples, seed)?
        .into_iter()
        .map(|s| s.residual)
        .fold(0.0, f64::max))
}

/// Outcome of [`solve_theta`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaOutcome {
    Solution(ThetaCandidate),
    /// No nonvanishing solution exists.
    Certificate(NontrivialReason),
    /// No witness within the search bound.
    Inconclusive { bound: u64 },
}

impl ThetaOutcome {
    pub fn solution(&self) -> Option<&ThetaCandidate> {
        match self {
            ThetaOutcome::Solution(t) => Some(t),
            _ => None,
        }
    }
}

/// [`solve_theta_with`] at the default tolerance.
pub fn solve_theta(a: &Cocycle, bound: u64) -> Result<ThetaOutcome> {
    solve_theta_with(a, bound, Tolerance::default())
}

/// For a witness `m`, `θ(v) = e^{2πi(g(v) + mv/ω₁)}`: the `g`-part absorbs the
/// coboundary and `e^{2πimv/ω₁}` realizes the character `c^b = e^{2πimbθ}`.
pub fn solve_theta_with(a: &Cocycle, bound: u64, tol: Tolerance) -> Result<ThetaOutcome> {
    Ok(match triviality_test_with(a, bound, tol)? {
        TrivialityVerdict::TrivialWithWitness { m } => ThetaOutcome::Solution(ThetaCandidate {
            amplitude: Complex64::new(1.0, 0.0),
            alpha: Complex64::new(m as f64 / a.lattice().omega1_f64(), 0.0),
            unit_exponent: a.g().clone(),
        }),
        TrivialityVerdict::NontrivialCertified { reason } => ThetaOutcome::Certificate(reason),
        TrivialityVerdict::UnknownWithinBound { bound } => ThetaOutcome::Inconclusive { bound },
    })
}

/// One step of the modulus obstruction along `l_n = p_nω₁ − q_nω₂ → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionStep {
    pub l: LatticeVector,
    pub length: f64,
    /// `|c|^b = |θ(v+l)|/|θ(v)|` for any solution.
    pub ratio: f64,
    /// `max(ratio, 1/ratio)`.
    pub divergence: f64,
}

/// Shows that no continuous nonvanishing `θ` exists when `s = 0` and
/// `|c| ≠ 1`: along convergent vectors `l_n → 0` the forced ratio
/// `|θ(v+l_n)|/|θ(v)| = |c|^{−q_n}` leaves every bound.
///
/// Convergents with a repeated `q` are skipped, so the divergence is strictly
/// increasing.
pub fn modulus_obstruction_demo(a: &Cocycle, steps: usize) -> Result<Vec<ObstructionStep>> {
    let c = pic0_invariant(a)?;
    let modulus = c.norm();
    if (modulus - 1.0).abs() <= Tolerance::default().abs_eps {
        return Err(Error::precondition(format!("|c| = {modulus} is 1; no modulus obstruction")));
    }
    let lat = a.lattice();
    let mut out: Vec<ObstructionStep> = Vec::with_capacity(steps);
    let mut k = steps;
    while out.len() < steps {
        let conv = lat.convergents(k)?;
        out.clear();
        let mut last_q = None;
        for cv in conv {
            if last_q == Some(cv.q) {
                continue;
            }
            last_q = Some(cv.q);
            let l = cv.small_vector();
            let ratio = modulus.powf(l.b as f64);
            out.push(ObstructionStep {
                l,
                length: lat.real_value_f64(l).abs(),
                ratio,
                divergence: ratio.max(ratio.recip()),
            });
            if out.len() == steps {
                break;
            }
        }
        k += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::coboundary;
    use crate::numeric::unit_from_turns;
    use crate::pseudolattice::Pseudolattice;
    use proptest::prelude::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn l1() -> Pseudolattice {
        Pseudolattice::sqrt2()
    }

    fn theta_char(lat: Pseudolattice, m: i64) -> Cocycle {
        Cocycle::character(lat, unit_from_turns(&lat.theta().exact.scale_int(m as i128))).unwrap()
    }

    #[test]
    fn residual_examples() {
        assert_eq!(theta_residual(&Cocycle::trivial(l1()), &ThetaCandidate::one(), 200, 0).unwrap(), 0.0);
        let t = ThetaCandidate::new(cx(1.0, 0.0), cx(1.0 / l1().omega1_f64(), 0.0), ExponentPoly::zero()).unwrap();
        assert!(theta_residual(&theta_char(l1(), 1), &t, 500, 3).unwrap() < 1e-9);
        let t = ThetaCandidate::new(cx(1.0, 0.0), cx(1.0, 0.0), ExponentPoly::zero()).unwrap();
        assert!(theta_residual(&Cocycle::sigma(l1(), 1), &t, 200, 0).unwrap() >= 0.1);
        assert!(theta_residual(&Cocycle::trivial(l1()), &ThetaCandidate::one(), 0, 0).is_err());
        assert!(ThetaCandidate::new(cx(0.0, 0.0), cx(0.0, 0.0), ExponentPoly::zero()).is_err());
    }

    #[test]
    fn residuals_are_deterministic() {
        let a = theta_char(l1(), 2);
        let t = solve_theta(&a, 10).unwrap().solution().unwrap().clone();
        assert_eq!(theta_residuals(&a, &t, 50, 7).unwrap(), theta_residuals(&a, &t, 50, 7).unwrap());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_theta(&Cocycle::trivial(l1()), 10).unwrap(), ThetaOutcome::Solution(ThetaCandidate::one()));
        let out = solve_theta(&theta_char(l1(), 1), 10).unwrap();
        let t = out.solution().unwrap();
        assert!((t.alpha - cx(1.0 / l1().omega1_f64(), 0.0)).norm() < 1e-15);
        assert!(theta_residual(&theta_char(l1(), 1), t, 500, 0).unwrap() < 1e-9);
        assert_eq!(
            solve_theta(&Cocycle::sigma(l1(), 1), 10).unwrap(),
            ThetaOutcome::Certificate(NontrivialReason::NonzeroChern { s: 1 })
        );
        assert_eq!(solve_theta(&theta_char(l1(), 30), 10).unwrap(), ThetaOutcome::Inconclusive { bound: 10 });
    }

    #[test]
    fn outcome_json_shape() {
        let v = serde_json::to_value(solve_theta(&Cocycle::trivial(l1()), 10).unwrap()).unwrap();
        assert_eq!(v["solution"]["amplitude"], serde_json::json!([1.0, 0.0]));
        let v = serde_json::to_value(solve_theta(&Cocycle::sigma(l1(), 2), 10).unwrap()).unwrap();
        assert_eq!(v, serde_json::json!({"certificate": {"kind": "NonzeroChern", "s": 2}}));
    }

    #[test]
    fn obstruction_examples() {
        let two = Cocycle::character(l1(), cx(2.0, 0.0)).unwrap();
        let steps = modulus_obstruction_demo(&two, 4).unwrap();
        let div: Vec<f64> = steps.iter().map(|s| s.divergence).collect();
        assert_eq!(div, vec![2.0, 4.0, 32.0, 4096.0]);
        assert!(steps.windows(2).all(|w| w[1].length < w[0].length));

        let half = Cocycle::character(l1(), cx(0.5, 0.0)).unwrap();
        let steps = modulus_obstruction_demo(&half, 4).unwrap();
        assert_eq!(steps.iter().map(|s| s.ratio).collect::<Vec<_>>(), vec![2.0, 4.0, 32.0, 4096.0]);

        let golden = Cocycle::character(Pseudolattice::golden(), cx(0.0, 3.0)).unwrap();
        let steps = modulus_obstruction_demo(&golden, 8).unwrap();
        assert!(steps.windows(2).all(|w| w[1].divergence > w[0].divergence));

        assert!(modulus_obstruction_demo(&Cocycle::character(l1(), cx(0.6, 0.8)).unwrap(), 3).is_err());
        assert!(modulus_obstruction_demo(&Cocycle::sigma(l1(), 1), 3).is_err());
    }

    fn trivial_class() -> impl Strategy<Value = Cocycle> {
        (
            -30i64..30,
            proptest::collection::vec((-0.2f64..0.2, -0.2f64..0.2), 0..5),
            -1.0f64..1.0,
            prop::bool::ANY,
        )
            .prop_map(|(m, g, beta, golden)| {
                let lat = if golden { Pseudolattice::golden() } else { l1() };
                let g = ExponentPoly::new(g.into_iter().map(|(a, b)| cx(a, b)).collect()).unwrap();
                theta_char(lat, m).tensor(&coboundary(&g, cx(beta, 0.0), lat)).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn soundness(a in trivial_class()) {
            let out = solve_theta(&a, 100).unwrap();
            let t = out.solution().expect("trivial class has a solution");
            prop_assert!(theta_residual(&a, t, 200, 1).unwrap() < 1e-9);
            // form rigidity: unit exponent is g plus a linear polynomial
            let diff = t.unit_exponent.sub(a.g());
            prop_assert!(diff.degree().is_none_or(|d| d <= 1));
        }

        #[test]
        fn completeness(s in -5i64..=5, r in prop_oneof![0.1f64..0.9, 1.1f64..5.0], arg in -3.0f64..3.0) {
            let c = if s == 0 { Complex64::from_polar(r, arg) } else { Complex64::from_polar(1.0, arg) };
            let a = Cocycle::new(l1(), s, c, ExponentPoly::linear(cx(0.3, 0.1))).unwrap();
            prop_assert!(matches!(solve_theta(&a, 100).unwrap(), ThetaOutcome::Certificate(_)));
        }
    }
}
