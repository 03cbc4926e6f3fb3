//! Holomorphic line bundles on quantum tori `Z_L = ℂ/L`, where
//! `L = ℤω₁ + ℤω₂ ⊂ ℝ` is a dense pseudolattice with periods in a real
//! quadratic field.
//!
//! Modules, bottom up: [`numeric`] (exact `ℚ(√D)` arithmetic and
//! tolerances), [`pseudolattice`] (continued fractions), [`cocycle`]
//! (normal-form cocycles), [`chern`], [`picard`] (Pic⁰ and Appell-Humbert
//! data), [`heisenberg`] (`K(ℒ)` and the commutator pairing), [`theta`]
//! (theta functions) and [`cli`].

pub mod chern;
pub mod cli;
pub mod cocycle;
pub mod error;
pub mod heisenberg;
pub mod numeric;
pub mod picard;
pub mod pseudolattice;
pub mod sampling;
pub mod theta;

pub use error::{Error, Result};
