//! Theta functions θ(v+l) = A_l(v)θ(v): solutions, certificates and the
//! modulus obstruction.

use num_complex::Complex64;
use qtline::cocycle::{coboundary, Cocycle, ExponentPoly};
use qtline::numeric::unit_from_turns;
use qtline::pseudolattice::Pseudolattice;
use qtline::theta::{modulus_obstruction_demo, solve_theta, theta_residual, ThetaOutcome};

fn main() -> qtline::Result<()> {
    let lat = Pseudolattice::sqrt2();
    let g = ExponentPoly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.1, 0.02)])?;
    let trivial_class = Cocycle::character(lat, unit_from_turns(&lat.theta().exact.scale_int(2)))?
        .tensor(&coboundary(&g, Complex64::new(0.3, 0.0), lat))?;
    for (name, a) in [
        ("trivial class", trivial_class),
        ("s = 1", Cocycle::sigma(lat, 1)),
        ("|c| = 2", Cocycle::character(lat, Complex64::new(2.0, 0.0))?),
    ] {
        match solve_theta(&a, 10_000)? {
            ThetaOutcome::Solution(t) => println!(
                "{name:<14} theta(v) = {:.3}*exp(2 pi i (u(v) + {:.6} v)), residual {:.2e}",
                t.amplitude,
                t.alpha.re,
                theta_residual(&a, &t, 500, 0)?
            ),
            other => println!("{name:<14} {other:?}"),
        }
    }
    println!("modulus obstruction for c = 2 along l_n -> 0:");
    for step in modulus_obstruction_demo(&Cocycle::character(lat, Complex64::new(2.0, 0.0))?, 6)? {
        println!("  l = {:>4} w1 {:+5} w2  |l| = {:.3e}  |theta(v+l)/theta(v)| = {:.3e}  divergence {:.3e}", step.l.a, step.l.b, step.length, step.ratio, step.divergence);
    }
    Ok(())
}
