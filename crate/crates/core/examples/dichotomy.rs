//! Either Ch ≠ 0 and K is finite with a nondegenerate pairing, or Ch = 0 and
//! K is the whole torus with trivial pairing.

use num_complex::Complex64;
use qtline::cocycle::{Cocycle, ExponentPoly};
use qtline::heisenberg::{dichotomy_check, DichotomyBranch};
use qtline::pseudolattice::Pseudolattice;

fn main() -> qtline::Result<()> {
    let lat = Pseudolattice::golden();
    let flat = Cocycle::new(lat, 0, Complex64::new(7.0, 0.0), ExponentPoly::monomial(2, Complex64::new(0.1, 0.0))?)?;
    let cases = [("s = 0, c = 7", flat), ("s = 1", Cocycle::sigma(lat, 1)), ("s = 2", Cocycle::sigma(lat, 2)), ("s = -5", Cocycle::sigma(lat, -5))];
    for (name, a) in cases {
        let r = dichotomy_check(&a, 0)?;
        match r.branch {
            DichotomyBranch::Nondegenerate { value, nondegenerate, .. } => println!(
                "{name:<14} K = {:?} (order {:?}), e(w1/|s|, w2/|s|) = {:.6}, != 1: {nondegenerate}",
                r.k_group,
                r.k_group.order(),
                value
            ),
            DichotomyBranch::Flat { pairs, max_deviation, .. } => {
                println!("{name:<14} K = {:?}, max |e - 1| over {pairs} real pairs = {max_deviation:.2e}", r.k_group)
            }
        }
    }
    Ok(())
}
