//! Normal-form cocycles (s, c, g), their group structure and the cocycle identity.

use num_complex::Complex64;
use qtline::cocycle::{cocycle_defect, verify_cocycle_identity, Cocycle, ExponentPoly};
use qtline::pseudolattice::{LatticeVector, Pseudolattice};

fn main() -> qtline::Result<()> {
    let lat = Pseudolattice::sqrt2();
    let a = Cocycle::new(lat, 2, Complex64::new(0.0, 1.0), ExponentPoly::monomial(2, Complex64::new(1.0, 0.0))?)?;
    let b = Cocycle::existence(lat);
    let v = Complex64::new(0.3, 0.2);
    println!("A = (2, i, v^2): A_w2(v) = {:.6}", a.evaluate(LatticeVector::OMEGA2, v)?);
    println!("existence cocycle: A_w2(0) = {:.6}", b.evaluate(LatticeVector::OMEGA2, Complex64::new(0.0, 0.0))?);
    for (name, x) in [("A", &a), ("existence", &b), ("A (x) existence", &a.tensor(&b)?), ("A^-1", &a.inverse())] {
        println!("{name:<16} s = {:>2}, max identity residual over 1000 samples = {:.3e}", x.s(), verify_cocycle_identity(x, 1000, 0)?);
    }
    // the exponent identity holds up to the integer -s*b1*a2
    let (l1, l2) = (LatticeVector::new(3, -2), LatticeVector::new(5, 4));
    println!("exact exponent defect of A at ({l1:?}, {l2:?}): {}", cocycle_defect(&a, l1, l2)?);
    Ok(())
}
