//! The Chern class, computed exactly and by the floating-point four-term sum.

use num_complex::Complex64;
use qtline::chern::{chern_numeric, chern_symbolic, sigma_section, AltForm};
use qtline::cocycle::{Cocycle, ExponentPoly};
use qtline::pseudolattice::{LatticeVector, Pseudolattice};

fn main() -> qtline::Result<()> {
    let lat = Pseudolattice::golden();
    let g = ExponentPoly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.2, 0.1), Complex64::new(0.05, 0.0)])?;
    let a = Cocycle::new(lat, -3, Complex64::new(1.5, 0.5), g)?;
    let eta = chern_symbolic(&a);
    println!("Ch(A) = {}*(ad - bc)", eta.s());
    let (l1, l2) = (LatticeVector::new(2, 1), LatticeVector::new(-1, 4));
    for v in [Complex64::new(0.3, 0.2), Complex64::new(-2.0, 1.5)] {
        println!("  four-term sum at v = {v}: {}  (exact {})", chern_numeric(&a, l1, l2, v)?, eta.eval(l1, l2));
    }
    let b = Cocycle::sigma(lat, 5);
    println!("Ch(A (x) sigma(5)) = {}", chern_symbolic(&a.tensor(&b)?).s());
    let ok = (-20..=20).all(|s| chern_symbolic(&sigma_section(AltForm(s), lat)) == AltForm(s));
    println!("Ch(sigma(s)) = s for -20 <= s <= 20: {ok}");
    Ok(())
}
