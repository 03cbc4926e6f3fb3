//! Pic⁰, triviality testing and the Appell-Humbert normal form.

use num_complex::Complex64;
use qtline::cocycle::{coboundary, Cocycle, ExponentPoly};
use qtline::numeric::unit_from_turns;
use qtline::picard::{ah_group_law, ah_normal_form, pic0_invariant, reduce_to_constant, triviality_test};
use qtline::pseudolattice::Pseudolattice;

fn main() -> qtline::Result<()> {
    let lat = Pseudolattice::sqrt2();
    // a flat class hidden behind a coboundary
    let cob = coboundary(&ExponentPoly::monomial(3, Complex64::new(0.1, 0.0))?, Complex64::new(0.4, 0.0), lat);
    let a = Cocycle::character(lat, Complex64::new(0.0, 2.0))?.tensor(&cob)?;
    let phi = reduce_to_constant(&a)?;
    println!("constant representative: phi(w1) = {:.6}, phi(w2) = {:.6}", phi.phi_omega1, phi.phi_omega2);
    println!("Pic0 invariant = {:.6}", pic0_invariant(&a)?);

    let e_theta = Cocycle::character(lat, unit_from_turns(&lat.theta().exact.scale_int(3)))?;
    for (name, x) in [
        ("trivial", Cocycle::trivial(lat)),
        ("gamma_{e^{6 pi i theta}}", e_theta.clone()),
        ("gamma_2", Cocycle::character(lat, Complex64::new(2.0, 0.0))?),
        ("existence", Cocycle::existence(lat)),
        ("gamma_i", Cocycle::character(lat, Complex64::new(0.0, 1.0))?),
    ] {
        println!("{name:<26} {:?}", triviality_test(&x, 10_000)?);
    }

    let x = ah_normal_form(&Cocycle::new(lat, 1, Complex64::new(3.0, 0.0), ExponentPoly::zero())?);
    let y = ah_normal_form(&a);
    println!("AH(x) = E {} chi(w2) {:.4} chi(w1+w2) {:.4}", x.e.s(), x.chi_omega2, x.chi_omega1_plus_omega2);
    let xy = ah_group_law(&x, &y)?;
    println!("AH(x)AH(y) = E {} chi(w2) {:.4}", xy.e.s(), xy.chi_omega2);
    println!("semicharacter defect on (w1, w2): {:.2e}", xy.semicharacter_defect(qtline::pseudolattice::LatticeVector::OMEGA1, qtline::pseudolattice::LatticeVector::OMEGA2));
    Ok(())
}
