//! Continued fractions of θ = ω₂/ω₁ and the short vectors pₖω₁ − qₖω₂.

use qtline::numeric::QuadReal;
use qtline::pseudolattice::Pseudolattice;

fn main() -> qtline::Result<()> {
    let seven = Pseudolattice::new(QuadReal::one(7)?, QuadReal::parse("sqrt7", 7)?)?;
    for (name, lat) in [("Z + Z*sqrt2", Pseudolattice::sqrt2()), ("Z + Z*golden", Pseudolattice::golden()), ("Z + Z*sqrt7", seven)] {
        println!("{name}: theta = {:.12}", lat.theta().approx);
        println!("  partial quotients {:?}", lat.partial_quotients(10));
        for c in lat.convergents(8)? {
            let l = c.small_vector();
            println!(
                "  k={:<2} p/q = {:>4}/{:<4} |p w1 - q w2| = {:.3e}  bound holds: {}",
                c.index,
                c.p,
                c.q,
                lat.real_value_f64(l).abs(),
                lat.satisfies_convergent_bound(&c)
            );
        }
    }
    // L is dense: approximate an arbitrary real by a lattice point
    let lat = Pseudolattice::sqrt2();
    let l = lat.approximate(0.123456, 1e-6)?;
    println!("0.123456 ~ {}*1 + {}*sqrt2 = {:.9}", l.a, l.b, lat.real_value_f64(l));
    Ok(())
}
