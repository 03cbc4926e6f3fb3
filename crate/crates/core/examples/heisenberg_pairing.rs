//! The Heisenberg group of a class with s ≠ 0 and its commutator pairing.

use qtline::cocycle::Cocycle;
use qtline::heisenberg::{commutator_pairing, group_commutator, heisenberg_multiply, k_group, membership_multiplier, LambdaPoint};
use qtline::pseudolattice::Pseudolattice;

fn main() -> qtline::Result<()> {
    let lat = Pseudolattice::sqrt2();
    let a = Cocycle::sigma(lat, 3);
    println!("K(L) for s = 3: {:?}, order {:?}", k_group(&a), k_group(&a).order());
    let x1 = LambdaPoint::new(1, 0, 3)?;
    let x2 = LambdaPoint::new(0, 1, 3)?;
    let g1 = membership_multiplier(&a, x1)?;
    let g2 = membership_multiplier(&a, x2)?;
    let p = heisenberg_multiply(&g1, &g2, &a)?;
    println!("(w1/3, 1)(w2/3, h) = ({:?}, scalar {:.6})", p.point, p.scalar);
    let c = group_commutator(&g1, &g2, &a)?;
    println!("group commutator: point {:?}, scalar {:.6}", c.point, c.scalar);
    println!("pairing table e(x, y) for s = 3, x, y in {{w1/3, w2/3, (w1+w2)/3}}:");
    let pts = [x1, x2, LambdaPoint::new(1, 1, 3)?];
    for &x in &pts {
        let row: Vec<String> = pts
            .iter()
            .map(|&y| {
                let r = commutator_pairing(&a, x, y).unwrap();
                format!("{:+.3}{:+.3}i", r.value.re, r.value.im)
            })
            .collect();
        println!("  {}", row.join("  "));
    }
    Ok(())
}
