//! Strong Lefschetz profile of a random smooth cubic threefold.

use gradus::jacobian::MilnorAlgebra;
use gradus::lefschetz::{slp_check, slp_search};
use gradus::random::{random_poly, stream};
use gradus::{PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let f = random_poly(&ring, &mut stream(3), 3, 10);
    let alg = MilnorAlgebra::new(&ring, &f).unwrap();
    let search = slp_search(&alg, 5, 10, 0).unwrap();
    let w = search.witness.expect("a Lefschetz element");
    println!("l = {} after {} trial(s)", ring.format(&w.ell), search.trials_used);
    for s in &w.steps {
        println!("  l^{}: M_{} -> M_{}  rank {} ({}x{})", s.exponent, s.k, s.k + s.exponent, s.rank, s.target_dim, s.source_dim);
    }
    let x0 = ring.parse("x0", gradus::Family::Primal, None).unwrap();
    let p = slp_check(&alg, &x0).unwrap();
    println!("x0 ranks {:?}, Lefschetz: {}", p.ranks(), p.verdict);
}
