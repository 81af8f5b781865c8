//! Perp spaces under the polar pairing and the Macaulay duality pairing of
//! a Milnor algebra.

use gradus::apolarity::{macaulay_pairing_matrix, perp_graded, socle_functional};
use gradus::jacobian::MilnorAlgebra;
use gradus::singular::special_q;
use gradus::{Family, Field, PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let q = special_q(&ring, 3).unwrap();
    let alg = MilnorAlgebra::new(&ring, &q).unwrap();
    let perp = perp_graded(&ring, &alg.jacobian_piece(3)).unwrap();
    println!("dim (J_3)^perp = {}", perp.dim());
    for g in perp.basis_polys(&ring).iter().take(3) {
        println!("  {}", ring.format(g));
    }
    let dual_fermat = ring.parse("y0^3 + y1^3 + y2^3 + y3^3 + y4^3", Family::Dual, None).unwrap();
    let x = ring.parse("x0^3", Family::Primal, None).unwrap();
    println!("<x0^3, sum y_i^3> = {}", Rationals.format(&ring.polar_pair(&x, &dual_fermat).unwrap()));

    let fermat = ring.parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", Family::Primal, None).unwrap();
    let alg = MilnorAlgebra::new(&ring, &fermat).unwrap();
    let lambda = socle_functional(&alg).unwrap();
    for j in 0..=2 {
        let m = macaulay_pairing_matrix(&alg, &lambda, j).unwrap();
        println!("pairing M_{j} x M_{}: {}x{} of rank {}", 5 - j, m.rows(), m.cols(), Rationals.rank(&m));
    }
}
