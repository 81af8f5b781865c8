//! Graded colon ideals (J_F : Q)_k and the cubic C attached to a pair.

use gradus::apolarity::{colon_graded, extract_c};
use gradus::jacobian::MilnorAlgebra;
use gradus::random::{random_poly, stream};
use gradus::{PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let f = random_poly(&ring, &mut stream(1), 3, 10);
    let q = random_poly(&ring, &mut stream(2), 2, 10);
    let alg = MilnorAlgebra::new(&ring, &f).unwrap();
    for k in 0..=4 {
        let c = colon_graded(&alg, &q, k).unwrap();
        println!("dim (J_F : Q)_{k} = {} of {}", c.dim(), c.ambient_dim());
    }
    let c = extract_c(&alg, &q).unwrap();
    println!("C = {}", ring.format(&c));
}
