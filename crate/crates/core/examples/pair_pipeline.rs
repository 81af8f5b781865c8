//! From a smooth cubic F to a pair (F, Q) with a smooth cubic C: find an
//! apolar smooth cubic G, build Q, certify, and reverify from the pair.

use gradus::jacobian::{CiOptions, MilnorAlgebra};
use gradus::pipeline::{construct_pair, membership_u, theorem14_check, verify_corollary, Sampling};
use gradus::random::{random_poly, stream};
use gradus::{PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let f = random_poly(&ring, &mut stream(4), 3, 10);
    let alg = MilnorAlgebra::new(&ring, &f).unwrap();
    let s = Sampling::default();

    let m = membership_u(&alg, s).unwrap();
    let g = m.witness().expect("F in U").clone();
    println!("G = {}", ring.format(&g));

    let pc = construct_pair(&alg, &g, s, 10, CiOptions::default()).unwrap();
    let pair = pc.pair.expect("smooth Y");
    println!("Q = {}", ring.format(&pair.q));
    println!("Y smooth at degree {:?}, C = G: {}, C {}", pair.y_smooth.degree, pair.c_matches_witness, pair.c_smooth.verdict.as_str());

    let cor = verify_corollary(&alg, &pair.q, CiOptions::default()).unwrap();
    println!("items: {} {} {}", cor.item_i(), cor.item_ii(), cor.item_iii());

    let t14 = theorem14_check(&alg, s, CiOptions::default()).unwrap();
    println!("injective l^2 and Q found: {}", t14.passes());
}
