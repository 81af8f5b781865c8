//! The special cubic: its five nodes, defects of point sets and the defect
//! identity for its Milnor algebra.

use gradus::jacobian::MilnorAlgebra;
use gradus::singular::{brute_singular_search, check_lemma_defect, coordinate_points, defect, is_node, special_q};
use gradus::{PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let q = special_q(&ring, 3).unwrap();
    println!("Q = {}", ring.format(&q));
    let found = brute_singular_search(&ring, &q, 7).unwrap();
    println!("singular points over F_7: {found:?}");
    let pts = coordinate_points(&Rationals, 5);
    let nodes = pts.iter().filter(|p| is_node(&ring, &q, p, None).unwrap()).count();
    println!("nodes among the coordinate points: {nodes}");
    for k in 0..4 {
        println!("defect_{k} = {}", defect(&ring, &pts, k).defect);
    }
    let alg = MilnorAlgebra::new(&ring, &q).unwrap();
    for k in 0..=3 {
        let c = check_lemma_defect(&alg, &pts, k).unwrap();
        println!("k = {k}: dim M_{} = {} = {} + {} ({})", 5 - k, c.lhs, c.reference, c.defect, c.holds);
    }
}
