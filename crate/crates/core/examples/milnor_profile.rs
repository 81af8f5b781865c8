//! Hilbert function of the Milnor algebra of a cubic threefold, compared
//! with the smooth reference.

use gradus::jacobian::{milnor_profile, smooth_reference_dims, MilnorAlgebra};
use gradus::{Family, PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let reference = smooth_reference_dims(5, 3).unwrap();
    println!("smooth reference: {reference:?}");
    for text in ["x0^3 + x1^3 + x2^3 + x3^3 + x4^3", "x0*x1*x2 + x0*x1*x3 + x0*x1*x4 + x0*x2*x3 + x0*x2*x4 + x0*x3*x4 + x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4"] {
        let f = ring.parse(text, Family::Primal, None).unwrap();
        let p = milnor_profile(&ring, &f, 7).unwrap();
        let dims: Vec<usize> = p.dims.values().copied().collect();
        println!("{text}\n  dims M(F)_k, k = 0..7: {dims:?}");
    }
    let f = ring.parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", Family::Primal, None).unwrap();
    let alg = MilnorAlgebra::new(&ring, &f).unwrap();
    let j3 = alg.jacobian_piece(3);
    println!("Fermat: dim J_3 = {}, basis of M(F)_3 uses {} monomials", j3.dim(), alg.quotient_basis(3).len());
}
