//! Smoothness certificates for hypersurfaces and for complete
//! intersections of a cubic and a quadric.

use gradus::jacobian::{ci_smooth, is_smooth_hypersurface, CiOptions};
use gradus::random::{random_poly, stream};
use gradus::{Family, PolyRing, Rationals};

fn main() {
    let ring = PolyRing::new(Rationals, 5);
    let parse = |s: &str| ring.parse(s, Family::Primal, None).unwrap();

    let fermat = parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3");
    let c = is_smooth_hypersurface(&ring, &fermat).unwrap();
    println!("Fermat cubic: {} at degree {:?} ({})", c.verdict.as_str(), c.degree, c.note);

    let cone = parse("x0^3 + x1^3 + x2^3");
    let c = is_smooth_hypersurface(&ring, &cone).unwrap();
    println!("cone: {} ({})", c.verdict.as_str(), c.note);

    let quadric = random_poly(&ring, &mut stream(0), 2, 5);
    let y = ci_smooth(&ring, &fermat, &quadric, CiOptions::default()).unwrap();
    println!("F = Q = 0 for a random Q: {} at degree {:?}", y.verdict.as_str(), y.degree);

    let y = ci_smooth(&ring, &fermat, &parse("x0^2"), CiOptions::default()).unwrap();
    println!("F = x0^2 = 0: {} with point {:?} over {:?}", y.verdict.as_str(), y.point, y.point_field);
}
