//! Deforming the special cubic towards a random smooth cubic.

use gradus::pipeline::{deformation_experiment, Sampling};
use gradus::Field;
use gradus::Rationals;

fn main() {
    let rep = deformation_experiment(3, Sampling::default()).unwrap();
    println!("R has {} terms, found after {} draw(s)", rep.r.num_terms(), rep.r_attempts);
    for step in &rep.steps {
        let in_u = step.membership.as_ref().is_some_and(|m| m.witness().is_some());
        println!(
            "t = {:>3}: {:<12} perp dim {:>2}  in U: {in_u}",
            Rationals.format(&step.t),
            step.smooth.as_str(),
            step.perp_dim
        );
    }
    if let Some(t) = rep.smallest_in_u() {
        println!("smallest t certified in U: {}", Rationals.format(t));
    }
}
