//! Exact rank, RREF and kernels over the rationals and over F_p.

use gradus::linalg::kernel;
use gradus::{Field, Matrix, PrimeField, Rationals};
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let m = Matrix::from_rows(
        vec![
            vec![q(1, 1), q(2, 1), q(3, 1), q(4, 1)],
            vec![q(1, 2), q(1, 1), q(3, 2), q(2, 1)],
            vec![q(0, 1), q(1, 3), q(-1, 1), q(5, 1)],
        ],
        4,
    );
    let e = Rationals.rref(&m);
    println!("rank over Q: {}", e.rank());
    println!("pivots: {:?}", e.pivots());
    for row in e.basis().row_iter() {
        let cells: Vec<String> = row.iter().map(|x| Rationals.format(x)).collect();
        println!("  [{}]", cells.join(", "));
    }
    let k = kernel(&Rationals, &m);
    println!("kernel dimension: {}", k.rows());

    let f7 = PrimeField::new(7).unwrap();
    let m7 = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 5]], 3);
    println!("rank over F_7: {}", f7.rank(&m7));
}
