//! Isometries of a flat metric and the dimension of the admissible second
//! metrics for a fixed constant part.

use hydroham::exact::Rational;
use hydroham::pencil::{jordan_g0, killing_vector_basis, solve_jordan_family, solve_linear_conditions};
use hydroham::tensor::LinearMetric;

fn main() -> hydroham::Result<()> {
    let g = LinearMetric::antidiagonal(3, 3);
    let iso = killing_vector_basis(&g)?;
    println!("isometries of the 3x3 antidiagonal metric: {}", iso.vectors.len());

    let fam = solve_linear_conditions(&g, &jordan_g0(3, &Rational::from(2)))?;
    println!("single 3x3 Jordan block: {} free coefficients", fam.dimension);

    for n in 2..=7 {
        println!("Jordan family n = {n}: dimension {}", solve_jordan_family(n)?.dimension);
    }
    Ok(())
}
