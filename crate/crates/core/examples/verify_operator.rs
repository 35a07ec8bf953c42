//! Verify the two-component operator with both criteria, then break it.

use hydroham::exact::{Matrix, Rational};
use hydroham::tensor::{
    mokhov_conditions, nijenhuis_killing_conditions, verify_operator, LinearMetric, OperatorSpec, VerifyOptions,
};

fn second_metric(c11: i64) -> hydroham::Result<LinearMetric> {
    // g̃ = [[c11 u1, u2], [u2, 0]]
    let zero = Matrix::filled(2, 2, Rational::zero());
    LinearMetric::from_parts(
        &zero,
        &[(0, 0, 0, Rational::from(c11)), (0, 1, 1, Rational::one()), (1, 0, 1, Rational::one())],
    )
}

fn main() -> hydroham::Result<()> {
    let g = LinearMetric::antidiagonal(2, 2);
    for c11 in [-2, -3] {
        let h = second_metric(c11)?;
        let opts = VerifyOptions::symbolic();
        let mokhov = mokhov_conditions(&g, &h, opts)?;
        let nk = nijenhuis_killing_conditions(&g, &h, opts)?;
        println!("g11 = {c11} u1: mokhov {}, nijenhuis-killing {}", mokhov.verdict, nk.verdict);
        for c in nk.failures() {
            let w = c.witness.as_ref().expect("failures carry a witness");
            println!("  {} fails at {:?}: {}", c.name, w.indices, w.residual);
        }
        let spec = OperatorSpec::new(vec![g.clone(), h])?;
        let sampled = verify_operator(&spec, VerifyOptions::sampled(7))?;
        println!("  sampled verdict: {}", sampled.verdict);
    }
    Ok(())
}
