//! Lie-series normalization of single-Jordan-block pencils.

use hydroham::cli::render_normal_form;
use hydroham::exact::Rational;
use hydroham::pencil::{lie_flow_normalize, lie_flow_normalize_constant_eig, JordanFamilyCoeffs};

fn xi(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

fn main() -> hydroham::Result<()> {
    for (n, coeffs) in [(5, xi(&[1, 2, 3, 4])), (7, xi(&[1, -1, 2, 5, 0, 3]))] {
        let nf = lie_flow_normalize(&JordanFamilyCoeffs::new(n, coeffs, Rational::zero())?)?;
        println!("n = {n}: {}", render_normal_form(&nf));
        for s in &nf.steps {
            println!("  X_({}) weight {} t = {:?}", s.k, s.weight, s.t);
        }
    }
    let c = JordanFamilyCoeffs::new(5, xi(&[0, 1, 3, 4]), Rational::from(2))?;
    let nf = lie_flow_normalize_constant_eig(&c)?;
    println!("n = 5, constant eigenvalue: {}", render_normal_form(&nf));
    Ok(())
}
