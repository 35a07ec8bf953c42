//! The trivial Frobenius structure on C^n and its intersection form.

use hydroham::frobenius::{build_cp_frobenius, check_frobenius_axioms, intersection_form};

fn main() -> hydroham::Result<()> {
    for n in 2..=5 {
        let f = build_cp_frobenius(n)?;
        let rep = check_frobenius_axioms(&f);
        let ef = &rep.euler_factors;
        println!(
            "n = {n}: axioms {} | Lie_E factors e {:?} c {:?} g {:?} | potential {}",
            rep.passed(),
            ef.unity,
            ef.product,
            ef.metric,
            f.potential()
        );
        println!("  intersection form rows: {:?}", intersection_form(&f)?.to_serial().entries);
    }
    Ok(())
}
