//! Segre types of catalog pencils at seeded sample points.

use hydroham::catalog::{catalog, find};
use hydroham::pencil::{affinor, segre_type};

fn main() -> hydroham::Result<()> {
    let entries = catalog()?;
    for id in ["two-component", "three-component-nonconstant-eigenvalue", "mokhov-n4", "block-4-nonconstant", "complex-pair-normal"] {
        let e = find(&entries, id).expect("known id");
        let l = affinor(e.spec.metric(0), e.spec.metric(1))?;
        let rep = segre_type(&l, None)?;
        let values: Vec<String> = rep.eigenvalues.iter().map(|x| x.value.to_string()).collect();
        println!("{id:40} {} consistent={} eigenvalues at sample point: {}", rep.symbol(), rep.consistent, values.join(", "));
    }
    Ok(())
}
