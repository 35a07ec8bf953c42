//! Walk the catalog: verify every entry and check its recorded Segre data.

use std::time::Instant;

use hydroham::catalog::catalog;
use hydroham::tensor::{verify_operator, VerifyOptions};

fn main() -> hydroham::Result<()> {
    let start = Instant::now();
    let entries = catalog()?;
    for e in &entries {
        let rep = verify_operator(&e.spec, VerifyOptions::symbolic())?;
        let class = match &e.segre {
            Some(s) => format!("{s} {}", if e.check_classification()?.passed() { "ok" } else { "MISMATCH" }),
            None => "-".into(),
        };
        println!("{:44} n={} d={} verdict={} segre={class}", e.id, e.n(), e.d(), rep.verdict);
    }
    println!("{} entries in {:.1?}", entries.len(), start.elapsed());
    Ok(())
}
