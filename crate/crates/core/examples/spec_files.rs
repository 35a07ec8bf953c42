//! Write a catalog entry as a JSON operator file, read it back, verify it.

use hydroham::catalog::{catalog, find};
use hydroham::cli::{specialize_entry, OperatorSpecFile, ReportFile};
use hydroham::tensor::{verify_operator, VerifyOptions, DEFAULT_SEED};

fn main() -> hydroham::Result<()> {
    let entries = catalog()?;
    let e = find(&entries, "jordan-block-n4").expect("known id");
    let (spec, kappa) = specialize_entry(e, &[])?;
    let file = OperatorSpecFile::from_spec(&spec, Some(format!("{} with kappa = {kappa:?}", e.id)))?;
    let text = file.to_json();
    println!("{text}");

    let back = OperatorSpecFile::from_json(&text)?.to_spec()?;
    let opts = VerifyOptions::for_size(back.n(), DEFAULT_SEED);
    let rep = ReportFile::new(back.n(), back.d(), opts.seed, verify_operator(&back, opts)?, None);
    print!("{}", rep.to_text());
    Ok(())
}
