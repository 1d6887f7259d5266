//! Both sides of the eigenspace / fiber-point correspondence, checked item
//! by item for a problem file (default: `data/gl3_vector_triple.json`).

use bethe_schubert::verify::{suite_correspondence, ProblemFile};

fn main() -> bethe_schubert::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/gl3_vector_triple.json").into());
    let input = ProblemFile::read(path.as_ref())?;
    let report = suite_correspondence(&input.to_spec()?, input.fiber_mode(), &input.spectrum_options())?;
    for c in &report.checks {
        println!("{} {:<36} residual {:<9.2e} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.residual, c.detail);
    }
    println!("{}", if report.passed() { "all checks passed" } else { "some checks failed" });
    Ok(())
}
