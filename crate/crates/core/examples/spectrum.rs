//! Joint spectrum of the Bethe algebra on a singular weight space.
//!
//! `cargo run --example spectrum [problem.json]`; without an argument the
//! three-point tensor product `C² ⊗ C² ⊗ C²` at `b = (0, 1, 2)` is used.

use bethe_schubert::algebra::{Complex, Poly};
use bethe_schubert::bethe::simultaneous_spectrum;
use bethe_schubert::schubert::family_for;
use bethe_schubert::verify::ProblemFile;

fn show(p: &Poly<Complex>) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.norm() > 1e-12)
        .map(|(k, c)| {
            let c = if c.im.abs() < 1e-12 { format!("{:.6}", c.re) } else { format!("({:.6}{:+.6}i)", c.re, c.im) };
            match k {
                0 => c,
                1 => format!("{c}·u"),
                _ => format!("{c}·u^{k}"),
            }
        })
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

const DEFAULT: &str = r#"{ "N": 2, "Lambda": [[1], [1], [1]], "lambda": [2, 1], "points": ["0", "1", "2"] }"#;

fn main() -> bethe_schubert::Result<()> {
    let input = match std::env::args().nth(1) {
        Some(path) => ProblemFile::read(path.as_ref())?,
        None => ProblemFile::from_json(DEFAULT)?,
    };
    let spec = input.to_spec()?;
    let fam = family_for(&spec, input.fiber_mode())?;
    println!("singular space dimension {}, algebra dimension {}", fam.dim, fam.algebra_dimension());
    fam.check_commutative()?;

    for (k, e) in simultaneous_spectrum(&fam, &input.spectrum_options())?.iter().enumerate() {
        println!("eigenvalue {k}: multiplicity {}, eigenline {}, residual {:.1e}", e.multiplicity, e.eigenline_dim, e.residual);
        for (i, eta) in e.eta.iter().enumerate() {
            println!("    h_{}(u) = ({}) / ({})", i + 1, show(eta), show(&e.denom));
        }
    }
    Ok(())
}
