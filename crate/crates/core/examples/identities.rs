//! Operator identities on `V^{⊗n}` with evaluation points: the first
//! Bethe coefficient, the central element `Z(x)` and its action on
//! singular vectors.

use bethe_schubert::algebra::scalar::{ratio, Rational};
use bethe_schubert::verify::{suite_identities, suite_identities_all};

fn main() -> bethe_schubert::Result<()> {
    let points: Vec<Rational> = vec![ratio(0, 1), ratio(1, 2), ratio(-3, 1)];
    for n_gl in 2..=3 {
        let report = suite_identities(n_gl, &points)?;
        println!("N = {n_gl}, b = (0, 1/2, −3)");
        for c in &report.checks {
            println!("  {} {:<40} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }

    // random rational points for every N ≤ 3, n ≤ 3
    let all = suite_identities_all(3, 3, 11)?;
    println!("\nrandom sweep: {} checks, {} failures", all.checks.len(), all.failures().count());
    Ok(())
}
