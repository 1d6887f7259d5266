//! Graded characters of singular subspaces and of Schubert cells, checked
//! against each other as truncated q-series.

use bethe_schubert::algebra::scalar::format_rational;
use bethe_schubert::rep::character::{fake_degree, graded_character_from_model, q_pochhammer};
use bethe_schubert::rep::{graded_character_cell, graded_character_weyl, partitions_of, QSeries};

const TRUNC: usize = 12;

fn show(s: &QSeries) -> String {
    s.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn main() -> bethe_schubert::Result<()> {
    for n_gl in 2..=3 {
        for n in 1..=4 {
            for lam in partitions_of(n, n_gl) {
                let weyl = graded_character_weyl(&lam, TRUNC);
                let lhs = weyl.div(&q_pochhammer(n, TRUNC))?;
                let cell = graded_character_cell(&lam, lam.get(0) + n_gl, TRUNC)?;
                let rhs = QSeries::monomial(lam.n_statistic(), TRUNC).mul(&cell);
                let verdict = match lhs.first_difference(&rhs) {
                    None => "equal".to_string(),
                    Some(k) => format!("differ at q^{k}"),
                };
                println!("N={n_gl} λ={lam:<9} dim={:<3} {verdict}", format_rational(&weyl.value_at_one()));
                println!("    ch W^sing   {}", show(&weyl));
                // same polynomial through two more routes
                let fd = fake_degree(&lam, TRUNC);
                let model = graded_character_from_model(&lam, TRUNC)?;
                println!("    fake degree {}   coinvariants {}", show(&fd), show(&model));
            }
        }
    }
    Ok(())
}
