//! Differential operators with rational coefficients and the row
//! determinant `D = rdet(δ_ij ∂ − e_ji(u))` on a small module.

use bethe_schubert::algebra::diffop::NcRing;
use bethe_schubert::algebra::scalar::{Rational, Ring};
use bethe_schubert::algebra::{rdet, DiffOp, Poly, RatFunc};
use bethe_schubert::bethe::spectrum::scalar_eigenvalues;
use bethe_schubert::bethe::{restrict, universal_diffop};
use bethe_schubert::rep::{build_tensor_evaluation, singular_space, Partition, ProblemSpec};

fn show(op: &DiffOp<RatFunc<Rational>>) -> String {
    let terms: Vec<String> =
        op.coeffs().iter().enumerate().map(|(k, c)| format!("[{}]/[{}] ∂^{k}", c.numer(), c.denom())).collect();
    terms.join(" + ")
}

fn main() -> bethe_schubert::Result<()> {
    let r = |k: i64| Rational::from_i64(k);

    // ∂ ∘ 1/(u − 1) = 1/(u − 1) ∂ − 1/(u − 1)²
    let f = RatFunc::new(Poly::one(), Poly::new(vec![r(-1), r(1)]))?;
    let lhs = DiffOp::d(1).nc_mul(&DiffOp::scalar(f.clone()));
    println!("∂∘f        = {}", show(&lhs));
    println!("f∂ + f'    = {}", show(&DiffOp::new(vec![f.derivative(), f])));

    // rows are expanded left to right, so order matters for operators
    let d = DiffOp::<RatFunc<Rational>>::d(1);
    let u = DiffOp::scalar(RatFunc::from_poly(Poly::new(vec![r(0), r(1)])));
    let m = vec![vec![d.clone(), u.clone()], vec![u, d]];
    println!("rdet [[∂, u], [u, ∂]] = {}", show(&rdet(&m, &DiffOp::scalar(RatFunc::one()))?));

    // C² ⊗ C² at b = (0, 1), λ = (1, 1)
    let v = Partition::new(&[1], 2)?;
    let spec = ProblemSpec::new_tensor(2, vec![v.clone(), v], Partition::new(&[1, 1], 2)?, vec![r(0), r(1)])?;
    let module = build_tensor_evaluation(&spec)?;
    let fam = universal_diffop(&module, &spec.q_poly())?;
    println!("\nmodule dimension {}, Q(u) = {}", fam.dim, fam.denom);

    // the singular space of weight (1, 1) is a line: B_i act by scalars
    let s = singular_space(&module, &spec.lambda);
    let restricted = restrict(&fam, &s)?;
    for (i, eta) in scalar_eigenvalues(&restricted).expect("one-dimensional").iter().enumerate() {
        println!("B_{}(u) = ({eta}) / Q(u)", i + 1);
    }
    Ok(())
}
