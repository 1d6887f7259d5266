//! Points of a Wronski fiber recovered from the Bethe spectrum, their
//! exponents, and a comparison with the closed-form fiber for `N = 2`.

use bethe_schubert::algebra::indicial::Location;
use bethe_schubert::algebra::scalar::{Complex, Rational};
use bethe_schubert::bethe::SpectrumOptions;
use bethe_schubert::rep::{Partition, ProblemSpec};
use bethe_schubert::schubert::{
    brute_force_fiber_n2, exponents_of, fiber_via_bethe, fundamental_operator, same_fiber, CellChart, FiberMode,
};

fn describe(spec: &ProblemSpec, mode: FiberMode) -> bethe_schubert::Result<()> {
    let opts = SpectrumOptions::default();
    let fiber = fiber_via_bethe(spec, mode, &opts)?;
    println!("{mode:?}: N = {}, λ = {}, Q(u) = {}", spec.n_gl, spec.lambda, spec.q_poly());
    println!("  {} points, {} with multiplicity", fiber.points.len(), fiber.count_with_multiplicity());
    for p in &fiber.points {
        let coords: Vec<String> = p.point.coords.iter().map(|z| if z.im.abs() < 1e-12 { format!("{:.6}", z.re) } else { format!("{z:.6}") }).collect();
        println!("  mult {}  coordinates {coords:?} on {:?}", p.multiplicity, p.point.chart.coords);
        let op = fundamental_operator(&p.point)?;
        for b in &spec.points {
            let at = Location::Point(Complex::new(num_traits::ToPrimitive::to_f64(b).unwrap(), 0.0));
            println!("      exponents at {b}: {:?}", exponents_of(&op, &at, opts.tol)?);
        }
        println!("      exponents at ∞: {:?}", exponents_of(&op, &Location::Infinity, opts.tol)?);
    }

    if spec.n_gl == 2 && spec.n() <= 3 {
        let chart = CellChart::for_partition(&spec.lambda)?;
        let oracle = brute_force_fiber_n2(&chart, &spec.q_poly())?;
        let ours: Vec<_> = fiber.points.iter().map(|p| (p.point.clone(), p.multiplicity)).collect();
        println!("  closed form agrees: {}", same_fiber(&ours, &oracle, 1e-6));
    }
    println!();
    Ok(())
}

fn main() -> bethe_schubert::Result<()> {
    let p = |v: &[usize]| Partition::new(v, 2);
    let r = |k: i64| Rational::from_integer(k.into());

    // three distinct real points: transversal, two real points
    let tensor = ProblemSpec::new_tensor(2, vec![p(&[1])?; 3], p(&[2, 1])?, vec![r(0), r(1), r(2)])?;
    describe(&tensor, FiberMode::IrreducibleTensor)?;

    // Wr = u³: a single point counted twice
    let weyl = ProblemSpec::new_weyl(2, p(&[2, 1])?, vec![r(0)], vec![3])?;
    describe(&weyl, FiberMode::Weyl)?;

    // points read off the coefficients of u² − a₁u + a₂ = u(u − 1)
    let from_coefficients = ProblemSpec::weyl_from_coefficients(2, p(&[1, 1])?, vec![r(1), r(0)])?;
    describe(&from_coefficients, FiberMode::Weyl)?;
    Ok(())
}
