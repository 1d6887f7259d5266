//! Wronskians of explicit bases and the symbolic Wronski map of a cell.
//!
//! Run with `cargo run --example wronskian`.

use bethe_schubert::algebra::scalar::{ratio, Rational, Ring};
use bethe_schubert::algebra::{wronskian, wronskian_monic, Poly};
use bethe_schubert::rep::Partition;
use bethe_schubert::schubert::{symbolic_wronskian, wronski_map, CellChart, SchubertPoint};

fn main() -> bethe_schubert::Result<()> {
    let r = |k: i64| Rational::from_i64(k);

    // Wr(u² + 1, u) = 1 − u², so the monic Wronskian has roots ±1.
    let f = Poly::new(vec![r(1), r(0), r(1)]);
    let g = Poly::new(vec![r(0), r(1)]);
    println!("Wr(u²+1, u)       = {}", wronskian(&[f.clone(), g.clone()])?);
    let (monic, lead) = wronskian_monic(&[f, g])?;
    println!("monic             = {monic}  (leading coefficient {lead})");

    // every point of the λ = (2, 1) cell, as a polynomial in the coordinates
    let lam = Partition::new(&[2, 1], 2)?;
    let chart = CellChart::for_partition(&lam)?;
    println!("\ncell λ = {lam}, d = {}, coordinates {:?}", chart.d, chart.coords);
    println!("Wr coefficients   = {:?}  (u^0 first)", symbolic_wronskian(&chart)?.coeffs());

    let p = SchubertPoint::new(chart.clone(), vec![ratio(1, 2); chart.dim()])?;
    println!("basis at f = 1/2  = {:?}", p.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>());
    println!("Wronski map       = {:?}", wronski_map(&p)?.iter().map(|c| c.to_string()).collect::<Vec<_>>());

    let origin = SchubertPoint::<Rational>::origin(chart);
    println!("Wronski map at 0  = {:?}", wronski_map(&origin)?.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(())
}
