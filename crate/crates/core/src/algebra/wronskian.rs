//! Wronskians of polynomial tuples.

use super::diffop::rdet;
use super::poly::Poly;
use super::scalar::{Field, Ring};
use crate::{Error, Result};

/// `det [f_j^{(i)}]_{i,j}`, rows indexed by derivative order.
pub fn wronskian<R: Ring>(polys: &[Poly<R>]) -> Result<Poly<R>> {
    if polys.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = polys.len();
    let mut rows = Vec::with_capacity(n);
    let mut cur: Vec<Poly<R>> = polys.to_vec();
    for _ in 0..n {
        rows.push(cur.clone());
        cur = cur.iter().map(|p| p.derivative()).collect();
    }
    rdet(&rows, &Poly::one())
}

/// Monic Wronskian together with the constant factor it was divided by.
/// Linearly dependent inputs give a zero Wronskian, reported as an error.
pub fn wronskian_monic<K: Field>(polys: &[Poly<K>]) -> Result<(Poly<K>, K)> {
    let w = wronskian(polys)?;
    let lc = w
        .leading()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("linearly dependent polynomials".into()))?;
    Ok((w.monic()?, lc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::MPoly;
    use crate::algebra::scalar::{rat, Rational};

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn small_wronskians() {
        assert_eq!(wronskian(&[p(&[1]), p(&[0, 1])]).unwrap(), p(&[1]));
        let w = wronskian(&[p(&[1, 0, 1]), p(&[0, 1])]).unwrap();
        assert_eq!(w, p(&[1, 0, -1]));
        let (m, c) = wronskian_monic(&[p(&[1, 0, 1]), p(&[0, 1])]).unwrap();
        assert_eq!(m, p(&[-1, 0, 1]));
        assert_eq!(c, rat(-1));
        assert!(wronskian::<Rational>(&[]).is_err());
    }

    #[test]
    fn symbolic_cell_wronskian() {
        // f1 = u^3 + f11 u^2 + f13, f2 = u + f21 with (f11, f13, f21) = (x0, x1, x2)
        let c = |v: i64| MPoly::from_i64(v);
        let (f11, f13, f21) = (MPoly::var(0), MPoly::var(1), MPoly::var(2));
        let f1 = Poly::new(vec![f13.clone(), c(0), f11.clone(), c(1)]);
        let f2 = Poly::new(vec![f21.clone(), c(1)]);
        let w = wronskian(&[f1, f2]).unwrap();
        let expect = Poly::new(vec![
            f13,
            -(c(2) * f11.clone() * f21.clone()),
            -(f11 + c(3) * f21),
            c(-2),
        ]);
        assert_eq!(w, expect);
    }
}
