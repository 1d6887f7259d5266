//! Singular weight subspaces.

use crate::algebra::matrix::DenseMat;
use crate::algebra::scalar::{Rational, Ring};
use crate::rep::module::ModuleRep;
use crate::rep::partition::Partition;
use crate::{Error, Result};

/// Basis of the vectors of weight `λ` killed by every `e_{i,i+1}`.
///
/// The columns of `basis` are in reduced echelon form: column `k` has a 1 in
/// row `pivots[k]` and every other column vanishes there.
#[derive(Clone, Debug)]
pub struct SingularWeightSpace {
    pub lambda: Partition,
    pub basis: DenseMat<Rational>,
    pub pivots: Vec<usize>,
}

impl SingularWeightSpace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of a vector of the subspace (read at the pivots).
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Matrix of `x` on the subspace. Fails when the subspace is not
    /// invariant under `x`.
    pub fn restrict(&self, x: &DenseMat<Rational>) -> Result<DenseMat<Rational>> {
        let r = self.dim();
        let mut cols = Vec::with_capacity(r);
        for k in 0..r {
            let img = x.mul_vec(&self.basis.column(k));
            let c = self.coordinates(&img);
            let back = self.basis.mul_vec(&c);
            if back != img {
                return Err(Error::CheckFailed("subspace is not invariant".into()));
            }
            cols.push(c);
        }
        Ok(DenseMat::from_columns(r, &cols))
    }
}

/// Kernel of the stacked `e_{i,i+1}` on the weight-`λ` subspace.
pub fn singular_space(m: &ModuleRep, lambda: &Partition) -> SingularWeightSpace {
    singular_space_in(m, lambda, None)
}

/// As [`singular_space`], restricted further to the given basis indices
/// (used for graded pieces).
pub fn singular_space_in(m: &ModuleRep, lambda: &Partition, within: Option<&[usize]>) -> SingularWeightSpace {
    let w = lambda.weight();
    let mut idx = m.weight_indices(&w);
    if let Some(within) = within {
        idx.retain(|k| within.contains(k));
    }
    let n_gl = m.n_gl;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n_gl.saturating_sub(1) {
        let e = m.e(i, i + 1);
        for r in 0..m.dim {
            let row: Vec<Rational> = idx.iter().map(|&c| e.get(r, c).clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..idx.len())
            .map(|k| (0..idx.len()).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        DenseMat::from_rows(rows).expect("rectangular").nullspace(0.0)
    };
    // Embed and bring to reduced echelon form (pivot = first nonzero index).
    let full: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|v| {
            let mut f = vec![Rational::zero(); m.dim];
            for (x, &k) in v.iter().zip(&idx) {
                f[k] = x.clone();
            }
            f
        })
        .collect();
    if full.is_empty() {
        return SingularWeightSpace {
            lambda: lambda.clone(),
            basis: DenseMat::zeros(m.dim, 0),
            pivots: Vec::new(),
        };
    }
    let red = DenseMat::from_rows(full).expect("rectangular").rref(0.0);
    let r = red.pivots.len();
    let cols: Vec<Vec<Rational>> = (0..r).map(|k| red.matrix.row(k).to_vec()).collect();
    SingularWeightSpace {
        lambda: lambda.clone(),
        basis: DenseMat::from_columns(m.dim, &cols),
        pivots: red.pivots,
    }
}
