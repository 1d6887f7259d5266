//! Partitions with at most N parts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Nonincreasing sequence of nonnegative integers, padded with zeros to
/// exactly `N` entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: &[usize], n_parts: usize) -> Result<Self> {
        let nonzero = parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1);
        if nonzero > n_parts {
            return Err(Error::InvalidInput(format!(
                "partition {parts:?} has more than {n_parts} parts"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not nonincreasing")));
        }
        let mut v = parts[..nonzero].to_vec();
        v.resize(n_parts, 0);
        Ok(Partition { parts: v })
    }

    /// Parses integers that may be given as signed values (JSON input).
    pub fn from_signed(parts: &[i64], n_parts: usize) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidInput(format!("negative part in {parts:?}")));
        }
        let v: Vec<usize> = parts.iter().map(|&p| p as usize).collect();
        Self::new(&v, n_parts)
    }

    pub fn zero(n_parts: usize) -> Self {
        Partition { parts: vec![0; n_parts] }
    }

    /// `(m, 0, ..., 0)`.
    pub fn row(m: usize, n_parts: usize) -> Self {
        let mut parts = vec![0; n_parts];
        if n_parts > 0 {
            parts[0] = m;
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn get(&self, i: usize) -> usize {
        self.parts[i]
    }

    /// `Σ (i-1) λ_i` with 1-based `i`.
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// As a weight vector.
    pub fn weight(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| p as i64).collect()
    }

    /// Weyl dimension `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
    pub fn weyl_dimension(&self) -> u128 {
        let n = self.parts.len();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..n {
            for j in i + 1..n {
                num *= (self.parts[i] + j - i - self.parts[j]) as u128;
                den *= (j - i) as u128;
            }
        }
        num / den
    }

    /// Row lengths of the nonzero rows.
    pub fn rows(&self) -> Vec<usize> {
        self.parts.iter().copied().filter(|&p| p > 0).collect()
    }

    /// Product of hook lengths of the Young diagram, as the list of hooks.
    pub fn hooks(&self) -> Vec<usize> {
        let rows = self.rows();
        let mut out = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..r {
                let arm = r - j - 1;
                let leg = rows[i + 1..].iter().filter(|&&l| l > j).count();
                out.push(arm + leg + 1);
            }
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` with at most `n_parts` parts, in decreasing
/// lexicographic order.
pub fn partitions_of(n: usize, n_parts: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, n_parts, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|v| Partition::new(&v, n_parts).expect("valid by construction"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(&[1, 2], 2).is_err());
        assert!(Partition::new(&[1, 1, 1], 2).is_err());
        assert_eq!(Partition::new(&[2, 1, 0, 0], 2).unwrap().parts(), &[2, 1]);
        assert!(Partition::from_signed(&[1, -1], 2).is_err());
    }

    #[test]
    fn counts_and_dimensions() {
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(partitions_of(5, 3).len(), 5);
        assert_eq!(partitions_of(0, 2), vec![Partition::zero(2)]);
        assert_eq!(Partition::new(&[2, 0], 2).unwrap().weyl_dimension(), 3);
        assert_eq!(Partition::new(&[2, 1, 0], 3).unwrap().weyl_dimension(), 8);
        assert_eq!(Partition::new(&[2, 1], 2).unwrap().hooks(), vec![3, 1, 1]);
    }
}
