use serde::{Deserialize, Serialize};
use std::fmt;

use crate::abelian::FinAbGroup;
use crate::arith::pow_u64;
use crate::error::{Error, Result};

/// An endomorphism of `Z/p^e1 x ... x Z/p^es`.
///
/// Entry `(i, j)` is the map `x_j -> a_ij x_j` from factor `j` into factor
/// `i`, reduced mod `p^ei`. It is well defined exactly when
/// `a_ij = 0 mod p^(ei - ej)` for `ei > ej`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndoMatrix {
    dim: usize,
    entries: Vec<u32>,
}

impl EndoMatrix {
    pub fn new(m: &FinAbGroup, rows: Vec<Vec<u32>>) -> Result<Self> {
        let dim = m.rank();
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameters(format!("expected a {dim}x{dim} matrix")));
        }
        let moduli = m.moduli();
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&x| x % moduli[i]))
            .collect();
        let a = Self { dim, entries };
        if !a.is_well_defined(m) {
            return Err(Error::InvalidParameters(
                "entry violates the divisibility constraint".into(),
            ));
        }
        Ok(a)
    }

    pub(crate) fn from_entries(dim: usize, entries: Vec<u32>) -> Self {
        Self { dim, entries }
    }

    pub fn identity(m: &FinAbGroup) -> Self {
        let dim = m.rank();
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % m.moduli()[i];
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn is_well_defined(&self, m: &FinAbGroup) -> bool {
        let e = m.exponents();
        let p = m.p() as u64;
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                e[i] <= e[j] || self.entry(i, j) as u64 % pow_u64(p, e[i] - e[j]) == 0
            })
        })
    }

    pub fn apply(&self, m: &FinAbGroup, x: &[u32]) -> Vec<u32> {
        let moduli = m.moduli();
        (0..self.dim)
            .map(|i| {
                let s: u64 = (0..self.dim)
                    .map(|j| self.entry(i, j) as u64 * x[j] as u64)
                    .sum();
                (s % moduli[i] as u64) as u32
            })
            .collect()
    }

    pub fn apply_index(&self, m: &FinAbGroup, x: usize) -> usize {
        m.encode(&self.apply(m, &m.decode(x)))
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, m: &FinAbGroup, other: &EndoMatrix) -> EndoMatrix {
        let moduli = m.moduli();
        let d = self.dim;
        let mut entries = vec![0u32; d * d];
        for i in 0..d {
            for j in 0..d {
                let s: u64 = (0..d)
                    .map(|k| self.entry(i, k) as u64 * other.entry(k, j) as u64)
                    .sum();
                entries[i * d + j] = (s % moduli[i] as u64) as u32;
            }
        }
        EndoMatrix { dim: d, entries }
    }

    pub fn add(&self, m: &FinAbGroup, other: &EndoMatrix) -> EndoMatrix {
        let d = self.dim;
        let moduli = m.moduli();
        let entries = (0..d * d)
            .map(|idx| (self.entries[idx] + other.entries[idx]) % moduli[idx / d])
            .collect();
        EndoMatrix { dim: d, entries }
    }

    pub fn pow(&self, m: &FinAbGroup, e: u64) -> EndoMatrix {
        (0..e).fold(EndoMatrix::identity(m), |acc, _| acc.compose(m, self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// The map on element ids.
    pub fn permutation(&self, m: &FinAbGroup) -> Vec<u32> {
        (0..m.order()).map(|x| self.apply_index(m, x) as u32).collect()
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u32::to_string).collect();
                cells.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_constraint() {
        let m = FinAbGroup::new(2, vec![3, 1]).unwrap();
        // Z/2 -> Z/8 must land in 4Z/8
        assert!(EndoMatrix::new(&m, vec![vec![1, 4], vec![1, 1]]).is_ok());
        assert!(EndoMatrix::new(&m, vec![vec![1, 2], vec![1, 1]]).is_err());
    }

    #[test]
    fn composition_matches_application() {
        let m = FinAbGroup::new(2, vec![3, 1]).unwrap();
        let a = EndoMatrix::new(&m, vec![vec![3, 4], vec![1, 1]]).unwrap();
        let b = EndoMatrix::new(&m, vec![vec![5, 0], vec![1, 1]]).unwrap();
        let ab = a.compose(&m, &b);
        for x in 0..m.order() {
            assert_eq!(ab.apply_index(&m, x), a.apply_index(&m, b.apply_index(&m, x)));
        }
        let id = EndoMatrix::identity(&m);
        assert_eq!(id.compose(&m, &a), a);
        assert_eq!(a.pow(&m, 0), id);
    }
}
