//! Finite abelian p-groups given by their cyclic factors.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::arith::{is_prime, pow_u64};
use crate::error::{Error, Result};

/// `Z/p^e1 x ... x Z/p^es` with `e1 >= ... >= es >= 1`.
///
/// Elements are coordinate vectors, indexed in mixed radix with the first
/// coordinate least significant, so index 0 is the zero vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    p: u32,
    exponents: Vec<u32>,
    moduli: Vec<u32>,
}

impl FinAbGroup {
    pub fn new(p: u32, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        if exponents.iter().any(|&e| e == 0) {
            return Err(Error::InvalidParameters(
                "cyclic factor exponents must be positive".into(),
            ));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        let total: u32 = exponents.iter().sum();
        if (p as f64).powi(total as i32) > u32::MAX as f64 {
            return Err(Error::InvalidParameters("group too large".into()));
        }
        let moduli = exponents.iter().map(|&e| pow_u64(p as u64, e) as u32).collect();
        Ok(Self {
            p,
            exponents,
            moduli,
        })
    }

    pub fn cyclic(p: u32, k: u32) -> Result<Self> {
        Self::new(p, vec![k])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn encode(&self, coords: &[u32]) -> usize {
        let mut idx = 0usize;
        for (c, &m) in coords.iter().zip(&self.moduli).rev() {
            idx = idx * m as usize + (*c % m) as usize;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = idx % m as usize;
                idx /= m as usize;
                c as u32
            })
            .collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut idx = 0usize;
        let mut scale = 1usize;
        for &m in &self.moduli {
            let m = m as usize;
            let s = (a % m + b % m) % m;
            idx += s * scale;
            scale *= m;
            a /= m;
            b /= m;
        }
        idx
    }

    pub fn neg(&self, a: usize) -> usize {
        let coords: Vec<u32> = self
            .decode(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| (m - c) % m)
            .collect();
        self.encode(&coords)
    }

    /// Full addition table, row-major.
    pub fn addition_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.add(a, b) as u32);
            }
        }
        table
    }

    /// The unit vector of factor `i`.
    pub fn basis_vector(&self, i: usize) -> usize {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        self.encode(&coords)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
