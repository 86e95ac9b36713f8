use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::{order_p_automorphisms, AutGroup, EndoMatrix};
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};

/// All `0 <= r < 2^k` with `r^2 - 1 = 2^(k-1) mod 2^k`, by brute force.
pub fn congruence_solver(k: u32) -> BTreeSet<u64> {
    let modulus = 1u64 << k;
    let target = modulus >> 1;
    (0..modulus)
        .filter(|&r| (r * r + modulus - 1) % modulus == target % modulus)
        .collect()
}

/// `{2^(k-2) +- 1, 3 * 2^(k-2) +- 1}` for `k >= 4`, empty below.
pub fn congruence_closed_form(k: u32) -> BTreeSet<u64> {
    if k < 4 {
        return BTreeSet::new();
    }
    let q = 1u64 << (k - 2);
    [q - 1, q + 1, 3 * q - 1, 3 * q + 1].into_iter().collect()
}

/// Square roots of 1 mod `2^k`: `{1, -1, 2^(k-1) +- 1}`.
pub fn involution_corners_closed_form(k: u32) -> BTreeSet<u64> {
    let modulus = 1u64 << k;
    let h = modulus >> 1;
    [1 % modulus, modulus - 1, (h + 1) % modulus, (h + modulus - 1) % modulus]
        .into_iter()
        .collect()
}

fn check_shape(m: &FinAbGroup) -> Result<u32> {
    match m.exponents() {
        [k, 1] if m.p() == 2 && *k >= 2 => Ok(*k),
        _ => Err(Error::InvalidParameters(format!(
            "expected Z/2^k x Z/2 with k >= 2, got {m}"
        ))),
    }
}

/// The type `([m], [n])` of an automorphism of `Z/2^k x Z/2` written as
/// `(alpha, m j; n q, 1)`.
pub fn type_homomorphism(m: &FinAbGroup, a: &EndoMatrix) -> Result<(u8, u8)> {
    let k = check_shape(m)?;
    let upper = a.entry(0, 1) >> (k - 1);
    let lower = a.entry(1, 0) & 1;
    Ok((upper as u8, lower as u8))
}

/// Corners of the automorphisms `A` with `A^2 = 1`, split by `mn = 0` and
/// `mn = 1`.
pub fn involution_corners(aut: &AutGroup) -> Result<(BTreeSet<u64>, BTreeSet<u64>)> {
    let m = aut.module();
    check_shape(m)?;
    let mut plain = BTreeSet::new();
    let mut mixed = BTreeSet::new();
    for a in order_p_automorphisms(aut, true) {
        let mat = aut.matrix(a);
        let (tm, tn) = type_homomorphism(m, mat)?;
        let corner = mat.entry(0, 0) as u64;
        if tm & tn == 1 {
            mixed.insert(corner);
        } else {
            plain.insert(corner);
        }
    }
    Ok((plain, mixed))
}

/// Indexed by `m + 2n`: rows and columns `(0,0), (1,0), (0,1), (1,1)`.
pub const EXPECTED_COMMUTING_TYPES: [[bool; 4]; 4] = [
    [true, true, true, true],
    [true, true, false, false],
    [true, false, true, false],
    [true, false, false, true],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCell {
    pub expected: bool,
    /// Ordered pairs of distinct involutions with these types.
    pub pairs: usize,
    pub commuting: usize,
}

impl TypeCell {
    /// "No" cells have no commuting pair; "Yes" cells have one whenever
    /// there is any pair at all.
    pub fn agrees(&self) -> bool {
        if self.expected {
            self.pairs == 0 || self.commuting > 0
        } else {
            self.commuting == 0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingTypeTable {
    pub k: u32,
    pub involutions: usize,
    pub cells: [[TypeCell; 4]; 4],
    /// `t(AB) = t(A) + t(B)` over all of `Aut`.
    pub type_is_homomorphism: bool,
}

impl CommutingTypeTable {
    pub fn agrees(&self) -> bool {
        self.type_is_homomorphism && self.cells.iter().flatten().all(TypeCell::agrees)
    }
}

fn type_index(t: (u8, u8)) -> usize {
    t.0 as usize + 2 * t.1 as usize
}

/// Commuting behaviour of the involutions of `Aut(Z/2^k x Z/2)` by type.
pub fn commuting_type_table(k: u32) -> Result<CommutingTypeTable> {
    let m = FinAbGroup::new(2, vec![k, 1])?;
    let aut = AutGroup::enumerate(&m)?;
    let types: Vec<usize> = aut
        .matrices()
        .iter()
        .map(|a| type_homomorphism(&m, a).map(type_index))
        .collect::<Result<_>>()?;
    let type_is_homomorphism = (0..aut.len()).all(|a| {
        (0..aut.len()).all(|b| types[aut.mul(a, b)] == types[a] ^ types[b])
    });
    let involutions = order_p_automorphisms(&aut, false);
    let mut cells = [[TypeCell { expected: false, pairs: 0, commuting: 0 }; 4]; 4];
    for (i, row) in cells.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            cell.expected = EXPECTED_COMMUTING_TYPES[i][j];
        }
    }
    for &a in &involutions {
        for &b in &involutions {
            if a == b {
                continue;
            }
            let cell = &mut cells[types[a]][types[b]];
            cell.pairs += 1;
            if aut.commute(a, b) {
                cell.commuting += 1;
            }
        }
    }
    Ok(CommutingTypeTable {
        k,
        involutions: involutions.len(),
        cells,
        type_is_homomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_matches_closed_form() {
        for k in 2..=12 {
            assert_eq!(congruence_solver(k), congruence_closed_form(k), "k = {k}");
        }
        assert!(congruence_solver(3).is_empty());
        assert_eq!(congruence_solver(4).into_iter().collect::<Vec<_>>(), vec![3, 5, 11, 13]);
        assert_eq!(congruence_solver(5).into_iter().collect::<Vec<_>>(), vec![7, 9, 23, 25]);
    }

    #[test]
    fn types_of_simple_automorphisms() {
        let m = FinAbGroup::new(2, vec![3, 1]).unwrap();
        let diag = EndoMatrix::new(&m, vec![vec![5, 0], vec![0, 1]]).unwrap();
        assert_eq!(type_homomorphism(&m, &diag).unwrap(), (0, 0));
        let upper = EndoMatrix::new(&m, vec![vec![3, 4], vec![0, 1]]).unwrap();
        assert_eq!(type_homomorphism(&m, &upper).unwrap(), (1, 0));
        let wrong = FinAbGroup::new(2, vec![2, 2]).unwrap();
        assert!(type_homomorphism(&wrong, &EndoMatrix::identity(&wrong)).is_err());
    }

    #[test]
    fn corners_for_small_k() {
        for k in 2..=6 {
            let m = FinAbGroup::new(2, vec![k, 1]).unwrap();
            let aut = AutGroup::enumerate(&m).unwrap();
            let (plain, mixed) = involution_corners(&aut).unwrap();
            assert_eq!(plain, involution_corners_closed_form(k));
            assert_eq!(mixed, congruence_closed_form(k));
        }
    }

    #[test]
    fn table_for_k3() {
        let t = commuting_type_table(3).unwrap();
        assert!(t.agrees(), "{t:?}");
        // no involution of type (1,1) when k = 3
        assert_eq!(t.cells[3][3].pairs, 0);
        assert!(t.cells[1][2].pairs > 0);
    }
}
