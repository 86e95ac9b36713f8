//! Automorphism groups of small finite abelian p-groups and the exhaustive
//! search for cohomologically trivial actions of their elementary abelian
//! subgroups.

mod audits;
mod congruence;
mod matrix;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

pub use audits::{aut_z4z4_structure_audit, odd_p_sylow_audit};
pub use congruence::{
    commuting_type_table, congruence_closed_form, congruence_solver, involution_corners,
    involution_corners_closed_form, type_homomorphism, CommutingTypeTable, TypeCell,
    EXPECTED_COMMUTING_TYPES,
};
pub use matrix::EndoMatrix;

use crate::abelian::FinAbGroup;
use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::tate::{compose, OrderFormula, QModule};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable holding a positive integer factor for every guard.
pub const GUARD_OVERRIDE_ENV: &str = "FRATTINI_GUARD_OVERRIDE";

/// Limits that keep the exhaustive searches finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub max_endomorphisms: u64,
    pub max_pairs: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            max_endomorphisms: 1 << 16,
            max_pairs: 100_000_000,
        }
    }
}

impl Guards {
    /// Defaults, scaled by `FRATTINI_GUARD_OVERRIDE` when it is set.
    pub fn from_env() -> Result<Self> {
        let base = Self::default();
        match std::env::var(GUARD_OVERRIDE_ENV) {
            Ok(v) => {
                let factor: u64 = v.trim().parse().map_err(|_| {
                    Error::Parse(format!("{GUARD_OVERRIDE_ENV} must be a positive integer"))
                })?;
                if factor == 0 {
                    return Err(Error::Parse(format!("{GUARD_OVERRIDE_ENV} must be positive")));
                }
                Ok(Self {
                    max_endomorphisms: base.max_endomorphisms.saturating_mul(factor),
                    max_pairs: base.max_pairs.saturating_mul(factor),
                })
            }
            Err(_) => Ok(base),
        }
    }
}

/// Number of well-defined endomorphism matrices of `m`.
pub fn endomorphism_count(m: &FinAbGroup) -> u64 {
    let e = m.exponents();
    let p = m.p() as u64;
    e.iter()
        .flat_map(|&a| e.iter().map(move |&b| a.min(b)))
        .fold(1u64, |acc, k| acc.saturating_mul(pow_u64(p, k)))
}

/// `Aut(M)` with every element stored both as a matrix and as a
/// permutation of the element ids of `M`.
#[derive(Debug, Clone)]
pub struct AutGroup {
    module: FinAbGroup,
    matrices: Vec<EndoMatrix>,
    perms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    identity: usize,
}

impl AutGroup {
    pub fn enumerate(m: &FinAbGroup) -> Result<Self> {
        Self::enumerate_with(m, &Guards::from_env()?)
    }

    pub fn enumerate_with(m: &FinAbGroup, guards: &Guards) -> Result<Self> {
        let count = endomorphism_count(m);
        if count > guards.max_endomorphisms {
            return Err(Error::GuardExceeded {
                what: "endomorphism candidates",
                value: count,
                limit: guards.max_endomorphisms,
            });
        }
        let d = m.rank();
        let e = m.exponents();
        let p = m.p();
        // entry (i, j) runs over multiples of step(i, j) below p^ei
        let steps: Vec<u32> = (0..d * d)
            .map(|idx| {
                let (i, j) = (idx / d, idx % d);
                pow_u64(p as u64, e[i].saturating_sub(e[j])) as u32
            })
            .collect();
        let limits: Vec<u32> = (0..d * d).map(|idx| m.moduli()[idx / d]).collect();
        let n = m.order();
        let coords: Vec<Vec<u32>> = (0..n).map(|x| m.decode(x)).collect();
        let mut entries = vec![0u32; d * d];
        let mut matrices = Vec::new();
        let mut perms = Vec::new();
        let mut seen = vec![false; n];
        'outer: loop {
            let a = EndoMatrix::from_entries(d, entries.clone());
            seen.iter_mut().for_each(|s| *s = false);
            let mut perm = Vec::with_capacity(n);
            let mut bijective = true;
            for c in &coords {
                let y = m.encode(&a.apply(m, c));
                if std::mem::replace(&mut seen[y], true) {
                    bijective = false;
                    break;
                }
                perm.push(y as u32);
            }
            if bijective {
                matrices.push(a);
                perms.push(perm);
            }
            // advance the mixed-radix counter
            for idx in 0..d * d {
                entries[idx] += steps[idx];
                if entries[idx] < limits[idx] {
                    continue 'outer;
                }
                entries[idx] = 0;
            }
            break;
        }
        let index: HashMap<Vec<u32>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let id_perm: Vec<u32> = (0..n as u32).collect();
        let identity = index[&id_perm];
        Ok(Self {
            module: m.clone(),
            matrices,
            perms,
            index,
            identity,
        })
    }

    pub fn module(&self) -> &FinAbGroup {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn matrix(&self, i: usize) -> &EndoMatrix {
        &self.matrices[i]
    }

    pub fn matrices(&self) -> &[EndoMatrix] {
        &self.matrices
    }

    pub fn permutation(&self, i: usize) -> &[u32] {
        &self.perms[i]
    }

    /// Index of a matrix, if it is an automorphism.
    pub fn find(&self, a: &EndoMatrix) -> Option<usize> {
        self.index.get(&a.permutation(&self.module)).copied()
    }

    /// `a * b` (apply `b` first).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&compose(&self.perms[a], &self.perms[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let perm = &self.perms[a];
        let mut inv = vec![0u32; perm.len()];
        for (x, &y) in perm.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        self.index[&inv]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        let (pa, pb) = (&self.perms[a], &self.perms[b]);
        pb.iter()
            .zip(pa.iter())
            .all(|(&bx, &ax)| pa[bx as usize] == pb[ax as usize])
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Whether the given indices are closed under multiplication.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let members: HashSet<usize> = set.iter().copied().collect();
        set.iter()
            .all(|&a| set.iter().all(|&b| members.contains(&self.mul(a, b))))
    }
}

pub fn enumerate_automorphisms(m: &FinAbGroup) -> Result<Vec<EndoMatrix>> {
    Ok(AutGroup::enumerate(m)?.matrices)
}

/// Automorphisms with `A^p = 1`, optionally including the identity.
pub fn order_p_automorphisms(aut: &AutGroup, include_identity: bool) -> Vec<usize> {
    let p = aut.module().p() as u64;
    (0..aut.len())
        .filter(|&a| include_identity || a != aut.identity())
        .filter(|&a| aut.pow(a, p) == aut.identity())
        .collect()
}

/// An elementary abelian p-subgroup of `Aut(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryAbelianSubgroup {
    /// A basis: independent commuting automorphisms of order `p`.
    pub basis: Vec<usize>,
    /// All elements, sorted.
    pub elements: Vec<usize>,
}

impl ElementaryAbelianSubgroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}

pub fn elementary_abelian_subgroups(
    aut: &AutGroup,
    rank_min: usize,
) -> Result<Vec<ElementaryAbelianSubgroup>> {
    elementary_abelian_subgroups_within(aut, None, rank_min, &Guards::from_env()?)
}

/// Elementary abelian subgroups of rank at least `rank_min`, optionally
/// restricted to subgroups whose elements all lie in `allowed`.
///
/// Subgroups are grown one commuting order-`p` element at a time and
/// deduplicated by element set. The output is sorted by rank, then by
/// element set.
pub fn elementary_abelian_subgroups_within(
    aut: &AutGroup,
    allowed: Option<&[usize]>,
    rank_min: usize,
    guards: &Guards,
) -> Result<Vec<ElementaryAbelianSubgroup>> {
    let p = aut.module().p() as u64;
    let mut order_p = order_p_automorphisms(aut, false);
    if let Some(allowed) = allowed {
        let allowed: HashSet<usize> = allowed.iter().copied().collect();
        order_p.retain(|a| allowed.contains(a));
    }
    let pairs = (order_p.len() as u64).pow(2);
    if pairs > guards.max_pairs {
        return Err(Error::GuardExceeded {
            what: "commuting-pair scan",
            value: pairs,
            limit: guards.max_pairs,
        });
    }
    let pos: HashMap<usize, usize> = order_p.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let n = order_p.len();
    let commuting: Vec<bool> = (0..n * n)
        .map(|idx| aut.commute(order_p[idx / n], order_p[idx % n]))
        .collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut level: Vec<ElementaryAbelianSubgroup> = Vec::new();
    for &x in &order_p {
        let mut elements: Vec<usize> = (0..p).map(|t| aut.pow(x, t)).collect();
        elements.sort_unstable();
        if seen.insert(elements.clone()) {
            level.push(ElementaryAbelianSubgroup {
                basis: vec![x],
                elements,
            });
        }
    }
    let mut out = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for e in &level {
            for &y in &order_p {
                if e.contains(y) {
                    continue;
                }
                let yi = pos[&y];
                if !e.basis.iter().all(|&b| commuting[pos[&b] * n + yi]) {
                    continue;
                }
                let mut elements = Vec::with_capacity(e.elements.len() * p as usize);
                let mut power = aut.identity();
                for _ in 0..p {
                    elements.extend(e.elements.iter().map(|&x| aut.mul(x, power)));
                    power = aut.mul(power, y);
                }
                elements.sort_unstable();
                if seen.insert(elements.clone()) {
                    let mut basis = e.basis.clone();
                    basis.push(y);
                    next.push(ElementaryAbelianSubgroup { basis, elements });
                }
            }
        }
        let done = std::mem::replace(&mut level, next);
        out.extend(done.into_iter().filter(|e| e.rank() >= rank_min));
    }
    out.sort_by(|a, b| (a.rank(), &a.elements).cmp(&(b.rank(), &b.elements)));
    Ok(out)
}

/// `M` as a module over the subgroup, acting through its basis.
pub fn module_for_subgroup(aut: &AutGroup, e: &ElementaryAbelianSubgroup) -> Result<QModule> {
    let m = aut.module();
    let generators = e.basis.iter().map(|&b| aut.permutation(b).to_vec()).collect();
    QModule::new(m.p(), m.addition_table(), generators)
}

/// Cohomology of one examined action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionOutcome {
    pub rank: usize,
    pub h0_order: u64,
    pub h_minus1_order: u64,
    pub cohomologically_trivial: bool,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub order_formula: Option<OrderFormula>,
}

/// A cohomologically trivial action, with generator matrices as witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub rank: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub fixed_order: u64,
    pub order_formula: OrderFormula,
    pub order_formula_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub p: u32,
    pub module_type: Vec<u32>,
    pub module_order: u64,
    pub rank_min: usize,
    pub automorphism_count: usize,
    pub subgroups_examined: usize,
    pub subgroups_by_rank: BTreeMap<usize, usize>,
    pub h0_zero: usize,
    pub h_minus1_zero: usize,
    /// Actions where exactly one of `H^0`, `H^-1` vanishes.
    pub h0_h_minus1_disagreements: usize,
    pub hit_count: usize,
    pub hits: Vec<SearchHit>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Computes the cohomology of every elementary abelian action of rank at
/// least `rank_min`, in the deterministic subgroup order.
pub fn search_outcomes(
    m: &FinAbGroup,
    rank_min: usize,
    guards: &Guards,
) -> Result<(AutGroup, Vec<ActionOutcome>)> {
    let aut = AutGroup::enumerate_with(m, guards)?;
    let subgroups = elementary_abelian_subgroups_within(&aut, None, rank_min, guards)?;
    let outcomes = subgroups
        .par_iter()
        .map(|e| {
            let module = module_for_subgroup(&aut, e)?;
            let h0 = module.tate_h0();
            let h1 = module.tate_h_minus1();
            let ct = h0.is_zero() && h1.is_zero();
            Ok(ActionOutcome {
                rank: e.rank(),
                h0_order: h0.order,
                h_minus1_order: h1.order,
                cohomologically_trivial: ct,
                generators: e.basis.iter().map(|&b| aut.matrix(b).rows()).collect(),
                order_formula: ct.then(|| module.order_formula_sides()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((aut, outcomes))
}

pub fn classify_ct_actions(m: &FinAbGroup, rank_min: usize) -> Result<SearchReport> {
    classify_ct_actions_with(m, rank_min, &Guards::from_env()?)
}

pub fn classify_ct_actions_with(
    m: &FinAbGroup,
    rank_min: usize,
    guards: &Guards,
) -> Result<SearchReport> {
    let (aut, outcomes) = search_outcomes(m, rank_min, guards)?;
    Ok(summarize(m, rank_min, aut.len(), &outcomes))
}

pub fn summarize(
    m: &FinAbGroup,
    rank_min: usize,
    automorphism_count: usize,
    outcomes: &[ActionOutcome],
) -> SearchReport {
    let mut by_rank = BTreeMap::new();
    for o in outcomes {
        *by_rank.entry(o.rank).or_insert(0) += 1;
    }
    let mut hits: Vec<SearchHit> = outcomes
        .iter()
        .filter(|o| o.cohomologically_trivial)
        .map(|o| {
            let f = o.order_formula.clone().expect("computed for every hit");
            SearchHit {
                rank: o.rank,
                generators: o.generators.clone(),
                fixed_order: f.fixed_order,
                order_formula_holds: f.holds(),
                order_formula: f,
            }
        })
        .collect();
    hits.sort_by(|a, b| (a.rank, &a.generators).cmp(&(b.rank, &b.generators)));
    let h0_zero = outcomes.iter().filter(|o| o.h0_order == 1).count();
    let h_minus1_zero = outcomes.iter().filter(|o| o.h_minus1_order == 1).count();
    let disagreements = outcomes
        .iter()
        .filter(|o| (o.h0_order == 1) != (o.h_minus1_order == 1))
        .count();
    SearchReport {
        schema_version: SCHEMA_VERSION,
        p: m.p(),
        module_type: m.exponents().to_vec(),
        module_order: m.order() as u64,
        rank_min,
        automorphism_count,
        subgroups_examined: outcomes.len(),
        subgroups_by_rank: by_rank,
        h0_zero,
        h_minus1_zero,
        h0_h_minus1_disagreements: disagreements,
        hit_count: hits.len(),
        hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut(p: u32, e: Vec<u32>) -> AutGroup {
        AutGroup::enumerate_with(&FinAbGroup::new(p, e).unwrap(), &Guards::default()).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        for k in 3..=7 {
            assert_eq!(aut(2, vec![k]).len(), 1 << (k - 1));
        }
        assert_eq!(aut(2, vec![2, 2]).len(), 96);
        assert_eq!(aut(2, vec![1, 1]).len(), 6);
        assert_eq!(aut(2, vec![1]).len(), 1);
        assert_eq!(aut(3, vec![2]).len(), 6);
    }

    #[test]
    fn cyclic_2k_automorphisms_form_z2_times_z2k2() {
        for k in 3..=7u32 {
            let a = aut(2, vec![k]);
            let max_order = (0..a.len()).map(|i| a.element_order(i)).max().unwrap();
            assert_eq!(max_order, 1 << (k - 2));
            // exactly three involutions: a Klein four subgroup, not a cyclic group
            assert_eq!(order_p_automorphisms(&a, false).len(), 3);
        }
    }

    #[test]
    fn aut_is_a_group() {
        let a = aut(2, vec![2, 1]);
        let all: Vec<usize> = (0..a.len()).collect();
        assert!(a.is_closed(&all));
        for i in 0..a.len() {
            assert_eq!(a.mul(i, a.inverse(i)), a.identity());
            let m = a.module();
            let prod = a.matrix(i).compose(m, a.matrix(a.inverse(i)));
            assert_eq!(prod, EndoMatrix::identity(m));
        }
    }

    #[test]
    fn guard_rejects_large_modules() {
        let m = FinAbGroup::new(2, vec![1, 1, 1, 1, 1]).unwrap();
        let err = AutGroup::enumerate_with(&m, &Guards::default()).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
        let tiny = Guards { max_endomorphisms: 1 << 16, max_pairs: 4 };
        let m = FinAbGroup::new(2, vec![1, 1, 1]).unwrap();
        let a = AutGroup::enumerate_with(&m, &tiny).unwrap();
        assert!(elementary_abelian_subgroups_within(&a, None, 2, &tiny).is_err());
    }

    #[test]
    fn order_p_lists() {
        let a = aut(2, vec![1]);
        assert!(order_p_automorphisms(&a, false).is_empty());
        assert_eq!(order_p_automorphisms(&a, true), vec![a.identity()]);
    }

    #[test]
    fn klein_group_has_no_rank_two_subgroup_in_aut() {
        let a = aut(2, vec![1, 1]);
        assert!(elementary_abelian_subgroups_within(&a, None, 2, &Guards::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn regular_representation_appears() {
        let a = aut(2, vec![1, 1, 1, 1]);
        let subs = elementary_abelian_subgroups_within(&a, None, 2, &Guards::default()).unwrap();
        let m = a.module();
        // basis e0=1, e1=g, e2=h, e3=gh; g and h permute coordinates by xor
        let perm = |s: usize| -> EndoMatrix {
            let rows = (0..4)
                .map(|i| (0..4).map(|j| u32::from(i == (j ^ s))).collect())
                .collect();
            EndoMatrix::new(m, rows).unwrap()
        };
        let g = a.find(&perm(1)).unwrap();
        let h = a.find(&perm(2)).unwrap();
        let mut elements = vec![a.identity(), g, h, a.mul(g, h)];
        elements.sort_unstable();
        assert!(subs.iter().any(|e| e.elements == elements));
    }

    #[test]
    fn report_is_sorted_and_serializable() {
        let m = FinAbGroup::new(2, vec![1, 1, 1, 1]).unwrap();
        let r = classify_ct_actions_with(&m, 2, &Guards::default()).unwrap();
        assert!(r.hit_count >= 1);
        let json = r.to_json();
        let back: SearchReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let again = classify_ct_actions_with(&m, 2, &Guards::default()).unwrap();
        assert_eq!(again.to_json(), json);
    }
}
