use std::collections::HashSet;
use std::sync::Arc;

use super::{Elem, PGroup, TableLaw};
use crate::arith::invariants_from_omega_logs;
use crate::closure::generate;
use crate::error::{Error, Result};

/// A subgroup of a [`PGroup`], stored as a sorted id set plus a membership mask.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elements: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    /// A generating set (not necessarily minimal).
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, g: &PGroup, other: &Subgroup) -> Subgroup {
        g.closure(self.elements.iter().copied().filter(|&x| other.contains(x)))
    }

    pub fn is_abelian(&self, g: &PGroup) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// `log_p |H|`.
    pub fn log_order(&self, g: &PGroup) -> u32 {
        g.log_p(self.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    UpperCentral,
    LowerCentral,
}

/// Upper central series `1 = Z_0 < Z_1 < ... < Z_c = G`, or lower central
/// series `G = g_1 > g_2 > ... > g_(c+1) = 1`.
#[derive(Debug, Clone)]
pub struct Series {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
}

impl Series {
    /// Number of strict steps; equals the nilpotency class for both kinds.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::len).collect()
    }

    /// The `i`-th term, saturating at the last one.
    pub fn term(&self, i: usize) -> &Subgroup {
        &self.terms[i.min(self.terms.len() - 1)]
    }
}

/// `G / N` with the coset bookkeeping.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: PGroup,
    /// Coset id of each element of the parent.
    pub coset_of: Vec<Elem>,
    /// Smallest element of each coset.
    pub representatives: Vec<Elem>,
}

impl PGroup {
    fn subgroup_from_closed(&self, c: crate::closure::Closed) -> Subgroup {
        Subgroup {
            elements: c.elements,
            mask: c.mask,
            generators: c.generators,
        }
    }

    pub fn closure<I: IntoIterator<Item = Elem>>(&self, seed: I) -> Subgroup {
        let c = generate(self.order(), seed, |a, b| self.mul(a, b));
        self.subgroup_from_closed(c)
    }

    pub fn whole(&self) -> Subgroup {
        self.closure(self.generators().to_vec())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(std::iter::empty())
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        self.closure(
            self.elements()
                .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x))),
        )
    }

    /// `C_G(S)`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let gens = s.generators();
        self.closure(
            self.elements()
                .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x))),
        )
    }

    /// `[H, K]`, generated by all `h^-1 k^-1 h k`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut seed = Vec::new();
        for &x in h.elements() {
            for &y in k.elements() {
                let c = self.commutator(x, y);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    seed.push(c);
                }
            }
        }
        self.closure(seed)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `G^p [G, G]`, the Frattini subgroup of a p-group.
    pub fn frattini_subgroup(&self) -> Subgroup {
        let derived = self.derived_subgroup();
        let p = self.p() as u64;
        let powers = self.elements().map(|x| self.pow(x, p));
        self.closure(derived.elements().to_vec().into_iter().chain(powers))
    }

    pub fn upper_central_series(&self) -> Series {
        let gens = self.generators().to_vec();
        let mut terms = vec![self.trivial_subgroup()];
        loop {
            let last = terms.last().unwrap();
            let next = self.closure(self.elements().filter(|&x| {
                gens.iter().all(|&g| last.contains(self.commutator(x, g)))
            }));
            if next.len() == last.len() {
                break;
            }
            terms.push(next);
        }
        Series {
            kind: SeriesKind::UpperCentral,
            terms,
        }
    }

    pub fn lower_central_series(&self) -> Series {
        let whole = self.whole();
        let mut terms = vec![whole.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = self.commutator_subgroup(last, &whole);
            if next.len() == last.len() {
                break;
            }
            terms.push(next);
        }
        Series {
            kind: SeriesKind::LowerCentral,
            terms,
        }
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().length()
    }

    /// `n - c` for `|G| = p^n` of class `c`.
    pub fn coclass(&self) -> usize {
        self.log_order() as usize - self.nilpotency_class()
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.generators()
            .iter()
            .all(|&g| n.generators().iter().all(|&x| n.contains(self.conjugate(g, x))))
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let size = self.order();
        let unassigned = Elem::MAX;
        let mut coset_of = vec![unassigned; size];
        let mut representatives = Vec::with_capacity(size / n.len());
        for x in self.elements() {
            if coset_of[x as usize] != unassigned {
                continue;
            }
            let id = representatives.len() as Elem;
            representatives.push(x);
            for &y in n.elements() {
                coset_of[self.mul(x, y) as usize] = id;
            }
        }
        let m = representatives.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &representatives {
            for &b in &representatives {
                table.push(coset_of[self.mul(a, b) as usize]);
            }
        }
        let gens: Vec<Elem> = self.generators().iter().map(|&g| coset_of[g as usize]).collect();
        let log_order = self.log_order() - n.log_order(self);
        let group = PGroup::from_law_with_prime(
            self.p(),
            log_order,
            Arc::new(TableLaw::new(m, table)),
            gens,
            format!("{} / N", self.label()),
        )?;
        Ok(Quotient {
            group,
            coset_of,
            representatives,
        })
    }

    /// `d(G) = log_p [G : Phi(G)]`.
    pub fn generator_rank(&self) -> u32 {
        self.log_order() - self.frattini_subgroup().log_order(self)
    }

    /// A minimal generating set: lifts of a basis of `G / Phi(G)`.
    pub fn burnside_basis(&self) -> Vec<Elem> {
        let phi = self.frattini_subgroup();
        let mut span = phi.clone();
        let mut basis = Vec::new();
        for &g in self.generators().iter().chain(self.elements().collect::<Vec<_>>().iter()) {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(g) {
                basis.push(g);
                span = self.closure(span.generators().iter().copied().chain([g]));
            }
        }
        basis
    }

    /// Primary type `e1 >= e2 >= ...` of an abelian subgroup.
    pub fn abelian_invariants(&self, h: &Subgroup) -> Result<Vec<u32>> {
        if !h.is_abelian(self) {
            return Err(Error::NotAbelian(format!("subgroup of order {}", h.len())));
        }
        let trivial = self.trivial_subgroup();
        Ok(self.section_invariants(h, &trivial))
    }

    pub fn group_invariants(&self) -> Result<Vec<u32>> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian(self.label().to_string()));
        }
        Ok(self.section_invariants(&self.whole(), &self.trivial_subgroup()))
    }

    /// Primary type of the section `big / small`, assumed abelian with
    /// `small` normal in `big`, from the counts of cosets killed by `p^i`.
    pub fn section_invariants(&self, big: &Subgroup, small: &Subgroup) -> Vec<u32> {
        let p = self.p() as u64;
        let target = big.log_order(self) - small.log_order(self);
        let mut logs = Vec::new();
        let mut current: Vec<Elem> = big.elements().to_vec();
        loop {
            current.iter_mut().for_each(|x| *x = self.pow(*x, p));
            let killed = current.iter().filter(|&&x| small.contains(x)).count();
            let log = self.log_p(killed / small.len());
            logs.push(log);
            if log >= target {
                break;
            }
        }
        invariants_from_omega_logs(&logs)
    }

    /// All maximal subgroups, found by joining cyclic subgroups upward
    /// through the subgroup lattice. Exponential in general; meant for
    /// cross-checks on small groups.
    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let cyclic: Vec<Subgroup> = {
            let mut seen = HashSet::new();
            self.elements()
                .skip(1)
                .map(|x| self.closure([x]))
                .filter(|c| seen.insert(c.elements().to_vec()))
                .collect()
        };
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut frontier: Vec<Subgroup> = cyclic
            .iter()
            .filter(|c| c.len() < self.order())
            .cloned()
            .collect();
        for c in &frontier {
            seen.insert(c.elements().to_vec());
        }
        let mut proper = frontier.clone();
        if self.order() > 1 {
            proper.push(self.trivial_subgroup());
        }
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.is_subgroup_of(&h) {
                    continue;
                }
                let j = self.closure(h.generators().iter().chain(c.generators()).copied());
                if j.len() < self.order() && seen.insert(j.elements().to_vec()) {
                    frontier.push(j.clone());
                    proper.push(j);
                }
            }
        }
        proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.len() > h.len() && h.is_subgroup_of(k))
            })
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::MetacyclicParams;
    use super::*;

    fn meta(alpha: u32, beta: u32, gamma: u32, r: u64) -> PGroup {
        PGroup::metacyclic(MetacyclicParams { p: 2, alpha, beta, gamma, r }).unwrap()
    }

    fn d8() -> PGroup {
        meta(2, 1, 2, 3)
    }

    fn q8() -> PGroup {
        meta(2, 1, 1, 3)
    }

    fn example() -> PGroup {
        PGroup::semidirect_cyclic(32, 16, 11).unwrap()
    }

    /// Center by the definition, over all pairs.
    fn brute_center(g: &PGroup) -> usize {
        g.elements()
            .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
            .count()
    }

    #[test]
    fn closure_examples() {
        let d = d8();
        assert_eq!(d.closure([0]).len(), 1);
        assert_eq!(d.closure(d.generators().to_vec()).len(), 8);
        let q = q8();
        let minus_one = q.pow(1, 2);
        assert_eq!(q.closure([minus_one]).len(), 2);
    }

    #[test]
    fn centers() {
        assert_eq!(q8().center().len(), 2);
        assert_eq!(brute_center(&q8()), 2);
        let ab = PGroup::abelian(2, vec![2, 1]).unwrap();
        assert_eq!(ab.center().len(), 8);
        let d = d8();
        assert_eq!(d.centralizer(&d.center()).len(), 8);
        let d16 = PGroup::semidirect_cyclic(8, 2, 7).unwrap();
        assert_eq!(d16.center().len(), brute_center(&d16));
        assert_eq!(d16.center().len(), 2);
    }

    #[test]
    fn commutator_subgroups() {
        assert_eq!(q8().derived_subgroup().len(), 2);
        assert!(PGroup::abelian(2, vec![3, 1]).unwrap().derived_subgroup().is_trivial());
        let g = example();
        let derived = g.derived_subgroup();
        assert_eq!(derived.len(), 16);
        // 2Z/32 = {(2t, 0)}
        assert!((0..16).all(|t| derived.contains(2 * t)));
    }

    #[test]
    fn frattini_examples() {
        assert_eq!(d8().frattini_subgroup().len(), 2);
        assert!(PGroup::abelian(2, vec![1, 1, 1]).unwrap().frattini_subgroup().is_trivial());
        let g = example();
        let phi = g.frattini_subgroup();
        assert_eq!(phi.len(), 128);
        assert!(!phi.is_abelian(&g));
        // Phi = <a^2, b^2>
        let a2 = g.pow(1, 2);
        let b2 = g.pow(32, 2);
        assert_eq!(g.closure([a2, b2]), phi);
    }

    #[test]
    fn frattini_is_intersection_of_maximal_subgroups() {
        let groups = [
            d8(),
            q8(),
            meta(3, 1, 3, 3),
            meta(3, 1, 2, 7),
            meta(3, 2, 3, 5),
            meta(4, 2, 4, 7),
            PGroup::abelian(2, vec![2, 1, 1]).unwrap(),
            d8().direct_product(&PGroup::abelian(2, vec![1, 1]).unwrap()).unwrap(),
            PGroup::heisenberg(3).unwrap(),
        ];
        for g in &groups {
            let maximal = g.maximal_subgroups();
            assert!(!maximal.is_empty());
            assert!(maximal.iter().all(|m| m.len() * g.p() as usize == g.order()));
            let inter: Vec<Elem> = g
                .elements()
                .filter(|&x| maximal.iter().all(|m| m.contains(x)))
                .collect();
            assert_eq!(inter, g.frattini_subgroup().elements(), "{}", g.label());
        }
    }

    #[test]
    fn example_lower_central_series() {
        let g = example();
        let lower = g.lower_central_series();
        assert_eq!(lower.orders(), vec![512, 16, 8, 4, 2, 1]);
        assert_eq!(g.nilpotency_class(), 5);
        assert_eq!(g.coclass(), 4);
        assert_eq!(g.upper_central_series().length(), 5);
    }

    #[test]
    fn dihedral_maximal_class() {
        for n in 3..=7u32 {
            let m = 1u64 << (n - 1);
            let d = PGroup::semidirect_cyclic(m, 2, m - 1).unwrap();
            assert_eq!(d.nilpotency_class(), n as usize - 1);
            assert_eq!(d.coclass(), 1);
            assert_eq!(d.upper_central_series().length(), n as usize - 1);
        }
        assert_eq!(PGroup::abelian(2, vec![3, 2]).unwrap().nilpotency_class(), 1);
    }

    #[test]
    fn quotients() {
        let d = d8();
        let phi = d.frattini_subgroup();
        let q = d.quotient(&phi).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.elements().all(|x| q.group.element_order(x) <= 2));
        assert_eq!(q.group.group_invariants().unwrap(), vec![1, 1]);
        let whole = d.quotient(&d.whole()).unwrap();
        assert_eq!(whole.group.order(), 1);
        let g = example();
        let q = g.quotient(&g.frattini_subgroup()).unwrap();
        assert_eq!(q.group.group_invariants().unwrap(), vec![1, 1]);
        assert_eq!(g.generator_rank(), 2);
        // <b> is not normal in D8
        let refl = d.closure([4]);
        assert_eq!(d.quotient(&refl).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn ranks_and_invariants() {
        assert_eq!(PGroup::abelian(2, vec![5]).unwrap().generator_rank(), 1);
        assert_eq!(PGroup::abelian(2, vec![1, 1, 1, 1]).unwrap().generator_rank(), 4);
        let g = example();
        let derived = g.derived_subgroup();
        assert_eq!(g.abelian_invariants(&derived).unwrap(), vec![4]);
        let e = PGroup::abelian(2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(e.group_invariants().unwrap(), vec![1, 1, 1, 1]);
        let m = PGroup::abelian(2, vec![2, 1, 1]).unwrap();
        assert_eq!(m.group_invariants().unwrap(), vec![2, 1, 1]);
        assert!(g.abelian_invariants(&g.frattini_subgroup()).is_err());
        assert_eq!(g.burnside_basis().len(), 2);
    }
}
