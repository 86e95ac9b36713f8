//! Modules over elementary abelian p-groups and their Tate cohomology in
//! degrees 0 and -1.
//!
//! A [`QModule`] is a finite abelian p-group `A` (dense ids, addition table,
//! `0` the zero element) with commuting automorphisms `g_1, ..., g_r` of
//! order dividing `p`. The acting group `Q` is the abstract `(Z/p)^r`; its
//! element with exponent vector `v` acts as `g_1^v1 ... g_r^vr`, so norms
//! count every element of `Q` even when the action is not effective.

use serde::{Deserialize, Serialize};

use crate::arith::{invariants_from_omega_logs, log_exact, pow_u64};
use crate::closure::generate;
use crate::error::{Error, Result};
use crate::group::{Elem, PGroup, Subgroup};

#[derive(Debug, Clone)]
pub struct QModule {
    p: u32,
    size: usize,
    add: Vec<u32>,
    times_p: Vec<u32>,
    neg: Vec<u32>,
    generators: Vec<Vec<u32>>,
    actions: Vec<Vec<u32>>,
}

/// A subgroup of the acting group, as indices into [`QModule::actions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActingSubgroup {
    members: Vec<usize>,
}

impl ActingSubgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Order and primary type of a Tate cohomology group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateGroup {
    pub order: u64,
    pub invariants: Vec<u32>,
}

impl TateGroup {
    pub fn is_zero(&self) -> bool {
        self.order == 1
    }
}

/// Both sides of `|A| = |A^Q| * |A^Q (x) Q| * |[A, Q, Q]|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFormula {
    pub module_order: u64,
    pub fixed_order: u64,
    pub tensor_order: u64,
    pub second_commutator_order: u64,
}

impl OrderFormula {
    pub fn holds(&self) -> bool {
        self.module_order == self.fixed_order * self.tensor_order * self.second_commutator_order
    }
}

impl QModule {
    /// Validates the addition table and the generator actions.
    pub fn new(p: u32, add: Vec<u32>, generators: Vec<Vec<u32>>) -> Result<Self> {
        let size = (add.len() as f64).sqrt() as usize;
        if size * size != add.len() || size == 0 {
            return Err(Error::InvalidParameters("addition table is not square".into()));
        }
        if log_exact(p as u64, size as u64).is_none() {
            return Err(Error::NotPrimePower(size as u64));
        }
        for a in 0..size {
            if add[a] as usize != a {
                return Err(Error::Axiom("0 is not the zero element".into()));
            }
            for b in 0..size {
                if add[a * size + b] != add[b * size + a] {
                    return Err(Error::Axiom("addition is not commutative".into()));
                }
            }
        }
        let times_p = (0..size as u32)
            .map(|a| (1..p).fold(a, |acc, _| add[acc as usize * size + a as usize]))
            .collect();
        let mut neg = vec![0u32; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] == 0 {
                    neg[a] = b as u32;
                    break;
                }
            }
        }
        let mut module = Self {
            p,
            size,
            add,
            times_p,
            neg,
            generators: Vec::new(),
            actions: Vec::new(),
        };
        let identity: Vec<u32> = (0..size as u32).collect();
        for (i, g) in generators.iter().enumerate() {
            if g.len() != size {
                return Err(Error::InvalidParameters(format!("action {i} has wrong length")));
            }
            let mut seen = vec![false; size];
            for &x in g {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Axiom(format!("action {i} is not a bijection")));
                }
            }
            for a in 0..size {
                for b in a..size {
                    let s = module.sum(a as u32, b as u32);
                    if g[s as usize] != module.sum(g[a], g[b]) {
                        return Err(Error::Axiom(format!("action {i} is not additive")));
                    }
                }
            }
            let mut power = g.clone();
            for _ in 1..p {
                power = compose(g, &power);
            }
            if power != identity {
                return Err(Error::Axiom(format!("action {i} has order not dividing {p}")));
            }
            for (j, h) in generators[..i].iter().enumerate() {
                if compose(g, h) != compose(h, g) {
                    return Err(Error::Axiom(format!("actions {j} and {i} do not commute")));
                }
            }
        }
        let q_order = pow_u64(p as u64, generators.len() as u32) as usize;
        let mut actions: Vec<Vec<u32>> = Vec::with_capacity(q_order);
        actions.push(identity);
        for idx in 1..q_order {
            // strip the lowest nonzero digit
            let mut place = 1usize;
            let mut pos = 0usize;
            while (idx / place) % p as usize == 0 {
                place *= p as usize;
                pos += 1;
            }
            let prev = compose(&generators[pos], &actions[idx - place]);
            actions.push(prev);
        }
        module.generators = generators;
        module.actions = actions;
        Ok(module)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `|A|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of generator actions, the rank of `Q`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// The action of every element of `Q`, indexed by exponent vector in
    /// mixed radix (generator 0 least significant).
    pub fn actions(&self) -> &[Vec<u32>] {
        &self.actions
    }

    #[inline]
    pub fn sum(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn full_group(&self) -> ActingSubgroup {
        ActingSubgroup {
            members: (0..self.actions.len()).collect(),
        }
    }

    /// The subgroup of `Q` spanned by the given exponent vectors.
    pub fn acting_subgroup(&self, generators: &[Vec<u32>]) -> Result<ActingSubgroup> {
        let p = self.p as usize;
        let mut seeds = Vec::with_capacity(generators.len());
        for v in generators {
            if v.len() != self.rank() {
                return Err(Error::InvalidParameters("exponent vector has wrong length".into()));
            }
            seeds.push(v.iter().rev().fold(0usize, |acc, &e| acc * p + e as usize % p) as u32);
        }
        let rank = self.rank();
        let closed = generate(self.actions.len(), seeds, |a, b| {
            let (mut a, mut b) = (a as usize, b as usize);
            let mut out = 0usize;
            let mut place = 1usize;
            for _ in 0..rank {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out as u32
        });
        Ok(ActingSubgroup {
            members: closed.elements.iter().map(|&x| x as usize).collect(),
        })
    }

    /// `A^H`.
    pub fn fixed_points(&self, h: &ActingSubgroup) -> Vec<u32> {
        (0..self.size as u32)
            .filter(|&a| h.members.iter().all(|&q| self.actions[q][a as usize] == a))
            .collect()
    }

    /// The norm (trace) `a -> sum_{h in H} h a`, as a table.
    pub fn norm_map(&self, h: &ActingSubgroup) -> Vec<u32> {
        (0..self.size)
            .map(|a| {
                h.members
                    .iter()
                    .fold(0u32, |acc, &q| self.sum(acc, self.actions[q][a]))
            })
            .collect()
    }

    pub fn span<I: IntoIterator<Item = u32>>(&self, seed: I) -> Vec<u32> {
        generate(self.size, seed, |a, b| self.sum(a, b)).elements
    }

    /// `[A, Q, ..., Q]` for `1..=n` copies of `Q`.
    pub fn commutator_submodule(&self, n: usize) -> Vec<Vec<u32>> {
        let mut chain = Vec::with_capacity(n);
        let mut current: Vec<u32> = (0..self.size as u32).collect();
        for _ in 0..n {
            let mut seeds = Vec::new();
            for g in &self.generators {
                for &a in &current {
                    // g a - a
                    let ga = g[a as usize];
                    let neg_a = self.negate(a);
                    seeds.push(self.sum(ga, neg_a));
                }
            }
            current = self.span(seeds);
            chain.push(current.clone());
        }
        chain
    }

    pub fn negate(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Primary type of `big / small` (both subgroups of `A`, `small <= big`).
    pub fn section_invariants(&self, big: &[u32], small: &[u32]) -> Vec<u32> {
        let mut in_small = vec![false; self.size];
        for &x in small {
            in_small[x as usize] = true;
        }
        let target = self.log_p(big.len()) - self.log_p(small.len());
        let mut current = big.to_vec();
        let mut logs = Vec::new();
        loop {
            current.iter_mut().for_each(|x| *x = self.times_p[*x as usize]);
            let killed = current.iter().filter(|&&x| in_small[x as usize]).count();
            let log = self.log_p(killed / small.len());
            logs.push(log);
            if log >= target {
                break;
            }
        }
        invariants_from_omega_logs(&logs)
    }

    fn log_p(&self, n: usize) -> u32 {
        log_exact(self.p as u64, n as u64).expect("order is a power of p")
    }

    fn quotient(&self, big: &[u32], small: &[u32]) -> TateGroup {
        TateGroup {
            order: (big.len() / small.len()) as u64,
            invariants: self.section_invariants(big, small),
        }
    }

    fn image(&self, map: &[u32]) -> Vec<u32> {
        let mut img = map.to_vec();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `H^0(Q; A) = A^Q / N(A)`.
    pub fn tate_h0(&self) -> TateGroup {
        let q = self.full_group();
        let fixed = self.fixed_points(&q);
        let image = self.image(&self.norm_map(&q));
        self.quotient(&fixed, &image)
    }

    /// `H^-1(Q; A) = ker N / [A, Q]`.
    pub fn tate_h_minus1(&self) -> TateGroup {
        let norm = self.norm_map(&self.full_group());
        let kernel: Vec<u32> = (0..self.size as u32).filter(|&a| norm[a as usize] == 0).collect();
        let augmentation = self.commutator_submodule(1).pop().unwrap();
        self.quotient(&kernel, &augmentation)
    }

    /// Vanishing of `H^0` and `H^-1` over the whole acting group.
    pub fn is_cohomologically_trivial(&self) -> bool {
        self.tate_h0().is_zero() && self.tate_h_minus1().is_zero()
    }

    /// Evaluates `|A| = |A^Q| * |A^Q (x) Q| * |[A, Q, Q]|` for a
    /// cohomologically trivial module.
    pub fn order_formula_check(&self) -> Result<OrderFormula> {
        if !self.is_cohomologically_trivial() {
            return Err(Error::Hypothesis("module is not cohomologically trivial".into()));
        }
        Ok(self.order_formula_sides())
    }

    /// The two sides of the order formula without checking its hypothesis.
    pub fn order_formula_sides(&self) -> OrderFormula {
        let fixed = self.fixed_points(&self.full_group());
        let fixed_rank = self.section_invariants(&fixed, &[0]).len() as u32;
        let chain = self.commutator_submodule(2);
        OrderFormula {
            module_order: self.size as u64,
            fixed_order: fixed.len() as u64,
            tensor_order: pow_u64(self.p as u64, self.rank() as u32 * fixed_rank),
            second_commutator_order: chain[1].len() as u64,
        }
    }

    /// Number of elements of `Q` acting as the identity.
    pub fn action_kernel_size(&self) -> usize {
        self.actions
            .iter()
            .filter(|a| a.iter().enumerate().all(|(i, &x)| i as u32 == x))
            .count()
    }

    pub fn is_effective(&self) -> bool {
        self.action_kernel_size() == 1
    }
}

/// `(f . g)(x) = f(g(x))`.
pub(crate) fn compose(f: &[u32], g: &[u32]) -> Vec<u32> {
    g.iter().map(|&x| f[x as usize]).collect()
}

/// `Z(Phi(G))` as a module over `G / Phi(G)` acting by conjugation.
#[derive(Debug, Clone)]
pub struct GroupModule {
    pub module: QModule,
    pub frattini: Subgroup,
    pub center_of_frattini: Subgroup,
    /// Lifts of a basis of `G / Phi(G)`; the `i`-th generator action is
    /// conjugation by `basis[i]`.
    pub basis: Vec<Elem>,
    /// Group id of each module element.
    pub carrier: Vec<Elem>,
}

impl GroupModule {
    /// Module element for a group element of `Z(Phi(G))`.
    pub fn local_id(&self, x: Elem) -> Option<u32> {
        self.carrier.binary_search(&x).ok().map(|i| i as u32)
    }

    /// Carrier elements (as group ids) for a list of module ids.
    pub fn group_ids(&self, local: &[u32]) -> Vec<Elem> {
        local.iter().map(|&i| self.carrier[i as usize]).collect()
    }
}

pub fn module_from_group(g: &PGroup) -> Result<GroupModule> {
    if g.is_abelian() {
        return Err(Error::Abelian(g.label().to_string()));
    }
    let frattini = g.frattini_subgroup();
    let center_of_frattini = center_within(g, &frattini);
    let carrier: Vec<Elem> = center_of_frattini.elements().to_vec();
    let n = carrier.len();
    let local = |x: Elem| -> Result<u32> {
        carrier
            .binary_search(&x)
            .map(|i| i as u32)
            .map_err(|_| Error::Axiom("conjugation does not preserve Z(Phi(G))".into()))
    };
    let mut add = Vec::with_capacity(n * n);
    for &a in &carrier {
        for &b in &carrier {
            add.push(local(g.mul(a, b))?);
        }
    }
    // Well-definedness on cosets: Phi(G) must act trivially.
    for &f in frattini.generators() {
        if carrier.iter().any(|&a| g.conjugate(f, a) != a) {
            return Err(Error::Axiom("Phi(G) acts nontrivially on Z(Phi(G))".into()));
        }
    }
    let basis = g.burnside_basis();
    let mut generators = Vec::with_capacity(basis.len());
    for &b in &basis {
        let action = carrier
            .iter()
            .map(|&a| local(g.conjugate(b, a)))
            .collect::<Result<Vec<u32>>>()?;
        generators.push(action);
    }
    let module = QModule::new(g.p(), add, generators)?;
    Ok(GroupModule {
        module,
        frattini,
        center_of_frattini,
        basis,
        carrier,
    })
}

/// `Z(H)` for a subgroup `H`.
pub fn center_within(g: &PGroup, h: &Subgroup) -> Subgroup {
    let gens = h.generators();
    g.closure(
        h.elements()
            .iter()
            .copied()
            .filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::group::MetacyclicParams;

    /// `F_2[(Z/2)^2]` as `(Z/2)^4` with basis `1, g, h, gh`.
    pub(crate) fn regular_klein() -> QModule {
        let m = FinAbGroup::new(2, vec![1, 1, 1, 1]).unwrap();
        // coordinates indexed by group elements 0=1, 1=g, 2=h, 3=gh (xor)
        let act = |s: usize| -> Vec<u32> {
            (0..16)
                .map(|x| {
                    let c = m.decode(x);
                    let mut out = vec![0u32; 4];
                    for (e, &v) in c.iter().enumerate() {
                        out[e ^ s] = v;
                    }
                    m.encode(&out) as u32
                })
                .collect()
        };
        QModule::new(2, m.addition_table(), vec![act(1), act(2)]).unwrap()
    }

    fn trivial_module(p: u32, exps: Vec<u32>, rank: usize) -> QModule {
        let m = FinAbGroup::new(p, exps).unwrap();
        let id: Vec<u32> = (0..m.order() as u32).collect();
        QModule::new(p, m.addition_table(), vec![id; rank]).unwrap()
    }

    fn d8() -> PGroup {
        PGroup::metacyclic(MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 2, r: 3 }).unwrap()
    }

    #[test]
    fn validation_rejects_bad_actions() {
        let m = FinAbGroup::new(2, vec![2]).unwrap();
        // x -> 3x on Z/4 has order 2: fine
        let inv: Vec<u32> = (0..4).map(|x| (3 * x) % 4).collect();
        assert!(QModule::new(2, m.addition_table(), vec![inv]).is_ok());
        // x -> x + 1 is not additive
        let shift: Vec<u32> = (0..4).map(|x| (x + 1) % 4).collect();
        assert!(QModule::new(2, m.addition_table(), vec![shift]).is_err());
        // x -> 2x is not a bijection
        let dbl: Vec<u32> = (0..4).map(|x| (2 * x) % 4).collect();
        assert!(QModule::new(2, m.addition_table(), vec![dbl]).is_err());
        // x -> 3x on Z/8 ... order 2 but 5x on Z/16 has order 4
        let m16 = FinAbGroup::new(2, vec![4]).unwrap();
        let five: Vec<u32> = (0..16).map(|x| (5 * x) % 16).collect();
        assert!(QModule::new(2, m16.addition_table(), vec![five]).is_err());
    }

    #[test]
    fn fixed_points_examples() {
        let t = trivial_module(2, vec![1, 1], 2);
        assert_eq!(t.fixed_points(&t.full_group()).len(), 4);
        let r = regular_klein();
        assert_eq!(r.fixed_points(&r.full_group()).len(), 2);
    }

    #[test]
    fn norm_examples() {
        let t = trivial_module(2, vec![1], 1);
        assert!(t.norm_map(&t.full_group()).iter().all(|&x| x == 0));
        let r = regular_klein();
        let norm = r.norm_map(&r.full_group());
        let mut image = norm.clone();
        image.sort_unstable();
        image.dedup();
        assert_eq!(image, r.fixed_points(&r.full_group()));
        // subgroup generated by g alone: norm 1 + g
        let h = r.acting_subgroup(&[vec![1, 0]]).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(r.fixed_points(&h).len(), 4);
    }

    #[test]
    fn commutator_chain_of_regular_module() {
        let r = regular_klein();
        let chain = r.commutator_submodule(3);
        let sizes: Vec<usize> = chain.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![8, 2, 1]);
        let t = trivial_module(2, vec![2, 1], 2);
        assert_eq!(t.commutator_submodule(1)[0].len(), 1);
    }

    #[test]
    fn tate_groups() {
        let r = regular_klein();
        assert!(r.tate_h0().is_zero());
        assert!(r.tate_h_minus1().is_zero());
        assert!(r.is_cohomologically_trivial());
        let t = trivial_module(2, vec![1], 1);
        assert_eq!(t.tate_h_minus1(), TateGroup { order: 2, invariants: vec![1] });
        assert_eq!(t.tate_h0(), TateGroup { order: 2, invariants: vec![1] });
        assert!(!t.is_cohomologically_trivial());
        let t = trivial_module(3, vec![2], 2);
        assert!(!t.is_cohomologically_trivial());
    }

    #[test]
    fn inversion_kills_the_trace_on_cyclic_modules() {
        for k in 3..=6u32 {
            let m = FinAbGroup::cyclic(2, k).unwrap();
            let n = m.order() as u32;
            let mul = |c: u32| -> Vec<u32> { (0..n).map(|x| (c * x) % n).collect() };
            let module =
                QModule::new(2, m.addition_table(), vec![mul(n - 1), mul(n / 2 + 1)]).unwrap();
            let q = module.full_group();
            assert!(module.norm_map(&q).iter().all(|&x| x == 0));
            let h0 = module.tate_h0();
            assert_eq!(h0.order as usize, module.fixed_points(&q).len());
            assert!(!h0.is_zero());
        }
    }

    #[test]
    fn order_formula() {
        let r = regular_klein();
        let f = r.order_formula_check().unwrap();
        assert_eq!(
            (f.module_order, f.fixed_order, f.tensor_order, f.second_commutator_order),
            (16, 2, 4, 2)
        );
        assert!(f.holds());
        let t = trivial_module(2, vec![1], 2);
        assert!(matches!(t.order_formula_check(), Err(Error::Hypothesis(_))));
        // Z/4 (x) (Z/2)^2 has order 4
        let t = trivial_module(2, vec![2], 2);
        assert_eq!(t.order_formula_sides().tensor_order, 4);
    }

    #[test]
    fn d8_module() {
        let g = d8();
        let gm = module_from_group(&g).unwrap();
        assert_eq!(gm.module.size(), 2);
        assert_eq!(gm.module.rank(), 2);
        assert_eq!(gm.module.action_kernel_size(), 4);
        assert_eq!(gm.module.tate_h0(), TateGroup { order: 2, invariants: vec![1] });
        assert_eq!(gm.module.tate_h_minus1(), TateGroup { order: 2, invariants: vec![1] });
        let ab = PGroup::abelian(2, vec![2, 1]).unwrap();
        assert!(matches!(module_from_group(&ab), Err(Error::Abelian(_))));
    }

    #[test]
    fn example_group_module() {
        let g = PGroup::semidirect_cyclic(32, 16, 11).unwrap();
        let gm = module_from_group(&g).unwrap();
        assert!(gm.center_of_frattini.len() < gm.frattini.len());
        assert!(gm.module.action_kernel_size() < 4);
        // trivial action of a coset iff the lift centralizes Z(Phi(G))
        for (i, &b) in gm.basis.iter().enumerate() {
            let trivial = gm.module.generators()[i].iter().enumerate().all(|(j, &x)| j as u32 == x);
            let centralizes = gm.carrier.iter().all(|&a| g.mul(a, b) == g.mul(b, a));
            assert_eq!(trivial, centralizes);
        }
    }
}
