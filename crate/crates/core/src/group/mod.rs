//! Concrete finite p-groups on dense element ids.
//!
//! Every group lives on ids `0..p^n` with `0` the identity. Multiplication
//! comes from a [`GroupLaw`] (a normal-form rule for one construction
//! family); groups of order at most [`TABLE_LIMIT`] additionally cache the
//! full Cayley table, which makes closures and series computations cheap.

mod laws;
mod subgroup;

use std::fmt;
use std::sync::Arc;

pub use laws::{AbelianLaw, DirectLaw, HeisenbergLaw, MetacyclicLaw, TableLaw, WreathLaw};
pub use subgroup::{Quotient, Series, SeriesKind, Subgroup};

use crate::arith::{log_exact, pow_u64, prime_power};
use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest order for which the Cayley table is cached.
pub const TABLE_LIMIT: usize = 1 << 12;

/// Largest supported order exponent `n` in `|G| = p^n`.
pub const MAX_LOG_ORDER: u32 = 13;

/// A multiplication rule on ids `0..order`.
pub trait GroupLaw: Send + Sync + fmt::Debug {
    fn mul(&self, a: Elem, b: Elem) -> Elem;
}

/// MetacyclicParams: `<a, b | a^(p^alpha), b^(p^beta) = a^(p^gamma), b a b^-1 = a^r>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct MetacyclicParams {
    pub p: u32,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub r: u64,
}

impl MetacyclicParams {
    /// Checks `gamma <= alpha`, `r^(p^beta) = 1` and `p^gamma (r - 1) = 0` mod `p^alpha`.
    pub fn validate(&self) -> Result<()> {
        if !crate::arith::is_prime(self.p as u64) {
            return Err(Error::InvalidParameters(format!("{} is not prime", self.p)));
        }
        if self.alpha + self.beta > MAX_LOG_ORDER {
            return Err(Error::InvalidParameters(format!(
                "order p^{} exceeds p^{MAX_LOG_ORDER}",
                self.alpha + self.beta
            )));
        }
        if self.gamma > self.alpha {
            return Err(Error::InvalidParameters(format!(
                "gamma = {} exceeds alpha = {}",
                self.gamma, self.alpha
            )));
        }
        let p = self.p as u64;
        let m = pow_u64(p, self.alpha);
        let r = self.r % m;
        if m > 1 && r % p == 0 {
            return Err(Error::InvalidParameters(format!("r = {} is not a unit mod {m}", self.r)));
        }
        if crate::arith::pow_mod(r, pow_u64(p, self.beta), m) != 1 % m {
            return Err(Error::InvalidParameters(format!(
                "r^(p^beta) != 1 mod p^alpha for r = {}",
                self.r
            )));
        }
        if (pow_u64(p, self.gamma) % m) * ((r + m - 1) % m) % m != 0 {
            return Err(Error::InvalidParameters(format!(
                "p^gamma (r - 1) != 0 mod p^alpha for r = {}",
                self.r
            )));
        }
        Ok(())
    }

    pub fn log_order(&self) -> u32 {
        self.alpha + self.beta
    }

    pub fn is_abelian(&self) -> bool {
        let m = pow_u64(self.p as u64, self.alpha);
        self.r % m == 1 % m
    }
}

#[derive(Clone)]
pub struct PGroup {
    p: u32,
    log_order: u32,
    order: usize,
    law: Arc<dyn GroupLaw>,
    table: Option<Arc<[Elem]>>,
    inverses: Arc<[Elem]>,
    generators: Vec<Elem>,
    label: String,
}

impl fmt::Debug for PGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PGroup")
            .field("label", &self.label)
            .field("p", &self.p)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PGroup {
    /// Builds a group from a law on `0..order`.
    ///
    /// Checks that the order is a prime power, that `0` is a two-sided
    /// identity and that the generators close up to the whole carrier.
    pub fn from_law(
        order: usize,
        law: Arc<dyn GroupLaw>,
        generators: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let (p, log_order) = if order == 1 {
            // The trivial group belongs to every prime; callers that care set it.
            (2, 0)
        } else {
            prime_power(order as u64)?
        };
        Self::from_law_with_prime(p, log_order, law, generators, label)
    }

    pub(crate) fn from_law_with_prime(
        p: u32,
        log_order: u32,
        law: Arc<dyn GroupLaw>,
        generators: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if log_order > MAX_LOG_ORDER {
            return Err(Error::InvalidParameters(format!(
                "order p^{log_order} exceeds p^{MAX_LOG_ORDER}"
            )));
        }
        let order = pow_u64(p as u64, log_order) as usize;
        let table = (order <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for a in 0..order as Elem {
                for b in 0..order as Elem {
                    t.push(law.mul(a, b));
                }
            }
            Arc::<[Elem]>::from(t)
        });
        let mut g = Self {
            p,
            log_order,
            order,
            law,
            table,
            inverses: Arc::from(Vec::new()),
            generators: Vec::new(),
            label: label.into(),
        };
        for x in 0..order as Elem {
            if g.mul(0, x) != x || g.mul(x, 0) != x {
                return Err(Error::Axiom(format!("0 is not an identity (fails at {x})")));
            }
        }
        let inverses: Vec<Elem> = (0..order as Elem)
            .map(|x| g.pow(x, order as u64 - 1))
            .collect();
        for (x, &y) in inverses.iter().enumerate() {
            if g.mul(x as Elem, y) != 0 {
                return Err(Error::Axiom(format!("element {x} has order not dividing {order}")));
            }
        }
        g.inverses = Arc::from(inverses);
        let mut gens: Vec<Elem> = generators.into_iter().filter(|&x| x != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidParameters("generator id out of range".into()));
        }
        g.generators = gens;
        let span = g.closure(g.generators.clone());
        if span.len() != order {
            return Err(Error::Axiom(format!(
                "generators span {} of {order} elements",
                span.len()
            )));
        }
        Ok(g)
    }

    /// Group on a full Cayley table (row-major, `table[a * order + b] = ab`).
    pub fn from_table(
        table: Vec<Elem>,
        generators: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let order = (table.len() as f64).sqrt() as usize;
        if order * order != table.len() {
            return Err(Error::InvalidParameters("table is not square".into()));
        }
        Self::from_law(order, Arc::new(TableLaw::new(order, table)), generators, label)
    }

    pub fn trivial(p: u32) -> Self {
        Self::from_law_with_prime(p, 0, Arc::new(TableLaw::new(1, vec![0])), vec![], "1")
            .expect("trivial group")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `n` with `|G| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn law(&self) -> &Arc<dyn GroupLaw> {
        &self.law
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.law.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut x = a;
        let mut ord = 1u64;
        while x != 0 {
            x = self.pow(x, self.p as u64);
            ord *= self.p as u64;
        }
        ord
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks associativity on every triple. Only sensible for small orders.
    pub fn is_associative_exhaustive(&self) -> bool {
        let n = self.order as Elem;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    /// Checks associativity on a deterministic pseudo-random sample of triples.
    pub fn is_associative_sampled(&self, samples: usize) -> bool {
        let n = self.order as u64;
        let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ n;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n) as Elem
        };
        (0..samples).all(|_| {
            let (a, b, c) = (next(), next(), next());
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        })
    }

    /// Direct product `self x other`; ids are `a + |self| * b`.
    pub fn direct_product(&self, other: &PGroup) -> Result<PGroup> {
        if self.order > 1 && other.order > 1 && self.p != other.p {
            return Err(Error::InvalidParameters(format!(
                "direct product of a {}-group and a {}-group",
                self.p, other.p
            )));
        }
        let p = if self.order > 1 { self.p } else { other.p };
        let left = self.order as Elem;
        let mut gens: Vec<Elem> = self.generators.clone();
        gens.extend(other.generators.iter().map(|&b| b * left));
        let label = format!("{} x {}", self.label, other.label);
        PGroup::from_law_with_prime(
            p,
            self.log_order + other.log_order,
            Arc::new(DirectLaw::new(self.clone(), other.clone())),
            gens,
            label,
        )
    }

    pub fn metacyclic(params: MetacyclicParams) -> Result<PGroup> {
        params.validate()?;
        let law = MetacyclicLaw::new(params);
        let a_order = pow_u64(params.p as u64, params.alpha) as Elem;
        let mut gens = Vec::new();
        if params.alpha > 0 {
            gens.push(1);
        }
        if params.beta > 0 {
            gens.push(a_order);
        }
        let label = format!(
            "metacyclic(p={}, alpha={}, beta={}, gamma={}, r={})",
            params.p, params.alpha, params.beta, params.gamma, params.r
        );
        PGroup::from_law_with_prime(params.p, params.log_order(), Arc::new(law), gens, label)
    }

    /// `Z/m x| Z/n` with the generator of `Z/n` acting by `x -> r x`.
    pub fn semidirect_cyclic(m: u64, n: u64, r: u64) -> Result<PGroup> {
        let (p, alpha) = prime_power(m)?;
        let (p2, beta) = if n == 1 { (p, 0) } else { prime_power(n)? };
        if p != p2 {
            return Err(Error::InvalidParameters(format!(
                "orders {m} and {n} are powers of different primes"
            )));
        }
        let params = MetacyclicParams {
            p,
            alpha,
            beta,
            gamma: alpha,
            r: r % m,
        };
        if crate::arith::pow_mod(r, n, m) != 1 {
            return Err(Error::InvalidParameters(format!(
                "the order of {r} mod {m} does not divide {n}"
            )));
        }
        Ok(PGroup::metacyclic(params)?.with_label(format!("Z/{m} x|_{r} Z/{n}")))
    }

    pub fn abelian(p: u32, exponents: Vec<u32>) -> Result<PGroup> {
        let law = AbelianLaw::new(crate::abelian::FinAbGroup::new(p, exponents)?);
        let m = law.module().clone();
        let gens = (0..m.rank()).map(|i| m.basis_vector(i) as Elem).collect();
        PGroup::from_law_with_prime(p, m.log_order(), Arc::new(law), gens, m.to_string())
    }

    /// Upper unitriangular 3x3 matrices over `Z/p`.
    pub fn heisenberg(p: u32) -> Result<PGroup> {
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        PGroup::from_law_with_prime(
            p,
            3,
            Arc::new(HeisenbergLaw::new(p)),
            vec![1, p],
            format!("heisenberg({p}^3)"),
        )
    }

    /// `Z/p wr Z/p = (Z/p)^p x| Z/p` with cyclic shift.
    pub fn wreath(p: u32) -> Result<PGroup> {
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        let law = WreathLaw::new(p);
        let base = law.base_order() as Elem;
        PGroup::from_law_with_prime(
            p,
            p + 1,
            Arc::new(law),
            vec![1, base],
            format!("Z/{p} wr Z/{p}"),
        )
    }

    pub(crate) fn log_p(&self, n: usize) -> u32 {
        log_exact(self.p as u64, n as u64).expect("subgroup order is a power of p")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> PGroup {
        PGroup::metacyclic(MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 1, r: 3 }).unwrap()
    }

    #[test]
    fn metacyclic_q8_axioms() {
        // i = a, j = b: i^2 = j^2 = (ij)^2 is the unique involution.
        let g = q8();
        assert_eq!(g.order(), 8);
        assert!(g.is_associative_exhaustive());
        assert!(!g.is_abelian());
        let (i, j) = (1, 4);
        let ij = g.mul(i, j);
        let minus_one = g.pow(i, 2);
        assert_ne!(minus_one, 0);
        assert_eq!(g.pow(j, 2), minus_one);
        assert_eq!(g.pow(ij, 2), minus_one);
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn metacyclic_d8_is_square_symmetries() {
        let g = PGroup::metacyclic(MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 2, r: 3 })
            .unwrap();
        assert!(g.is_associative_exhaustive());
        // D8 has five involutions, Q8 has one.
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 5);
        let rot = 1;
        let refl = 4;
        assert_eq!(g.element_order(rot), 4);
        assert_eq!(g.element_order(refl), 2);
        // reflection conjugates the rotation to its inverse
        assert_eq!(g.conjugate(refl, rot), g.inv(rot));
    }

    #[test]
    fn metacyclic_rejects_inconsistent_params() {
        // 3 has order 2 mod 8, but beta = 0 leaves no room
        let bad = MetacyclicParams { p: 2, alpha: 3, beta: 0, gamma: 3, r: 3 };
        assert!(PGroup::metacyclic(bad).is_err());
        // p^gamma (r - 1) = 2 * 2 != 0 mod 8
        let bad = MetacyclicParams { p: 2, alpha: 3, beta: 1, gamma: 1, r: 3 };
        assert!(PGroup::metacyclic(bad).is_err());
        let bad = MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 3, r: 3 };
        assert!(PGroup::metacyclic(bad).is_err());
        let bad = MetacyclicParams { p: 2, alpha: 3, beta: 1, gamma: 3, r: 2 };
        assert!(PGroup::metacyclic(bad).is_err());
    }

    #[test]
    fn semidirect_examples() {
        let g = PGroup::semidirect_cyclic(32, 16, 11).unwrap();
        assert_eq!(g.order(), 512);
        assert_eq!(crate::arith::multiplicative_order(11, 32), Some(8));
        let c4 = PGroup::semidirect_cyclic(4, 1, 1).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert_eq!(c4.element_order(1), 4);
        assert!(PGroup::semidirect_cyclic(32, 4, 11).is_err());
        assert!(PGroup::semidirect_cyclic(12, 4, 5).is_err());
        assert!(PGroup::semidirect_cyclic(9, 4, 1).is_err());
    }

    #[test]
    fn semidirect_matches_split_metacyclic() {
        let a = PGroup::semidirect_cyclic(16, 4, 5).unwrap();
        let b = PGroup::metacyclic(MetacyclicParams { p: 2, alpha: 4, beta: 2, gamma: 4, r: 5 })
            .unwrap();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn heisenberg_and_wreath() {
        let h = PGroup::heisenberg(3).unwrap();
        assert_eq!(h.order(), 27);
        assert!(h.is_associative_exhaustive());
        assert!(h.elements().all(|x| h.element_order(x) <= 3));
        let w = PGroup::wreath(3).unwrap();
        assert_eq!(w.order(), 81);
        assert!(w.is_associative_exhaustive());
        assert!(!w.is_abelian());
    }

    #[test]
    fn direct_product_orders() {
        let d = q8().direct_product(&PGroup::abelian(2, vec![2]).unwrap()).unwrap();
        assert_eq!(d.order(), 32);
        assert!(d.is_associative_sampled(2000));
        let bad = q8().direct_product(&PGroup::abelian(3, vec![1]).unwrap());
        assert!(bad.is_err());
    }

    #[test]
    fn table_groups_must_be_groups() {
        // x * y = 0 for all x, y: 0 is not an identity
        assert!(PGroup::from_table(vec![0, 0, 0, 0], vec![1], "bad").is_err());
        // Z/2 by table
        let z2 = PGroup::from_table(vec![0, 1, 1, 0], vec![1], "Z/2").unwrap();
        assert_eq!(z2.order(), 2);
        // generators must span
        assert!(PGroup::from_table(vec![0, 1, 1, 0], vec![], "Z/2").is_err());
    }
}
