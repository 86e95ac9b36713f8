use super::{Elem, GroupLaw, MetacyclicParams, PGroup};
use crate::abelian::FinAbGroup;
use crate::arith::pow_u64;

#[derive(Debug, Clone)]
pub struct TableLaw {
    order: usize,
    table: Vec<Elem>,
}

impl TableLaw {
    pub fn new(order: usize, table: Vec<Elem>) -> Self {
        assert_eq!(table.len(), order * order);
        Self { order, table }
    }
}

impl GroupLaw for TableLaw {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }
}

/// Coordinate-wise addition in a [`FinAbGroup`].
#[derive(Debug, Clone)]
pub struct AbelianLaw {
    module: FinAbGroup,
}

impl AbelianLaw {
    pub fn new(module: FinAbGroup) -> Self {
        Self { module }
    }

    pub fn module(&self) -> &FinAbGroup {
        &self.module
    }
}

impl GroupLaw for AbelianLaw {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.module.add(a as usize, b as usize) as Elem
    }
}

/// Normal-form pairs `(i, j) = a^i b^j`, id `i + p^alpha * j`, with
/// `(i, j)(i', j') = (i + r^j i' + p^gamma * floor((j + j') / p^beta), j + j')`.
#[derive(Debug, Clone)]
pub struct MetacyclicLaw {
    a_order: u64,
    b_order: u64,
    carry: u64,
    r_powers: Vec<u64>,
}

impl MetacyclicLaw {
    pub fn new(params: MetacyclicParams) -> Self {
        let p = params.p as u64;
        let a_order = pow_u64(p, params.alpha);
        let b_order = pow_u64(p, params.beta);
        let mut r_powers = Vec::with_capacity(b_order as usize);
        let mut x = 1 % a_order;
        for _ in 0..b_order {
            r_powers.push(x);
            x = x * (params.r % a_order) % a_order;
        }
        Self {
            a_order,
            b_order,
            carry: pow_u64(p, params.gamma) % a_order,
            r_powers,
        }
    }
}

impl GroupLaw for MetacyclicLaw {
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (x, y) = (x as u64, y as u64);
        let (i, j) = (x % self.a_order, x / self.a_order);
        let (i2, j2) = (y % self.a_order, y / self.a_order);
        let s = j + j2;
        let wrap = s / self.b_order;
        let ni = (i + self.r_powers[j as usize] * i2 + self.carry * wrap) % self.a_order;
        let nj = s % self.b_order;
        (ni + self.a_order * nj) as Elem
    }
}

/// Triples `(a, b, c)` for the matrix `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
#[derive(Debug, Clone)]
pub struct HeisenbergLaw {
    p: u64,
}

impl HeisenbergLaw {
    pub fn new(p: u32) -> Self {
        Self { p: p as u64 }
    }
}

impl GroupLaw for HeisenbergLaw {
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p;
        let (x, y) = (x as u64, y as u64);
        let (a, b, c) = (x % p, (x / p) % p, x / (p * p));
        let (a2, b2, c2) = (y % p, (y / p) % p, y / (p * p));
        let na = (a + a2) % p;
        let nb = (b + b2) % p;
        let nc = (c + c2 + a * b2) % p;
        (na + p * nb + p * p * nc) as Elem
    }
}

/// `(v, s)` with `v` in `(Z/p)^p`; `(v, s)(w, t) = (v + shift^s(w), s + t)`.
#[derive(Debug, Clone)]
pub struct WreathLaw {
    p: u64,
    base: u64,
}

impl WreathLaw {
    pub fn new(p: u32) -> Self {
        let p = p as u64;
        Self {
            p,
            base: pow_u64(p, p as u32),
        }
    }

    pub fn base_order(&self) -> u64 {
        self.base
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        (0..self.p)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }
}

impl GroupLaw for WreathLaw {
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p;
        let (x, y) = (x as u64, y as u64);
        let (v, s) = (self.digits(x % self.base), x / self.base);
        let (w, t) = (self.digits(y % self.base), y / self.base);
        let mut out = 0u64;
        for i in (0..p as usize).rev() {
            let src = (i + p as usize - s as usize) % p as usize;
            out = out * p + (v[i] + w[src]) % p;
        }
        (out + self.base * ((s + t) % p)) as Elem
    }
}

/// Ids `a + |left| * b` for `(a, b)` in `left x right`.
#[derive(Debug, Clone)]
pub struct DirectLaw {
    left: PGroup,
    right: PGroup,
}

impl DirectLaw {
    pub fn new(left: PGroup, right: PGroup) -> Self {
        Self { left, right }
    }
}

impl GroupLaw for DirectLaw {
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let n = self.left.order() as Elem;
        let a = self.left.mul(x % n, y % n);
        let b = self.right.mul(x / n, y / n);
        a + n * b
    }
}
