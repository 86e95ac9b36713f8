//! Named group families, their plain-text descriptors, and parameter sweeps.
//!
//! A descriptor is a list of `key=value` pairs, either one per line (blank
//! lines and `#` comments are ignored) or comma separated on one line:
//!
//! ```text
//! family=metacyclic
//! p=2
//! alpha=5
//! beta=4
//! gamma=5
//! r=11
//! ```
//!
//! Direct products list their factors as repeated `component=` entries whose
//! inner pairs are separated by `;`, e.g.
//! `family=direct-product,component=family=dihedral;order=8,component=family=cyclic;order=2`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{log_exact, pow_u64, prime_power};
use crate::error::{Error, Result};
use crate::group::{MetacyclicParams, PGroup, MAX_LOG_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyDescriptor {
    Cyclic { p: u32, n: u32 },
    ElementaryAbelian { p: u32, rank: u32 },
    /// Order `2^n`.
    Dihedral { n: u32 },
    Quaternion { n: u32 },
    Semidihedral { n: u32 },
    /// `<a, b | a^(p^(n-1)), b^p, a^b = a^(1 + p^(n-2))>`.
    ModularMaximalCyclic { p: u32, n: u32 },
    Metacyclic(MetacyclicParams),
    /// `Z/m x| Z/n` with the generator of `Z/n` acting as `r`.
    SemidirectCyclic { m: u64, n: u64, r: u64 },
    DirectProduct { components: Vec<FamilyDescriptor> },
    HeisenbergP3 { p: u32 },
    WreathPP { p: u32 },
}

/// Family tags accepted by [`sweep`] and the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cyclic,
    ElementaryAbelian,
    Dihedral,
    Quaternion,
    Semidihedral,
    ModularMaximalCyclic,
    Metacyclic,
    SemidirectCyclic,
    DirectProduct,
    HeisenbergP3,
    WreathPP,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Cyclic,
        Family::ElementaryAbelian,
        Family::Dihedral,
        Family::Quaternion,
        Family::Semidihedral,
        Family::ModularMaximalCyclic,
        Family::Metacyclic,
        Family::SemidirectCyclic,
        Family::DirectProduct,
        Family::HeisenbergP3,
        Family::WreathPP,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::ElementaryAbelian => "elementary-abelian",
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
            Family::Semidihedral => "semidihedral",
            Family::ModularMaximalCyclic => "modular-maximal-cyclic",
            Family::Metacyclic => "metacyclic",
            Family::SemidirectCyclic => "semidirect-cyclic",
            Family::DirectProduct => "direct-product",
            Family::HeisenbergP3 => "heisenberg-p3",
            Family::WreathPP => "wreath-p-p",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .or(match s.as_str() {
                "modular" => Some(Family::ModularMaximalCyclic),
                "heisenberg" => Some(Family::HeisenbergP3),
                "wreath" => Some(Family::WreathPP),
                "semidirect" => Some(Family::SemidirectCyclic),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}'")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn two_power_order(n: u32, min: u32, name: &str) -> Result<()> {
    if n < min || n > MAX_LOG_ORDER {
        return Err(Error::InvalidParameters(format!(
            "{name} groups need order 2^n with {min} <= n <= {MAX_LOG_ORDER}, got n = {n}"
        )));
    }
    Ok(())
}

impl FamilyDescriptor {
    pub fn family(&self) -> Family {
        match self {
            Self::Cyclic { .. } => Family::Cyclic,
            Self::ElementaryAbelian { .. } => Family::ElementaryAbelian,
            Self::Dihedral { .. } => Family::Dihedral,
            Self::Quaternion { .. } => Family::Quaternion,
            Self::Semidihedral { .. } => Family::Semidihedral,
            Self::ModularMaximalCyclic { .. } => Family::ModularMaximalCyclic,
            Self::Metacyclic(_) => Family::Metacyclic,
            Self::SemidirectCyclic { .. } => Family::SemidirectCyclic,
            Self::DirectProduct { .. } => Family::DirectProduct,
            Self::HeisenbergP3 { .. } => Family::HeisenbergP3,
            Self::WreathPP { .. } => Family::WreathPP,
        }
    }

    pub fn dihedral_order(order: u64) -> Result<Self> {
        Ok(Self::Dihedral { n: two_log(order)? })
    }

    pub fn cyclic_order(order: u64) -> Result<Self> {
        let (p, n) = prime_power(order)?;
        Ok(Self::Cyclic { p, n })
    }

    /// Metacyclic parameters of the families realized as metacyclic groups.
    pub fn metacyclic_params(&self) -> Result<Option<MetacyclicParams>> {
        let params = match *self {
            Self::Dihedral { n } => {
                two_power_order(n, 3, "dihedral")?;
                let a = n - 1;
                MetacyclicParams { p: 2, alpha: a, beta: 1, gamma: a, r: (1 << a) - 1 }
            }
            Self::Quaternion { n } => {
                two_power_order(n, 3, "quaternion")?;
                let a = n - 1;
                MetacyclicParams { p: 2, alpha: a, beta: 1, gamma: n - 2, r: (1 << a) - 1 }
            }
            Self::Semidihedral { n } => {
                two_power_order(n, 4, "semidihedral")?;
                let a = n - 1;
                MetacyclicParams { p: 2, alpha: a, beta: 1, gamma: a, r: (1 << (n - 2)) - 1 }
            }
            Self::ModularMaximalCyclic { p, n } => {
                let min = if p == 2 { 4 } else { 3 };
                if n < min || n > MAX_LOG_ORDER {
                    return Err(Error::InvalidParameters(format!(
                        "modular groups need order p^n with {min} <= n <= {MAX_LOG_ORDER}"
                    )));
                }
                let a = n - 1;
                MetacyclicParams { p, alpha: a, beta: 1, gamma: a, r: 1 + pow_u64(p as u64, n - 2) }
            }
            Self::Metacyclic(m) => m,
            _ => return Ok(None),
        };
        params.validate()?;
        Ok(Some(params))
    }

    /// `(p, n)` with declared order `p^n`.
    pub fn declared_order(&self) -> Result<(u32, u32)> {
        Ok(match self {
            Self::Cyclic { p, n } => (*p, *n),
            Self::ElementaryAbelian { p, rank } => (*p, *rank),
            Self::Dihedral { n } | Self::Quaternion { n } | Self::Semidihedral { n } => (2, *n),
            Self::ModularMaximalCyclic { p, n } => (*p, *n),
            Self::Metacyclic(m) => (m.p, m.alpha + m.beta),
            Self::SemidirectCyclic { m, n, .. } => {
                let (p, a) = prime_power(*m)?;
                let (q, b) = prime_power(*n)?;
                if p != q {
                    return Err(Error::InvalidParameters(format!(
                        "{m} and {n} are powers of different primes"
                    )));
                }
                (p, a + b)
            }
            Self::DirectProduct { components } => {
                let mut p = None;
                let mut total = 0;
                for c in components {
                    let (q, k) = c.declared_order()?;
                    if *p.get_or_insert(q) != q {
                        return Err(Error::InvalidParameters(
                            "direct product of groups for different primes".into(),
                        ));
                    }
                    total += k;
                }
                (p.ok_or_else(|| Error::InvalidParameters("empty direct product".into()))?, total)
            }
            Self::HeisenbergP3 { p } => (*p, 3),
            Self::WreathPP { p } => (*p, *p + 1),
        })
    }

    pub fn build(&self) -> Result<PGroup> {
        let (p, n) = self.declared_order()?;
        if n > MAX_LOG_ORDER {
            return Err(Error::InvalidParameters(format!(
                "order {p}^{n} exceeds {p}^{MAX_LOG_ORDER}"
            )));
        }
        let g = match self {
            Self::Cyclic { p, n } => PGroup::abelian(*p, vec![*n])?,
            Self::ElementaryAbelian { p, rank } => PGroup::abelian(*p, vec![1; *rank as usize])?,
            Self::SemidirectCyclic { m, n, r } => PGroup::semidirect_cyclic(*m, *n, *r)?,
            Self::DirectProduct { components } => {
                let mut it = components.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::InvalidParameters("empty direct product".into()))?
                    .build()?;
                it.try_fold(first, |acc, c| acc.direct_product(&c.build()?))?
            }
            Self::HeisenbergP3 { p } => PGroup::heisenberg(*p)?,
            Self::WreathPP { p } => PGroup::wreath(*p)?,
            _ => PGroup::metacyclic(self.metacyclic_params()?.expect("metacyclic family"))?,
        };
        if g.p() != p || g.log_order() != n {
            return Err(Error::InvalidParameters(format!(
                "{self} built a group of order {}^{}, declared {p}^{n}",
                g.p(),
                g.log_order()
            )));
        }
        Ok(g.with_label(self.to_string()))
    }

    fn pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![("family".to_string(), self.family().tag().to_string())];
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        match self {
            Self::Cyclic { p, n } => push("order", pow_u64(*p as u64, *n).to_string()),
            Self::ElementaryAbelian { p, rank } => {
                push("p", p.to_string());
                push("rank", rank.to_string());
            }
            Self::Dihedral { n } | Self::Quaternion { n } | Self::Semidihedral { n } => {
                push("order", (1u64 << n).to_string())
            }
            Self::ModularMaximalCyclic { p, n } => {
                push("p", p.to_string());
                push("order", pow_u64(*p as u64, *n).to_string());
            }
            Self::Metacyclic(m) => {
                push("p", m.p.to_string());
                push("alpha", m.alpha.to_string());
                push("beta", m.beta.to_string());
                push("gamma", m.gamma.to_string());
                push("r", m.r.to_string());
            }
            Self::SemidirectCyclic { m, n, r } => {
                push("m", m.to_string());
                push("n", n.to_string());
                push("r", r.to_string());
            }
            Self::DirectProduct { components } => {
                for c in components {
                    let inner: Vec<String> =
                        c.pairs().iter().map(|(k, v)| format!("{k}={v}")).collect();
                    push("component", inner.join(";"));
                }
            }
            Self::HeisenbergP3 { p } | Self::WreathPP { p } => push("p", p.to_string()),
        }
        out
    }

    /// One `key=value` per line.
    pub fn to_config(&self) -> String {
        self.pairs().iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    /// Builds a descriptor from already split `key=value` pairs.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut fields: BTreeMap<String, String> = BTreeMap::new();
        let mut components = Vec::new();
        for (k, v) in pairs {
            let key = k.trim().to_ascii_lowercase().replace('_', "-");
            let value = v.trim();
            if key == "component" {
                components.push(parse_list(value, ';')?);
                continue;
            }
            if fields.insert(key.clone(), value.to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate key '{key}'")));
            }
        }
        let family: Family = fields
            .remove("family")
            .ok_or_else(|| Error::Parse("missing key 'family'".into()))?
            .parse()?;
        let mut f = Fields(fields);
        let desc = match family {
            Family::Cyclic => {
                let (p, n) = f.order_pn(None)?;
                Self::Cyclic { p, n }
            }
            Family::ElementaryAbelian => Self::ElementaryAbelian {
                p: f.num("p")?,
                rank: f.num("rank")?,
            },
            Family::Dihedral => Self::Dihedral { n: f.order_pn(Some(2))?.1 },
            Family::Quaternion => Self::Quaternion { n: f.order_pn(Some(2))?.1 },
            Family::Semidihedral => Self::Semidihedral { n: f.order_pn(Some(2))?.1 },
            Family::ModularMaximalCyclic => {
                let (p, n) = f.order_pn(None)?;
                Self::ModularMaximalCyclic { p, n }
            }
            Family::Metacyclic => Self::Metacyclic(MetacyclicParams {
                p: f.num("p")?,
                alpha: f.num("alpha")?,
                beta: f.num("beta")?,
                gamma: f.num("gamma")?,
                r: f.num("r")?,
            }),
            Family::SemidirectCyclic => Self::SemidirectCyclic {
                m: f.num("m")?,
                n: f.num("n")?,
                r: f.num("r")?,
            },
            Family::DirectProduct => {
                if components.is_empty() {
                    return Err(Error::Parse("direct-product needs component entries".into()));
                }
                Self::DirectProduct {
                    components: std::mem::take(&mut components),
                }
            }
            Family::HeisenbergP3 => Self::HeisenbergP3 { p: f.num("p")? },
            Family::WreathPP => Self::WreathPP { p: f.num("p")? },
        };
        if !components.is_empty() {
            return Err(Error::Parse(format!("{family} takes no component entries")));
        }
        f.finish()?;
        Ok(desc)
    }
}

fn two_log(order: u64) -> Result<u32> {
    log_exact(2, order)
        .ok_or_else(|| Error::InvalidParameters(format!("{order} is not a power of 2")))
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn num<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self
            .0
            .remove(key)
            .ok_or_else(|| Error::Parse(format!("missing key '{key}'")))?;
        raw.parse()
            .map_err(|_| Error::Parse(format!("'{raw}' is not a valid value for '{key}'")))
    }

    fn opt<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        if self.0.contains_key(key) {
            self.num(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// `order=p^n`, or `p=` with `n=`; `p` is checked against `fixed`.
    fn order_pn(&mut self, fixed: Option<u32>) -> Result<(u32, u32)> {
        let p: Option<u32> = self.opt("p")?;
        let n: Option<u32> = self.opt("n")?;
        let order: Option<u64> = self.opt("order")?;
        let (p, n) = match (order, p, n) {
            (Some(order), p, None) => {
                let (q, n) = prime_power(order)?;
                if p.is_some_and(|p| p != q) {
                    return Err(Error::InvalidParameters(format!("{order} is not a power of p")));
                }
                (q, n)
            }
            (None, p, Some(n)) => match p.or(fixed) {
                Some(p) => (p, n),
                None => return Err(Error::Parse("missing key 'p'".into())),
            },
            (Some(_), _, Some(_)) => {
                return Err(Error::Parse("give either 'order' or 'n', not both".into()))
            }
            (None, _, None) => return Err(Error::Parse("missing key 'order'".into())),
        };
        if fixed.is_some_and(|q| q != p) {
            return Err(Error::InvalidParameters(format!(
                "this family needs p = {}, got {p}",
                fixed.unwrap_or_default()
            )));
        }
        Ok((p, n))
    }

    fn finish(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => Err(Error::Parse(format!("unexpected key '{k}'"))),
            None => Ok(()),
        }
    }
}

fn parse_list(text: &str, sep: char) -> Result<FamilyDescriptor> {
    let mut pairs = Vec::new();
    for item in text.split(sep) {
        let item = item.trim();
        if item.is_empty() || item.starts_with('#') {
            continue;
        }
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{item}'")))?;
        pairs.push((k, v));
    }
    FamilyDescriptor::from_pairs(pairs)
}

impl FromStr for FamilyDescriptor {
    type Err = Error;

    /// Multi-line config or a single comma-separated line.
    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        match lines.as_slice() {
            [] => Err(Error::Parse("empty descriptor".into())),
            [one] => parse_list(one, ','),
            many => parse_list(&many.join("\n"), '\n'),
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Bounds for [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub p: u32,
    pub min_log_order: u32,
    pub max_log_order: u32,
}

impl SweepBounds {
    pub fn new(p: u32, min_log_order: u32, max_log_order: u32) -> Self {
        Self { p, min_log_order, max_log_order }
    }
}

/// Every valid tuple `(alpha, beta, gamma, r)` with `alpha, beta >= 1`,
/// `r < p^alpha` and order within bounds, in lexicographic order.
pub fn metacyclic_sweep(bounds: SweepBounds) -> Vec<MetacyclicParams> {
    let p = bounds.p;
    let max = bounds.max_log_order.min(MAX_LOG_ORDER);
    let mut out = Vec::new();
    for total in bounds.min_log_order.max(2)..=max {
        for alpha in 1..total {
            let beta = total - alpha;
            let m = pow_u64(p as u64, alpha);
            for gamma in 0..=alpha {
                for r in 1..m {
                    let params = MetacyclicParams { p, alpha, beta, gamma, r };
                    if params.validate().is_ok() {
                        out.push(params);
                    }
                }
            }
        }
    }
    out
}

/// Deterministic enumeration of descriptors of one family within bounds.
///
/// Families without a natural parameter sweep (direct products) yield
/// nothing.
pub fn sweep(family: Family, bounds: SweepBounds) -> Vec<FamilyDescriptor> {
    let p = bounds.p;
    let lo = bounds.min_log_order;
    let hi = bounds.max_log_order.min(MAX_LOG_ORDER);
    let range = move |min: u32| lo.max(min)..=hi;
    match family {
        Family::Cyclic => range(1).map(|n| FamilyDescriptor::Cyclic { p, n }).collect(),
        Family::ElementaryAbelian => range(1)
            .map(|rank| FamilyDescriptor::ElementaryAbelian { p, rank })
            .collect(),
        Family::Dihedral if p == 2 => range(3).map(|n| FamilyDescriptor::Dihedral { n }).collect(),
        Family::Quaternion if p == 2 => {
            range(3).map(|n| FamilyDescriptor::Quaternion { n }).collect()
        }
        Family::Semidihedral if p == 2 => {
            range(4).map(|n| FamilyDescriptor::Semidihedral { n }).collect()
        }
        Family::ModularMaximalCyclic => range(if p == 2 { 4 } else { 3 })
            .map(|n| FamilyDescriptor::ModularMaximalCyclic { p, n })
            .collect(),
        Family::Metacyclic => metacyclic_sweep(bounds)
            .into_iter()
            .map(FamilyDescriptor::Metacyclic)
            .collect(),
        Family::SemidirectCyclic => metacyclic_sweep(bounds)
            .into_iter()
            .filter(|m| m.gamma == m.alpha)
            .map(|m| FamilyDescriptor::SemidirectCyclic {
                m: pow_u64(p as u64, m.alpha),
                n: pow_u64(p as u64, m.beta),
                r: m.r,
            })
            .collect(),
        Family::HeisenbergP3 if (lo..=hi).contains(&3) => vec![FamilyDescriptor::HeisenbergP3 { p }],
        Family::WreathPP if (lo..=hi).contains(&(p + 1)) => vec![FamilyDescriptor::WreathPP { p }],
        _ => Vec::new(),
    }
}

fn cyclic2(n: u32) -> FamilyDescriptor {
    FamilyDescriptor::Cyclic { p: 2, n }
}

fn product(parts: Vec<FamilyDescriptor>) -> FamilyDescriptor {
    FamilyDescriptor::DirectProduct { components: parts }
}

/// Nonabelian 2-groups of order at most `2^max_log_order`: the metacyclic
/// sweep, the named 2-group families, wreath and Heisenberg groups at
/// `p = 2`, and direct products of small nonabelian groups with abelian
/// and nonabelian factors. Sorted and deduplicated by descriptor.
pub fn two_group_catalog(max_log_order: u32) -> Vec<FamilyDescriptor> {
    let bounds = SweepBounds::new(2, 3, max_log_order);
    let mut out: Vec<FamilyDescriptor> = Vec::new();
    for family in [
        Family::Dihedral,
        Family::Quaternion,
        Family::Semidihedral,
        Family::ModularMaximalCyclic,
        Family::Metacyclic,
        Family::HeisenbergP3,
        Family::WreathPP,
    ] {
        out.extend(sweep(family, bounds).into_iter().filter(|d| match d {
            FamilyDescriptor::Metacyclic(m) => !m.is_abelian(),
            _ => true,
        }));
    }
    let small_nonabelian: Vec<FamilyDescriptor> = [
        FamilyDescriptor::Dihedral { n: 3 },
        FamilyDescriptor::Quaternion { n: 3 },
        FamilyDescriptor::Dihedral { n: 4 },
        FamilyDescriptor::Quaternion { n: 4 },
        FamilyDescriptor::Semidihedral { n: 4 },
        FamilyDescriptor::ModularMaximalCyclic { p: 2, n: 4 },
        FamilyDescriptor::Dihedral { n: 5 },
        FamilyDescriptor::Quaternion { n: 5 },
        FamilyDescriptor::Semidihedral { n: 5 },
    ]
    .into();
    let abelian_factors = [
        vec![cyclic2(1)],
        vec![cyclic2(2)],
        vec![cyclic2(1), cyclic2(1)],
        vec![cyclic2(3)],
        vec![cyclic2(2), cyclic2(1)],
        vec![cyclic2(1), cyclic2(1), cyclic2(1)],
    ];
    for g in &small_nonabelian {
        for a in &abelian_factors {
            let mut parts = vec![g.clone()];
            parts.extend(a.iter().cloned());
            out.push(product(parts));
        }
        for h in &small_nonabelian {
            if h >= g {
                out.push(product(vec![g.clone(), h.clone()]));
            }
        }
    }
    out.push(product(vec![
        FamilyDescriptor::Dihedral { n: 3 },
        FamilyDescriptor::Dihedral { n: 3 },
        cyclic2(1),
    ]));
    out.push(product(vec![
        FamilyDescriptor::Quaternion { n: 3 },
        FamilyDescriptor::Dihedral { n: 3 },
        cyclic2(1),
    ]));
    out.push(product(vec![FamilyDescriptor::WreathPP { p: 2 }, cyclic2(2)]));
    out.retain(|d| {
        d.declared_order()
            .is_ok_and(|(p, n)| p == 2 && n <= max_log_order)
    });
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inline_and_config() {
        let d: FamilyDescriptor = "family=dihedral,order=8".parse().unwrap();
        assert_eq!(d, FamilyDescriptor::Dihedral { n: 3 });
        let cfg = "# example\nfamily=metacyclic\np=2\nalpha=5\nbeta=4\ngamma=5\nr=11\n";
        let d: FamilyDescriptor = cfg.parse().unwrap();
        assert_eq!(d.declared_order().unwrap(), (2, 9));
        assert_eq!(d.to_config().parse::<FamilyDescriptor>().unwrap(), d);
    }

    #[test]
    fn display_round_trips() {
        for d in two_group_catalog(6) {
            assert_eq!(d.to_string().parse::<FamilyDescriptor>().unwrap(), d, "{d}");
            assert_eq!(d.to_config().parse::<FamilyDescriptor>().unwrap(), d, "{d}");
        }
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "order=8",
            "family=nonsense,order=8",
            "family=dihedral",
            "family=dihedral,order=8,colour=red",
            "family=dihedral,order=x",
            "family=dihedral,order=8,order=16",
            "family=direct-product",
        ] {
            assert!(matches!(bad.parse::<FamilyDescriptor>(), Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!(
            "family=dihedral,order=27".parse::<FamilyDescriptor>(),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn named_families_build() {
        let sd16 = FamilyDescriptor::Semidihedral { n: 4 };
        assert_eq!(
            sd16.metacyclic_params().unwrap().unwrap(),
            MetacyclicParams { p: 2, alpha: 3, beta: 1, gamma: 3, r: 3 }
        );
        let g = sd16.build().unwrap();
        assert_eq!(g.nilpotency_class(), 3);
        let h = FamilyDescriptor::HeisenbergP3 { p: 3 }.build().unwrap();
        assert_eq!(h.order(), 27);
        assert!(h.elements().all(|x| h.pow(x, 3) == 0));
        assert_eq!(h.nilpotency_class(), 2);
        let w = FamilyDescriptor::WreathPP { p: 3 }.build().unwrap();
        assert_eq!(w.order(), 81);
        assert_eq!(w.nilpotency_class(), 3);
        assert!(FamilyDescriptor::Dihedral { n: 2 }.build().is_err());
        assert!(FamilyDescriptor::Semidihedral { n: 3 }.build().is_err());
    }

    #[test]
    fn sweeps() {
        let b = SweepBounds::new(2, 3, 7);
        assert_eq!(sweep(Family::Dihedral, b).len(), 5);
        let small = metacyclic_sweep(SweepBounds::new(2, 1, 5));
        let q8 = MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 1, r: 3 };
        let d8 = MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 2, r: 3 };
        let m16 = MetacyclicParams { p: 2, alpha: 3, beta: 1, gamma: 3, r: 5 };
        for x in [q8, d8, m16] {
            assert!(small.contains(&x), "{x:?}");
        }
        assert!(metacyclic_sweep(SweepBounds::new(2, 1, 20))
            .iter()
            .all(|m| m.alpha + m.beta <= MAX_LOG_ORDER));
        for d in sweep(Family::Metacyclic, SweepBounds::new(2, 1, 6)) {
            let (p, n) = d.declared_order().unwrap();
            let g = d.build().unwrap();
            assert_eq!((g.p(), g.log_order()), (p, n));
        }
    }

    #[test]
    fn coclass_one_families() {
        for n in 3..=6 {
            for d in [
                FamilyDescriptor::Dihedral { n },
                FamilyDescriptor::Quaternion { n },
                FamilyDescriptor::Semidihedral { n },
            ] {
                if let Ok(g) = d.build() {
                    assert_eq!(g.coclass(), 1, "{d}");
                }
            }
            if n >= 4 {
                let g = FamilyDescriptor::ModularMaximalCyclic { p: 2, n }.build().unwrap();
                assert_eq!(g.nilpotency_class(), 2);
            }
        }
    }
}
