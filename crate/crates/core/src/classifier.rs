//! The S/NS pipeline for a concrete p-group, the audits that apply only to
//! NS verdicts, and batch verification over catalog families.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

use crate::arith::{multiplicative_order, pow_mod, pow_u64};
use crate::audit::Audit;
use crate::catalog::FamilyDescriptor;
use crate::error::{Error, Result};
use crate::group::{Elem, PGroup};
use crate::tate::{center_within, module_from_group, OrderFormula, TateGroup};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    S,
    NS,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::S => "S",
            Verdict::NS => "NS",
        })
    }
}

/// Status of the order formula, whose hypothesis is cohomological
/// triviality of `Z(Phi(G))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OrderFormulaStatus {
    NotApplicable,
    Holds { sides: OrderFormula },
    Fails { sides: OrderFormula },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub descriptor: String,
    pub p: u32,
    pub n: u32,
    pub verdict: Verdict,
    pub generator_rank: u32,
    pub frattini_log_order: u32,
    pub frattini_abelian: bool,
    pub frattini_center_invariants: Vec<u32>,
    pub center_invariants: Vec<u32>,
    pub nilpotency_class: usize,
    pub coclass: usize,
    pub h0: TateGroup,
    pub h_minus1: TateGroup,
    pub action_kernel_size: usize,
    /// `Z(Phi(G))` inside the `p`-th term of the upper central series.
    pub frattini_center_in_zp: bool,
    pub order_formula: OrderFormulaStatus,
    /// `d(Z_2(G) / Z(G))`.
    pub z2_over_center_rank: u32,
    /// Type of `Z(Phi(G)) / (Z(G) n Z(Phi(G)))`.
    pub frattini_center_over_center_invariants: Vec<u32>,
    pub center_in_frattini: bool,
    /// `|A^Q|` and `|Z(G) n Z(Phi(G))|`, equal by construction.
    pub fixed_points_order: u64,
    pub center_intersection_order: u64,
    pub ns_audit: Option<Audit>,
}

impl ClassificationReport {
    pub fn frattini_center_log_order(&self) -> u32 {
        self.frattini_center_invariants.iter().sum()
    }

    pub fn center_rank(&self) -> u32 {
        self.center_invariants.len() as u32
    }

    /// Implications that force an S verdict, as `(name, antecedent, holds)`.
    pub fn shortcuts(&self) -> Vec<(&'static str, bool, bool)> {
        let s = self.verdict == Verdict::S;
        let rules = [
            ("frattini-abelian", self.frattini_abelian),
            ("action-kernel-nontrivial", self.action_kernel_size > 1),
            ("frattini-center-in-zp", self.frattini_center_in_zp),
        ];
        rules.into_iter().map(|(n, a)| (n, a, !a || s)).collect()
    }

    pub fn summary_line(&self) -> String {
        let kind = match self.verdict {
            Verdict::S => "S-group",
            Verdict::NS => "NS-group",
        };
        format!(
            "{}: {kind}, H0 order {}, class {}, coclass {}",
            self.descriptor, self.h0.order, self.nilpotency_class, self.coclass
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// A report for a hypothetical NS-group of order `2^8` that meets every
    /// NS constraint; tests perturb single fields to exercise the audit.
    pub fn synthetic_ns() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            descriptor: "synthetic".into(),
            p: 2,
            n: 8,
            verdict: Verdict::NS,
            generator_rank: 2,
            frattini_log_order: 6,
            frattini_abelian: false,
            frattini_center_invariants: vec![1, 1, 1, 1],
            center_invariants: vec![1],
            nilpotency_class: 4,
            coclass: 4,
            h0: TateGroup { order: 1, invariants: vec![] },
            h_minus1: TateGroup { order: 1, invariants: vec![] },
            action_kernel_size: 1,
            frattini_center_in_zp: false,
            order_formula: OrderFormulaStatus::NotApplicable,
            z2_over_center_rank: 2,
            frattini_center_over_center_invariants: vec![1, 1, 1],
            center_in_frattini: true,
            fixed_points_order: 2,
            center_intersection_order: 2,
            ns_audit: None,
        }
    }
}

/// Runs the full pipeline on a nonabelian p-group.
pub fn classify(g: &PGroup) -> Result<ClassificationReport> {
    if g.is_abelian() {
        return Err(Error::Abelian(g.label().to_string()));
    }
    let p = g.p();
    let gm = module_from_group(g)?;
    let module = &gm.module;
    let phi = &gm.frattini;
    let zphi = &gm.center_of_frattini;
    let center = g.center();
    let upper = g.upper_central_series();
    let zp = upper.term(p as usize);
    let h0 = module.tate_h0();
    let h_minus1 = module.tate_h_minus1();
    let ct = h0.is_zero() && h_minus1.is_zero();
    let order_formula = if ct {
        let sides = module.order_formula_sides();
        if sides.holds() {
            OrderFormulaStatus::Holds { sides }
        } else {
            OrderFormulaStatus::Fails { sides }
        }
    } else {
        OrderFormulaStatus::NotApplicable
    };
    let meet = center.intersection(g, zphi);
    let fixed = module.fixed_points(&module.full_group());
    let verdict = if h0.order > 1 { Verdict::S } else { Verdict::NS };
    let mut report = ClassificationReport {
        schema_version: SCHEMA_VERSION,
        descriptor: g.label().to_string(),
        p,
        n: g.log_order(),
        verdict,
        generator_rank: g.log_order() - phi.log_order(g),
        frattini_log_order: phi.log_order(g),
        frattini_abelian: phi.is_abelian(g),
        frattini_center_invariants: g.abelian_invariants(zphi)?,
        center_invariants: g.abelian_invariants(&center)?,
        nilpotency_class: g.nilpotency_class(),
        coclass: g.coclass(),
        h0,
        h_minus1,
        action_kernel_size: module.action_kernel_size(),
        frattini_center_in_zp: zphi.is_subgroup_of(zp),
        order_formula,
        z2_over_center_rank: g.section_invariants(upper.term(2), &center).len() as u32,
        frattini_center_over_center_invariants: g.section_invariants(zphi, &meet),
        center_in_frattini: center.is_subgroup_of(phi),
        fixed_points_order: fixed.len() as u64,
        center_intersection_order: meet.len() as u64,
        ns_audit: None,
    };
    if verdict == Verdict::NS {
        report.ns_audit = Some(ns_constraints_audit(&report)?);
    }
    Ok(report)
}

/// `|H^0|` computed inside the group: fixed points of `Z(Phi(G))` under
/// the Burnside basis over the image of `a -> prod_q q a q^-1`, with `q`
/// running over products of basis powers.
pub fn h0_order_direct(g: &PGroup) -> Result<u64> {
    if g.is_abelian() {
        return Err(Error::Abelian(g.label().to_string()));
    }
    let p = g.p() as u64;
    let a = center_within(g, &g.frattini_subgroup());
    let basis = g.burnside_basis();
    let mut reps: Vec<Elem> = vec![0];
    for &b in &basis {
        let mut next = Vec::with_capacity(reps.len() * p as usize);
        for &q in &reps {
            let mut x = q;
            for _ in 0..p {
                next.push(x);
                x = g.mul(x, b);
            }
        }
        reps = next;
    }
    let fixed = a
        .elements()
        .iter()
        .filter(|&&x| basis.iter().all(|&b| g.conjugate(b, x) == x))
        .count();
    let image: HashSet<Elem> = a
        .elements()
        .iter()
        .map(|&x| reps.iter().fold(0, |acc, &q| g.mul(acc, g.conjugate(q, x))))
        .collect();
    Ok((fixed / image.len()) as u64)
}

/// Constraints every NS-group satisfies, checked against a report.
pub fn ns_constraints_audit(report: &ClassificationReport) -> Result<Audit> {
    if report.verdict != Verdict::NS {
        return Err(Error::Hypothesis(format!(
            "{} has an S verdict; the NS audit does not apply",
            report.descriptor
        )));
    }
    let p = report.p;
    let d = report.generator_rank;
    let n = report.n;
    let mut audit = Audit::new(format!("NS constraints for {}", report.descriptor));
    let phi_min = d + p + 2;
    audit.check(
        "frattini-order",
        report.frattini_log_order >= phi_min,
        if report.frattini_log_order >= phi_min {
            format!("|Phi| = {p}^{} >= {p}^{phi_min}", report.frattini_log_order)
        } else {
            format!("Frattini too small: {p}^{} < {p}^{phi_min}", report.frattini_log_order)
        },
    );
    let g_min = 2 * d + p + 2;
    audit.check(
        "group-order",
        n >= g_min,
        format!("|G| = {p}^{n}, bound {p}^{g_min}"),
    );
    audit.check(
        "action-effective",
        report.action_kernel_size == 1,
        format!("action kernel of size {}", report.action_kernel_size),
    );
    audit.check(
        "frattini-center-not-in-zp",
        !report.frattini_center_in_zp,
        format!("Z(Phi) inside Z_{p}: {}", report.frattini_center_in_zp),
    );
    audit.check(
        "z2-over-center-rank",
        report.z2_over_center_rank == d * report.center_rank(),
        format!(
            "d(Z2/Z) = {}, d(G) d(Z) = {}",
            report.z2_over_center_rank,
            d * report.center_rank()
        ),
    );
    if n == p + 6 {
        audit.check("two-generated", d == 2, format!("d(G) = {d}"));
        audit.check(
            "frattini-center-order",
            report.frattini_center_log_order() == p + 2,
            format!("|Z(Phi)| = {p}^{}", report.frattini_center_log_order()),
        );
        audit.check(
            "center-cyclic-of-order-p",
            report.center_invariants == [1],
            format!("Z(G) of type {:?}", report.center_invariants),
        );
    }
    if p == 2 && n == 8 {
        let t = &report.frattini_center_invariants;
        audit.check(
            "frattini-center-type",
            t == &[1, 1, 1, 1] || t == &[2, 1, 1],
            format!("Z(Phi) of type {t:?}"),
        );
        audit.check(
            "frattini-center-over-center",
            report.frattini_center_over_center_invariants == [1, 1, 1],
            format!(
                "Z(Phi)/Z of type {:?}",
                report.frattini_center_over_center_invariants
            ),
        );
    }
    Ok(audit)
}

/// Outcome of classifying a list of descriptors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub total: usize,
    pub classified: usize,
    pub abelian: usize,
    pub s_verdicts: usize,
    pub ns_verdicts: usize,
    /// Descriptors that failed to build, with the reason.
    pub skipped: Vec<(String, String)>,
    pub reports: Vec<ClassificationReport>,
}

impl FamilySummary {
    pub fn all_s(&self) -> bool {
        self.ns_verdicts == 0 && self.skipped.is_empty() && self.classified > 0
    }

    /// Markdown table, one row per classified group.
    pub fn markdown(&self) -> String {
        let mut out = String::from(
            "| group | order | verdict | d | abs Phi | Phi abelian | Z(Phi) | class | coclass | H0 |\n\
             |---|---|---|---|---|---|---|---|---|---|\n",
        );
        for r in &self.reports {
            out.push_str(&format!(
                "| {} | {}^{} | {} | {} | {}^{} | {} | {:?} | {} | {} | {} |\n",
                r.descriptor,
                r.p,
                r.n,
                r.verdict,
                r.generator_rank,
                r.p,
                r.frattini_log_order,
                if r.frattini_abelian { "yes" } else { "no" },
                r.frattini_center_invariants,
                r.nilpotency_class,
                r.coclass,
                r.h0.order
            ));
        }
        out
    }
}

/// Classifies every nonabelian group in the list, in parallel, with the
/// reports sorted by descriptor.
pub fn verify_family(descriptors: &[FamilyDescriptor]) -> FamilySummary {
    let outcomes: Vec<(String, Result<Option<ClassificationReport>>)> = descriptors
        .par_iter()
        .map(|d| {
            let r = d.build().and_then(|g| {
                if g.is_abelian() {
                    Ok(None)
                } else {
                    classify(&g).map(Some)
                }
            });
            (d.to_string(), r)
        })
        .collect();
    let mut summary = FamilySummary {
        total: descriptors.len(),
        classified: 0,
        abelian: 0,
        s_verdicts: 0,
        ns_verdicts: 0,
        skipped: Vec::new(),
        reports: Vec::new(),
    };
    for (name, outcome) in outcomes {
        match outcome {
            Ok(Some(r)) => {
                summary.classified += 1;
                match r.verdict {
                    Verdict::S => summary.s_verdicts += 1,
                    Verdict::NS => summary.ns_verdicts += 1,
                }
                summary.reports.push(r);
            }
            Ok(None) => summary.abelian += 1,
            Err(e) => summary.skipped.push((name, e.to_string())),
        }
    }
    summary.reports.sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
    summary.skipped.sort();
    summary
}

/// Checks on `Z/32 x| Z/16` with the generator acting as multiplication
/// by 11.
pub fn example_group_audit() -> Result<Audit> {
    let g = PGroup::semidirect_cyclic(32, 16, 11)?.with_label("Z/32 x|_11 Z/16");
    let mut audit = Audit::new("Z/32 x| Z/16, r = 11");
    let a: Elem = 1;
    let b: Elem = 32;
    let ab = g.mul(a, b);
    audit.check("ab-power-16", g.pow(ab, 16) == 0, "(ab)^16 = e");
    let a16b16 = g.mul(g.pow(a, 16), g.pow(b, 16));
    audit.check(
        "a16-b16",
        a16b16 == 16 && a16b16 != 0,
        format!("a^16 b^16 = ([{}],[{}])", a16b16 % 32, a16b16 / 32),
    );
    let sum: u64 = (0..16).map(|i| pow_mod(11, i, 32)).sum::<u64>() % 32;
    audit.check("geometric-sum", sum == 0, "1 + 11 + ... + 11^15 = 0 mod 32");
    let quotient = (pow_u64(11, 8) - 1) / 5;
    audit.check(
        "geometric-sum-closed",
        quotient % 32 == 0 && (pow_u64(11, 8) - 1) % 5 == 0,
        format!("(11^8 - 1)/5 = {quotient}"),
    );
    let ord = multiplicative_order(11, 32);
    audit.check("twist-order", ord == Some(8), format!("ord_32(11) = {ord:?}"));

    let phi = g.frattini_subgroup();
    audit.check("frattini-order", phi.len() == 128, format!("|Phi| = {}", phi.len()));
    audit.check("frattini-nonabelian", !phi.is_abelian(&g), "Phi(G) is not abelian");
    let squares = g.closure([g.pow(a, 2), g.pow(b, 2)]);
    audit.check("frattini-generators", squares == phi, "Phi(G) = <a^2, b^2>");
    let derived = g.derived_subgroup();
    let two_z32 = g.closure([2]);
    audit.check(
        "derived-subgroup",
        derived == two_z32 && derived.len() == 16,
        format!("|[G,G]| = {}", derived.len()),
    );
    let q = g.quotient(&phi)?;
    let elementary = q.group.elements().all(|x| q.group.pow(x, 2) == 0);
    audit.check(
        "frattini-quotient",
        q.group.order() == 4 && elementary,
        "G/Phi(G) is elementary abelian of rank 2",
    );
    let orders = g.lower_central_series().orders();
    audit.check(
        "lower-central-series",
        orders == [512, 16, 8, 4, 2, 1],
        format!("orders {orders:?}"),
    );
    audit.check("class", g.nilpotency_class() == 5, format!("class {}", g.nilpotency_class()));
    audit.check("coclass", g.coclass() == 4, format!("coclass {}", g.coclass()));
    let report = classify(&g)?;
    audit.check(
        "verdict",
        report.verdict == Verdict::S,
        report.summary_line(),
    );
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::MetacyclicParams;

    #[test]
    fn dihedral_8() {
        let g = FamilyDescriptor::Dihedral { n: 3 }.build().unwrap();
        let r = classify(&g).unwrap();
        assert_eq!(r.verdict, Verdict::S);
        assert_eq!(r.h0.order, 2);
        assert_eq!((r.nilpotency_class, r.coclass), (2, 1));
        assert_eq!(h0_order_direct(&g).unwrap(), 2);
        assert!(r.ns_audit.is_none());
    }

    #[test]
    fn quaternion_8() {
        let g = PGroup::metacyclic(MetacyclicParams { p: 2, alpha: 2, beta: 1, gamma: 1, r: 3 })
            .unwrap();
        let r = classify(&g).unwrap();
        assert!(r.frattini_abelian);
        assert_eq!(r.verdict, Verdict::S);
    }

    #[test]
    fn abelian_rejected() {
        let g = PGroup::abelian(2, vec![3]).unwrap();
        assert!(matches!(classify(&g), Err(Error::Abelian(_))));
    }

    #[test]
    fn example_group() {
        let audit = example_group_audit().unwrap();
        assert!(audit.passed(), "{:#?}", audit.failures());
    }

    #[test]
    fn synthetic_reports() {
        let good = ClassificationReport::synthetic_ns();
        assert!(ns_constraints_audit(&good).unwrap().passed());

        let mut small = good.clone();
        small.n = 6;
        small.frattini_log_order = 3;
        let a = ns_constraints_audit(&small).unwrap();
        let fail = a.get("frattini-order").unwrap();
        assert!(!fail.passed && fail.detail.contains("Frattini too small"));

        let mut center = good.clone();
        center.center_invariants = vec![1, 1];
        assert!(!ns_constraints_audit(&center).unwrap().get("center-cyclic-of-order-p").unwrap().passed);

        let mut zphi = good.clone();
        zphi.frattini_center_invariants = vec![2, 2];
        assert!(!ns_constraints_audit(&zphi).unwrap().get("frattini-center-type").unwrap().passed);

        let mut s = good;
        s.verdict = Verdict::S;
        assert!(ns_constraints_audit(&s).is_err());
    }

    #[test]
    fn summary_is_sorted() {
        let descs: Vec<FamilyDescriptor> =
            (3..=5).rev().map(|n| FamilyDescriptor::Dihedral { n }).collect();
        let s = verify_family(&descs);
        assert!(s.all_s());
        let names: Vec<&str> = s.reports.iter().map(|r| r.descriptor.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(s.markdown().lines().count() == 5);
    }
}
