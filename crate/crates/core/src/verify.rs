//! The verification suite: eleven named checks, each reproducing one claim
//! exhaustively at desk scale. Shared by the command-line tool and the
//! acceptance test target.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use crate::abelian::FinAbGroup;
use crate::audit::{Audit, AuditCheck};
use crate::autsearch::{
    self, commuting_type_table, congruence_closed_form, congruence_solver, involution_corners,
    involution_corners_closed_form, AutGroup, EndoMatrix, Guards, SearchReport,
};
use crate::catalog::{sweep, two_group_catalog, Family, FamilyDescriptor, SweepBounds};
use crate::classifier::{
    classify, example_group_audit, h0_order_direct, ns_constraints_audit, ClassificationReport,
    FamilySummary, OrderFormulaStatus, Verdict,
};
use crate::error::{Error, Result};
use crate::group::PGroup;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Congruence,
    CyclicExclusion,
    ProductExclusion,
    OddPExclusion,
    Z4z4Exclusion,
    PositiveWitnesses,
    OrderFormula,
    GroupVerdicts,
    ExampleGroup,
    StructuralShortcuts,
    SyntheticNsAudits,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Congruence,
        CheckId::CyclicExclusion,
        CheckId::ProductExclusion,
        CheckId::OddPExclusion,
        CheckId::Z4z4Exclusion,
        CheckId::PositiveWitnesses,
        CheckId::OrderFormula,
        CheckId::GroupVerdicts,
        CheckId::ExampleGroup,
        CheckId::StructuralShortcuts,
        CheckId::SyntheticNsAudits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Congruence => "congruence",
            CheckId::CyclicExclusion => "cyclic-exclusion",
            CheckId::ProductExclusion => "product-exclusion",
            CheckId::OddPExclusion => "odd-p-exclusion",
            CheckId::Z4z4Exclusion => "z4z4-exclusion",
            CheckId::PositiveWitnesses => "positive-witnesses",
            CheckId::OrderFormula => "order-formula",
            CheckId::GroupVerdicts => "group-verdicts",
            CheckId::ExampleGroup => "example-group",
            CheckId::StructuralShortcuts => "structural-shortcuts",
            CheckId::SyntheticNsAudits => "synthetic-ns-audits",
        }
    }

    /// The claim the check reproduces.
    pub fn claim(self) -> &'static str {
        match self {
            CheckId::Congruence => "r^2 - 1 = 2^(k-1) mod 2^k has solutions only for k >= 4, namely 2^(k-2) +- 1 and 3 2^(k-2) +- 1",
            CheckId::CyclicExclusion => "cyclic p-groups are never cohomologically trivial under rank >= 2 effective actions",
            CheckId::ProductExclusion => "Z/2^k x Z/2 is never cohomologically trivial under rank >= 2 effective actions",
            CheckId::OddPExclusion => "Z/p^k x Z/p (p odd) is never cohomologically trivial under rank >= 2 effective actions",
            CheckId::Z4z4Exclusion => "Z/4 x Z/4 is never cohomologically trivial under rank >= 2 effective actions",
            CheckId::PositiveWitnesses => "(Z/2)^4 and Z/4 x (Z/2)^2 admit cohomologically trivial rank-2 actions; rank 3 is impossible on (Z/2)^4",
            CheckId::OrderFormula => "|A| = |A^Q| |A^Q (x) Q| |[A,Q,Q]| for cohomologically trivial modules; H^0 = 0 iff H^-1 = 0",
            CheckId::GroupVerdicts => "small 2-groups, coclass-one families, metacyclic groups and the order-81 wreath and order-27 Heisenberg groups are S-groups",
            CheckId::ExampleGroup => "Z/32 x|_11 Z/16 has nonabelian Frattini subgroup of order 2^7, class 5, coclass 4, and is an S-group",
            CheckId::StructuralShortcuts => "abelian Frattini, nontrivial action kernel or Z(Phi) in Z_p(G) each force an S verdict",
            CheckId::SyntheticNsAudits => "reports violating NS constraints are rejected by the NS audit",
        }
    }

    /// Wall-clock budget in seconds.
    pub fn budget_secs(self) -> u64 {
        match self {
            CheckId::Congruence => 1,
            CheckId::CyclicExclusion => 10,
            CheckId::ProductExclusion => 60,
            CheckId::OddPExclusion => 120,
            CheckId::Z4z4Exclusion => 30,
            CheckId::PositiveWitnesses => 600,
            CheckId::OrderFormula => 600,
            CheckId::GroupVerdicts => 300,
            CheckId::ExampleGroup => 5,
            CheckId::StructuralShortcuts => 300,
            CheckId::SyntheticNsAudits => 5,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub claim: String,
    pub status: CheckStatus,
    pub elapsed_ms: u64,
    pub budget_secs: u64,
    pub summary: String,
    pub subchecks: Vec<AuditCheck>,
    pub artifacts: Vec<String>,
}

impl CheckResult {
    pub fn failures(&self) -> Vec<&AuditCheck> {
        self.subchecks.iter().filter(|c| !c.passed).collect()
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {} ({} subchecks, {:.2}s, budget {}s): {}",
            self.status.to_string().to_uppercase(),
            self.name,
            self.subchecks.len(),
            self.elapsed_ms as f64 / 1000.0,
            self.budget_secs,
            self.summary
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub schema_version: u32,
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite serializes")
    }

    pub fn markdown(&self) -> String {
        let mut out = String::from("| check | status | subchecks | time (s) | summary |\n|---|---|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {} | {:.2} | {} |\n",
                c.name,
                c.status,
                c.subchecks.len(),
                c.elapsed_ms as f64 / 1000.0,
                c.summary
            ));
        }
        for c in &self.checks {
            let failures = c.failures();
            if failures.is_empty() {
                continue;
            }
            out.push_str(&format!("\n### {} failures\n\n", c.name));
            for f in failures {
                out.push_str(&format!("- {}: {}\n", f.name, f.detail));
            }
        }
        out
    }
}

/// Memoized searches and classifications shared between checks.
#[derive(Default)]
pub struct Context {
    guards: OnceLock<Guards>,
    searches: Mutex<BTreeMap<(u32, Vec<u32>, usize), SearchReport>>,
    groups: OnceLock<Vec<(String, FamilySummary)>>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    fn guards(&self) -> Result<Guards> {
        if let Some(g) = self.guards.get() {
            return Ok(*g);
        }
        let g = Guards::from_env()?;
        Ok(*self.guards.get_or_init(|| g))
    }

    /// The search report for `M`, computed once per context.
    pub fn search(&self, p: u32, exponents: &[u32], rank_min: usize) -> Result<SearchReport> {
        let key = (p, exponents.to_vec(), rank_min);
        if let Some(r) = self.searches.lock().expect("lock").get(&key) {
            return Ok(r.clone());
        }
        let m = FinAbGroup::new(p, exponents.to_vec())?;
        let r = autsearch::classify_ct_actions_with(&m, rank_min, &self.guards()?)?;
        self.searches.lock().expect("lock").insert(key, r.clone());
        Ok(r)
    }

    /// Every search run so far.
    pub fn searches(&self) -> Vec<SearchReport> {
        self.searches.lock().expect("lock").values().cloned().collect()
    }

    /// Classifications of the group corpus, as `(sweep name, summary)`.
    pub fn group_corpus(&self) -> &[(String, FamilySummary)] {
        self.groups.get_or_init(|| {
            let two_names = [Family::Dihedral, Family::Quaternion, Family::Semidihedral];
            let coclass_one: Vec<FamilyDescriptor> = two_names
                .into_iter()
                .flat_map(|f| sweep(f, SweepBounds::new(2, 3, 7)))
                .collect();
            let metacyclic: Vec<FamilyDescriptor> =
                sweep(Family::Metacyclic, SweepBounds::new(2, 2, 10))
                    .into_iter()
                    .filter(|d| matches!(d, FamilyDescriptor::Metacyclic(m) if !m.is_abelian()))
                    .collect();
            let odd = vec![
                FamilyDescriptor::WreathPP { p: 3 },
                FamilyDescriptor::HeisenbergP3 { p: 3 },
            ];
            vec![
                ("catalog-2-groups-to-2^7".to_string(), crate::classifier::verify_family(&two_group_catalog(7))),
                ("coclass-one-2^3-to-2^7".to_string(), crate::classifier::verify_family(&coclass_one)),
                ("metacyclic-p2-to-2^10".to_string(), crate::classifier::verify_family(&metacyclic)),
                ("odd-maximal-class".to_string(), crate::classifier::verify_family(&odd)),
            ]
        })
    }
}

struct Checks {
    items: Vec<AuditCheck>,
}

impl Checks {
    fn new() -> Self {
        Self { items: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(AuditCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn audit(&mut self, prefix: &str, audit: &Audit) {
        for c in &audit.checks {
            self.add(format!("{prefix}/{}", c.name), c.passed, c.detail.clone());
        }
    }
}

fn hits_by_rank(r: &SearchReport) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for h in &r.hits {
        *out.entry(h.rank).or_insert(0) += 1;
    }
    out
}

fn exclusion(ctx: &Context, c: &mut Checks, p: u32, exps: &[u32]) -> Result<()> {
    let r = ctx.search(p, exps, 2)?;
    let m = FinAbGroup::new(p, exps.to_vec())?;
    c.add(
        format!("{m}"),
        r.hit_count == 0,
        format!(
            "{} hits among {} subgroups of rank >= 2 (|Aut| = {})",
            r.hit_count, r.subgroups_examined, r.automorphism_count
        ),
    );
    Ok(())
}

fn check_congruence(_: &Context, c: &mut Checks) -> Result<String> {
    for k in 2..=12 {
        let brute = congruence_solver(k);
        let closed = congruence_closed_form(k);
        c.add(format!("k={k}"), brute == closed, format!("{brute:?}"));
    }
    Ok("brute force equals the closed form for k = 2..12".into())
}

fn check_cyclic(ctx: &Context, c: &mut Checks) -> Result<String> {
    for (p, max_k) in [(2u32, 8u32), (3, 5), (5, 3)] {
        for k in 1..=max_k {
            exclusion(ctx, c, p, &[k])?;
            let r = ctx.search(p, &[k], 2)?;
            let expected = usize::from(p == 2 && k >= 3);
            c.add(
                format!("Z/{}^{k} rank-2 subgroups", p),
                r.subgroups_examined == expected,
                format!("{} elementary abelian subgroups of rank >= 2", r.subgroups_examined),
            );
        }
    }
    for k in 3..=8 {
        let m = FinAbGroup::new(2, vec![k])?;
        let aut = AutGroup::enumerate(&m)?;
        let max_order = (0..aut.len()).map(|a| aut.element_order(a)).max().unwrap_or(1);
        let inversion = aut
            .find(&EndoMatrix::new(&m, vec![vec![(1 << k) - 1]])?)
            .expect("inversion is an automorphism");
        let subs = autsearch::elementary_abelian_subgroups_within(&aut, None, 2, &ctx.guards()?)?;
        c.add(
            format!("Aut(Z/2^{k})"),
            aut.len() == 1 << (k - 1)
                && max_order == 1 << (k - 2)
                && subs.len() == 1
                && subs[0].contains(inversion),
            format!(
                "order {}, exponent {max_order}, {} rank-2 subgroups, containing inversion",
                aut.len(),
                subs.len()
            ),
        );
    }
    Ok("no hits on cyclic modules of order <= 256 for p = 2, 3, 5".into())
}

fn check_product(ctx: &Context, c: &mut Checks) -> Result<String> {
    for k in 2..=6 {
        exclusion(ctx, c, 2, &[k, 1])?;
        let m = FinAbGroup::new(2, vec![k, 1])?;
        let aut = AutGroup::enumerate(&m)?;
        let (plain, mixed) = involution_corners(&aut)?;
        c.add(
            format!("k={k} corners mn=0"),
            plain == involution_corners_closed_form(k),
            format!("{plain:?}"),
        );
        c.add(
            format!("k={k} corners mn=1"),
            mixed == congruence_closed_form(k),
            format!("{mixed:?}"),
        );
    }
    for k in 3..=6 {
        let t = commuting_type_table(k)?;
        let cells: Vec<String> = t
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| format!("{}/{}", c.commuting, c.pairs))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        c.add(
            format!("k={k} commuting-type table"),
            t.agrees(),
            format!("{} involutions; commuting/pairs by type: {}", t.involutions, cells.join("; ")),
        );
    }
    Ok("no hits for k = 2..6; corners and the commuting-type table reproduced".into())
}

fn check_odd_p(ctx: &Context, c: &mut Checks) -> Result<String> {
    for (p, k) in [(3u32, 2u32), (3, 3), (5, 2)] {
        exclusion(ctx, c, p, &[k, 1])?;
        let audit = autsearch::odd_p_sylow_audit(p, k)?;
        c.audit(&format!("p={p},k={k}"), &audit);
    }
    Ok("no hits on Z/9 x Z/3, Z/27 x Z/3, Z/25 x Z/5; Sylow traces as displayed".into())
}

fn check_z4z4(ctx: &Context, c: &mut Checks) -> Result<String> {
    exclusion(ctx, c, 2, &[2, 2])?;
    c.audit("aut", &autsearch::aut_z4z4_structure_audit()?);
    Ok("|Aut| = 96, |K| = 16, Sylow of order 32, no hits".into())
}

fn check_positive(ctx: &Context, c: &mut Checks) -> Result<String> {
    let free = ctx.search(2, &[1, 1, 1, 1], 2)?;
    let by_rank = hits_by_rank(&free);
    let rank2 = by_rank.get(&2).copied().unwrap_or(0);
    c.add("(Z/2)^4 rank 2", rank2 >= 1, format!("{rank2} hits of rank 2"));
    let higher = ctx.search(2, &[1, 1, 1, 1], 3)?;
    c.add(
        "(Z/2)^4 rank 3",
        higher.hit_count == 0 && higher.subgroups_examined > 0,
        format!("{} hits among {} subgroups", higher.hit_count, higher.subgroups_examined),
    );
    let divisible = free
        .hits
        .iter()
        .all(|h| 4 % (1usize << h.rank) == 0);
    c.add("rank divisibility", divisible, "rank of M is a multiple of 2^rank(E) for every hit");
    let mixed = ctx.search(2, &[2, 1, 1], 2)?;
    c.add(
        "Z/4 x (Z/2)^2",
        mixed.hit_count >= 1,
        if mixed.hit_count >= 1 {
            format!("{} hits among {} subgroups", mixed.hit_count, mixed.subgroups_examined)
        } else {
            "no hits: contradicts the existence of NS-groups with this Z(Phi)".into()
        },
    );
    Ok(format!(
        "(Z/2)^4: {rank2} rank-2 hits, 0 of rank 3; Z/4 x (Z/2)^2: {} hits",
        mixed.hit_count
    ))
}

fn check_order_formula(ctx: &Context, c: &mut Checks) -> Result<String> {
    // make sure every search of the corpus exists
    for (p, exps) in [(2u32, vec![2u32, 2]), (2, vec![1, 1, 1, 1]), (2, vec![2, 1, 1])] {
        ctx.search(p, &exps, 2)?;
    }
    let mut hits = 0;
    for r in ctx.searches() {
        let m = FinAbGroup::new(r.p, r.module_type.clone())?;
        let ok = r.hits.iter().all(|h| h.order_formula_holds);
        hits += r.hit_count;
        c.add(
            format!("{m} rank>={} formula", r.rank_min),
            ok,
            format!("{} hits", r.hit_count),
        );
        c.add(
            format!("{m} rank>={} H0 iff H-1", r.rank_min),
            r.h0_h_minus1_disagreements == 0,
            format!(
                "{} subgroups, H0 = 0 for {}, H-1 = 0 for {}",
                r.subgroups_examined, r.h0_zero, r.h_minus1_zero
            ),
        );
    }
    let mut groups = 0;
    let mut disagreements = 0;
    for (_, s) in ctx.group_corpus() {
        for r in &s.reports {
            groups += 1;
            if r.h0.is_zero() != r.h_minus1.is_zero() {
                disagreements += 1;
            }
            if let OrderFormulaStatus::Fails { .. } = r.order_formula {
                disagreements += 1;
            }
        }
    }
    c.add(
        "group modules H0 iff H-1",
        disagreements == 0,
        format!("{groups} group modules"),
    );
    Ok(format!("{hits} hits satisfy the formula; no H0/H-1 disagreement"))
}

fn check_group_verdicts(ctx: &Context, c: &mut Checks) -> Result<String> {
    let mut total = 0;
    for (name, s) in ctx.group_corpus() {
        total += s.classified;
        let detail = format!(
            "{} classified, {} S, {} NS, {} abelian skipped, {} failed to build",
            s.classified,
            s.s_verdicts,
            s.ns_verdicts,
            s.abelian,
            s.skipped.len()
        );
        c.add(name.clone(), s.all_s(), detail);
    }
    let corpus = ctx.group_corpus();
    let coclass_one = &corpus[1].1;
    c.add(
        "coclass-one families have coclass 1",
        coclass_one.reports.iter().all(|r| r.coclass == 1) && coclass_one.reports.len() == 14,
        format!("{} groups", coclass_one.reports.len()),
    );
    let coclass_two: Vec<&ClassificationReport> = corpus[0]
        .1
        .reports
        .iter()
        .chain(&corpus[2].1.reports)
        .filter(|r| r.coclass == 2)
        .collect();
    c.add(
        "coclass-two spot check",
        !coclass_two.is_empty() && coclass_two.iter().all(|r| r.verdict == Verdict::S),
        format!("{} coclass-2 groups", coclass_two.len()),
    );
    let metacyclic = &corpus[2].1;
    c.add(
        "metacyclic count",
        metacyclic.classified == 634,
        format!("{} nonabelian parameter tuples", metacyclic.classified),
    );
    let below = corpus
        .iter()
        .flat_map(|(_, s)| &s.reports)
        .filter(|r| r.n <= r.p + 5)
        .all(|r| r.verdict == Verdict::S);
    c.add("no NS below p^(p+6)", below, "consistent with the order bound");
    Ok(format!("{total} nonabelian groups, all S"))
}

fn check_example(_: &Context, c: &mut Checks) -> Result<String> {
    c.audit("example", &example_group_audit()?);
    Ok("|Phi| = 2^7 nonabelian, class 5, coclass 4, verdict S".into())
}

fn check_shortcuts(ctx: &Context, c: &mut Checks) -> Result<String> {
    let mut reports: Vec<ClassificationReport> = ctx
        .group_corpus()
        .iter()
        .flat_map(|(_, s)| s.reports.iter().cloned())
        .collect();
    reports.push(classify(&PGroup::semidirect_cyclic(32, 16, 11)?.with_label("Z/32 x|_11 Z/16"))?);
    let mut fired: BTreeMap<&str, usize> = BTreeMap::new();
    let mut ok: BTreeMap<&str, bool> = BTreeMap::new();
    for r in &reports {
        for (name, antecedent, holds) in r.shortcuts() {
            *fired.entry(name).or_insert(0) += usize::from(antecedent);
            *ok.entry(name).or_insert(true) &= holds;
        }
    }
    for (name, holds) in &ok {
        c.add(
            *name,
            *holds,
            format!("antecedent holds for {} of {} groups", fired[name], reports.len()),
        );
    }
    let fixed = reports
        .iter()
        .all(|r| r.fixed_points_order == r.center_intersection_order);
    c.add("fixed points are Z(G) n Z(Phi)", fixed, format!("{} groups", reports.len()));
    let center_case = reports
        .iter()
        .filter(|r| r.center_in_frattini)
        .all(|r| r.fixed_points_order == crate::arith::pow_u64(r.p as u64, r.center_invariants.iter().sum()));
    c.add("fixed points are Z(G) when Z(G) <= Phi", center_case, "recorded per group");
    // the second H0 path on every group of order <= 2^7 and the odd examples
    let mut checked = 0;
    let mut agree = true;
    for d in two_group_catalog(7)
        .into_iter()
        .chain([FamilyDescriptor::WreathPP { p: 3 }, FamilyDescriptor::HeisenbergP3 { p: 3 }])
    {
        let g = d.build()?;
        if g.is_abelian() {
            continue;
        }
        let direct = h0_order_direct(&g)?;
        let report = classify(&g)?;
        agree &= direct == report.h0.order;
        checked += 1;
    }
    c.add("two-path H0", agree, format!("{checked} groups"));
    Ok(format!("{} classified groups", reports.len()))
}

fn check_synthetic(ctx: &Context, c: &mut Checks) -> Result<String> {
    let good = ClassificationReport::synthetic_ns();
    let base = ns_constraints_audit(&good)?;
    c.add("consistent report accepted", base.passed(), format!("{} constraints", base.checks.len()));

    let rejected = |r: &ClassificationReport, name: &str| -> Result<(bool, String)> {
        let a = ns_constraints_audit(r)?;
        let hit = a.get(name).map(|x| (!x.passed, x.detail.clone()));
        Ok(hit.unwrap_or((false, format!("constraint {name} not evaluated"))))
    };
    let mut small = good.clone();
    small.n = 6;
    small.frattini_log_order = 3;
    let (ok, detail) = rejected(&small, "frattini-order")?;
    c.add("Frattini too small", ok && detail.contains("Frattini too small"), detail);

    let mut center = good.clone();
    center.center_invariants = vec![1, 1];
    let (ok, detail) = rejected(&center, "center-cyclic-of-order-p")?;
    c.add("noncyclic center at p^(p+6)", ok, detail);

    let mut zphi = good.clone();
    zphi.frattini_center_invariants = vec![2, 2];
    let (ok, detail) = rejected(&zphi, "frattini-center-type")?;
    c.add("Z(Phi) of type Z/4 x Z/4", ok, detail);

    let mut quotient = good.clone();
    quotient.frattini_center_over_center_invariants = vec![2, 1];
    let (ok, detail) = rejected(&quotient, "frattini-center-over-center")?;
    c.add("Z(Phi)/Z not elementary", ok, detail);

    let mut kernel = good.clone();
    kernel.action_kernel_size = 2;
    let (ok, detail) = rejected(&kernel, "action-effective")?;
    c.add("ineffective action", ok, detail);

    let mut zp = good.clone();
    zp.frattini_center_in_zp = true;
    let (ok, detail) = rejected(&zp, "frattini-center-not-in-zp")?;
    c.add("Z(Phi) in Z_p", ok, detail);

    let mut s = good;
    s.verdict = Verdict::S;
    c.add(
        "S verdict refused",
        matches!(ns_constraints_audit(&s), Err(Error::Hypothesis(_))),
        "the audit only applies to NS verdicts",
    );

    let _ = ctx;
    let catalog = crate::classifier::verify_family(&two_group_catalog(7));
    let ns_in_corpus = catalog.ns_verdicts;
    c.add(
        "corpus NS audits (vacuous)",
        ns_in_corpus == 0,
        format!("{ns_in_corpus} NS verdicts among {} catalog groups, so no audit fires", catalog.classified),
    );
    Ok("every violated constraint is reported".into())
}

fn run_check(ctx: &Context, id: CheckId) -> CheckResult {
    let start = Instant::now();
    let mut c = Checks::new();
    let outcome = match id {
        CheckId::Congruence => check_congruence(ctx, &mut c),
        CheckId::CyclicExclusion => check_cyclic(ctx, &mut c),
        CheckId::ProductExclusion => check_product(ctx, &mut c),
        CheckId::OddPExclusion => check_odd_p(ctx, &mut c),
        CheckId::Z4z4Exclusion => check_z4z4(ctx, &mut c),
        CheckId::PositiveWitnesses => check_positive(ctx, &mut c),
        CheckId::OrderFormula => check_order_formula(ctx, &mut c),
        CheckId::GroupVerdicts => check_group_verdicts(ctx, &mut c),
        CheckId::ExampleGroup => check_example(ctx, &mut c),
        CheckId::StructuralShortcuts => check_shortcuts(ctx, &mut c),
        CheckId::SyntheticNsAudits => check_synthetic(ctx, &mut c),
    };
    let elapsed = start.elapsed();
    let (status, summary) = match outcome {
        Err(e @ Error::GuardExceeded { .. }) => (CheckStatus::Skipped, e.to_string()),
        Err(e) => (CheckStatus::Fail, e.to_string()),
        Ok(summary) if c.items.is_empty() => (CheckStatus::Vacuous, summary),
        Ok(summary) => {
            let within = elapsed <= Duration::from_secs(id.budget_secs());
            if !within {
                (
                    CheckStatus::Fail,
                    format!(
                        "over budget: {:.2}s of {}s",
                        elapsed.as_secs_f64(),
                        id.budget_secs()
                    ),
                )
            } else if c.items.iter().all(|x| x.passed) {
                (CheckStatus::Pass, summary)
            } else {
                let failed: Vec<&str> =
                    c.items.iter().filter(|x| !x.passed).map(|x| x.name.as_str()).collect();
                (CheckStatus::Fail, format!("failed: {}", failed.join(", ")))
            }
        }
    };
    CheckResult {
        name: id.name().to_string(),
        claim: id.claim().to_string(),
        status,
        elapsed_ms: elapsed.as_millis() as u64,
        budget_secs: id.budget_secs(),
        summary,
        subchecks: c.items,
        artifacts: Vec::new(),
    }
}

/// Runs one check in a fresh context.
pub fn run_one(id: CheckId) -> CheckResult {
    run_check(&Context::new(), id)
}

/// Runs the selected checks in order, sharing one context. Checks that
/// are not selected are reported as skipped.
pub fn run_suite(only: Option<&[CheckId]>) -> SuiteResult {
    run_suite_with(&Context::new(), only, |_| {})
}

/// As [`run_suite`], calling `progress` after each check.
pub fn run_suite_with(
    ctx: &Context,
    only: Option<&[CheckId]>,
    mut progress: impl FnMut(&CheckResult),
) -> SuiteResult {
    let checks = CheckId::ALL
        .into_iter()
        .map(|id| {
            let r = if only.is_none_or(|o| o.contains(&id)) {
                run_check(ctx, id)
            } else {
                CheckResult {
                    name: id.name().to_string(),
                    claim: id.claim().to_string(),
                    status: CheckStatus::Skipped,
                    elapsed_ms: 0,
                    budget_secs: id.budget_secs(),
                    summary: "not selected".into(),
                    subchecks: Vec::new(),
                    artifacts: Vec::new(),
                }
            };
            progress(&r);
            r
        })
        .collect();
    SuiteResult {
        schema_version: SCHEMA_VERSION,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!("nope".parse::<CheckId>().is_err());
    }

    #[test]
    fn congruence_has_eleven_subchecks() {
        let r = run_one(CheckId::Congruence);
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.subchecks.len(), 11);
    }

    #[test]
    fn unselected_checks_are_skipped() {
        let s = run_suite(Some(&[CheckId::SyntheticNsAudits]));
        assert_eq!(s.checks.len(), 11);
        assert!(s.passed());
        assert_eq!(s.get("congruence").unwrap().status, CheckStatus::Skipped);
    }
}
