use std::collections::HashSet;

use super::{elementary_abelian_subgroups_within, order_p_automorphisms, AutGroup, EndoMatrix, Guards};
use crate::abelian::FinAbGroup;
use crate::arith::{is_prime, pow_mod, pow_u64};
use crate::audit::Audit;
use crate::error::{Error, Result};

fn trace(aut: &AutGroup, elements: &[usize]) -> EndoMatrix {
    let m = aut.module();
    let zero = EndoMatrix::from_entries(m.rank(), vec![0; m.rank() * m.rank()]);
    elements.iter().fold(zero, |acc, &a| acc.add(m, aut.matrix(a)))
}

fn image(m: &FinAbGroup, a: &EndoMatrix) -> HashSet<Vec<u32>> {
    (0..m.order()).map(|x| a.apply(m, &m.decode(x))).collect()
}

fn fixed_by(aut: &AutGroup, elements: &[usize], v: &[u32]) -> bool {
    let m = aut.module();
    elements.iter().all(|&a| aut.matrix(a).apply(m, v) == v)
}

/// Whether some `g` in `Aut` conjugates every element into `target`.
fn conjugate_into(aut: &AutGroup, elements: &[usize], target: &[bool]) -> bool {
    (0..aut.len()).any(|g| {
        let gi = aut.inverse(g);
        elements.iter().all(|&e| target[aut.mul(aut.mul(g, e), gi)])
    })
}

fn mask(n: usize, members: &[usize]) -> Vec<bool> {
    let mut out = vec![false; n];
    for &a in members {
        out[a] = true;
    }
    out
}

/// Structure of a Sylow `p`-subgroup of `Aut(Z/p^k x Z/p)` for odd `p`
/// and the trace computations that rule out cohomological triviality.
pub fn odd_p_sylow_audit(p: u32, k: u32) -> Result<Audit> {
    if p == 2 || !is_prime(p as u64) || k < 2 {
        return Err(Error::InvalidParameters(format!(
            "need an odd prime and k >= 2, got p = {p}, k = {k}"
        )));
    }
    let guards = Guards::from_env()?;
    let m = FinAbGroup::new(p, vec![k, 1])?;
    let aut = AutGroup::enumerate_with(&m, &guards)?;
    let pk = pow_u64(p as u64, k);
    let mut audit = Audit::new(format!("Sylow {p}-subgroup of Aut(Z/{pk} x Z/{p})"));

    let sylow: Vec<usize> = (0..aut.len())
        .filter(|&a| {
            let mat = aut.matrix(a);
            mat.entry(1, 1) == 1 && mat.entry(0, 0) % p == 1
        })
        .collect();
    let mut p_part = 1usize;
    let mut rest = aut.len();
    while rest % p as usize == 0 {
        rest /= p as usize;
        p_part *= p as usize;
    }
    audit.check(
        "sylow-order",
        sylow.len() == p_part,
        format!("|S| = {}, |Aut| = {}, p-part {p_part}", sylow.len(), aut.len()),
    );
    audit.check("sylow-closed", aut.is_closed(&sylow), "S is closed under composition");

    let id = EndoMatrix::identity(&m);
    let mut power_ok = true;
    let mut iff_ok = true;
    for &a in &sylow {
        let mat = aut.matrix(a);
        let corner_p = pow_mod(mat.entry(0, 0) as u64, p as u64, pk) as u32;
        let expected = EndoMatrix::new(&m, vec![vec![corner_p, 0], vec![0, 1]])?;
        let ap = mat.pow(&m, p as u64);
        power_ok &= ap == expected;
        iff_ok &= (ap == id) == (corner_p == 1);
    }
    audit.check("power-p-diagonal", power_ok, "A^p = diag(alpha^p, 1) on S");
    audit.check("order-p-iff-corner", iff_ok, "A^p = 1 exactly when alpha^p = 1");

    let order_p: Vec<usize> = order_p_automorphisms(&aut, false)
        .into_iter()
        .filter(|a| sylow.contains(a))
        .collect();
    let mut norms_ok = true;
    for &a in &order_p {
        let mat = aut.matrix(a);
        let powers: Vec<usize> = (0..p as u64).map(|i| aut.pow(a, i)).collect();
        let norm = trace(&aut, &powers);
        let corner = if p == 3 {
            let mn = (mat.entry(0, 1) as u64 / (pk / 3)) * mat.entry(1, 0) as u64;
            ((3 + (pk / 3) * mn) % pk) as u32
        } else {
            p
        };
        let expected = EndoMatrix::new(&m, vec![vec![corner, 0], vec![0, 0]])?;
        norms_ok &= norm == expected;
    }
    audit.check(
        "order-p-norm",
        norms_ok && !order_p.is_empty(),
        format!("{} elements of order {p} in S", order_p.len()),
    );

    let inside = elementary_abelian_subgroups_within(&aut, Some(&sylow), 2, &guards)?;
    let p2 = pow_u64(p as u64, 2);
    let witness = vec![p, 0];
    let (mut image_ok, mut fixed_ok, mut outside_ok) = (true, true, true);
    for e in &inside {
        let img = image(&m, &trace(&aut, &e.elements));
        image_ok &= img.iter().all(|v| v[0] as u64 % p2 == 0 && v[1] == 0);
        fixed_ok &= fixed_by(&aut, &e.elements, &witness);
        outside_ok &= !img.contains(&witness);
    }
    audit.check(
        "rank-two-subgroups-exist",
        !inside.is_empty(),
        format!("{} subgroups of rank >= 2 in S", inside.len()),
    );
    audit.check("trace-image", image_ok, "trace image lies in p^2 Z/p^k x 0");
    audit.check("witness-fixed", fixed_ok, format!("([{p}],[0]) is fixed"));
    audit.check("witness-outside-image", outside_ok, format!("([{p}],[0]) is not a trace"));

    let all = elementary_abelian_subgroups_within(&aut, None, 2, &guards)?;
    let target = mask(aut.len(), &sylow);
    let conj = all.iter().all(|e| conjugate_into(&aut, &e.elements, &target));
    audit.check(
        "conjugate-into-sylow",
        conj,
        format!("{} subgroups of rank >= 2 in Aut", all.len()),
    );
    Ok(audit)
}

fn symmetric_form(x: &EndoMatrix) -> bool {
    x.entry(0, 0) == x.entry(1, 1) && x.entry(0, 1) == x.entry(1, 0)
}

fn minus_identity(m: &FinAbGroup, a: &EndoMatrix) -> EndoMatrix {
    let id = EndoMatrix::identity(m);
    let neg = EndoMatrix::from_entries(2, id.rows().concat().iter().map(|&x| (4 - x) % 4).collect());
    a.add(m, &neg)
}

/// The structure of `Aut(Z/4 x Z/4)` and the trace forms of its
/// elementary abelian 2-subgroups.
pub fn aut_z4z4_structure_audit() -> Result<Audit> {
    let guards = Guards::from_env()?;
    let m = FinAbGroup::new(2, vec![2, 2])?;
    let aut = AutGroup::enumerate_with(&m, &guards)?;
    let mut audit = Audit::new("Aut(Z/4 x Z/4)");
    audit.check("aut-order", aut.len() == 96, format!("|Aut| = {}", aut.len()));

    let reduce = |a: usize| -> Vec<u32> {
        aut.matrix(a).rows().concat().iter().map(|x| x % 2).collect()
    };
    let identity_mod2 = vec![1, 0, 0, 1];
    let swap_mod2 = vec![0, 1, 1, 0];
    let kernel: Vec<usize> = (0..aut.len()).filter(|&a| reduce(a) == identity_mod2).collect();
    let kernel_elementary = kernel.iter().all(|&a| aut.mul(a, a) == aut.identity())
        && kernel.iter().all(|&a| kernel.iter().all(|&b| aut.commute(a, b)));
    audit.check("kernel-order", kernel.len() == 16, format!("|K| = {}", kernel.len()));
    audit.check("kernel-elementary", kernel_elementary, "K is elementary abelian");
    let restrictions: HashSet<Vec<u32>> = (0..aut.len()).map(reduce).collect();
    audit.check(
        "restriction-image",
        restrictions.len() == 6,
        format!("{} automorphisms of the socle are realized", restrictions.len()),
    );

    let sylow: Vec<usize> = (0..aut.len())
        .filter(|&a| {
            let r = reduce(a);
            r == identity_mod2 || r == swap_mod2
        })
        .collect();
    audit.check("sylow-order", sylow.len() == 32, format!("|S| = {}", sylow.len()));
    audit.check("sylow-closed", aut.is_closed(&sylow), "S is a subgroup");
    let sigma = aut
        .find(&EndoMatrix::new(&m, vec![vec![0, 1], vec![1, 0]])?)
        .expect("the swap is an automorphism");
    let mut coset: Vec<usize> = kernel.iter().map(|&k| aut.mul(k, sigma)).collect();
    coset.sort_unstable();
    let mut outside: Vec<usize> = sylow.iter().copied().filter(|a| !kernel.contains(a)).collect();
    outside.sort_unstable();
    audit.check("sylow-is-k-and-k-sigma", coset == outside, "S = K u K sigma");

    let sigma_mat = aut.matrix(sigma).clone();
    let mut commute_ok = true;
    let mut order_ok = true;
    for &x in &coset {
        // x = (I + 2B') sigma
        let two_b_prime = minus_identity(&m, &aut.matrix(x).compose(&m, &sigma_mat));
        order_ok &= (aut.mul(x, x) == aut.identity()) == symmetric_form(&two_b_prime);
        for &k in &kernel {
            let two_b = minus_identity(&m, aut.matrix(k));
            commute_ok &= aut.commute(k, x) == symmetric_form(&two_b);
        }
    }
    audit.check("commuting-criterion", commute_ok, "I+2B commutes with (I+2B')sigma iff 2B = [a b; b a]");
    audit.check("order-two-criterion", order_ok, "(I+2B')sigma has order 2 iff 2B' = [a b; b a]");

    let subgroups = elementary_abelian_subgroups_within(&aut, Some(&sylow), 2, &guards)?;
    let in_kernel = |a: &usize| kernel.contains(a);
    let (mut k_only, mut mixed, mut k_only_ok, mut form_ok, mut witness_ok, mut big_ok) =
        (0, 0, true, true, true, true);
    for e in &subgroups {
        let tr = trace(&aut, &e.elements);
        let meet = e.elements.iter().filter(|a| in_kernel(a)).count();
        if e.rank() >= 3 {
            big_ok &= meet >= 4;
            continue;
        }
        if meet == e.elements.len() {
            k_only += 1;
            k_only_ok &= tr.is_zero();
            continue;
        }
        mixed += 1;
        let k = *e
            .elements
            .iter()
            .find(|&&a| in_kernel(&a) && a != aut.identity())
            .expect("a rank-two subgroup of S meets K nontrivially");
        let two_b = minus_identity(&m, aut.matrix(k));
        let v = (2 + two_b.entry(0, 0) + two_b.entry(0, 1)) % 4;
        form_ok &= tr == EndoMatrix::new(&m, vec![vec![v, v], vec![v, v]])?;
        if !tr.is_zero() {
            let img = image(&m, &tr);
            witness_ok &= [vec![1, 3], vec![1, 1]]
                .iter()
                .any(|w| fixed_by(&aut, &e.elements, w) && !img.contains(w));
        }
    }
    audit.check(
        "kernel-only-trace-vanishes",
        k_only_ok && k_only > 0,
        format!("{k_only} rank-2 subgroups inside K"),
    );
    audit.check(
        "mixed-trace-form",
        form_ok && mixed > 0,
        format!("{mixed} rank-2 subgroups meeting K sigma"),
    );
    audit.check("mixed-fixed-witness", witness_ok, "(1,3) or (1,1) is fixed and not a trace");
    audit.check("rank-three-meets-kernel", big_ok, "rank >= 3 subgroups meet K in order >= 4");

    let all = elementary_abelian_subgroups_within(&aut, None, 2, &guards)?;
    let target = mask(aut.len(), &sylow);
    let conj = all.iter().all(|e| conjugate_into(&aut, &e.elements, &target));
    audit.check(
        "conjugate-into-sylow",
        conj,
        format!("{} subgroups of rank >= 2 in Aut", all.len()),
    );
    Ok(audit)
}
