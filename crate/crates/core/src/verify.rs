//! Order-by-order identity suite: every generating-function identity the
//! crate relies on, checked bit-exactly at its stated order and reported
//! one line per identity. Backs `qpd verify`.

use crate::classical::{
    alladi_class_sum_exact, alladi_full_sum_exact, dirichlet_convolve, lambert_series,
    partition_zeta, power_series_of_table, SieveTable, SubsetSpec,
};
use crate::classical::zeta::{zeta_mu_direct, zeta_phi_direct};
use crate::density::{
    self, ap_density_closed_exact, ap_density_closed_series, examples, f_series, largest_part_series,
    q_density_series, qgeneral_double_sum, theorem1_series, unimodal_crank_check, FsForm,
};
use crate::error::Result;
use crate::fps::{euler_product, pochhammer, rat, ratio, Rat, TruncatedSeries};
use crate::parith::{
    a_series, arith_fn, convolution, mobius_invert, smallest_part_product_split,
    weighted_series, ArithFn, FilteredSum, PartFilter,
};
use crate::partitions::{
    enumerate_up_to, partition_counts, partitions_of, Partition, PartitionFunctionDescriptor,
};
use num::{BigInt, One, Signed, ToPrimitive, Zero};

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    /// Human-readable context: the order checked, or the first failing
    /// coefficient (power of q, expected, got).
    pub detail: String,
}

impl CheckResult {
    fn pass(id: &str, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(id: &str, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            passed: false,
            detail: detail.into(),
        }
    }
}

fn series_eq(id: &str, context: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Option<CheckResult> {
    lhs.first_mismatch(rhs).map(|(k, expected, got)| {
        CheckResult::fail(
            id,
            format!("{context}: first mismatch at q^{k}: expected {expected}, got {got}"),
        )
    })
}

/// Suites in the order they run.
pub const SUITES: [&str; 5] = ["fps", "partitions", "parith", "classical", "density"];

/// Runs one suite (or "all"). `order_override` rescales the series orders of
/// the order-parameterized checks; None uses each check's stated order.
pub fn run_suite(suite: &str, order_override: Option<usize>) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let run_fps = suite == "all" || suite == "fps";
    let run_partitions = suite == "all" || suite == "partitions";
    let run_parith = suite == "all" || suite == "parith";
    let run_classical = suite == "all" || suite == "classical";
    let run_density = suite == "all" || suite == "density";
    if !(run_fps || run_partitions || run_parith || run_classical || run_density) {
        return Err(crate::error::Error::Domain(format!(
            "unknown suite '{suite}' (all|fps|partitions|parith|classical|density)"
        )));
    }
    let ord = |default: usize| order_override.unwrap_or(default);
    if run_fps {
        out.push(euler_product_matches_dense(ord(60)));
        out.push(euler_inverse_is_unit(ord(60)));
    }
    if run_partitions {
        out.push(mu_divisor_sum(15));
        out.push(phi_divisor_sum(15));
        out.push(conjugation_duality(25));
        out.push(subpartition_lattice(12));
    }
    if run_parith {
        out.push(cauchy_product(ord(20)));
        out.push(euler_inverse_consequence(ord(20)));
        out.push(euler_mu_consequence(ord(20)));
        out.push(summation_swap());
        out.push(mobius_roundtrip(12));
        out.push(smallest_part_split_check(ord(25)));
        out.push(convolemma2_check(ord(25)));
        out.push(convolemma4_check(ord(25)));
        out.push(a_series_closed_forms(ord(30)));
        out.push(wanalog_pointwise(12));
    }
    if run_classical {
        out.push(sieve_vs_brute_force(10_000));
        out.push(mu_sigma0_is_one(1_000));
        out.push(alladi_decomposition_exact(100_000));
        out.push(lambert_mobius_resummation(ord(40)));
        out.push(partition_zeta_products());
    }
    if run_density {
        out.push(qdensity_ap_closed(ord(60)));
        out.push(fs_three_forms(ord(40)));
        out.push(qgeneral_equals_fs(ord(40)));
        out.push(largest_closed_vs_enumeration(ord(40)));
        out.push(theorem1_pairs(ord(25)));
        out.push(monotone_ap_approach());
        out.push(unimodal_crank(ord(30).min(100)));
        out.push(cor3_resummation_chain(ord(40)));
        out.push(sigma_lambert_identities(ord(40)));
        out.push(muthm_collapse(ord(40)));
        out.push(genthm_f1_reduction(ord(40)));
        out.push(pfn_collapse(ord(40)));
    }
    Ok(out)
}

fn builtin_weights() -> Vec<PartitionFunctionDescriptor> {
    vec![
        PartitionFunctionDescriptor::mu_p(),
        PartitionFunctionDescriptor::length(),
        PartitionFunctionDescriptor::size(),
        PartitionFunctionDescriptor::z_pow_length(rat(2)).expect("z != 0"),
        PartitionFunctionDescriptor::one(),
    ]
}

fn all_series(w: &PartitionFunctionDescriptor, order: usize) -> TruncatedSeries {
    weighted_series(&FilteredSum::new(w.clone(), PartFilter::All, order)).expect("guarded order")
}

// ---- fps ----

fn euler_product_matches_dense(order: usize) -> CheckResult {
    let id = "fps.euler_product_matches_dense";
    for n in [0, 1, 7, 12, 30, order] {
        let sparse = euler_product(n);
        let dense = match pochhammer(&Rat::one(), 1, None, n) {
            Ok(d) => d,
            Err(e) => return CheckResult::fail(id, format!("pochhammer failed: {e}")),
        };
        if let Some(f) = series_eq(id, &format!("order {n}"), &sparse, &dense) {
            return f;
        }
    }
    CheckResult::pass(id, format!("orders up to {order}"))
}

fn euler_inverse_is_unit(order: usize) -> CheckResult {
    let id = "fps.euler_inverse_is_unit";
    let euler = euler_product(order);
    let inv = TruncatedSeries::one(order)
        .div_unit(&euler)
        .expect("unit constant term");
    let product = euler.mul(&inv);
    series_eq(id, "product with inverse", &product, &TruncatedSeries::one(order))
        .unwrap_or_else(|| CheckResult::pass(id, format!("through q^{order}")))
}

// ---- partitions ----

fn mu_divisor_sum(max_size: u32) -> CheckResult {
    let id = "partitions.mu_divisor_sum";
    for lam in enumerate_up_to(max_size) {
        let total: i64 = lam.subpartitions().map(|d| d.mu_p() as i64).sum();
        let want = i64::from(lam.is_empty());
        if total != want {
            return CheckResult::fail(id, format!("{lam:?}: expected {want}, got {total}"));
        }
    }
    CheckResult::pass(id, format!("all partitions of size <= {max_size}"))
}

fn phi_divisor_sum(max_size: u32) -> CheckResult {
    let id = "partitions.phi_divisor_sum";
    for lam in enumerate_up_to(max_size) {
        let total: Rat = lam.subpartitions().map(|d| d.phi_p()).sum();
        let want = Rat::from_integer(lam.norm());
        if total != want {
            return CheckResult::fail(id, format!("{lam:?}: expected {want}, got {total}"));
        }
    }
    CheckResult::pass(id, format!("all partitions of size <= {max_size}"))
}

/// Conjugation bijection: distinct-part partitions of n with smallest part
/// in S match partitions of n whose largest-part multiplicity lies in S and
/// which contain every positive integer below their largest part.
fn conjugation_duality(max_size: u32) -> CheckResult {
    let id = "partitions.conjugation_duality";
    let subsets = [
        SubsetSpec::all(),
        SubsetSpec::ap(1, 2).unwrap(),
        SubsetSpec::ap(2, 3).unwrap(),
    ];
    for s in &subsets {
        for n in 1..=max_size {
            let mut left = 0usize;
            let mut right = 0usize;
            for lam in partitions_of(n) {
                if !lam.has_repeated_parts() && s.contains(lam.smallest() as u64) {
                    left += 1;
                }
                let lg = lam.largest();
                let mult = lam.parts().iter().filter(|&&p| p == lg).count() as u64;
                let complete = (1..lg).all(|j| lam.parts().contains(&j));
                if s.contains(mult) && complete {
                    right += 1;
                }
            }
            if left != right {
                return CheckResult::fail(
                    id,
                    format!("{} at n={n}: {left} vs {right}", s.label()),
                );
            }
        }
    }
    CheckResult::pass(id, format!("n <= {max_size}, three subsets"))
}

fn subpartition_lattice(max_size: u32) -> CheckResult {
    let id = "partitions.subpartition_lattice";
    for lam in enumerate_up_to(max_size) {
        let want: usize = lam
            .multiplicities()
            .iter()
            .map(|&(_, m)| m as usize + 1)
            .product();
        let got = lam.subpartitions().count();
        if got != want {
            return CheckResult::fail(id, format!("{lam:?}: count {got}, expected {want}"));
        }
        for delta in lam.subpartitions() {
            let quotient = match lam.divide(&delta) {
                Ok(q) => q,
                Err(e) => return CheckResult::fail(id, format!("{lam:?}/{delta:?}: {e}")),
            };
            if quotient.concat(&delta) != lam {
                return CheckResult::fail(id, format!("{lam:?}: concat/divide broke"));
            }
        }
    }
    CheckResult::pass(id, format!("all partitions of size <= {max_size}"))
}

// ---- parith ----

fn cauchy_product(order: usize) -> CheckResult {
    let id = "parith.cauchy_product";
    let weights = builtin_weights();
    for (i, a) in weights.iter().enumerate() {
        for b in weights.iter().skip(i) {
            let lhs = all_series(a, order).mul(&all_series(b, order));
            let rhs = all_series(&convolution(a, b), order);
            if let Some(f) = series_eq(id, &format!("a={}, b={}", a.name(), b.name()), &lhs, &rhs)
            {
                return f;
            }
        }
    }
    CheckResult::pass(id, format!("15 weight pairs through q^{order}"))
}

fn euler_inverse_consequence(order: usize) -> CheckResult {
    let id = "parith.euler_inverse_consequence";
    let inv = TruncatedSeries::one(order)
        .div_unit(&euler_product(order))
        .expect("unit");
    for a in builtin_weights() {
        let lhs = inv.mul(&all_series(&a, order));
        let a2 = a.clone();
        let running = PartitionFunctionDescriptor::new(
            format!("sums[{}]", a.name()),
            a.value_at_empty().clone(),
            false,
            move |lam| lam.subpartitions().map(|d| a2.evaluate(&d)).sum(),
        )
        .memoized();
        let rhs = all_series(&running, order);
        if let Some(f) = series_eq(id, a.name(), &lhs, &rhs) {
            return f;
        }
    }
    CheckResult::pass(id, format!("5 weights through q^{order}"))
}

fn euler_mu_consequence(order: usize) -> CheckResult {
    let id = "parith.euler_mu_consequence";
    let euler = euler_product(order);
    let mu = PartitionFunctionDescriptor::mu_p();
    for a in builtin_weights() {
        let lhs = euler.mul(&all_series(&a, order));
        let rhs = all_series(&convolution(&mu, &a), order);
        if let Some(f) = series_eq(id, a.name(), &lhs, &rhs) {
            return f;
        }
    }
    CheckResult::pass(id, format!("5 weights through q^{order}"))
}

/// Order-swap principle for finitely supported weights:
/// sum_lambda a(lambda) sum_{delta|lambda} b(delta)
///   = sum_lambda b(lambda) sum_gamma a(gamma lambda).
fn summation_swap() -> CheckResult {
    let id = "parith.summation_swap";
    let p = |parts: &[u32]| Partition::new(parts.to_vec());
    let supp_a: Vec<(Partition, Rat)> = vec![
        (Partition::empty(), ratio(3, 2)),
        (p(&[1]), rat(-2)),
        (p(&[2, 1]), ratio(5, 3)),
        (p(&[4, 2, 1]), rat(7)),
        (p(&[3, 3]), ratio(-1, 4)),
    ];
    let supp_b: Vec<(Partition, Rat)> = vec![
        (p(&[1]), rat(2)),
        (p(&[1, 1]), ratio(1, 2)),
        (p(&[3]), rat(-3)),
        (p(&[2, 2, 1]), ratio(4, 7)),
    ];
    let b_of = |lam: &Partition| -> Rat {
        supp_b
            .iter()
            .find(|(l, _)| l == lam)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero)
    };
    // lhs: over the support of a
    let mut lhs = Rat::zero();
    for (lam, av) in &supp_a {
        let inner: Rat = lam.subpartitions().map(|d| b_of(&d)).sum();
        lhs += av * inner;
    }
    // rhs: over the support of b; gamma ranges over quotients of a-support
    let mut rhs = Rat::zero();
    for (lam, bv) in &supp_b {
        let mut inner = Rat::zero();
        for (alam, av) in &supp_a {
            if lam.divides(alam) {
                inner += av;
            }
        }
        rhs += bv * inner;
    }
    if lhs == rhs {
        CheckResult::pass(id, "finitely supported weights, exact")
    } else {
        CheckResult::fail(id, format!("expected {lhs}, got {rhs}"))
    }
}

fn mobius_roundtrip(max_size: u32) -> CheckResult {
    let id = "parith.mobius_roundtrip";
    for a in builtin_weights() {
        let a2 = a.clone();
        let running = PartitionFunctionDescriptor::new(
            format!("sums[{}]", a.name()),
            a.value_at_empty().clone(),
            false,
            move |lam| lam.subpartitions().map(|d| a2.evaluate(&d)).sum(),
        )
        .memoized();
        let recovered = mobius_invert(&running);
        for lam in enumerate_up_to(max_size) {
            let want = a.evaluate(&lam);
            let got = recovered.evaluate(&lam);
            if want != got {
                return CheckResult::fail(
                    id,
                    format!("{} at {lam:?}: expected {want}, got {got}", a.name()),
                );
            }
        }
    }
    CheckResult::pass(id, format!("5 weights, all partitions of size <= {max_size}"))
}

fn smallest_part_split_check(order: usize) -> CheckResult {
    let id = "parith.smallest_part_split";
    let weights = builtin_weights();
    for (i, a) in weights.iter().enumerate() {
        for b in weights.iter().skip(i) {
            let conv = convolution(a, b);
            for n in 1..=5u32 {
                let lhs = weighted_series(&FilteredSum::new(
                    conv.clone(),
                    PartFilter::SmallestEq(n),
                    order,
                ))
                .expect("guarded order");
                let rhs = smallest_part_product_split(a, b, n, order).expect("guarded order");
                if let Some(f) = series_eq(
                    id,
                    &format!("a={}, b={}, n={n}", a.name(), b.name()),
                    &lhs,
                    &rhs,
                ) {
                    return f;
                }
            }
        }
    }
    CheckResult::pass(id, format!("15 pairs, n <= 5, through q^{order}"))
}

fn convolemma2_weights() -> Vec<PartitionFunctionDescriptor> {
    vec![
        PartitionFunctionDescriptor::length(),
        PartitionFunctionDescriptor::size(),
        PartitionFunctionDescriptor::sz_r(2),
        PartitionFunctionDescriptor::z_pow_length(rat(2)).expect("z != 0"),
        PartitionFunctionDescriptor::indicator_empty(),
    ]
}

/// Smallest-part factorization: the mu_p*a series over smallest part n
/// equals tilde A_n(q) q^n (q^{n+1};q)_inf.
fn convolemma2_check(order: usize) -> CheckResult {
    let id = "parith.convolemma2";
    let mu = PartitionFunctionDescriptor::mu_p();
    for a in convolemma2_weights() {
        let conv = convolution(&mu, &a);
        for n in 1..=5u32 {
            let lhs = weighted_series(&FilteredSum::new(
                conv.clone(),
                PartFilter::SmallestEq(n),
                order,
            ))
            .expect("guarded order");
            let tilde = a_series(&a, n, order).expect("guarded order").tilde;
            let poch = pochhammer(&Rat::one(), n as usize + 1, None, order).expect("shift >= 1");
            let rhs = tilde.shift_up(n as usize).mul(&poch);
            if let Some(f) = series_eq(id, &format!("a={}, n={n}", a.name()), &lhs, &rhs) {
                return f;
            }
        }
    }
    CheckResult::pass(id, format!("5 weights, n <= 5, through q^{order}"))
}

/// Summed form: sum over nonempty lambda of (mu_p*a)(lambda) f(sm) q^{|lambda|}
/// = (q;q)_inf sum_n f(n) tilde A_n(q) q^n/(q;q)_n.
fn convolemma4_check(order: usize) -> CheckResult {
    let id = "parith.convolemma4";
    let mu = PartitionFunctionDescriptor::mu_p();
    let fs: Vec<(&str, ArithFn)> = vec![
        ("1", arith_fn(|_| Rat::one())),
        ("n", arith_fn(|n| rat(n as i64))),
        ("odd-indicator", arith_fn(|n| rat((n % 2 == 1) as i64))),
    ];
    let weights = [
        PartitionFunctionDescriptor::length(),
        PartitionFunctionDescriptor::size(),
        PartitionFunctionDescriptor::z_pow_length(rat(2)).expect("z != 0"),
    ];
    for a in &weights {
        let conv = convolution(&mu, a);
        for (fname, f) in &fs {
            let fc = f.clone();
            let conv2 = conv.clone();
            let weight = PartitionFunctionDescriptor::new(
                "weighted",
                Rat::zero(),
                false,
                move |lam| conv2.evaluate(lam) * fc(lam.smallest()),
            );
            // nonempty lambda only: smallest part >= 1
            let lhs = weighted_series(&FilteredSum::new(
                weight,
                PartFilter::SmallestAtLeast(1),
                order,
            ))
            .expect("guarded order");
            let mut acc = TruncatedSeries::zero(order);
            let mut inv_poch = TruncatedSeries::one(order);
            for n in 1..=order {
                inv_poch = inv_poch.div_one_minus(&Rat::one(), n);
                let fv = f(n as u32);
                if fv.is_zero() {
                    continue;
                }
                let tilde = a_series(a, n as u32, order).expect("guarded order").tilde;
                acc = acc.add(&tilde.shift_up(n).mul(&inv_poch).scalar_mul(&fv));
            }
            let rhs = euler_product(order).mul(&acc);
            if let Some(fr) = series_eq(id, &format!("a={}, f={fname}", a.name()), &lhs, &rhs) {
                return fr;
            }
        }
    }
    CheckResult::pass(id, format!("3 weights x 3 f, through q^{order}"))
}

fn a_series_closed_forms(order: usize) -> CheckResult {
    let id = "parith.a_series_closed_forms";
    for n in 1..=5u32 {
        let e = PartitionFunctionDescriptor::indicator_empty();
        let a_e = a_series(&e, n, order).expect("guarded order").a_n;
        if !a_e.is_zero() {
            return CheckResult::fail(id, format!("indicator-of-empty A_{n} is nonzero"));
        }
        let inv = TruncatedSeries::one(order)
            .div_unit(&pochhammer(&Rat::one(), n as usize, None, order).expect("shift >= 1"))
            .expect("unit");
        let ell = PartitionFunctionDescriptor::length();
        let t_ell = a_series(&ell, n, order).expect("guarded order").tilde;
        if let Some(f) = series_eq(id, &format!("length, n={n}"), &t_ell, &inv) {
            return f;
        }
        let sz = PartitionFunctionDescriptor::size();
        let t_sz = a_series(&sz, n, order).expect("guarded order").tilde;
        if let Some(f) = series_eq(
            id,
            &format!("size, n={n}"),
            &t_sz,
            &inv.scalar_mul(&rat(n as i64)),
        ) {
            return f;
        }
    }
    CheckResult::pass(id, format!("n <= 5 through q^{order}"))
}

/// (mu_p*a)(lambda) g(sm)/f(sm) = (mu_p*b)(lambda) for the b-weight built
/// from (a, f, g), on every small partition.
fn wanalog_pointwise(max_size: u32) -> CheckResult {
    let id = "parith.wanalog";
    let mu = PartitionFunctionDescriptor::mu_p();
    let triples: Vec<(PartitionFunctionDescriptor, ArithFn, ArithFn, &str)> = vec![
        (
            PartitionFunctionDescriptor::length(),
            arith_fn(|n| rat(n as i64 + 1)),
            arith_fn(|_| Rat::one()),
            "length, f=n+1, g=1",
        ),
        (
            PartitionFunctionDescriptor::size(),
            // -phi with phi(0) set to 1, the Euler-phi flavored instance
            arith_fn(|n| {
                if n == 0 {
                    rat(-1)
                } else {
                    let mut phi = n as i64;
                    let mut m = n as i64;
                    let mut d = 2i64;
                    while d * d <= m {
                        if m % d == 0 {
                            phi = phi / d * (d - 1);
                            while m % d == 0 {
                                m /= d;
                            }
                        }
                        d += 1;
                    }
                    if m > 1 {
                        phi = phi / m * (m - 1);
                    }
                    rat(-phi)
                }
            }),
            arith_fn(|_| rat(-1)),
            "size, f=-phi, g=-1",
        ),
        (
            PartitionFunctionDescriptor::z_pow_length(rat(2)).expect("z != 0"),
            arith_fn(|n| ratio(n as i64 + 2, 3)),
            arith_fn(|n| rat(n as i64 + 5)),
            "2^length, rational f and g",
        ),
    ];
    for (a, f, g, label) in triples {
        let mu_a = convolution(&mu, &a);
        let b = match crate::parith::b_descriptor(&a, f.clone(), g.clone()) {
            Ok(b) => b,
            Err(e) => return CheckResult::fail(id, format!("{label}: {e}")),
        };
        let mu_b = convolution(&mu, &b);
        // b(empty) = a(empty) g(0)/f(0)
        let want_empty = a.value_at_empty() * g(0) / f(0);
        if *b.value_at_empty() != want_empty {
            return CheckResult::fail(id, format!("{label}: b(empty) != a(empty) g(0)/f(0)"));
        }
        for lam in enumerate_up_to(max_size) {
            let sm = lam.smallest();
            let lhs = mu_a.evaluate(&lam) * g(sm) / f(sm);
            let rhs = mu_b.evaluate(&lam);
            if lhs != rhs {
                return CheckResult::fail(
                    id,
                    format!("{label} at {lam:?}: expected {lhs}, got {rhs}"),
                );
            }
        }
    }
    CheckResult::pass(id, format!("3 triples, all partitions of size <= {max_size}"))
}

// ---- classical ----

fn sieve_vs_brute_force(limit: usize) -> CheckResult {
    let id = "classical.sieve_vs_brute_force";
    let s = match SieveTable::build(limit) {
        Ok(s) => s,
        Err(e) => return CheckResult::fail(id, e.to_string()),
    };
    let sigma1 = s.sigma_table(1);
    let kf2 = s.kfree_flags(2);
    for n in 1..=limit as u64 {
        let i = n as usize;
        // trial-division references
        let (mut m, mut k, mut square) = (n, 0u32, false);
        let mut d = 2u64;
        let mut phi = n;
        let mut pmin = if n == 1 { 1 } else { 0 };
        let mut sig1 = 0u64;
        while d * d <= m {
            if m % d == 0 {
                if pmin == 0 {
                    pmin = d;
                }
                phi = phi / d * (d - 1);
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                if e >= 2 {
                    square = true;
                }
                k += 1;
            }
            d += 1;
        }
        if m > 1 {
            if pmin == 0 {
                pmin = m;
            }
            phi = phi / m * (m - 1);
            k += 1;
        }
        let mu = if square {
            0
        } else if k % 2 == 0 {
            1
        } else {
            -1
        };
        for dd in 1..=n {
            if n % dd == 0 {
                sig1 += dd;
            }
        }
        if s.mu(i) != mu
            || s.phi(i) != phi
            || s.p_min(i) as u64 != pmin
            || sigma1[i] != sig1
            || kf2[i] != !square
        {
            return CheckResult::fail(id, format!("disagreement at n = {n}"));
        }
    }
    CheckResult::pass(id, format!("mu, phi, p_min, sigma_1, squarefree for n <= {limit}"))
}

fn mu_sigma0_is_one(limit: usize) -> CheckResult {
    let id = "classical.mu_sigma0_is_one";
    let s = SieveTable::build(limit).expect("small limit");
    let sigma0: Vec<i64> = s.sigma_table(0).iter().map(|&x| x as i64).collect();
    let conv = dirichlet_convolve(&s.mu_table(), &sigma0);
    for (n, &v) in conv.iter().enumerate().skip(1) {
        if v != 1 {
            return CheckResult::fail(id, format!("(mu*sigma0)({n}) = {v}"));
        }
    }
    CheckResult::pass(id, format!("n <= {limit}"))
}

fn alladi_decomposition_exact(n: usize) -> CheckResult {
    let id = "classical.alladi_decomposition_exact";
    let s = match SieveTable::build(n) {
        Ok(s) => s,
        Err(e) => return CheckResult::fail(id, e.to_string()),
    };
    let full = alladi_full_sum_exact(&s, n);
    for t in [3u32, 4] {
        let by_class: Rat = (0..t).map(|r| alladi_class_sum_exact(&s, r, t, n)).sum();
        if by_class != full {
            return CheckResult::fail(
                id,
                format!("t={t}: classes sum to {by_class}, full sum is {full}"),
            );
        }
    }
    CheckResult::pass(id, format!("t in {{3,4}} at N = {n}, bit-exact rationals"))
}

fn lambert_mobius_resummation(order: usize) -> CheckResult {
    let id = "classical.lambert_mobius_resummation";
    let s = SieveTable::build(order.max(2)).expect("small limit");
    let mu = s.mu_table();
    let ones = vec![1i64; order + 1];
    let sigma0: Vec<i64> = s.sigma_table(0).iter().map(|&x| x as i64).collect();
    let idt: Vec<i64> = (0..=order as i64).collect();
    let pn: Vec<i64> = partition_counts(order)
        .iter()
        .map(|b| b.to_i64().expect("small"))
        .collect();
    for (name, f) in [("1", &ones), ("sigma0", &sigma0), ("id", &idt), ("p", &pn)] {
        let conv = dirichlet_convolve(&mu, f);
        let lhs = lambert_series(&conv, order);
        let rhs = power_series_of_table(f, order);
        if let Some(fr) = series_eq(id, name, &lhs, &rhs) {
            return fr;
        }
    }
    CheckResult::pass(id, format!("f in {{1, sigma0, id, p}} through q^{order}"))
}

fn partition_zeta_products() -> CheckResult {
    let id = "classical.partition_zeta_products";
    let z2 = match partition_zeta(&[2], 2, 1e-8) {
        Ok(z) => z,
        Err(e) => return CheckResult::fail(id, e.to_string()),
    };
    if z2.product_form != ratio(4, 3) {
        return CheckResult::fail(id, format!("S={{2}}, s=2: {}", z2.product_form));
    }
    let z23 = partition_zeta(&[2, 3], 2, 1e-8).expect("valid parameters");
    if z23.product_form != ratio(3, 2) {
        return CheckResult::fail(id, format!("S={{2,3}}, s=2: {}", z23.product_form));
    }
    if z23.mu_weighted != ratio(2, 3) || z23.mu_weighted != zeta_mu_direct(&[2, 3], 2) {
        return CheckResult::fail(id, "mu-weighted form disagrees".to_string());
    }
    for z in [&z2, &z23] {
        let err = (&z.product_form - &z.direct_sum)
            .to_f64()
            .map(f64::abs)
            .unwrap_or(f64::INFINITY);
        if err > z.tail_bound || z.tail_bound > 1e-8 {
            return CheckResult::fail(
                id,
                format!("direct sum off by {err:e} against bound {:e}", z.tail_bound),
            );
        }
    }
    // phi-weighted form at s=3 against its quotient and a direct enumeration
    let z3 = partition_zeta(&[2, 3], 3, 1e-8).expect("valid parameters");
    let phi = z3.phi_weighted.clone().expect("s >= 3");
    let want = &z23.product_form / &z3.product_form;
    if phi != want {
        return CheckResult::fail(id, format!("phi-weighted form: {phi} vs {want}"));
    }
    let direct = zeta_phi_direct(&[2, 3], 3, 40);
    let err = (&phi - &direct).to_f64().map(f64::abs).unwrap_or(f64::INFINITY);
    if err > 1e-8 {
        return CheckResult::fail(id, format!("phi direct enumeration off by {err:e}"));
    }
    CheckResult::pass(id, "products exact; direct sums within 1e-8")
}

// ---- density ----

fn qdensity_ap_closed(order: usize) -> CheckResult {
    let id = "density.qdensity_ap_closed";
    for t in 1..=6u32 {
        for r in 0..t {
            let s = SubsetSpec::ap(r, t).expect("valid");
            let series = q_density_series(&s, order);
            let closed = ap_density_closed_series(r, t, order).expect("valid");
            if let Some(f) = series_eq(id, &format!("r={r}, t={t}"), &series, &closed) {
                return f;
            }
            // float check at q = 0.999 for coprime residues; at t = 1 the
            // deviation is exactly 1-q, so equality is allowed (plus float
            // noise and the evaluator's tail bound)
            if num::integer::gcd(r, t) == 1 {
                let (v, b) = density::q_density(&s, 0.999, 1e-10).expect("valid q");
                if (v - 1.0 / t as f64).abs() > 1e-3 + b + 1e-12 {
                    return CheckResult::fail(
                        id,
                        format!("float at q=0.999 for r={r}, t={t}: {v}"),
                    );
                }
            }
        }
    }
    CheckResult::pass(id, format!("t <= 6, all residues, bit-exact through q^{order}"))
}

fn fs_subsets() -> Vec<SubsetSpec> {
    vec![
        SubsetSpec::ap(1, 2).expect("valid"),
        SubsetSpec::ap(2, 3).expect("valid"),
        SubsetSpec::ap(1, 4).expect("valid"),
        SubsetSpec::kfree(2).expect("valid"),
    ]
}

fn fs_three_forms(order: usize) -> CheckResult {
    let id = "density.fs_three_forms";
    for s in fs_subsets() {
        let smallest = f_series(&s, order, FsForm::Smallest).expect("guarded order");
        let quotient = f_series(&s, order, FsForm::Quotient).expect("guarded order");
        let euler = f_series(&s, order, FsForm::EulerForm).expect("guarded order");
        if let Some(f) = series_eq(id, &format!("{} smallest vs quotient", s.label()), &smallest, &quotient) {
            return f;
        }
        if let Some(f) = series_eq(id, &format!("{} smallest vs euler", s.label()), &smallest, &euler) {
            return f;
        }
    }
    CheckResult::pass(id, format!("4 subsets, three forms, through q^{order}"))
}

fn qgeneral_equals_fs(order: usize) -> CheckResult {
    let id = "density.qgeneral_equals_fs";
    for s in fs_subsets() {
        let double = qgeneral_double_sum(&s, order).expect("guarded order");
        let fs = f_series(&s, order, FsForm::EulerForm).expect("guarded order");
        if let Some(f) = series_eq(id, &s.label(), &double, &fs) {
            return f;
        }
    }
    CheckResult::pass(id, format!("4 subsets through q^{order}"))
}

fn largest_closed_vs_enumeration(order: usize) -> CheckResult {
    let id = "density.largest_closed_vs_enumeration";
    for s in fs_subsets() {
        let closed = largest_part_series(&s, order).expect("guarded order");
        let enumerated = weighted_series(&FilteredSum::new(
            PartitionFunctionDescriptor::mu_p_star(),
            PartFilter::LargestIn(s.clone()),
            order,
        ))
        .expect("guarded order");
        if let Some(f) = series_eq(id, &s.label(), &closed, &enumerated) {
            return f;
        }
    }
    CheckResult::pass(id, format!("4 subsets through q^{order}"))
}

fn theorem1_pairs(order: usize) -> CheckResult {
    let id = "density.theorem1_pairs";
    let odds = SubsetSpec::ap(1, 2).expect("valid");
    let pairs: Vec<(PartitionFunctionDescriptor, ArithFn, &str)> = vec![
        (
            PartitionFunctionDescriptor::indicator_empty(),
            arith_fn(|_| rat(-1)),
            "indicator-of-empty, f=-1",
        ),
        (
            PartitionFunctionDescriptor::length(),
            arith_fn(|_| Rat::one()),
            "length, f=1",
        ),
        (
            PartitionFunctionDescriptor::size(),
            arith_fn(|_| Rat::one()),
            "size, f=1",
        ),
    ];
    for s in [SubsetSpec::all(), odds] {
        for (a, f, label) in &pairs {
            let pair = theorem1_series(a, f, &s, order).expect("guarded inputs");
            if let Some(fr) = series_eq(id, &format!("{} on {}", label, s.label()), &pair.lhs, &pair.rhs) {
                return fr;
            }
        }
    }
    // the indicator pair reduces to F_S
    let s = SubsetSpec::ap(1, 2).expect("valid");
    let pair = theorem1_series(
        &PartitionFunctionDescriptor::indicator_empty(),
        &arith_fn(|_| rat(-1)),
        &s,
        order,
    )
    .expect("guarded inputs");
    let fs = f_series(&s, order, FsForm::Smallest).expect("guarded order");
    if let Some(fr) = series_eq(id, "reduction to F_S", &pair.lhs, &fs) {
        return fr;
    }
    CheckResult::pass(id, format!("3 pairs x 2 subsets through q^{order}"))
}

fn monotone_ap_approach() -> CheckResult {
    let id = "density.monotone_ap_approach";
    let grid = [
        ratio(9, 10),
        ratio(99, 100),
        ratio(999, 1000),
        ratio(9999, 10000),
    ];
    for t in 1..=6u32 {
        for r in 0..t {
            let target = Rat::new(BigInt::one(), BigInt::from(t));
            let mut last: Option<Rat> = None;
            for q in &grid {
                let v = ap_density_closed_exact(r, t, q).expect("valid");
                let dev = (&v - &target).abs();
                if let Some(prev) = &last {
                    if &dev > prev {
                        return CheckResult::fail(
                            id,
                            format!("r={r}, t={t}: |d(q) - 1/t| increased at q={q}"),
                        );
                    }
                }
                last = Some(dev);
            }
        }
    }
    CheckResult::pass(id, "t <= 6 on q in {0.9, 0.99, 0.999, 0.9999}, exact rationals")
}

fn unimodal_crank(order: usize) -> CheckResult {
    let id = "density.unimodal_crank";
    for z in [rat(2), ratio(-1, 3)] {
        let chk = match unimodal_crank_check(&z, order) {
            Ok(c) => c,
            Err(e) => return CheckResult::fail(id, e.to_string()),
        };
        if let Some(f) = series_eq(id, &format!("rank form at z={z}"), &chk.lhs, &chk.rhs) {
            return f;
        }
        if let Some(f) = series_eq(id, &format!("crank form at z={z}"), &chk.lhs, &chk.crank_rhs)
        {
            return f;
        }
    }
    // strongly unimodal counts at z = 1
    let u = examples::unimodal_rank_series(&rat(1), 3).expect("guarded order");
    if u != TruncatedSeries::from_ints(&[0, 1, 1, 3]) {
        return CheckResult::fail(id, format!("U(1,q) counts: {u:?}"));
    }
    CheckResult::pass(id, format!("z in {{2, -1/3}} through q^{order}"))
}

/// The convolution series with length and size weights resum to Lambert
/// series over the subset.
fn cor3_resummation_chain(order: usize) -> CheckResult {
    let id = "density.cor3_resummation_chain";
    let mu = PartitionFunctionDescriptor::mu_p();
    let subsets = [SubsetSpec::all(), SubsetSpec::ap(1, 2).expect("valid")];
    for s in &subsets {
        let flags = s.membership_flags(order);
        let ind: Vec<i64> = flags.iter().map(|&b| b as i64).collect();
        let n_ind: Vec<i64> = flags
            .iter()
            .enumerate()
            .map(|(n, &b)| if b { n as i64 } else { 0 })
            .collect();
        let n2_ind: Vec<i64> = flags
            .iter()
            .enumerate()
            .map(|(n, &b)| if b { (n * n) as i64 } else { 0 })
            .collect();
        let cases = [
            (PartitionFunctionDescriptor::length(), &ind, "length"),
            (PartitionFunctionDescriptor::size(), &n_ind, "size"),
            (PartitionFunctionDescriptor::sz_r(2), &n2_ind, "sz_2"),
        ];
        for (a, table, label) in cases {
            let lhs = weighted_series(&FilteredSum::new(
                convolution(&mu, &a),
                PartFilter::SmallestIn(s.clone()),
                order,
            ))
            .expect("guarded order");
            let rhs = lambert_series(table, order);
            if let Some(f) = series_eq(id, &format!("{label} on {}", s.label()), &lhs, &rhs) {
                return f;
            }
        }
    }
    CheckResult::pass(id, format!("length/size/sz_2 chains through q^{order}"))
}

/// sigma_r Lambert identities: sum_k k^r q^k/(1-q^k) = sum_k sigma_r(k) q^k,
/// and the phi-Lambert form sum_k phi(k) q^k/(1-q^k) = q/(1-q)^2.
fn sigma_lambert_identities(order: usize) -> CheckResult {
    let id = "density.sigma_lambert_identities";
    let s = SieveTable::build(order.max(2)).expect("small limit");
    for r in 0..=2u32 {
        let kr: Vec<i64> = (0..=order as u64).map(|k| k.pow(r) as i64).collect();
        let lhs = lambert_series(&kr, order);
        let sig: Vec<i64> = s.sigma_table(r).iter().map(|&x| x as i64).collect();
        let rhs = power_series_of_table(&sig, order);
        if let Some(f) = series_eq(id, &format!("r={r}"), &lhs, &rhs) {
            return f;
        }
    }
    let phi: Vec<i64> = (0..=order).map(|n| if n == 0 { 0 } else { s.phi(n) as i64 }).collect();
    let lhs = lambert_series(&phi, order);
    let rhs = TruncatedSeries::monomial(Rat::one(), 1, order)
        .div_one_minus(&Rat::one(), 1)
        .div_one_minus(&Rat::one(), 1);
    if let Some(f) = series_eq(id, "phi-Lambert", &lhs, &rhs) {
        return f;
    }
    CheckResult::pass(id, format!("sigma_0..2 and phi through q^{order}"))
}

fn muthm_collapse(order: usize) -> CheckResult {
    let id = "density.muthm_collapse";
    let sieve = SieveTable::build(order.max(2)).expect("small limit");
    // S = N: the double sum telescopes to q
    let all = examples::double_sum_series(&sieve.mu_table(), &SubsetSpec::all(), order);
    let want = TruncatedSeries::monomial(Rat::one(), 1, order);
    if let Some(f) = series_eq(id, "S = N", &all, &want) {
        return f;
    }
    // general subsets against the divisor-sum oracle
    for s in [SubsetSpec::ap(1, 3).expect("valid"), SubsetSpec::kfree(2).expect("valid")] {
        let got = examples::double_sum_series(&sieve.mu_table(), &s, order);
        let mut oracle = vec![Rat::zero(); order + 1];
        for m in 1..=order {
            for k in 1..=m {
                if m % k == 0 && s.contains((m / k) as u64) {
                    oracle[m] += rat(sieve.mu(k) as i64);
                }
            }
        }
        let oracle = TruncatedSeries::from_coeffs(oracle);
        if let Some(f) = series_eq(id, &s.label(), &got, &oracle) {
            return f;
        }
    }
    CheckResult::pass(id, format!("collapse oracle through q^{order}"))
}

fn genthm_f1_reduction(order: usize) -> CheckResult {
    let id = "density.genthm_f1_reduction";
    // f = 1: mu*f is the indicator of 1, so the numerator collapses to the
    // membership power series and the denominator to the geometric series
    let sieve = SieveTable::build(order.max(2)).expect("small limit");
    let ones = vec![1i64; order + 1];
    let conv = dirichlet_convolve(&sieve.mu_table(), &ones);
    let s = SubsetSpec::ap(2, 5).expect("valid");
    let num = examples::double_sum_series(&conv, &s, order);
    let flags = s.membership_flags(order);
    let membership: Vec<i64> = flags.iter().map(|&b| b as i64).collect();
    let want = power_series_of_table(&membership, order);
    if let Some(f) = series_eq(id, "numerator", &num, &want) {
        return f;
    }
    let den = power_series_of_table(&ones, order);
    let geometric = TruncatedSeries::monomial(Rat::one(), 1, order).div_one_minus(&Rat::one(), 1);
    if let Some(f) = series_eq(id, "denominator", &den, &geometric) {
        return f;
    }
    CheckResult::pass(id, format!("through q^{order}"))
}

fn pfn_collapse(order: usize) -> CheckResult {
    let id = "density.pfn_collapse";
    let sieve = SieveTable::build(order.max(2)).expect("small limit");
    let counts = partition_counts(order);
    let p: Vec<i64> = counts.iter().map(|b| b.to_i64().expect("small")).collect();
    let conv = dirichlet_convolve(&sieve.mu_table(), &p);
    // S = N: the prefixed double sum equals F_N = 1 - (q;q)_inf
    let series = examples::double_sum_series(&conv, &SubsetSpec::all(), order);
    let prefixed = euler_product(order).mul(&series);
    let f_all = TruncatedSeries::one(order).sub(&euler_product(order));
    if let Some(f) = series_eq(id, "S = N", &prefixed, &f_all) {
        return f;
    }
    // general S against the divisor-sum oracle
    let s = SubsetSpec::ap(1, 2).expect("valid");
    let got = examples::double_sum_series(&conv, &s, order);
    let mut oracle = vec![Rat::zero(); order + 1];
    for m in 1..=order {
        for k in 1..=m {
            if m % k == 0 && s.contains((m / k) as u64) {
                oracle[m] += rat(conv[k]);
            }
        }
    }
    if let Some(f) = series_eq(id, "oracle", &got, &TruncatedSeries::from_coeffs(oracle)) {
        return f;
    }
    CheckResult::pass(id, format!("through q^{order}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        // small orders keep this cheap; the full-order run lives in the
        // acceptance tests
        for suite in ["fps", "partitions"] {
            for r in run_suite(suite, Some(20)).unwrap() {
                assert!(r.passed, "{}: {}", r.id, r.detail);
            }
        }
        assert!(run_suite("nonsense", None).is_err());
    }

    #[test]
    fn parith_suite_small_order() {
        for r in run_suite("parith", Some(12)).unwrap() {
            assert!(r.passed, "{}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn density_suite_small_order() {
        for r in run_suite("density", Some(14)).unwrap() {
            assert!(r.passed, "{}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn failure_reports_first_coefficient() {
        let a = TruncatedSeries::from_ints(&[1, 2, 3]);
        let b = TruncatedSeries::from_ints(&[1, 2, 4]);
        let f = series_eq("test.id", "ctx", &a, &b).unwrap();
        assert!(!f.passed);
        assert!(f.detail.contains("q^2"), "{}", f.detail);
        assert!(f.detail.contains("expected 3"), "{}", f.detail);
        assert!(f.detail.contains("got 4"), "{}", f.detail);
    }
}
