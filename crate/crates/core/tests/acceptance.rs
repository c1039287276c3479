//! Acceptance gate: one check per criterion, each printed as a PASS/FAIL
//! line. Run with `cargo test -p qpd-core --test acceptance -- --nocapture`
//! to see the per-criterion report.

use qpd_core::classical::zeta::zeta_mu_direct;
use qpd_core::classical::{partition_zeta, SieveTable};
use qpd_core::density::{table2_rows, TABLE2_REFERENCE};
use qpd_core::fps::ratio;
use qpd_core::verify::{run_suite, CheckResult};
use num::ToPrimitive;
use std::time::Instant;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
        }
    }

    fn criterion(&mut self, number: u32, description: &str, ok: bool, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {number} {status}: {description} ({detail})");
        if !ok {
            self.failures.push(format!("criterion {number}: {detail}"));
        }
    }
}

fn ids_pass(results: &[CheckResult], ids: &[&str]) -> (bool, String) {
    let mut missing: Vec<&str> = Vec::new();
    let mut failed: Vec<String> = Vec::new();
    for id in ids {
        match results.iter().find(|r| r.id == *id) {
            None => missing.push(id),
            Some(r) if !r.passed => failed.push(format!("{}: {}", r.id, r.detail)),
            _ => {}
        }
    }
    if missing.is_empty() && failed.is_empty() {
        (true, format!("{} checks", ids.len()))
    } else {
        (false, format!("missing {missing:?}, failed {failed:?}"))
    }
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::new();

    // 1. Table reproduction: twelve rows to 6 decimal places, under 30 s.
    let t0 = Instant::now();
    let rows = table2_rows();
    let elapsed = t0.elapsed();
    let mut worst = 0.0f64;
    for ((_q, v), want) in rows.iter().zip(TABLE2_REFERENCE) {
        worst = worst.max((v - want).abs());
    }
    gate.criterion(
        1,
        "2-free q-density table matches the reference to 6 decimals in under 30 s",
        worst < 1e-6 && elapsed.as_secs_f64() < 30.0,
        format!("worst |diff| = {worst:.2e}, {:.2}s", elapsed.as_secs_f64()),
    );

    // The identity suite at its stated orders backs criteria 2-4, 6, 7.
    let t0 = Instant::now();
    let results = run_suite("all", None).expect("suite runs");
    let suite_elapsed = t0.elapsed();
    for r in &results {
        let status = if r.passed { "pass" } else { "FAIL" };
        println!("  [{status}] {} ({})", r.id, r.detail);
    }

    // 2. Closed-form q-density for progressions through q^60, bit-exact,
    //    with the float check at q = 0.999.
    let (ok, detail) = ids_pass(&results, &["density.qdensity_ap_closed"]);
    gate.criterion(
        2,
        "progression q-density equals its closed form through q^60 (exact + float)",
        ok,
        detail,
    );

    // 3. Three-form agreement of F_S through q^40.
    let (ok, detail) = ids_pass(&results, &["density.fs_three_forms"]);
    gate.criterion(3, "F_S three-form coefficient agreement through q^40", ok, detail);

    // 4. The exact identity suite at its stated orders, under 5 minutes.
    let (ok, detail) = ids_pass(
        &results,
        &[
            "density.qgeneral_equals_fs",
            "density.largest_closed_vs_enumeration",
            "parith.convolemma2",
            "parith.convolemma4",
            "density.theorem1_pairs",
            "parith.wanalog",
            "parith.cauchy_product",
            "parith.euler_inverse_consequence",
            "parith.euler_mu_consequence",
            "parith.mobius_roundtrip",
            "partitions.mu_divisor_sum",
            "partitions.phi_divisor_sum",
            "density.unimodal_crank",
            "density.sigma_lambert_identities",
            "density.cor3_resummation_chain",
            "parith.smallest_part_split",
            "parith.a_series_closed_forms",
            "parith.summation_swap",
            "fps.euler_product_matches_dense",
            "fps.euler_inverse_is_unit",
        ],
    );
    let in_time = suite_elapsed.as_secs_f64() < 300.0;
    gate.criterion(
        4,
        "exact identity suite bit-exact at stated orders, under 5 minutes",
        ok && in_time,
        format!("{detail}; suite took {:.1}s", suite_elapsed.as_secs_f64()),
    );

    // 5. Partition zeta products exactly, direct sums within the bound.
    let z2 = partition_zeta(&[2], 2, 1e-8).expect("valid");
    let z23 = partition_zeta(&[2, 3], 2, 1e-8).expect("valid");
    let product_ok = z2.product_form == ratio(4, 3) && z23.product_form == ratio(3, 2);
    let within = |z: &qpd_core::classical::PartitionZeta| {
        (&z.product_form - &z.direct_sum)
            .to_f64()
            .map(f64::abs)
            .unwrap_or(f64::INFINITY)
            <= z.tail_bound
            && z.tail_bound <= 1e-8
    };
    let mu_ok = z23.mu_weighted == ratio(2, 3) && zeta_mu_direct(&[2, 3], 2) == ratio(2, 3);
    gate.criterion(
        5,
        "partition zeta Euler products 4/3 and 3/2 exact; direct sums within 1e-8",
        product_ok && within(&z2) && within(&z23) && mu_ok,
        format!(
            "products {} and {}, bounds {:.1e}/{:.1e}",
            z2.product_form, z23.product_form, z2.tail_bound, z23.tail_bound
        ),
    );

    // 6. Sieves vs brute force at 10^4, exact Alladi decomposition at 10^5,
    //    (mu*sigma0) = 1 below 10^3.
    let (ok, detail) = ids_pass(
        &results,
        &[
            "classical.sieve_vs_brute_force",
            "classical.alladi_decomposition_exact",
            "classical.mu_sigma0_is_one",
        ],
    );
    gate.criterion(6, "classical sieves, exact residue decomposition, mu*sigma0", ok, detail);

    // 7. No proven convergence rates: the limit statements are covered by
    //    the exact identities above plus the exact monotone approach for
    //    progressions; the smallest-prime-factor partial sums stay demo
    //    output (checked for decomposition exactness only, in criterion 6).
    let (ok, detail) = ids_pass(&results, &["density.monotone_ap_approach"]);
    let demo = SieveTable::build(50_000)
        .ok()
        .and_then(|s| qpd_core::classical::alladi_partial_sum(&s, 1, 4, 50_000).ok());
    gate.criterion(
        7,
        "monotone closed-form approach for progressions; partial sums demo-only",
        ok && demo.is_some(),
        format!("{detail}; alladi(1,4) demo value {:.4}", demo.unwrap_or(f64::NAN)),
    );

    assert!(
        gate.failures.is_empty(),
        "acceptance failures:\n{}",
        gate.failures.join("\n")
    );
}
