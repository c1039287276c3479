//! Partition zeta values over partitions with parts restricted to a finite
//! set: sum of norm(lambda)^(-s), its Euler product, and the mu_p- and
//! phi_p-weighted variants.

use crate::error::{Error, Result};
use crate::fps::Rat;
use num::traits::Pow;
use num::{BigInt, One, Zero};

/// Exact product forms next to a direct partition summation with a rigorous
/// length-cutoff tail bound.
#[derive(Debug, Clone)]
pub struct PartitionZeta {
    /// prod over n in S of 1/(1 - n^{-s}).
    pub product_form: Rat,
    /// Direct sum of norm^{-s} over partitions with parts in S and at most
    /// `length_cutoff` parts; differs from the product by at most tail_bound.
    pub direct_sum: Rat,
    pub tail_bound: f64,
    pub length_cutoff: usize,
    /// sum of mu_p(lambda) norm^{-s} = 1/product_form (a finite sum).
    pub mu_weighted: Rat,
    /// sum of phi_p(lambda) norm^{-s} = zeta(s-1)/zeta(s) over the same
    /// part set; requires s >= 3.
    pub phi_weighted: Option<Rat>,
}

fn n_pow_neg_s(n: u32, s: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(n).pow(s))
}

/// Zeta-style data for the part set `parts` at integer exponent `s >= 2`,
/// with the direct sum carried far enough that the geometric tail is below
/// `tol`. Parts must all be >= 2 (a part equal to 1 makes every sum diverge).
pub fn partition_zeta(parts: &[u32], s: u32, tol: f64) -> Result<PartitionZeta> {
    if s < 2 {
        return Err(Error::DivergentParameter(format!(
            "need s >= 2, got s = {s}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let mut set: Vec<u32> = parts.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(Error::Domain("empty part set".into()));
    }
    if set[0] <= 1 {
        return Err(Error::DivergentParameter(
            "part sets must exclude 0 and 1".into(),
        ));
    }

    let mut product_form = Rat::one();
    let mut mu_weighted = Rat::one();
    for &n in &set {
        let f = Rat::one() - n_pow_neg_s(n, s);
        mu_weighted *= &f;
        product_form *= Rat::one() / f;
    }
    let phi_weighted = (s >= 3).then(|| {
        let mut acc = Rat::one();
        for &n in &set {
            // per-part factor (1 - n^{-s})/(1 - n^{1-s})
            acc *= (Rat::one() - n_pow_neg_s(n, s)) / (Rat::one() - n_pow_neg_s(n, s - 1));
        }
        acc
    });

    let (length_cutoff, tail_bound) = length_cutoff_for(&set, s, tol);
    let mut direct_sum = Rat::zero();
    direct_terms(&set, s, length_cutoff, 0, Rat::one(), &mut direct_sum);

    Ok(PartitionZeta {
        product_form,
        direct_sum,
        tail_bound,
        length_cutoff,
        mu_weighted,
        phi_weighted,
    })
}

/// Every partition with more than L parts (parts in `set`, each >= p) has
/// norm^{-s} <= p^{-sL}, and there are at most C(m+k-1, k-1) of length m,
/// so the omitted mass is below sum_{m>L} C(m+k-1,k-1) p^{-sm}.
fn length_cutoff_for(set: &[u32], s: u32, tol: f64) -> (usize, f64) {
    let p = set[0] as f64;
    let k = set.len() as u32;
    let mut cutoff = 1usize;
    loop {
        let mut bound = 0.0f64;
        let mut m = cutoff + 1;
        loop {
            let term = binomial_f64(m as u32 + k - 1, k - 1) * p.powi(-((s as i32) * m as i32));
            bound += term;
            if term < bound * 1e-18 || term < 1e-300 {
                break;
            }
            m += 1;
        }
        if bound <= tol {
            return (cutoff, bound);
        }
        cutoff += 1;
    }
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (k - i) as f64;
    }
    acc
}

fn direct_terms(set: &[u32], s: u32, budget: usize, idx: usize, weight: Rat, acc: &mut Rat) {
    if idx == set.len() {
        *acc += &weight;
        return;
    }
    // each multiplicity 0..=budget of set[idx], then the remaining parts
    let base = n_pow_neg_s(set[idx], s);
    let mut w = weight;
    direct_terms(set, s, budget, idx + 1, w.clone(), acc);
    for used in 1..=budget {
        w *= &base;
        direct_terms(set, s, budget - used, idx + 1, w.clone(), acc);
    }
}

/// Direct sum of mu_p(lambda) norm^{-s}: mu_p vanishes on repeated parts, so
/// this is the finite signed sum over subsets of the part set. Enumeration
/// oracle for the mu_weighted product.
pub fn zeta_mu_direct(parts: &[u32], s: u32) -> Rat {
    let mut set: Vec<u32> = parts.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut acc = Rat::zero();
    for mask in 0..(1u64 << set.len()) {
        let mut term = Rat::one();
        let mut len = 0;
        for (i, &n) in set.iter().enumerate() {
            if mask >> i & 1 == 1 {
                term *= n_pow_neg_s(n, s);
                len += 1;
            }
        }
        if len % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// Direct sum of phi_p(lambda) norm^{-s} over partitions with parts in the
/// set and at most `max_len` parts. Enumeration oracle for phi_weighted.
pub fn zeta_phi_direct(parts: &[u32], s: u32, max_len: usize) -> Rat {
    let mut set: Vec<u32> = parts.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut acc = Rat::zero();
    phi_terms(&set, s, max_len, 0, Rat::one(), &mut acc);
    acc
}

fn phi_terms(set: &[u32], s: u32, budget: usize, idx: usize, weight: Rat, acc: &mut Rat) {
    if idx == set.len() {
        *acc += &weight;
        return;
    }
    let n = set[idx];
    // part n with multiplicity m >= 1 contributes n^m (1 - 1/n) to phi_p and
    // n^{-sm} to norm^{-s}; the (1 - 1/n) factor enters once per distinct part
    let per_copy = Rat::new(BigInt::from(n), BigInt::from(n).pow(s));
    let distinct_factor = Rat::one() - Rat::new(BigInt::one(), BigInt::from(n));
    let mut w = weight;
    phi_terms(set, s, budget, idx + 1, w.clone(), acc);
    for used in 1..=budget {
        w *= &per_copy;
        phi_terms(set, s, budget - used, idx + 1, &w * &distinct_factor, acc);
    }
}
