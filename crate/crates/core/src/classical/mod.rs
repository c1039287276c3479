//! Classical-side arithmetic: linear sieves, Dirichlet convolution, the
//! smallest-prime-factor partial sums, subsets of N, and partition zeta
//! values with their Euler products.

pub mod subset;
pub mod zeta;

pub use subset::{is_kfree, zeta_f64, SubsetSpec};
pub use zeta::{partition_zeta, PartitionZeta};

use crate::error::{Error, Result};
use crate::fps::{Rat, TruncatedSeries};
use num::integer::gcd;
use num::{BigInt, Zero};

/// Memory guard for sieve construction.
pub const MAX_SIEVE_LIMIT: usize = 100_000_000;

/// Linear-sieve tables for mu, phi, and the smallest prime factor, plus
/// divisor-power sums and k-free flags computed on demand.
///
/// `p_min(1)` is defined as 1 (flagged by convention; 1 has no prime factor)
/// and n = 1 is excluded from the partial sums below, which start at n = 2.
pub struct SieveTable {
    limit: usize,
    mu: Vec<i8>,
    phi: Vec<u64>,
    p_min: Vec<u32>,
    primes: Vec<u32>,
}

impl SieveTable {
    pub fn build(limit: usize) -> Result<Self> {
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::LimitTooLarge {
                requested: limit,
                max: MAX_SIEVE_LIMIT,
            });
        }
        let limit = limit.max(1);
        let mut mu = vec![0i8; limit + 1];
        let mut phi = vec![0u64; limit + 1];
        let mut p_min = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        mu[1] = 1;
        phi[1] = 1;
        p_min[1] = 1;
        for i in 2..=limit {
            if p_min[i] == 0 {
                p_min[i] = i as u32;
                mu[i] = -1;
                phi[i] = (i - 1) as u64;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                if p > p_min[i] as usize || i * p > limit {
                    break;
                }
                p_min[i * p] = p as u32;
                if i % p == 0 {
                    mu[i * p] = 0;
                    phi[i * p] = phi[i] * p as u64;
                    break;
                } else {
                    mu[i * p] = -mu[i];
                    phi[i * p] = phi[i] * (p - 1) as u64;
                }
            }
        }
        Ok(Self {
            limit,
            mu,
            phi,
            p_min,
            primes,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn mu(&self, n: usize) -> i32 {
        self.mu[n] as i32
    }

    pub fn phi(&self, n: usize) -> u64 {
        self.phi[n]
    }

    pub fn p_min(&self, n: usize) -> u32 {
        self.p_min[n]
    }

    /// mu as an i64 table (index 0 unused), ready for dirichlet_convolve.
    pub fn mu_table(&self) -> Vec<i64> {
        self.mu.iter().map(|&m| m as i64).collect()
    }

    /// sigma_r(n) = sum of d^r over divisors d of n, for n <= limit, by
    /// divisor accumulation in O(limit log limit). r <= 3 keeps u64 exact.
    pub fn sigma_table(&self, r: u32) -> Vec<u64> {
        assert!(r <= 3, "sigma_r tables support r <= 3");
        let mut sigma = vec![0u64; self.limit + 1];
        for d in 1..=self.limit {
            let dr = (d as u64).pow(r);
            let mut m = d;
            while m <= self.limit {
                sigma[m] += dr;
                m += d;
            }
        }
        sigma
    }

    /// k-free flags for n <= limit by striking multiples of p^k.
    pub fn kfree_flags(&self, k: u32) -> Vec<bool> {
        assert!(k >= 2);
        let mut flags = vec![true; self.limit + 1];
        flags[0] = false;
        for &p in &self.primes {
            let Some(pk) = (p as usize).checked_pow(k) else {
                break;
            };
            if pk > self.limit {
                break;
            }
            let mut m = pk;
            while m <= self.limit {
                flags[m] = false;
                m += pk;
            }
        }
        flags
    }
}

/// Classical Dirichlet convolution of tabulated functions:
/// (f*g)(n) = sum_{d|n} f(d) g(n/d) for 1 <= n < len. Index 0 is unused.
pub fn dirichlet_convolve(f: &[i64], g: &[i64]) -> Vec<i64> {
    let len = f.len().min(g.len());
    let mut h = vec![0i64; len];
    for d in 1..len {
        if f[d] == 0 {
            continue;
        }
        let mut m = d;
        while m < len {
            h[m] += f[d] * g[m / d];
            m += d;
        }
    }
    h
}

/// -sum_{2<=n<=N, p_min(n) = r (mod t)} mu(n)/n with Kahan summation.
/// Targets 1/phi(t), which needs gcd(r, t) = 1.
pub fn alladi_partial_sum(sieve: &SieveTable, r: u32, t: u32, n: usize) -> Result<f64> {
    if t == 0 || gcd(r, t) != 1 {
        return Err(Error::BadResidue { r, t });
    }
    Ok(alladi_class_sum(sieve, r, t, n))
}

/// Same partial sum without the coprimality requirement; classes with
/// gcd(r, t) > 1 are how the residue decomposition covers the full sum.
pub fn alladi_class_sum(sieve: &SieveTable, r: u32, t: u32, n: usize) -> f64 {
    assert!(n <= sieve.limit());
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for m in 2..=n {
        if sieve.mu[m] == 0 || sieve.p_min[m] % t != r {
            continue;
        }
        let term = sieve.mu[m] as f64 / m as f64;
        // Kahan
        let y = term - comp;
        let t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
    }
    -sum
}

/// Exact-rational version of the class sum, used for the bit-exact residue
/// decomposition check. Divide-and-conquer keeps intermediate denominators
/// balanced, so N = 10^5 stays cheap.
pub fn alladi_class_sum_exact(sieve: &SieveTable, r: u32, t: u32, n: usize) -> Rat {
    assert!(n <= sieve.limit());
    -sum_exact_range(sieve, 2, n, &|m| sieve.p_min[m] % t == r)
}

/// Exact -sum_{2<=n<=N} mu(n)/n.
pub fn alladi_full_sum_exact(sieve: &SieveTable, n: usize) -> Rat {
    assert!(n <= sieve.limit());
    -sum_exact_range(sieve, 2, n, &|_| true)
}

fn sum_exact_range(sieve: &SieveTable, lo: usize, hi: usize, keep: &dyn Fn(usize) -> bool) -> Rat {
    if hi - lo <= 64 {
        let mut acc = Rat::zero();
        for m in lo..=hi {
            if sieve.mu[m] != 0 && keep(m) {
                acc += Rat::new(BigInt::from(sieve.mu[m]), BigInt::from(m));
            }
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    sum_exact_range(sieve, lo, mid, keep) + sum_exact_range(sieve, mid + 1, hi, keep)
}

/// Result of a Wang-style partial sum -sum (mu*a)(n)/n over n with smallest
/// prime factor in the subset.
///
/// Convergence can be arbitrarily slow or absent; `drifting` is a demo-grade
/// heuristic that flags |S(N) - S(N/2)| > 0.05.
#[derive(Debug, Clone)]
pub struct WangSum {
    pub value: f64,
    pub half_value: f64,
    pub tail_drift: f64,
    pub drifting: bool,
}

/// -sum_{2<=n<=N, p_min(n) in S} (mu*a)(n)/n for a tabulated a with a(1)=1.
pub fn wang_partial_sum(
    sieve: &SieveTable,
    a: &[i64],
    subset: &SubsetSpec,
    n: usize,
) -> Result<WangSum> {
    if n < 2 || a.len() <= n {
        return Err(Error::Domain(format!(
            "need a tabulated through N={n} (have {})",
            a.len().saturating_sub(1)
        )));
    }
    if a[1] != 1 {
        return Err(Error::Domain(format!("a(1) must be 1, got {}", a[1])));
    }
    assert!(n <= sieve.limit());
    let conv = dirichlet_convolve(&sieve.mu_table()[..=n], &a[..=n]);
    let keep: Vec<bool> = (0..=n)
        .map(|m| m >= 2 && subset.contains(sieve.p_min[m] as u64))
        .collect();
    let partial = |upto: usize| -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for m in 2..=upto {
            if !keep[m] || conv[m] == 0 {
                continue;
            }
            let term = conv[m] as f64 / m as f64;
            let y = term - comp;
            let t2 = sum + y;
            comp = (t2 - sum) - y;
            sum = t2;
        }
        -sum
    };
    let value = partial(n);
    let half_value = partial(n / 2);
    let tail_drift = (value - half_value).abs();
    Ok(WangSum {
        value,
        half_value,
        tail_drift,
        drifting: tail_drift > 0.05,
    })
}

/// sum_{k=1..order} f(k) q^k / (1 - q^k) as an exact series; the Lambert
/// resummation partner of power_series_of_table.
pub fn lambert_series(f: &[i64], order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for k in 1..=order.min(f.len().saturating_sub(1)) {
        if f[k] == 0 {
            continue;
        }
        let fk = Rat::from_integer(BigInt::from(f[k]));
        let mut m = k;
        while m <= order {
            coeffs[m] += &fk;
            m += k;
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// sum_{k=1..order} f(k) q^k as an exact series.
pub fn power_series_of_table(f: &[i64], order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for k in 1..=order.min(f.len().saturating_sub(1)) {
        coeffs[k] = Rat::from_integer(BigInt::from(f[k]));
    }
    TruncatedSeries::from_coeffs(coeffs)
}
