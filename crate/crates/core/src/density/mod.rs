//! The q-density statistic, the generating-function representations of
//! F_S(q) whose radial limits recover arithmetic densities, the general
//! smallest-part formula evaluators, and radial limit estimation.
//!
//! Exact series builders live beside double-precision evaluators. The
//! evaluators report a rigorous truncation bound where the tail is
//! geometric; everything else is demo output with no claimed rate.

pub mod examples;

pub use examples::{example_estimate, unimodal_crank_check, ExampleId, NamedArith, UnimodalCheck};

use crate::classical::SubsetSpec;
use crate::error::{Error, Result};
use crate::fps::{euler_product, Rat, TruncatedSeries};
use crate::limits;
use crate::parith::{a_series, convolution, weighted_series, ArithFn, FilteredSum, PartFilter};
use crate::partitions::PartitionFunctionDescriptor;
use num::traits::Pow;
use num::{One, Zero};

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q = {q} is not in (0, 1)")));
    }
    Ok(())
}

/// Truncation index N with q^(N+1) <= tol.
pub(crate) fn geometric_cutoff(q: f64, tol: f64) -> usize {
    (tol.ln() / q.ln()).ceil().max(1.0) as usize
}

/// d_S(q) = (1-q) sum_{n in S} q^n, truncated where the geometric tail
/// drops below `tol`. Returns (value, tail bound).
pub fn q_density(s: &SubsetSpec, q: f64, tol: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let n_max = geometric_cutoff(q, tol);
    let flags = s.membership_flags(n_max);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut qn = 1.0f64;
    for n in 1..=n_max {
        qn *= q;
        if flags[n] {
            let y = qn - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    Ok(((1.0 - q) * sum, q.powi(n_max as i32 + 1)))
}

/// The polynomial (1-q) sum_{n in S, n <= order} q^n.
pub fn q_density_series(s: &SubsetSpec, order: usize) -> TruncatedSeries {
    let flags = s.membership_flags(order);
    let mut coeffs = vec![Rat::zero(); order + 1];
    for (n, &f) in flags.iter().enumerate().skip(1) {
        if f {
            coeffs[n] = Rat::one();
        }
    }
    TruncatedSeries::from_coeffs(coeffs).mul_one_minus(&Rat::one(), 1)
}

/// Closed form of the q-density series for the progression {n >= 1 : n = r
/// (mod t)}: q^r' (1-q)/(1-q^t) with representative exponent r' = r, or t
/// when r = 0 (membership excludes 0, so the progression starts at t).
pub fn ap_density_closed_series(r: u32, t: u32, order: usize) -> Result<TruncatedSeries> {
    if t < 1 || r >= t {
        return Err(Error::Domain(format!("need 0 <= r < t, got r={r}, t={t}")));
    }
    let rp = if r == 0 { t } else { r } as usize;
    Ok(TruncatedSeries::monomial(Rat::one(), rp, order)
        .mul_one_minus(&Rat::one(), 1)
        .div_one_minus(&Rat::one(), t as usize))
}

/// Exact rational evaluation of the progression closed form at rational q.
pub fn ap_density_closed_exact(r: u32, t: u32, q: &Rat) -> Result<Rat> {
    if t < 1 || r >= t {
        return Err(Error::Domain(format!("need 0 <= r < t, got r={r}, t={t}")));
    }
    let rp = if r == 0 { t } else { r };
    let num = Pow::pow(q, rp as i32) * (Rat::one() - q);
    let den = Rat::one() - Pow::pow(q, t as i32);
    Ok(num / den)
}

/// The three representations of F_S(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsForm {
    /// Enumeration over partitions with smallest part in S, weighted mu*_p.
    Smallest,
    /// Quotient of the largest-part-in-S partition count series by the full
    /// partition count series (both enumerated, then divided exactly).
    Quotient,
    /// Closed form (q;q)_inf sum_{n in S} q^n/(q;q)_n.
    EulerForm,
}

/// F_S(q) through `order` in the requested representation. The enumeration
/// forms allow order <= 60; the closed form allows order <= 200.
pub fn f_series(s: &SubsetSpec, order: usize, form: FsForm) -> Result<TruncatedSeries> {
    match form {
        FsForm::Smallest => weighted_series(&FilteredSum::new(
            PartitionFunctionDescriptor::mu_p_star(),
            PartFilter::SmallestIn(s.clone()),
            order,
        )),
        FsForm::Quotient => {
            let num = weighted_series(&FilteredSum::new(
                PartitionFunctionDescriptor::one(),
                PartFilter::LargestIn(s.clone()),
                order,
            ))?;
            let den = weighted_series(&FilteredSum::new(
                PartitionFunctionDescriptor::one(),
                PartFilter::All,
                order,
            ))?;
            num.div_unit(&den)
        }
        FsForm::EulerForm => {
            limits::check_closed_order(order)?;
            let flags = s.membership_flags(order);
            let mut acc = TruncatedSeries::zero(order);
            let mut inv_poch = TruncatedSeries::one(order);
            for n in 1..=order {
                inv_poch = inv_poch.div_one_minus(&Rat::one(), n);
                if flags[n] {
                    acc = acc.add(&inv_poch.shift_up(n));
                }
            }
            Ok(euler_product(order).mul(&acc))
        }
    }
}

/// The double sum -sum_{n in S} sum_{k>=1} (-1)^k q^{nk+k(k-1)/2}/(q;q)_{k-1},
/// an exact re-expansion of F_S(q) (not just asymptotically equal).
pub fn qgeneral_double_sum(s: &SubsetSpec, order: usize) -> Result<TruncatedSeries> {
    limits::check_closed_order(order)?;
    let flags = s.membership_flags(order);
    let mut acc = TruncatedSeries::zero(order);
    let mut inv_poch = TruncatedSeries::one(order); // 1/(q;q)_{k-1}
    let mut k = 1usize;
    loop {
        let tri = k * (k - 1) / 2;
        if k + tri > order {
            break;
        }
        for n in 1..=(order - tri) / k {
            if flags[n] {
                let shifted = inv_poch.shift_up(n * k + tri);
                // overall minus sign makes the k-odd layer positive
                acc = if k % 2 == 1 {
                    acc.add(&shifted)
                } else {
                    acc.sub(&shifted)
                };
            }
        }
        inv_poch = inv_poch.div_one_minus(&Rat::one(), k);
        k += 1;
    }
    Ok(acc)
}

/// sum_{n in S} q^n (q;q)_{n-1}, the closed form of the largest-part-in-S
/// series sum_{lg(lambda) in S} mu*_p(lambda) q^{|lambda|}.
pub fn largest_part_series(s: &SubsetSpec, order: usize) -> Result<TruncatedSeries> {
    limits::check_closed_order(order)?;
    let flags = s.membership_flags(order);
    let mut acc = TruncatedSeries::zero(order);
    let mut poch = TruncatedSeries::one(order); // (q;q)_{n-1}
    for n in 1..=order {
        if flags[n] {
            acc = acc.add(&poch.shift_up(n));
        }
        poch = poch.mul_one_minus(&Rat::one(), n);
    }
    Ok(acc)
}

/// Both sides of the general smallest-part density identity:
/// lhs = sum over smallest(lambda) in S of (mu_p*a)(lambda)/f(sm) q^{|lambda|}
/// by enumeration; rhs = (q;q)_inf sum_{n in S} tilde A_n(q) q^n/(f(n)(q;q)_n).
#[derive(Clone, Debug)]
pub struct TheoremPair {
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
}

pub fn theorem1_series(
    a: &PartitionFunctionDescriptor,
    f: &ArithFn,
    s: &SubsetSpec,
    order: usize,
) -> Result<TheoremPair> {
    limits::check_enum_order(order)?;
    let flags = s.membership_flags(order);
    for n in 1..=order {
        if flags[n] && f(n as u32).is_zero() {
            return Err(Error::DivisionByZero(format!(
                "f({n}) = 0 on a subset member"
            )));
        }
    }
    let mu_a = convolution(&PartitionFunctionDescriptor::mu_p(), a);
    let fc = f.clone();
    let weight = PartitionFunctionDescriptor::new(
        format!("({})/f(sm)", mu_a.name()),
        mu_a.value_at_empty() / fc(0),
        false,
        move |lam| mu_a.evaluate(lam) / fc(lam.smallest()),
    );
    let lhs = weighted_series(&FilteredSum::new(
        weight,
        PartFilter::SmallestIn(s.clone()),
        order,
    ))?;

    let mut acc = TruncatedSeries::zero(order);
    let mut inv_poch = TruncatedSeries::one(order);
    for n in 1..=order {
        inv_poch = inv_poch.div_one_minus(&Rat::one(), n);
        if !flags[n] {
            continue;
        }
        let tilde = a_series(a, n as u32, order)?.tilde;
        let term = tilde
            .shift_up(n)
            .mul(&inv_poch)
            .scalar_mul(&f(n as u32).recip());
        acc = acc.add(&term);
    }
    let rhs = euler_product(order).mul(&acc);
    Ok(TheoremPair { lhs, rhs })
}

/// -1/log(1-q) * sum_{n in S} q^n/n with a geometric tail bound.
/// Returns (value, bound).
pub fn log_density(s: &SubsetSpec, q: f64, tol: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    let scale = -(1.0 - q).ln();
    // tail sum_{n>N} q^n/n <= q^{N+1}/((N+1)(1-q))
    let n_max = geometric_cutoff(q, tol * scale * (1.0 - q));
    let flags = s.membership_flags(n_max);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut qn = 1.0f64;
    for n in 1..=n_max {
        qn *= q;
        if flags[n] {
            let y = qn / n as f64 - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    let bound = q.powi(n_max as i32 + 1) / ((n_max as f64 + 1.0) * (1.0 - q) * scale);
    Ok((sum / scale, bound))
}

/// log (q;q)_k for k = 0..=n_max.
pub(crate) fn log_pochhammer_prefixes(q: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.0);
    let mut acc = 0.0f64;
    let mut qk = 1.0f64;
    for _ in 1..=n_max {
        qk *= q;
        acc += (-qk).ln_1p();
        out.push(acc);
    }
    out
}

/// log (q;q)_inf with the geometric tail folded in.
pub(crate) fn log_qq_inf(q: f64) -> f64 {
    let mut acc = 0.0f64;
    let mut qk = 1.0f64;
    loop {
        qk *= q;
        if qk < 1e-18 {
            acc -= qk / (1.0 - q);
            break;
        }
        acc += (-qk).ln_1p();
    }
    acc
}

/// F_S(q) = (q;q)_inf sum_{n in S} q^n/(q;q)_n in doubles, in log space so
/// q near 1 cannot underflow. Terms are q^n (q^{n+1};q)_inf <= q^n, so the
/// tail is geometric. Returns (value, bound).
pub fn fs_eval_f64(s: &SubsetSpec, q: f64, tol: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    let n_max = geometric_cutoff(q, tol * (1.0 - q));
    let flags = s.membership_flags(n_max);
    let lqq = log_pochhammer_prefixes(q, n_max);
    let linf = log_qq_inf(q);
    let lnq = q.ln();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=n_max {
        if flags[n] {
            let term = (linf + n as f64 * lnq - lqq[n]).exp();
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    let bound = q.powi(n_max as i32 + 1) / (1.0 - q);
    Ok((sum, bound))
}

/// sum_{n in S} q^n (q;q)_{n-1} in doubles via log space; terms are at most
/// q^n so the tail is geometric. Returns (value, bound).
pub fn largest_eval_f64(s: &SubsetSpec, q: f64, tol: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    let n_max = geometric_cutoff(q, tol * (1.0 - q));
    let flags = s.membership_flags(n_max);
    let lqq = log_pochhammer_prefixes(q, n_max);
    let lnq = q.ln();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=n_max {
        if flags[n] {
            let term = (n as f64 * lnq + lqq[n - 1]).exp();
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    let bound = q.powi(n_max as i32 + 1) / (1.0 - q);
    Ok((sum, bound))
}

/// Which evaluator a density report runs.
#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    QDensity,
    Fs,
    Largest,
    Log,
    Example(ExampleId),
}

impl Formula {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "qdensity" => Ok(Self::QDensity),
            "fs" => Ok(Self::Fs),
            "largest" => Ok(Self::Largest),
            "log" => Ok(Self::Log),
            _ => {
                if let Some(rest) = s.strip_prefix("example:") {
                    Ok(Self::Example(ExampleId::parse(rest)?))
                } else {
                    Err(Error::Domain(format!(
                        "unknown formula '{s}' (expected qdensity|fs|largest|log|example:<id>)"
                    )))
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::QDensity => "qdensity".into(),
            Self::Fs => "fs".into(),
            Self::Largest => "largest".into(),
            Self::Log => "log".into(),
            Self::Example(id) => format!("example:{}", id.label()),
        }
    }
}

/// Per-q estimates of an arithmetic density along a grid approaching 1.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub subset: String,
    pub formula: String,
    pub q_points: Vec<f64>,
    pub estimates: Vec<f64>,
    pub tail_bounds: Vec<Option<f64>>,
    pub extrapolated: Option<f64>,
    pub target: Option<f64>,
    pub commensurate: bool,
}

/// Evaluates `formula` on the grid and optionally extrapolates in h = 1-q
/// (polynomial Richardson, degree <= 3, advisory only).
pub fn estimate_density(
    s: &SubsetSpec,
    formula: &Formula,
    q_grid: &[f64],
    extrapolate: bool,
    tol: f64,
) -> Result<DensityReport> {
    if q_grid.is_empty() {
        return Err(Error::Domain("empty q grid".into()));
    }
    if q_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("q grid must be strictly increasing".into()));
    }
    let mut estimates = Vec::with_capacity(q_grid.len());
    let mut tail_bounds = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        let (v, b) = match formula {
            Formula::QDensity => {
                let (v, b) = q_density(s, q, tol)?;
                (v, Some(b))
            }
            Formula::Fs => {
                let (v, b) = fs_eval_f64(s, q, tol)?;
                (v, Some(b))
            }
            Formula::Largest => {
                let (v, b) = largest_eval_f64(s, q, tol)?;
                (v, Some(b))
            }
            Formula::Log => {
                let (v, b) = log_density(s, q, tol)?;
                (v, Some(b))
            }
            Formula::Example(id) => example_estimate(id, s, q, tol)?,
        };
        estimates.push(v);
        tail_bounds.push(b);
    }
    let extrapolated = (extrapolate && q_grid.len() >= 2).then(|| {
        let h: Vec<f64> = q_grid.iter().map(|&q| 1.0 - q).collect();
        richardson_extrapolate(&h, &estimates, 3)
    });
    Ok(DensityReport {
        subset: s.label(),
        formula: formula.label(),
        q_points: q_grid.to_vec(),
        estimates: estimates.clone(),
        tail_bounds,
        extrapolated,
        target: s.known_density(),
        commensurate: s.is_commensurate(),
    })
}

/// The reference grid for the 2-free q-density table.
pub const TABLE2_Q: [f64; 12] = [
    0.90, 0.91, 0.92, 0.93, 0.94, 0.95, 0.96, 0.97, 0.98, 0.99, 0.999, 0.9999,
];

/// Reference values for the grid, 6 decimal places.
pub const TABLE2_REFERENCE: [f64; 12] = [
    0.739971, 0.729108, 0.717828, 0.706100, 0.693895, 0.681180, 0.667921, 0.654062, 0.639523,
    0.624215, 0.609613, 0.608069,
];

/// Fixed cutoff of the reference table's defining sum.
pub const TABLE2_CUTOFF: usize = 100_000;

/// The twelve (q, value) rows of the 2-free q-density reference table:
/// (1-q) (1 + sum over squarefree n <= 100000 of q^n).
///
/// The cutoff and the constant q^0 term are part of this table's
/// definition: at q = 0.9999 the omitted tail (about 2.8e-5) and the
/// constant term (1e-4) are both far above the 6-decimal rounding scale,
/// so reproducing the reference values requires reproducing the recipe.
/// For a tolerance-driven evaluation of the q-density itself use
/// [`q_density`], which excludes the constant term and bounds its tail.
pub fn table2_rows() -> Vec<(f64, f64)> {
    let flags = SubsetSpec::kfree(2)
        .expect("2 >= 2")
        .membership_flags(TABLE2_CUTOFF);
    TABLE2_Q
        .iter()
        .map(|&q| {
            let mut sum = 1.0f64; // the q^0 term
            let mut comp = 0.0f64;
            let mut qn = 1.0f64;
            for n in 1..=TABLE2_CUTOFF {
                qn *= q;
                if flags[n] {
                    let y = qn - comp;
                    let t = sum + y;
                    comp = (t - sum) - y;
                    sum = t;
                }
            }
            (q, (1.0 - q) * sum)
        })
        .collect()
}

/// Neville evaluation at h = 0 of the polynomial through the last
/// (degree+1) sample points (the points closest to q = 1).
pub fn richardson_extrapolate(h: &[f64], v: &[f64], degree: usize) -> f64 {
    assert_eq!(h.len(), v.len());
    assert!(!h.is_empty());
    let take = (degree + 1).min(h.len());
    let hs = &h[h.len() - take..];
    let mut tab: Vec<f64> = v[v.len() - take..].to_vec();
    for j in 1..take {
        for i in (j..take).rev() {
            tab[i] = (hs[i - j] * tab[i] - hs[i] * tab[i - 1]) / (hs[i - j] - hs[i]);
        }
    }
    tab[take - 1]
}
