//! Partition Dirichlet convolution, Moebius inversion, weighted partition
//! generating series, the q-bracket, and the auxiliary series A_n(q) that
//! classifies which density formula a weight produces.

use crate::classical::SubsetSpec;
use crate::error::{Error, Result};
use crate::fps::{euler_product, Rat, TruncatedSeries};
use crate::limits;
use crate::partitions::{
    enumerate_up_to, partitions_of_at_least, Partition, PartitionFunctionDescriptor,
};
use num::Zero;
use std::sync::Arc;

/// Arithmetic function on Z_{>=0} with exact rational values.
pub type ArithFn = Arc<dyn Fn(u32) -> Rat + Send + Sync>;

pub fn arith_fn(f: impl Fn(u32) -> Rat + Send + Sync + 'static) -> ArithFn {
    Arc::new(f)
}

/// (f*g)(lambda) = sum over subpartitions delta of f(delta) g(lambda/delta),
/// the sum including delta = empty and delta = lambda.
pub fn convolve(
    f: &PartitionFunctionDescriptor,
    g: &PartitionFunctionDescriptor,
    lambda: &Partition,
) -> Rat {
    let mut acc = Rat::zero();
    for delta in lambda.subpartitions() {
        let fv = f.evaluate(&delta);
        if fv.is_zero() {
            continue;
        }
        let rest = lambda.divide(&delta).expect("delta divides lambda");
        acc += fv * g.evaluate(&rest);
    }
    acc
}

/// Memoized descriptor for the convolution f*g.
pub fn convolution(
    f: &PartitionFunctionDescriptor,
    g: &PartitionFunctionDescriptor,
) -> PartitionFunctionDescriptor {
    let name = format!("({}*{})", f.name(), g.name());
    let at_empty = f.value_at_empty() * g.value_at_empty();
    let (fc, gc) = (f.clone(), g.clone());
    PartitionFunctionDescriptor::new(name, at_empty, false, move |lam| convolve(&fc, &gc, lam))
        .memoized()
}

/// Given the running sums A(lambda) = sum_{delta | lambda} a(delta), recover
/// a(lambda) = sum_{delta | lambda} A(delta) mu_p(lambda/delta).
pub fn mobius_invert(running: &PartitionFunctionDescriptor) -> PartitionFunctionDescriptor {
    convolution(running, &PartitionFunctionDescriptor::mu_p())
}

/// Summation shapes for weighted partition series.
#[derive(Clone, Debug)]
pub enum PartFilter {
    All,
    SmallestIn(SubsetSpec),
    SmallestEq(u32),
    SmallestAtLeast(u32),
    LargestIn(SubsetSpec),
}

/// A weighted, filtered partition sum truncated at `order`:
/// sum over lambda passing the filter of weight(lambda) q^{|lambda|}.
///
/// The empty partition has smallest = largest = 0, so it only ever passes
/// the `All` filter (subset membership excludes 0).
#[derive(Clone)]
pub struct FilteredSum {
    pub weight: PartitionFunctionDescriptor,
    pub filter: PartFilter,
    pub order: usize,
}

impl FilteredSum {
    pub fn new(weight: PartitionFunctionDescriptor, filter: PartFilter, order: usize) -> Self {
        Self {
            weight,
            filter,
            order,
        }
    }
}

/// Builds the series by enumeration; capped at the enumeration order guard.
pub fn weighted_series(fs: &FilteredSum) -> Result<TruncatedSeries> {
    limits::check_enum_order(fs.order)?;
    let order = fs.order;
    let mut coeffs = vec![Rat::zero(); order + 1];
    let add = |coeffs: &mut Vec<Rat>, lam: &Partition| {
        let w = fs.weight.evaluate(lam);
        if !w.is_zero() {
            coeffs[lam.size() as usize] += w;
        }
    };
    match &fs.filter {
        PartFilter::All => {
            for lam in enumerate_up_to(order as u32) {
                add(&mut coeffs, &lam);
            }
        }
        PartFilter::SmallestIn(s) => {
            for lam in enumerate_up_to(order as u32) {
                if s.contains(lam.smallest() as u64) {
                    add(&mut coeffs, &lam);
                }
            }
        }
        PartFilter::LargestIn(s) => {
            for lam in enumerate_up_to(order as u32) {
                if s.contains(lam.largest() as u64) {
                    add(&mut coeffs, &lam);
                }
            }
        }
        PartFilter::SmallestEq(n) => {
            let n = *n;
            if n == 0 || n as usize > order {
                return Ok(TruncatedSeries::from_coeffs(coeffs));
            }
            // lambda = gamma.(n) with gamma empty or smallest(gamma) >= n
            for gsize in 0..=(order - n as usize) as u32 {
                for gamma in partitions_of_at_least(gsize, n) {
                    add(&mut coeffs, &gamma.adjoin(n));
                }
            }
        }
        PartFilter::SmallestAtLeast(k) => {
            for m in 1..=order as u32 {
                for lam in partitions_of_at_least(m, *k) {
                    add(&mut coeffs, &lam);
                }
            }
        }
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// q-bracket of a weight: (q;q)_inf * sum_lambda a(lambda) q^{|lambda|}.
/// Equals the all-partitions series of mu_p * a.
pub fn q_bracket(a: &PartitionFunctionDescriptor, order: usize) -> Result<TruncatedSeries> {
    let sum = weighted_series(&FilteredSum::new(a.clone(), PartFilter::All, order))?;
    Ok(euler_product(order).mul(&sum))
}

/// The pair A_n(q), and its reduced form A_n(q) - a(empty).
#[derive(Clone, Debug)]
pub struct ASeries {
    pub a_n: TruncatedSeries,
    pub tilde: TruncatedSeries,
}

/// A_n(q) = a((n)) + sum over nonempty gamma with smallest(gamma) >= n of
/// [a(gamma.(n)) - a(gamma)] q^{|gamma|}.
///
/// The bound is non-strict for every weight, including weights that vanish
/// on repeated parts: dropping the smallest(gamma) = n layer loses the
/// -a(gamma) terms and breaks the smallest-part factorization (see the
/// mu_p case in the tests).
pub fn a_series(a: &PartitionFunctionDescriptor, n: u32, order: usize) -> Result<ASeries> {
    if n == 0 {
        return Err(Error::Domain("A_n(q) needs n >= 1".into()));
    }
    limits::check_enum_order(order)?;
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = a.evaluate(&Partition::single(n));
    for gsize in 1..=order {
        let mut acc = Rat::zero();
        for gamma in partitions_of_at_least(gsize as u32, n) {
            acc += a.evaluate(&gamma.adjoin(n)) - a.evaluate(&gamma);
        }
        coeffs[gsize] = acc;
    }
    let a_n = TruncatedSeries::from_coeffs(coeffs);
    let tilde = a_n.sub(&TruncatedSeries::constant(a.value_at_empty().clone(), order));
    Ok(ASeries { a_n, tilde })
}

/// b(lambda) = sum over subpartitions delta of
/// (mu_p*a)(delta) g(smallest(delta)) / f(smallest(delta)).
///
/// f(0) enters through the empty subpartition (smallest 0) and must be
/// nonzero; b(empty) = a(empty) g(0)/f(0). Evaluation panics if f vanishes
/// at a smallest part it actually meets.
pub fn b_descriptor(
    a: &PartitionFunctionDescriptor,
    f: ArithFn,
    g: ArithFn,
) -> Result<PartitionFunctionDescriptor> {
    let f0 = f(0);
    if f0.is_zero() {
        return Err(Error::DivisionByZero(
            "f(0) = 0 in the b-weight (smallest part of the empty partition)".into(),
        ));
    }
    let mu_a = convolution(&PartitionFunctionDescriptor::mu_p(), a);
    let at_empty = mu_a.value_at_empty() * g(0) / f0;
    let name = format!("b[{}]", a.name());
    Ok(PartitionFunctionDescriptor::new(
        name,
        at_empty,
        false,
        move |lam| {
            let mut acc = Rat::zero();
            for delta in lam.subpartitions() {
                let w = mu_a.evaluate(&delta);
                if w.is_zero() {
                    continue;
                }
                let sm = delta.smallest();
                let fv = f(sm);
                assert!(!fv.is_zero(), "b-weight ratio undefined: f({sm}) = 0");
                acc += w * g(sm) / fv;
            }
            acc
        },
    )
    .memoized())
}

/// B_n(q) built from the b-weight exactly as A_n(q) is built from a.
pub fn b_series(
    a: &PartitionFunctionDescriptor,
    f: ArithFn,
    g: ArithFn,
    n: u32,
    order: usize,
) -> Result<ASeries> {
    let b = b_descriptor(a, f, g)?;
    a_series(&b, n, order)
}

/// Product form of sum over smallest(lambda) = n of (a*b)(lambda) q^{|lambda|}:
///
/// (sum_{sm=n} a)(b(empty) + sum_{sm>=n} b)
///   + (a(empty) + sum_{sm>n} a)(sum_{sm=n} b).
///
/// A split lambda = delta.delta' is generated by the first term when delta
/// holds at least one copy of n and by the second when it holds none, so the
/// asymmetric bounds (non-strict in the first term, strict in the second)
/// count every split exactly once whatever the weights.
pub fn smallest_part_product_split(
    a: &PartitionFunctionDescriptor,
    b: &PartitionFunctionDescriptor,
    n: u32,
    order: usize,
) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::Domain("smallest-part split needs n >= 1".into()));
    }
    limits::check_enum_order(order)?;
    let series = |w: &PartitionFunctionDescriptor, filter: PartFilter| {
        weighted_series(&FilteredSum::new(w.clone(), filter, order))
    };
    let a_eq = series(a, PartFilter::SmallestEq(n))?;
    let b_eq = series(b, PartFilter::SmallestEq(n))?;
    let b_ge = series(b, PartFilter::SmallestAtLeast(n))?
        .add(&TruncatedSeries::constant(b.value_at_empty().clone(), order));
    let a_gt = series(a, PartFilter::SmallestAtLeast(n + 1))?
        .add(&TruncatedSeries::constant(a.value_at_empty().clone(), order));
    Ok(a_eq.mul(&b_ge).add(&a_gt.mul(&b_eq)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::{pochhammer, rat, ratio};
    use num::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn builtin_weights() -> Vec<PartitionFunctionDescriptor> {
        vec![
            PartitionFunctionDescriptor::mu_p(),
            PartitionFunctionDescriptor::length(),
            PartitionFunctionDescriptor::size(),
            PartitionFunctionDescriptor::z_pow_length(rat(2)).unwrap(),
            PartitionFunctionDescriptor::one(),
        ]
    }

    #[test]
    fn convolution_hand_values() {
        let mu = PartitionFunctionDescriptor::mu_p();
        let ell = PartitionFunctionDescriptor::length();
        assert_eq!(convolve(&mu, &ell, &p(&[2, 1])), rat(0));
        assert_eq!(convolve(&mu, &ell, &p(&[3])), rat(1));
        assert_eq!(convolve(&mu, &ell, &p(&[1, 1, 1])), rat(1));
        // (f*g)(empty) = f(empty) g(empty)
        let phi = PartitionFunctionDescriptor::phi_p();
        assert_eq!(convolve(&phi, &ell, &Partition::empty()), rat(0));
        assert_eq!(convolve(&phi, &phi, &Partition::empty()), rat(1));
        // (z^l * z^-l)((1)) = z + 1/z
        let z = PartitionFunctionDescriptor::z_pow_length(rat(2)).unwrap();
        let zi = PartitionFunctionDescriptor::z_pow_length(ratio(1, 2)).unwrap();
        assert_eq!(convolve(&z, &zi, &p(&[1])), ratio(5, 2));
    }

    #[test]
    fn convolution_commutes() {
        let ell = PartitionFunctionDescriptor::length();
        let sz = PartitionFunctionDescriptor::size();
        for lam in enumerate_up_to(9) {
            assert_eq!(convolve(&ell, &sz, &lam), convolve(&sz, &ell, &lam));
        }
    }

    #[test]
    fn mobius_inversion_recovers_phi() {
        // running sums of phi_p are the norm, so inverting norm gives phi_p
        let norm = PartitionFunctionDescriptor::norm();
        let inverted = mobius_invert(&norm);
        for lam in enumerate_up_to(10) {
            assert_eq!(inverted.evaluate(&lam), lam.phi_p(), "{lam:?}");
        }
    }

    #[test]
    fn mobius_inversion_edge_weights() {
        // running sums = indicator of empty inverts to mu_p itself
        let e = PartitionFunctionDescriptor::indicator_empty();
        let inv = mobius_invert(&e);
        for lam in enumerate_up_to(10) {
            assert_eq!(inv.evaluate(&lam), rat(lam.mu_p() as i64));
        }
        // running sums = 1 inverts to the indicator of empty
        let one = PartitionFunctionDescriptor::one();
        let inv1 = mobius_invert(&one);
        for lam in enumerate_up_to(10) {
            assert_eq!(inv1.evaluate(&lam), rat(lam.is_empty() as i64));
        }
    }

    #[test]
    fn mobius_inversion_roundtrip() {
        // a -> running sums -> invert recovers a, for every weight here
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
            for lam in enumerate_up_to(12) {
                assert_eq!(recovered.evaluate(&lam), a.evaluate(&lam), "{lam:?}");
            }
        }
    }

    #[test]
    fn weighted_series_mu_star_examples() {
        // all smallest parts: 1 - (q;q)_inf = q + q^2 - q^5 - q^7
        let fs = FilteredSum::new(
            PartitionFunctionDescriptor::mu_p_star(),
            PartFilter::SmallestIn(SubsetSpec::all()),
            7,
        );
        assert_eq!(
            weighted_series(&fs).unwrap(),
            TruncatedSeries::from_ints(&[0, 1, 1, 0, 0, -1, 0, -1])
        );
        // odd smallest parts through q^5
        let fs = FilteredSum::new(
            PartitionFunctionDescriptor::mu_p_star(),
            PartFilter::SmallestIn(SubsetSpec::ap(1, 2).unwrap()),
            5,
        );
        assert_eq!(
            weighted_series(&fs).unwrap(),
            TruncatedSeries::from_ints(&[0, 1, 0, 0, -1, 0])
        );
        // weight 1 over everything counts partitions
        let fs = FilteredSum::new(PartitionFunctionDescriptor::one(), PartFilter::All, 3);
        assert_eq!(
            weighted_series(&fs).unwrap(),
            TruncatedSeries::from_ints(&[1, 1, 2, 3])
        );
    }

    #[test]
    fn weighted_series_filter_consistency() {
        // smallest-eq filters partition the smallest-in filter
        let ell = PartitionFunctionDescriptor::length();
        let order = 14;
        let odds = SubsetSpec::ap(1, 2).unwrap();
        let via_in = weighted_series(&FilteredSum::new(
            ell.clone(),
            PartFilter::SmallestIn(odds),
            order,
        ))
        .unwrap();
        let mut acc = TruncatedSeries::zero(order);
        for n in (1..=order as u32).step_by(2) {
            acc = acc.add(
                &weighted_series(&FilteredSum::new(
                    ell.clone(),
                    PartFilter::SmallestEq(n),
                    order,
                ))
                .unwrap(),
            );
        }
        assert_eq!(via_in, acc);
        // smallest-at-least n = sum of smallest-eq over k >= n
        let via_ge = weighted_series(&FilteredSum::new(
            ell.clone(),
            PartFilter::SmallestAtLeast(3),
            order,
        ))
        .unwrap();
        let mut acc = TruncatedSeries::zero(order);
        for n in 3..=order as u32 {
            acc = acc.add(
                &weighted_series(&FilteredSum::new(
                    ell.clone(),
                    PartFilter::SmallestEq(n),
                    order,
                ))
                .unwrap(),
            );
        }
        assert_eq!(via_ge, acc);
    }

    #[test]
    fn order_guard_enforced() {
        let fs = FilteredSum::new(PartitionFunctionDescriptor::one(), PartFilter::All, 61);
        assert!(matches!(
            weighted_series(&fs),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn q_bracket_values() {
        // <indicator of empty> = (q;q)_inf
        let e = PartitionFunctionDescriptor::indicator_empty();
        assert_eq!(q_bracket(&e, 12).unwrap(), euler_product(12));
        // <1> = 1
        let one = PartitionFunctionDescriptor::one();
        assert_eq!(q_bracket(&one, 12).unwrap(), TruncatedSeries::one(12));
        // <length> via the oracle: q + 2q^2 + 2q^3
        let ell = PartitionFunctionDescriptor::length();
        let got = q_bracket(&ell, 3).unwrap();
        assert_eq!(got, TruncatedSeries::from_ints(&[0, 1, 2, 2]));
    }

    #[test]
    fn q_bracket_is_mu_convolution_series() {
        let order = 16;
        for a in builtin_weights() {
            let bracket = q_bracket(&a, order).unwrap();
            let conv = convolution(&PartitionFunctionDescriptor::mu_p(), &a);
            let series = weighted_series(&FilteredSum::new(conv, PartFilter::All, order)).unwrap();
            assert_eq!(bracket, series, "weight {}", a.name());
        }
    }

    #[test]
    fn a_series_closed_forms() {
        let order = 25;
        for n in 1..=5u32 {
            // a = indicator of empty: A_n = 0
            let e = PartitionFunctionDescriptor::indicator_empty();
            assert!(a_series(&e, n, order).unwrap().a_n.is_zero());
            // a = length: tilde A_n = 1/(q^n;q)_inf
            let ell = PartitionFunctionDescriptor::length();
            let want = TruncatedSeries::one(order)
                .div_unit(&pochhammer(&Rat::one(), n as usize, None, order).unwrap())
                .unwrap();
            assert_eq!(a_series(&ell, n, order).unwrap().tilde, want);
            // a = size: tilde A_n = n/(q^n;q)_inf
            let sz = PartitionFunctionDescriptor::size();
            assert_eq!(
                a_series(&sz, n, order).unwrap().tilde,
                want.scalar_mul(&rat(n as i64))
            );
        }
        assert!(a_series(&PartitionFunctionDescriptor::length(), 0, 5).is_err());
    }

    #[test]
    fn smallest_part_split_counts_each_pair_once() {
        // exact for every weight pair, including pairs where neither weight
        // vanishes on repeated parts
        let order = 18;
        let weights = builtin_weights();
        for a in &weights {
            for b in &weights {
                let conv = convolution(a, b);
                for n in 1..=3u32 {
                    let lhs = weighted_series(&FilteredSum::new(
                        conv.clone(),
                        PartFilter::SmallestEq(n),
                        order,
                    ))
                    .unwrap();
                    let rhs = smallest_part_product_split(a, b, n, order).unwrap();
                    assert_eq!(lhs, rhs, "a={}, b={}, n={n}", a.name(), b.name());
                }
            }
        }
    }

    #[test]
    fn symmetric_split_overcounts_repeated_smallest_parts() {
        // the two-term product with non-strict bounds on both sides counts
        // the split ((1),(1)) of (1,1) twice: (ell*sz)((1,1)) = 1, but the
        // symmetric form yields 1 + ell((1))sz((1)) = 2 at q^2
        let ell = PartitionFunctionDescriptor::length();
        let sz = PartitionFunctionDescriptor::size();
        assert_eq!(convolve(&ell, &sz, &p(&[1, 1])), rat(1));
        let order = 6;
        let series = |w: &PartitionFunctionDescriptor, f: PartFilter| {
            weighted_series(&FilteredSum::new(w.clone(), f, order)).unwrap()
        };
        let a_eq = series(&ell, PartFilter::SmallestEq(1));
        let b_eq = series(&sz, PartFilter::SmallestEq(1));
        let a_ge = series(&ell, PartFilter::SmallestAtLeast(1));
        let b_ge = series(&sz, PartFilter::SmallestAtLeast(1));
        let symmetric = a_eq.mul(&b_ge).add(&a_ge.mul(&b_eq));
        assert_eq!(*symmetric.coeff(2), rat(2));
        let conv = convolution(&ell, &sz);
        let lhs =
            weighted_series(&FilteredSum::new(conv, PartFilter::SmallestEq(1), order)).unwrap();
        assert_eq!(*lhs.coeff(2), rat(1));
    }

    #[test]
    fn a_series_strict_bound_would_break_mu_case() {
        // with the non-strict bound, the smallest-part factorization holds
        // for a = mu_p; the strict variant loses the -a(gamma) layer
        let order = 12;
        let mu = PartitionFunctionDescriptor::mu_p();
        let n = 1u32;
        let tilde = a_series(&mu, n, order).unwrap().tilde;
        let lhs = weighted_series(&FilteredSum::new(
            convolution(&mu, &mu),
            PartFilter::SmallestEq(n),
            order,
        ))
        .unwrap();
        let rhs = tilde
            .shift_up(n as usize)
            .mul(&pochhammer(&Rat::one(), n as usize + 1, None, order).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn b_descriptor_contracts() {
        let a = PartitionFunctionDescriptor::length();
        // f = g = 1 on indicator-of-empty reduces to the divisor sum of mu_p
        let e = PartitionFunctionDescriptor::indicator_empty();
        let b = b_descriptor(&e, arith_fn(|_| Rat::one()), arith_fn(|_| Rat::one())).unwrap();
        for lam in enumerate_up_to(10) {
            assert_eq!(b.evaluate(&lam), rat(lam.is_empty() as i64), "{lam:?}");
        }
        // b(empty) = g(0)/f(0) when a(empty) = 1
        let b2 = b_descriptor(
            &PartitionFunctionDescriptor::one(),
            arith_fn(|_| rat(2)),
            arith_fn(|_| rat(3)),
        )
        .unwrap();
        assert_eq!(*b2.value_at_empty(), ratio(3, 2));
        // f(0) = 0 is rejected
        assert!(b_descriptor(&a, arith_fn(|n| rat(n as i64)), arith_fn(|_| Rat::one())).is_err());
    }

    #[test]
    fn b_weight_ratio_identity() {
        // (mu_p*a)(lambda) g(sm)/f(sm) = (mu_p*b)(lambda) on all small lambda
        let triples: Vec<(PartitionFunctionDescriptor, ArithFn, ArithFn)> = vec![
            (
                PartitionFunctionDescriptor::length(),
                arith_fn(|n| rat(n as i64 + 1)),
                arith_fn(|_| Rat::one()),
            ),
            (
                PartitionFunctionDescriptor::size(),
                arith_fn(|n| rat(2 * n as i64 - 7)),
                arith_fn(|n| rat(n as i64 - 3)),
            ),
            (
                PartitionFunctionDescriptor::z_pow_length(rat(2)).unwrap(),
                arith_fn(|n| ratio(n as i64 + 2, 3)),
                arith_fn(|n| rat(n as i64 + 5)),
            ),
        ];
        let mu = PartitionFunctionDescriptor::mu_p();
        for (a, f, g) in triples {
            let mu_a = convolution(&mu, &a);
            let b = b_descriptor(&a, f.clone(), g.clone()).unwrap();
            let mu_b = convolution(&mu, &b);
            for lam in enumerate_up_to(12) {
                let sm = lam.smallest();
                let lhs = mu_a.evaluate(&lam) * g(sm) / f(sm);
                assert_eq!(lhs, mu_b.evaluate(&lam), "a={}, {lam:?}", a.name());
            }
        }
    }
}
