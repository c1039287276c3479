//! Integer partitions: values, enumeration, the subpartition lattice, and the
//! partition statistics used by the density formulas.
//!
//! A partition is a finite non-increasing sequence of positive integers, with
//! the empty partition allowed. Subpartitions are sub-multisets of the parts;
//! `delta | lambda` holds when every part of delta appears in lambda with at
//! least the same multiplicity. Division removes parts with multiplicity.

use crate::error::{Error, Result};
use crate::fps::{rat, Rat};
use num::traits::Pow;
use num::{BigInt, One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    // non-increasing, every entry >= 1
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Partition of n with a single part.
    pub fn single(n: u32) -> Self {
        assert!(n >= 1, "parts are positive");
        Self { parts: vec![n] }
    }

    /// Canonicalizes (sorts non-increasing). Panics on zero parts.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts are positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Sum of parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Smallest part; 0 for the empty partition by convention.
    pub fn smallest(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    /// Largest part; 0 for the empty partition by convention.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Product of parts; 1 for the empty partition (empty product).
    pub fn norm(&self) -> BigInt {
        self.parts
            .iter()
            .fold(BigInt::one(), |acc, &p| acc * BigInt::from(p))
    }

    /// Sum of r-th powers of the parts; length at r = 0, size at r = 1.
    pub fn sz_r(&self, r: u32) -> BigInt {
        self.parts
            .iter()
            .map(|&p| BigInt::from(p).pow(r))
            .sum::<BigInt>()
    }

    pub fn has_repeated_parts(&self) -> bool {
        self.parts.windows(2).any(|w| w[0] == w[1])
    }

    /// Partition Moebius function: 0 with any repeated part, else (-1)^length.
    pub fn mu_p(&self) -> i32 {
        if self.has_repeated_parts() {
            0
        } else if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Partition totient: norm * prod over distinct parts k of (1 - 1/k).
    pub fn phi_p(&self) -> Rat {
        let mut acc = Rat::from_integer(self.norm());
        let mut prev = 0u32;
        for &p in &self.parts {
            if p != prev {
                acc *= Rat::one() - Rat::new(BigInt::one(), BigInt::from(p));
                prev = p;
            }
        }
        acc
    }

    /// z^length for a nonzero rational z.
    pub fn z_pow_length(&self, z: &Rat) -> Result<Rat> {
        if z.is_zero() {
            return Err(Error::Domain("z = 0 in z^length".into()));
        }
        Ok(Pow::pow(z, self.length() as i32))
    }

    /// Distinct parts with multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Multiset union, re-sorted.
    pub fn concat(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Adjoin a single part.
    pub fn adjoin(&self, part: u32) -> Self {
        self.concat(&Self::single(part))
    }

    pub fn divides(&self, lambda: &Self) -> bool {
        let mut i = 0;
        for &p in &lambda.parts {
            if i == self.parts.len() {
                return true;
            }
            if self.parts[i] == p {
                i += 1;
            }
        }
        i == self.parts.len()
    }

    /// Removes delta's parts from self, counting multiplicity.
    pub fn divide(&self, delta: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut i = 0;
        for &p in &self.parts {
            if i < delta.parts.len() && delta.parts[i] == p {
                i += 1;
            } else {
                out.push(p);
            }
        }
        if i != delta.parts.len() {
            return Err(Error::NotASubpartition);
        }
        Ok(Self { parts: out })
    }

    /// All subpartitions, including the empty partition and self.
    /// Count is the product of (multiplicity + 1) over distinct parts.
    pub fn subpartitions(&self) -> Subpartitions {
        Subpartitions::new(self)
    }

    /// Conjugate (transpose of the Young diagram).
    pub fn conjugate(&self) -> Self {
        let lg = self.largest() as usize;
        let mut parts = Vec::with_capacity(lg);
        for j in 1..=lg {
            parts.push(self.parts.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Self { parts }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Odometer over part multiplicities.
pub struct Subpartitions {
    mults: Vec<(u32, u32)>,
    counters: Vec<u32>,
    done: bool,
}

impl Subpartitions {
    fn new(lambda: &Partition) -> Self {
        let mults = lambda.multiplicities();
        let counters = vec![0; mults.len()];
        Self {
            mults,
            counters,
            done: false,
        }
    }
}

impl Iterator for Subpartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let mut parts = Vec::new();
        for (i, &(p, _)) in self.mults.iter().enumerate() {
            for _ in 0..self.counters[i] {
                parts.push(p);
            }
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == self.counters.len() {
                self.done = true;
                break;
            }
            if self.counters[i] < self.mults[i].1 {
                self.counters[i] += 1;
                break;
            }
            self.counters[i] = 0;
            i += 1;
        }
        Some(Partition { parts })
    }
}

struct Frame {
    remaining: u32,
    cap: u32,
    next: u32,
}

/// Streams the partitions of one fixed size with all parts >= `min_part`,
/// in ascending lexicographic order of the non-increasing representation.
///
/// DFS over the leading (largest) part: a frame picks the next part k with
/// min_part <= k <= min(remaining, cap) in ascending order, then recurses on
/// remaining - k with cap k, so the emitted parts are non-increasing.
pub struct PartitionStream {
    min_part: u32,
    stack: Vec<Frame>,
    parts: Vec<u32>,
}

impl PartitionStream {
    fn new(n: u32, min_part: u32) -> Self {
        let min = min_part.max(1);
        Self {
            min_part: min,
            stack: vec![Frame {
                remaining: n,
                cap: n,
                next: min,
            }],
            parts: Vec::new(),
        }
    }
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let top = self.stack.last_mut()?;
            if top.remaining == 0 {
                let parts = self.parts.clone();
                self.stack.pop();
                if !self.stack.is_empty() {
                    self.parts.pop();
                }
                return Some(Partition { parts });
            }
            let limit = top.remaining.min(top.cap);
            if top.next > limit {
                // exhausted (or a dead end with 0 < remaining < min_part)
                self.stack.pop();
                if !self.stack.is_empty() {
                    self.parts.pop();
                }
                continue;
            }
            let k = top.next;
            top.next += 1;
            let rem = top.remaining - k;
            self.parts.push(k);
            self.stack.push(Frame {
                remaining: rem,
                cap: k,
                next: self.min_part,
            });
        }
    }
}

/// Partitions of exactly `n` (ascending lex; `n = 0` yields only the empty one).
pub fn partitions_of(n: u32) -> PartitionStream {
    partitions_of_at_least(n, 1)
}

/// Partitions of exactly `n` with every part >= `min_part`.
pub fn partitions_of_at_least(n: u32, min_part: u32) -> PartitionStream {
    PartitionStream::new(n, min_part)
}

/// Every partition of every size 0..=max_size, size-ascending.
pub fn enumerate_up_to(max_size: u32) -> impl Iterator<Item = Partition> {
    (0..=max_size).flat_map(partitions_of)
}

/// Partition counts p(0..=max) by the pentagonal recurrence; serves as the
/// independent oracle for enumeration totals and for 1/(q;q)_inf coefficients.
pub fn partition_counts(max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); max + 1];
    p[0] = BigInt::one();
    for n in 1..=max {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > n {
                break;
            }
            let sign = k % 2 == 1;
            let mut term = BigInt::zero();
            term += &p[n - g1];
            if g2 <= n {
                term += &p[n - g2];
            }
            if sign {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        p[n] = acc;
    }
    p
}

type EvalFn = Arc<dyn Fn(&Partition) -> Rat + Send + Sync>;

/// An evaluable partition weight a(lambda) with declared metadata.
///
/// `vanishes_on_repeats` is a declared property, not detected from the
/// evaluator (impossible for a black box); the test suite spot-checks it.
#[derive(Clone)]
pub struct PartitionFunctionDescriptor {
    name: String,
    value_at_empty: Rat,
    vanishes_on_repeats: bool,
    eval: EvalFn,
    memo: Option<Arc<Mutex<HashMap<Partition, Rat>>>>,
}

impl PartitionFunctionDescriptor {
    pub fn new(
        name: impl Into<String>,
        value_at_empty: Rat,
        vanishes_on_repeats: bool,
        eval: impl Fn(&Partition) -> Rat + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            value_at_empty,
            vanishes_on_repeats,
            eval: Arc::new(eval),
            memo: None,
        }
    }

    /// Cache evaluations keyed by canonical partition. Pure functions only;
    /// the table is shared across clones and safe for concurrent use.
    pub fn memoized(mut self) -> Self {
        self.memo = Some(Arc::new(Mutex::new(HashMap::new())));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value_at_empty(&self) -> &Rat {
        &self.value_at_empty
    }

    pub fn vanishes_on_repeats(&self) -> bool {
        self.vanishes_on_repeats
    }

    pub fn evaluate(&self, lambda: &Partition) -> Rat {
        if lambda.is_empty() {
            return self.value_at_empty.clone();
        }
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.lock().unwrap().get(lambda) {
                return v.clone();
            }
            let v = (self.eval)(lambda);
            memo.lock()
                .unwrap()
                .insert(lambda.clone(), v.clone());
            return v;
        }
        (self.eval)(lambda)
    }

    /// Indicator of the empty partition.
    pub fn indicator_empty() -> Self {
        Self::new("indicator_empty", rat(1), true, |_| Rat::zero())
    }

    /// Constant weight 1.
    pub fn one() -> Self {
        Self::new("one", rat(1), false, |_| Rat::one())
    }

    pub fn length() -> Self {
        Self::new("length", rat(0), false, |l| rat(l.length() as i64))
    }

    pub fn size() -> Self {
        Self::new("size", rat(0), false, |l| rat(l.size() as i64))
    }

    pub fn sz_r(r: u32) -> Self {
        Self::new(format!("sz_{r}"), rat(0), false, move |l| {
            Rat::from_integer(l.sz_r(r))
        })
    }

    pub fn norm() -> Self {
        Self::new("norm", rat(1), false, |l| Rat::from_integer(l.norm()))
    }

    pub fn mu_p() -> Self {
        Self::new("mu_p", rat(1), true, |l| rat(l.mu_p() as i64))
    }

    /// mu*_p = -mu_p, the sign convention that removes minus signs from the
    /// density formulas.
    pub fn mu_p_star() -> Self {
        Self::new("mu_p_star", rat(-1), true, |l| rat(-l.mu_p() as i64))
    }

    pub fn phi_p() -> Self {
        Self::new("phi_p", rat(1), false, |l| l.phi_p())
    }

    pub fn z_pow_length(z: Rat) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::Domain("z = 0 in z^length".into()));
        }
        Ok(Self::new(format!("{z}^length"), rat(1), false, move |l| {
            l.z_pow_length(&z).expect("z is nonzero")
        }))
    }
}

impl fmt::Debug for PartitionFunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartitionFunctionDescriptor")
            .field("name", &self.name)
            .field("vanishes_on_repeats", &self.vanishes_on_repeats)
            .finish()
    }
}
