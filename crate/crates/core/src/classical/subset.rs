//! Subsets of the positive integers: membership, bulk enumeration, known
//! densities, and the grammar used by the CLI (`ap:r,t`, `kfree:k`,
//! `union:...`, `list:...`).
//!
//! Membership always excludes 0, so the empty partition (whose smallest and
//! largest parts are 0 by convention) never passes a part filter.

use crate::error::{Error, Result};
use crate::fps::Rat;
use num::integer::lcm;
use num::BigInt;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

type PredicateFn = Arc<dyn Fn(u64) -> bool + Send + Sync>;

#[derive(Clone)]
enum Kind {
    /// {n >= 1 : n = residue (mod modulus)}, 0 <= residue < modulus.
    Ap { residue: u32, modulus: u32 },
    /// k-th power-free integers, k >= 2.
    KFree { k: u32 },
    /// Finite union of arithmetic progressions.
    Union { terms: Vec<(u32, u32)> },
    /// Explicit finite list (sorted, deduplicated, 0 removed).
    Explicit { members: Vec<u64> },
    /// Arbitrary membership test with an optionally declared density.
    Predicate {
        test: PredicateFn,
        density: Option<f64>,
        label: String,
    },
}

#[derive(Clone)]
pub struct SubsetSpec {
    kind: Kind,
}

impl SubsetSpec {
    /// Arithmetic progression {n >= 1 : n = r (mod t)}.
    pub fn ap(residue: u32, modulus: u32) -> Result<Self> {
        if modulus < 1 || residue >= modulus {
            return Err(Error::Domain(format!(
                "arithmetic progression needs 0 <= r < t, got r={residue}, t={modulus}"
            )));
        }
        Ok(Self {
            kind: Kind::Ap { residue, modulus },
        })
    }

    /// All positive integers.
    pub fn all() -> Self {
        Self::ap(0, 1).expect("0 < 1")
    }

    pub fn kfree(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("k-free needs k >= 2, got {k}")));
        }
        Ok(Self {
            kind: Kind::KFree { k },
        })
    }

    pub fn union_of_aps(terms: Vec<(u32, u32)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("empty union".into()));
        }
        for &(r, t) in &terms {
            if t < 1 || r >= t {
                return Err(Error::Domain(format!(
                    "arithmetic progression needs 0 <= r < t, got r={r}, t={t}"
                )));
            }
        }
        Ok(Self {
            kind: Kind::Union { terms },
        })
    }

    /// Explicit finite subset; zeros are dropped, duplicates collapsed.
    pub fn explicit(mut members: Vec<u64>) -> Self {
        members.retain(|&n| n > 0);
        members.sort_unstable();
        members.dedup();
        Self {
            kind: Kind::Explicit { members },
        }
    }

    /// The empty subset.
    pub fn empty() -> Self {
        Self::explicit(Vec::new())
    }

    pub fn predicate(
        label: impl Into<String>,
        density: Option<f64>,
        test: impl Fn(u64) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind: Kind::Predicate {
                test: Arc::new(test),
                density,
                label: label.into(),
            },
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match &self.kind {
            Kind::Ap { residue, modulus } => n % (*modulus as u64) == *residue as u64,
            Kind::KFree { k } => is_kfree(n, *k),
            Kind::Union { terms } => terms
                .iter()
                .any(|&(r, t)| n % (t as u64) == r as u64),
            Kind::Explicit { members } => members.binary_search(&n).is_ok(),
            Kind::Predicate { test, .. } => test(n),
        }
    }

    /// flags[n] = membership of n, for n = 0..=max (flags[0] is always false).
    pub fn membership_flags(&self, max: usize) -> Vec<bool> {
        let mut flags = vec![false; max + 1];
        match &self.kind {
            Kind::Ap { residue, modulus } => {
                let (r, t) = (*residue as usize, *modulus as usize);
                let start = if r == 0 { t } else { r };
                let mut n = start;
                while n <= max {
                    flags[n] = true;
                    n += t;
                }
            }
            Kind::Union { terms } => {
                for &(r, t) in terms {
                    let (r, t) = (r as usize, t as usize);
                    let start = if r == 0 { t } else { r };
                    let mut n = start;
                    while n <= max {
                        flags[n] = true;
                        n += t;
                    }
                }
            }
            Kind::KFree { k } => {
                for f in flags.iter_mut().skip(1) {
                    *f = true;
                }
                let k = *k;
                let mut p = 2usize;
                while let Some(pk) = p.checked_pow(k).filter(|&pk| pk <= max) {
                    // p prime test by trial division is cheap at ~max^(1/k)
                    if (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                        let mut m = pk;
                        while m <= max {
                            flags[m] = false;
                            m += pk;
                        }
                    }
                    p += 1;
                }
            }
            Kind::Explicit { members } => {
                for &m in members {
                    if (m as usize) <= max {
                        flags[m as usize] = true;
                    }
                }
            }
            Kind::Predicate { test, .. } => {
                for (n, f) in flags.iter_mut().enumerate().skip(1) {
                    *f = test(n as u64);
                }
            }
        }
        flags
    }

    pub fn members_up_to(&self, max: usize) -> Vec<u64> {
        self.membership_flags(max)
            .iter()
            .enumerate()
            .filter_map(|(n, &f)| f.then_some(n as u64))
            .collect()
    }

    /// Arithmetic density as a float, when known.
    pub fn known_density(&self) -> Option<f64> {
        match &self.kind {
            Kind::Ap { modulus, .. } => Some(1.0 / *modulus as f64),
            Kind::KFree { k } => Some(1.0 / zeta_f64(*k)),
            Kind::Union { .. } | Kind::Explicit { .. } => {
                self.exact_density().map(|d| rat_to_f64(&d))
            }
            Kind::Predicate { density, .. } => *density,
        }
    }

    /// Arithmetic density as an exact rational, when it is one.
    pub fn exact_density(&self) -> Option<Rat> {
        match &self.kind {
            Kind::Ap { modulus, .. } => {
                Some(Rat::new(BigInt::from(1), BigInt::from(*modulus)))
            }
            Kind::Union { terms } => {
                let period = terms
                    .iter()
                    .fold(1u64, |acc, &(_, t)| lcm(acc, t as u64));
                let count = (1..=period)
                    .filter(|&n| terms.iter().any(|&(r, t)| n % t as u64 == r as u64))
                    .count();
                Some(Rat::new(BigInt::from(count), BigInt::from(period)))
            }
            Kind::Explicit { .. } => Some(Rat::new(BigInt::from(0), BigInt::from(1))),
            _ => None,
        }
    }

    /// Whether the q -> 1 limit interchange is assumed valid for this subset.
    /// Progressions, their finite unions, k-free sets, and finite sets are
    /// marked; user predicates are not, and reports carry the caveat.
    pub fn is_commensurate(&self) -> bool {
        !matches!(self.kind, Kind::Predicate { .. })
    }

    pub fn label(&self) -> String {
        match &self.kind {
            Kind::Ap { residue, modulus } => format!("ap:{residue},{modulus}"),
            Kind::KFree { k } => format!("kfree:{k}"),
            Kind::Union { terms } => {
                let inner: Vec<String> =
                    terms.iter().map(|&(r, t)| format!("ap:{r},{t}")).collect();
                format!("union:{}", inner.join(";"))
            }
            Kind::Explicit { members } => {
                let inner: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                format!("list:{}", inner.join(","))
            }
            Kind::Predicate { label, .. } => label.clone(),
        }
    }
}

impl fmt::Debug for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetSpec({})", self.label())
    }
}

impl FromStr for SubsetSpec {
    type Err = Error;

    /// Grammar: `ap:r,t` | `kfree:k` | `union:ap:r1,t1;ap:r2,t2` | `list:n1,n2,...`
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Domain(format!("subset '{s}': {msg}"));
        if let Some(rest) = s.strip_prefix("ap:") {
            let (r, t) = parse_ap_pair(rest).ok_or_else(|| bad("expected ap:r,t"))?;
            SubsetSpec::ap(r, t)
        } else if let Some(rest) = s.strip_prefix("kfree:") {
            let k: u32 = rest.parse().map_err(|_| bad("expected kfree:k"))?;
            SubsetSpec::kfree(k)
        } else if let Some(rest) = s.strip_prefix("union:") {
            let mut terms = Vec::new();
            for piece in rest.split(';') {
                let ap = piece
                    .strip_prefix("ap:")
                    .and_then(parse_ap_pair)
                    .ok_or_else(|| bad("union members look like ap:r,t"))?;
                terms.push(ap);
            }
            SubsetSpec::union_of_aps(terms)
        } else if let Some(rest) = s.strip_prefix("list:") {
            if rest.is_empty() {
                return Ok(SubsetSpec::empty());
            }
            let mut members = Vec::new();
            for piece in rest.split(',') {
                members.push(piece.parse::<u64>().map_err(|_| bad("expected list:n1,n2,..."))?);
            }
            Ok(SubsetSpec::explicit(members))
        } else {
            Err(bad("expected ap:r,t | kfree:k | union:... | list:..."))
        }
    }
}

fn parse_ap_pair(s: &str) -> Option<(u32, u32)> {
    let (r, t) = s.split_once(',')?;
    Some((r.trim().parse().ok()?, t.trim().parse().ok()?))
}

/// k-free test by trial division; bulk queries use membership_flags instead.
pub fn is_kfree(n: u64, k: u32) -> bool {
    debug_assert!(k >= 2);
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut exp = 0u32;
            while m % d == 0 {
                m /= d;
                exp += 1;
            }
            if exp >= k {
                return false;
            }
        }
        d += 1;
    }
    true // the trailing prime has exponent 1
}

/// zeta(k) for integer k >= 2 by direct summation with an Euler-Maclaurin
/// tail correction; accurate to well below 1e-12 for the k used here.
pub fn zeta_f64(k: u32) -> f64 {
    let n0 = 2000u64;
    let mut s = 0.0;
    for n in (1..=n0).rev() {
        s += (n as f64).powi(-(k as i32));
    }
    let nf = n0 as f64;
    let k = k as f64;
    s + nf.powf(1.0 - k) / (k - 1.0) - 0.5 * nf.powf(-k) + k / 12.0 * nf.powf(-k - 1.0)
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ap_membership_and_density() {
        let odds = SubsetSpec::ap(1, 2).unwrap();
        assert!(odds.contains(1) && odds.contains(7));
        assert!(!odds.contains(4) && !odds.contains(0));
        assert_eq!(odds.known_density(), Some(0.5));
        let mult3 = SubsetSpec::ap(0, 3).unwrap();
        assert!(mult3.contains(3) && mult3.contains(9));
        assert!(!mult3.contains(0));
        assert_eq!(mult3.members_up_to(10), vec![3, 6, 9]);
        assert!(SubsetSpec::ap(2, 2).is_err());
        assert!(SubsetSpec::ap(0, 0).is_err());
    }

    #[test]
    fn kfree_membership() {
        let sf = SubsetSpec::kfree(2).unwrap();
        assert!(sf.contains(1) && sf.contains(2) && sf.contains(6) && sf.contains(10));
        assert!(!sf.contains(4) && !sf.contains(12) && !sf.contains(18) && !sf.contains(49));
        let cubefree = SubsetSpec::kfree(3).unwrap();
        assert!(cubefree.contains(4) && cubefree.contains(12));
        assert!(!cubefree.contains(8) && !cubefree.contains(24));
        // flags agree with trial division
        let flags = sf.membership_flags(2000);
        for n in 0..=2000u64 {
            assert_eq!(flags[n as usize], sf.contains(n), "n={n}");
        }
        assert!((sf.known_density().unwrap() - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn union_and_list() {
        let u: SubsetSpec = "union:ap:1,4;ap:2,4".parse().unwrap();
        assert!(u.contains(1) && u.contains(2) && u.contains(5) && u.contains(6));
        assert!(!u.contains(3) && !u.contains(4));
        assert_eq!(u.exact_density().unwrap(), Rat::new(1.into(), 2.into()));
        let l: SubsetSpec = "list:3,1,4,1,5".parse().unwrap();
        assert_eq!(l.members_up_to(10), vec![1, 3, 4, 5]);
        assert_eq!(l.exact_density().unwrap(), Rat::new(0.into(), 1.into()));
        assert!(l.is_commensurate());
    }

    #[test]
    fn parse_errors_and_labels() {
        assert!("ap:3".parse::<SubsetSpec>().is_err());
        assert!("kfree:1".parse::<SubsetSpec>().is_err());
        assert!("nonsense".parse::<SubsetSpec>().is_err());
        for label in ["ap:1,2", "kfree:2", "union:ap:1,4;ap:2,4", "list:1,3,4"] {
            let s: SubsetSpec = label.parse().unwrap();
            assert_eq!(s.label(), label);
        }
    }

    #[test]
    fn predicate_subsets_carry_caveat() {
        let s = SubsetSpec::predicate("evens-by-hand", Some(0.5), |n| n % 2 == 0);
        assert!(s.contains(4) && !s.contains(3) && !s.contains(0));
        assert!(!s.is_commensurate());
        assert_eq!(s.known_density(), Some(0.5));
    }

    #[test]
    fn zeta_reference_values() {
        assert!((zeta_f64(2) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        assert!((zeta_f64(4) - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-12);
    }
}
