//! Finite abelian groups described by invariant factors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Invariant factors `d1 | d2 | ... | dr`, each greater than one. The empty
/// list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants(Vec<u64>);

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants(Vec::new())
    }

    /// Normalizes an arbitrary list of cyclic orders `Z_{m1} + Z_{m2} + ...`
    /// into invariant-factor form. Zeros are rejected by the caller; ones
    /// are dropped.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        // prime -> exponents of the primary components
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for m in orders {
            assert!(m > 0, "cyclic factor of infinite order");
            for (q, e) in factorize(m) {
                primary.entry(q).or_default().push(e);
            }
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (q, mut exps) in primary {
            exps.sort_unstable();
            // largest exponents go to the last factors
            let offset = len - exps.len();
            for (k, e) in exps.into_iter().enumerate() {
                factors[offset + k] *= q.pow(e);
            }
        }
        factors.retain(|&d| d > 1);
        AbelianInvariants(factors)
    }

    /// Builds the invariants of an abelian group from the number of its
    /// elements of each order.
    pub fn from_element_order_counts(counts: &BTreeMap<u64, u64>) -> Self {
        let order: u64 = counts.values().sum();
        let mut cyclic = Vec::new();
        for (q, top) in factorize(order) {
            // f(k) = number of elements whose order divides q^k
            let torsion = |k: u32| -> u32 {
                let m = q.pow(k);
                let c: u64 = counts.iter().filter(|(&o, _)| m % o == 0).map(|(_, &c)| c).sum();
                ilog_exact(c, q).expect("torsion count is a prime power")
            };
            let mut prev = 0;
            let mut at_least = Vec::new();
            for k in 1..=top {
                let f = torsion(k);
                at_least.push(f - prev);
                prev = f;
            }
            // at_least[k-1] = number of cyclic q-factors with exponent >= k
            for k in 1..=top as usize {
                let ge_k = at_least[k - 1];
                let ge_next = at_least.get(k).copied().unwrap_or(0);
                for _ in 0..(ge_k - ge_next) {
                    cyclic.push(q.pow(k as u32));
                }
            }
        }
        Self::from_cyclic_orders(cyclic)
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.0.iter().map(|&d| d as u128).product()
    }

    /// `log_p` of the order, when every factor is a power of `p`.
    pub fn p_exponent(&self, p: u64) -> Option<u32> {
        self.0
            .iter()
            .try_fold(0u32, |acc, &d| ilog_exact(d, p).map(|e| acc + e))
    }

    /// Direct sum, renormalized.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        Self::from_cyclic_orders(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.0.last().copied().unwrap_or(1)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// `Some(e)` when `m == p^e`.
pub fn ilog_exact(mut m: u64, p: u64) -> Option<u32> {
    if m == 0 || p < 2 {
        return None;
    }
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some(e)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= m {
        if m.is_multiple_of(q) {
            let mut e = 0;
            while m.is_multiple_of(q) {
                m /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn is_prime(m: u64) -> bool {
    m >= 2 && factorize(m) == vec![(m, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_divisibility_chain() {
        let a = AbelianInvariants::from_cyclic_orders([4, 2, 3]);
        assert_eq!(a.factors(), &[2, 12]);
        let b = AbelianInvariants::from_cyclic_orders([1, 1]);
        assert!(b.is_trivial());
        let c = AbelianInvariants::from_cyclic_orders([2, 4, 2]);
        assert_eq!(c.factors(), &[2, 2, 4]);
        assert_eq!(c.p_exponent(2), Some(4));
        assert_eq!(a.p_exponent(2), None);
    }

    #[test]
    fn element_order_counts_recover_type() {
        // Z2 x Z4: orders 1:1, 2:3, 4:4
        let counts = BTreeMap::from([(1, 1), (2, 3), (4, 4)]);
        assert_eq!(AbelianInvariants::from_element_order_counts(&counts).factors(), &[2, 4]);
        // Z6: orders 1,2,3,3,6,6
        let counts = BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)]);
        assert_eq!(AbelianInvariants::from_element_order_counts(&counts).factors(), &[6]);
        let counts = BTreeMap::from([(1, 1)]);
        assert!(AbelianInvariants::from_element_order_counts(&counts).is_trivial());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(ilog_exact(81, 3), Some(4));
        assert_eq!(ilog_exact(1, 5), Some(0));
        assert_eq!(ilog_exact(12, 2), None);
    }
}
