//! Isomorphism-invariant summaries of finite groups.
//!
//! A fingerprint is not a certificate: distinct groups may share one. It is
//! used to compare realizations of the same group (pc, permutation, table)
//! and to separate the catalog entries from each other.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianInvariants;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u128,
    pub exponent: u64,
    pub abelian_invariants: AbelianInvariants,
    pub derived_order: u128,
    pub center_order: u128,
    /// Conjugacy class size -> number of classes of that size.
    pub class_sizes: BTreeMap<u64, u64>,
    /// Element order -> number of elements of that order.
    pub element_orders: BTreeMap<u64, u64>,
}

/// A finite group whose elements are the indices `0..size()`.
pub trait IndexedGroup {
    fn size(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;
}

/// Element-order multiset.
pub fn element_orders<G: IndexedGroup + ?Sized>(g: &G) -> BTreeMap<u64, u64> {
    let e = g.identity();
    let mut out = BTreeMap::new();
    for x in 0..g.size() {
        let mut y = x;
        let mut k = 1u64;
        while y != e {
            y = g.mul(y, x);
            k += 1;
        }
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

/// Class sizes by orbit enumeration under conjugation by the generators.
pub fn class_sizes<G: IndexedGroup + ?Sized>(g: &G) -> BTreeMap<u64, u64> {
    let gens: Vec<(usize, usize)> = g.generators().into_iter().map(|s| (s, g.inv(s))).collect();
    let mut seen = vec![false; g.size()];
    let mut out = BTreeMap::new();
    for start in 0..g.size() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut size = 0u64;
        while let Some(x) = queue.pop_front() {
            size += 1;
            for &(s, si) in &gens {
                let y = g.mul(g.mul(si, x), s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        *out.entry(size).or_insert(0) += 1;
    }
    out
}

/// Elements commuting with every generator.
pub fn center_elements<G: IndexedGroup + ?Sized>(g: &G) -> Vec<usize> {
    let gens = g.generators();
    (0..g.size())
        .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect()
}

/// Subgroup generated by `seeds`, or its normal closure when `normal` is
/// set. Returns a membership mask.
pub fn closure<G: IndexedGroup + ?Sized>(g: &G, seeds: &[usize], normal: bool) -> Vec<bool> {
    let mut seeds: Vec<usize> = seeds.to_vec();
    if normal {
        // close the seed set under conjugation first
        let gens = g.generators();
        let mut seen = vec![false; g.size()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in &seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        seeds.clear();
        while let Some(x) = queue.pop_front() {
            seeds.push(x);
            for &s in &gens {
                let y = g.mul(g.mul(g.inv(s), x), s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    // right multiplication by seeds from the identity reaches every product
    // of seeds, which in a finite group is the generated subgroup
    let mut member = vec![false; g.size()];
    member[g.identity()] = true;
    let mut queue: VecDeque<usize> = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in &seeds {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                queue.push_back(y);
            }
        }
    }
    member
}

/// Derived subgroup as a membership mask.
pub fn derived_mask<G: IndexedGroup + ?Sized>(g: &G) -> Vec<bool> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            comms.push(c);
        }
    }
    closure(g, &comms, true)
}

/// Invariants of `G/N` for a normal subgroup given as a mask, read from the
/// element orders of the quotient.
pub fn quotient_abelian_invariants<G: IndexedGroup + ?Sized>(g: &G, normal: &[bool]) -> AbelianInvariants {
    let nsub: Vec<usize> = (0..g.size()).filter(|&x| normal[x]).collect();
    let mut coset_of = vec![usize::MAX; g.size()];
    let mut counts = BTreeMap::new();
    for x in 0..g.size() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &n in &nsub {
            coset_of[g.mul(x, n)] = x;
        }
        let mut y = x;
        let mut k = 1u64;
        while !normal[y] {
            y = g.mul(y, x);
            k += 1;
        }
        *counts.entry(k).or_insert(0) += 1;
    }
    AbelianInvariants::from_element_order_counts(&counts)
}

/// Every field by brute force.
pub fn brute_force_fingerprint<G: IndexedGroup + ?Sized>(g: &G) -> Fingerprint {
    let element_orders = element_orders(g);
    let derived = derived_mask(g);
    Fingerprint {
        order: g.size() as u128,
        exponent: element_orders.keys().copied().fold(1, lcm),
        abelian_invariants: quotient_abelian_invariants(g, &derived),
        derived_order: derived.iter().filter(|&&b| b).count() as u128,
        center_order: center_elements(g).len() as u128,
        class_sizes: class_sizes(g),
        element_orders,
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    use num_integer::Integer;
    a.lcm(&b)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Z_m written additively.
    pub(crate) struct Cyclic(pub usize);

    impl IndexedGroup for Cyclic {
        fn size(&self) -> usize {
            self.0
        }
        fn identity(&self) -> usize {
            0
        }
        fn mul(&self, a: usize, b: usize) -> usize {
            (a + b) % self.0
        }
        fn inv(&self, a: usize) -> usize {
            (self.0 - a) % self.0
        }
        fn generators(&self) -> Vec<usize> {
            if self.0 > 1 {
                vec![1]
            } else {
                vec![]
            }
        }
    }

    /// Symmetric group on three points, elements listed as permutations.
    struct S3(Vec<[usize; 3]>);

    impl S3 {
        fn new() -> Self {
            let mut v = Vec::new();
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        if a != b && b != c && a != c {
                            v.push([a, b, c]);
                        }
                    }
                }
            }
            S3(v)
        }
        fn find(&self, p: [usize; 3]) -> usize {
            self.0.iter().position(|&q| q == p).unwrap()
        }
    }

    impl IndexedGroup for S3 {
        fn size(&self) -> usize {
            6
        }
        fn identity(&self) -> usize {
            self.find([0, 1, 2])
        }
        fn mul(&self, a: usize, b: usize) -> usize {
            let (x, y) = (self.0[a], self.0[b]);
            self.find([y[x[0]], y[x[1]], y[x[2]]])
        }
        fn inv(&self, a: usize) -> usize {
            let x = self.0[a];
            let mut y = [0; 3];
            for i in 0..3 {
                y[x[i]] = i;
            }
            self.find(y)
        }
        fn generators(&self) -> Vec<usize> {
            vec![self.find([1, 0, 2]), self.find([1, 2, 0])]
        }
    }

    #[test]
    fn cyclic_fingerprint() {
        let f = brute_force_fingerprint(&Cyclic(12));
        assert_eq!(f.exponent, 12);
        assert_eq!(f.abelian_invariants.factors(), &[12]);
        assert_eq!(f.derived_order, 1);
        assert_eq!(f.center_order, 12);
        assert_eq!(f.class_sizes, BTreeMap::from([(1, 12)]));
        let trivial = brute_force_fingerprint(&Cyclic(1));
        assert_eq!(trivial.order, 1);
        assert!(trivial.abelian_invariants.is_trivial());
    }

    #[test]
    fn symmetric_group_fingerprint() {
        let f = brute_force_fingerprint(&S3::new());
        assert_eq!(f.derived_order, 3);
        assert_eq!(f.center_order, 1);
        assert_eq!(f.abelian_invariants.factors(), &[2]);
        assert_eq!(f.class_sizes, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
        assert_eq!(f.element_orders, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        assert_eq!(f.exponent, 6);
    }
}
