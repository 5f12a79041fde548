//! Power-commutator presentations of finite p-groups.
//!
//! Generators `g_1, ..., g_n` (0-based in the API) satisfy `g_i^p = w_i`
//! with `w_i` a normal-form word in `g_{i+1}, ...`, and `[g_j, g_i] = c_ji`
//! for `j > i` with `c_ji` a normal-form word in `g_{j+1}, ...`. Commutators
//! follow `[x, y] = x^-1 y^-1 x y`, so collection rewrites
//! `g_j g_i -> g_i g_j [g_j, g_i]`.

pub(crate) mod collect;
pub(crate) mod consistency;
mod construct;
mod structure;
pub mod text;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::is_prime;
use crate::word::Word;
use collect::{Collector, Elem};

pub use consistency::{ConsistencyReport, TestWord, Violation};
pub use structure::{QuotientMap, Subgroup, DEFAULT_CAP};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PcError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("generator index {index} out of range for {n} generators")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("relation {relation}: {reason}")]
    BadRelation { relation: String, reason: String },
    #[error("presentation {0} is inconsistent")]
    Inconsistent(String),
    #[error("group of order {order} exceeds the brute-force cap {cap}")]
    CapacityExceeded { order: u128, cap: u64 },
    #[error("element does not belong to this presentation")]
    ForeignElement,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("identification invalid: {0}")]
    BadIdentification(String),
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A pc presentation. Immutable once built; cheap to clone.
#[derive(Clone)]
pub struct PcPresentation {
    name: Option<String>,
    p: u32,
    pow: Vec<Vec<u32>>,
    comm: Vec<Vec<Vec<u32>>>,
    id: u64,
    consistent: bool,
    collector: Arc<Collector>,
    factors: Option<Arc<(PcPresentation, PcPresentation)>>,
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcPresentation")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("n", &self.ngens())
            .field("consistent", &self.consistent)
            .finish()
    }
}

/// Element in normal form `g_1^e_1 ... g_n^e_n` with `0 <= e_i < p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PcElement {
    owner: u64,
    exps: Vec<u32>,
}

impl PcElement {
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent, or `n` for the identity.
    pub fn depth(&self) -> usize {
        self.exps.iter().position(|&e| e != 0).unwrap_or(self.exps.len())
    }
}

/// Relation right-hand side as `(generator, exponent)` pairs.
type Sparse = Vec<(usize, u32)>;

/// Incremental construction of a [`PcPresentation`].
#[derive(Clone, Debug)]
pub struct PcBuilder {
    name: Option<String>,
    p: u64,
    n: usize,
    pow: Vec<Sparse>,
    comm: Vec<((usize, usize), Sparse)>,
    factors: Option<Arc<(PcPresentation, PcPresentation)>>,
}

impl PcBuilder {
    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// `g_i^p = rhs`, with `rhs` given as `(generator, exponent)` pairs.
    pub fn pow(mut self, i: usize, rhs: &[(usize, u32)]) -> Self {
        if i < self.n {
            self.pow[i] = rhs.to_vec();
        } else {
            self.comm.push(((i, usize::MAX), rhs.to_vec()));
        }
        self
    }

    /// `[g_j, g_i] = rhs` for `j > i`.
    pub fn comm(mut self, j: usize, i: usize, rhs: &[(usize, u32)]) -> Self {
        self.comm.push(((j, i), rhs.to_vec()));
        self
    }

    pub(crate) fn factors(mut self, a: PcPresentation, b: PcPresentation) -> Self {
        self.factors = Some(Arc::new((a, b)));
        self
    }

    pub fn build(self) -> Result<PcPresentation, PcError> {
        if self.p > u32::MAX as u64 || !is_prime(self.p) {
            return Err(PcError::NotPrime(self.p));
        }
        let p = self.p as u32;
        let n = self.n;
        let dense = |rhs: &[(usize, u32)], above: usize, label: String| -> Result<Vec<u32>, PcError> {
            let mut v = vec![0u32; n];
            for &(g, e) in rhs {
                if g >= n {
                    return Err(PcError::GeneratorOutOfRange { index: g, n });
                }
                if g <= above {
                    return Err(PcError::BadRelation {
                        relation: label,
                        reason: format!("uses g{} but only generators above g{} are allowed", g + 1, above + 1),
                    });
                }
                if e >= p {
                    return Err(PcError::BadRelation {
                        relation: label,
                        reason: format!("exponent {e} outside [0, {p})"),
                    });
                }
                if v[g] != 0 {
                    return Err(PcError::BadRelation {
                        relation: label,
                        reason: format!("g{} repeated; right sides must be normal words", g + 1),
                    });
                }
                v[g] = e;
            }
            Ok(v)
        };
        let mut pow = Vec::with_capacity(n);
        for (i, rhs) in self.pow.iter().enumerate() {
            pow.push(dense(rhs, i, format!("pow {}", i + 1))?);
        }
        let mut comm: Vec<Vec<Vec<u32>>> = (0..n).map(|j| vec![vec![0; n]; j]).collect();
        for ((j, i), rhs) in &self.comm {
            if *i == usize::MAX {
                return Err(PcError::GeneratorOutOfRange { index: *j, n });
            }
            if *j >= n || *i >= n {
                return Err(PcError::GeneratorOutOfRange { index: (*j).max(*i), n });
            }
            if j <= i {
                return Err(PcError::BadRelation {
                    relation: format!("comm {} {}", j + 1, i + 1),
                    reason: "first index must exceed the second".into(),
                });
            }
            comm[*j][*i] = dense(rhs, *j, format!("comm {} {}", j + 1, i + 1))?;
        }
        Ok(PcPresentation::assemble(self.name, p, pow, comm, self.factors))
    }
}

impl PcPresentation {
    /// Starts a presentation with every relation trivial.
    pub fn builder(p: u64, n: usize) -> PcBuilder {
        PcBuilder {
            name: None,
            p,
            n,
            pow: vec![Vec::new(); n],
            comm: Vec::new(),
            factors: None,
        }
    }

    /// The trivial group over `p`.
    pub fn trivial(p: u64) -> Result<PcPresentation, PcError> {
        PcPresentation::builder(p, 0).name("1").build()
    }

    fn assemble(
        name: Option<String>,
        p: u32,
        pow: Vec<Vec<u32>>,
        comm: Vec<Vec<Vec<u32>>>,
        factors: Option<Arc<(PcPresentation, PcPresentation)>>,
    ) -> PcPresentation {
        let mut h = DefaultHasher::new();
        (p, &pow, &comm).hash(&mut h);
        let collector = Collector::new(p, &pow, &comm);
        let consistent = consistency::check(&collector).consistent;
        PcPresentation {
            name,
            p,
            pow,
            comm,
            id: h.finish(),
            consistent,
            collector: Arc::new(collector),
            factors,
        }
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("G")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ngens(&self) -> usize {
        self.pow.len()
    }

    /// Right side of `g_i^p` as a dense exponent vector.
    pub fn power_rhs(&self, i: usize) -> &[u32] {
        &self.pow[i]
    }

    /// Right side of `[g_j, g_i]`, `j > i`, as a dense exponent vector.
    pub fn comm_rhs(&self, j: usize, i: usize) -> &[u32] {
        &self.comm[j][i]
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Factors when this presentation was built as a direct product.
    pub fn direct_factors(&self) -> Option<(&PcPresentation, &PcPresentation)> {
        self.factors.as_deref().map(|(a, b)| (a, b))
    }

    /// Whether every commutator relation is trivial.
    pub fn is_abelian(&self) -> bool {
        self.comm.iter().flatten().all(|w| w.iter().all(|&e| e == 0))
    }

    pub fn consistency_check(&self) -> ConsistencyReport {
        consistency::check(&self.collector)
    }

    pub(crate) fn require_consistent(&self) -> Result<(), PcError> {
        if self.consistent {
            Ok(())
        } else {
            Err(PcError::Inconsistent(self.name().to_string()))
        }
    }

    /// `p^n`.
    pub fn order(&self) -> Result<u128, PcError> {
        self.require_consistent()?;
        Ok((self.p as u128).pow(self.ngens() as u32))
    }

    pub(crate) fn collector(&self) -> &Collector {
        &self.collector
    }

    pub(crate) fn wrap(&self, e: Elem) -> PcElement {
        PcElement {
            owner: self.id,
            exps: e.exps,
        }
    }

    pub(crate) fn unwrap_elem(&self, x: &PcElement) -> Result<Elem, PcError> {
        if x.owner != self.id {
            return Err(PcError::ForeignElement);
        }
        Ok(Elem {
            exps: x.exps.clone(),
            tail: Vec::new(),
        })
    }

    pub fn identity(&self) -> PcElement {
        self.wrap(self.collector.identity())
    }

    pub fn generator(&self, i: usize) -> Result<PcElement, PcError> {
        if i >= self.ngens() {
            return Err(PcError::GeneratorOutOfRange {
                index: i,
                n: self.ngens(),
            });
        }
        Ok(self.wrap(self.collector.generator(i)))
    }

    pub fn generators(&self) -> Vec<PcElement> {
        (0..self.ngens())
            .map(|i| self.wrap(self.collector.generator(i)))
            .collect()
    }

    /// Element with the given normal-form exponents.
    pub fn element(&self, exps: &[u32]) -> Result<PcElement, PcError> {
        if exps.len() != self.ngens() || exps.iter().any(|&e| e >= self.p) {
            return Err(PcError::BadRelation {
                relation: format!("{exps:?}"),
                reason: "not a normal-form exponent vector".into(),
            });
        }
        Ok(PcElement {
            owner: self.id,
            exps: exps.to_vec(),
        })
    }

    /// Normal form of a word over the pc generators.
    pub fn collect(&self, w: &Word) -> Result<PcElement, PcError> {
        if let Some(g) = w.max_generator() {
            if g >= self.ngens() {
                return Err(PcError::GeneratorOutOfRange {
                    index: g,
                    n: self.ngens(),
                });
            }
        }
        Ok(self.wrap(self.collector.collect_word(w)))
    }

    pub fn mul(&self, a: &PcElement, b: &PcElement) -> Result<PcElement, PcError> {
        let (a, b) = (self.unwrap_elem(a)?, self.unwrap_elem(b)?);
        Ok(self.wrap(self.collector.product(&a, &b)))
    }

    pub fn inverse(&self, a: &PcElement) -> Result<PcElement, PcError> {
        let a = self.unwrap_elem(a)?;
        Ok(self.wrap(self.collector.inverse(&a)))
    }

    pub fn pow(&self, a: &PcElement, e: i64) -> Result<PcElement, PcError> {
        let a = self.unwrap_elem(a)?;
        Ok(self.wrap(self.collector.power(&a, e)))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &PcElement, b: &PcElement) -> Result<PcElement, PcError> {
        let (ea, eb) = (self.unwrap_elem(a)?, self.unwrap_elem(b)?);
        let c = &self.collector;
        let mut st = c.product(&c.inverse(&ea), &c.inverse(&eb));
        c.mul_elem(&mut st, &ea);
        c.mul_elem(&mut st, &eb);
        Ok(self.wrap(st))
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: &PcElement, b: &PcElement) -> Result<PcElement, PcError> {
        let (ea, eb) = (self.unwrap_elem(a)?, self.unwrap_elem(b)?);
        let c = &self.collector;
        let mut st = c.inverse(&eb);
        c.mul_elem(&mut st, &ea);
        c.mul_elem(&mut st, &eb);
        Ok(self.wrap(st))
    }

    /// Order of an element (a power of `p`).
    pub fn element_order(&self, a: &PcElement) -> Result<u64, PcError> {
        let ea = self.unwrap_elem(a)?;
        let c = &self.collector;
        let mut st = ea.clone();
        let mut k = 1u64;
        while st.exps.iter().any(|&e| e != 0) {
            c.mul_elem(&mut st, &ea);
            k += 1;
        }
        Ok(k)
    }

    /// Mixed-radix index of an element; lexicographic in exponents.
    pub fn index_of(&self, a: &PcElement) -> usize {
        let p = self.p as usize;
        a.exps.iter().fold(0usize, |acc, &e| acc * p + e as usize)
    }

    pub fn element_at(&self, mut index: usize) -> PcElement {
        let p = self.p as usize;
        let n = self.ngens();
        let mut exps = vec![0u32; n];
        for k in (0..n).rev() {
            exps[k] = (index % p) as u32;
            index /= p;
        }
        PcElement { owner: self.id, exps }
    }

    /// Normal-form word of an element.
    pub fn word_of(&self, a: &PcElement) -> Word {
        Word(
            a.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(g, &e)| (g, e as i64))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PcSummary {
    pub name: String,
    pub prime: u32,
    pub ngens: usize,
    pub consistent: bool,
}

impl PcPresentation {
    pub fn summary(&self) -> PcSummary {
        PcSummary {
            name: self.name().to_string(),
            prime: self.p,
            ngens: self.ngens(),
            consistent: self.consistent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// D8 with two involutions: g1^2 = g2^2 = g3^2 = 1, [g2, g1] = g3.
    pub(crate) fn d8_involutions() -> PcPresentation {
        PcPresentation::builder(2, 3)
            .name("D8")
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap()
    }

    /// D8 as permutations of the square's vertices 0..4, composed left to
    /// right (apply the left factor first).
    fn perm_mul(a: &[usize; 4], b: &[usize; 4]) -> [usize; 4] {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = b[a[i]];
        }
        c
    }

    #[test]
    fn collect_matches_permutation_model() {
        let g = d8_involutions();
        // g1 = reflection fixing 0 and 2, g2 = reflection fixing nothing
        let s: [usize; 4] = [0, 3, 2, 1];
        let t: [usize; 4] = [1, 0, 3, 2];
        let st = perm_mul(&s, &t);
        let z = perm_mul(&perm_mul(&perm_mul(&t, &s), &t), &s); // [g2, g1]
        let x = g.collect(&Word(vec![(1, 1), (0, 1)])).unwrap();
        assert_eq!(x.exponents(), &[1, 1, 1]);
        // t*s equals s*t*z in the permutation model
        assert_eq!(perm_mul(&t, &s), perm_mul(&st, &z));
        assert!(g.collect(&Word::identity()).unwrap().is_identity());
    }

    #[test]
    fn cyclic_four_collection() {
        let z4 = PcPresentation::builder(2, 2).pow(0, &[(1, 1)]).build().unwrap();
        assert_eq!(z4.collect(&Word(vec![(0, 3)])).unwrap().exponents(), &[1, 1]);
        assert!(z4.collect(&Word(vec![(2, 1)])).is_err());
    }

    #[test]
    fn consistency_examples() {
        assert!(d8_involutions().consistency_check().consistent);
        let bad = PcPresentation::builder(2, 3)
            .pow(0, &[(1, 1)])
            .pow(1, &[(2, 1)])
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap();
        let report = bad.consistency_check();
        assert!(!report.consistent);
        assert!(report.violations.iter().any(|v| v.word == TestWord::PowerSelf { i: 0 }));
        assert!(matches!(bad.order(), Err(PcError::Inconsistent(_))));
        let empty = PcPresentation::trivial(2).unwrap();
        assert!(empty.consistency_check().consistent);
        assert_eq!(empty.order().unwrap(), 1);
    }

    #[test]
    fn exhaustive_associativity_oracle_agrees() {
        // an independent check of the D8 presentation: associativity of the
        // full multiplication table over all 8^3 triples
        let g = d8_involutions();
        let elems: Vec<_> = (0..8).map(|i| g.element_at(i)).collect();
        for a in &elems {
            for b in &elems {
                let ab = g.mul(a, b).unwrap();
                for c in &elems {
                    let lhs = g.mul(&ab, c).unwrap();
                    let rhs = g.mul(a, &g.mul(b, c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn structural_validation() {
        assert!(matches!(
            PcPresentation::builder(4, 1).build(),
            Err(PcError::NotPrime(4))
        ));
        assert!(PcPresentation::builder(2, 2).pow(1, &[(0, 1)]).build().is_err());
        assert!(PcPresentation::builder(3, 2).pow(0, &[(1, 3)]).build().is_err());
        assert!(PcPresentation::builder(3, 3).comm(1, 0, &[(1, 1)]).build().is_err());
        assert!(PcPresentation::builder(3, 2).comm(0, 1, &[]).build().is_err());
        assert!(PcPresentation::builder(3, 2).pow(5, &[]).build().is_err());
    }

    #[test]
    fn foreign_elements_rejected() {
        let a = d8_involutions();
        let b = PcPresentation::builder(2, 3).build().unwrap();
        let x = b.generator(0).unwrap();
        assert_eq!(a.mul(&x, &x), Err(PcError::ForeignElement));
    }

    #[test]
    fn inverse_and_order() {
        let g = d8_involutions();
        for x in (0..8).map(|i| g.element_at(i)) {
            let xi = g.inverse(&x).unwrap();
            assert!(g.mul(&x, &xi).unwrap().is_identity());
            let o = g.element_order(&x).unwrap();
            assert!(g.pow(&x, o as i64).unwrap().is_identity());
        }
    }
}
