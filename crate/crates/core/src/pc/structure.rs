//! Subgroups, quotients and brute-force invariants of pc groups.
//!
//! A subgroup is stored by an induced pcgs: at most one element per depth,
//! each with leading exponent one. Closure under `p`-th powers and
//! commutators of the table entries makes the table a pcgs of the subgroup,
//! so its order is `p^len` and membership is a sift.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;

use super::collect::Elem;
use super::{PcElement, PcError, PcPresentation};
use crate::abelian::AbelianInvariants;
use crate::fingerprint::{class_sizes, Fingerprint, IndexedGroup};
use crate::zlinalg::{cokernel_invariants, SparseIntMatrix};

/// Default bound on element enumeration.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Subgroup {
    owner: u64,
    /// Induced pcgs indexed by depth.
    table: Vec<Option<Vec<u32>>>,
    generators: Vec<PcElement>,
}

impl Subgroup {
    pub fn order_exponent(&self) -> u32 {
        self.table.iter().flatten().count() as u32
    }

    /// Order as `p^k`; the prime comes from the owning presentation.
    pub fn order(&self, g: &PcPresentation) -> u128 {
        (g.prime() as u128).pow(self.order_exponent())
    }

    /// Generators the subgroup was built from.
    pub fn generators(&self) -> &[PcElement] {
        &self.generators
    }

    /// Induced pcgs in increasing depth.
    pub fn induced_pcgs(&self) -> Vec<PcElement> {
        self.table
            .iter()
            .flatten()
            .map(|e| PcElement {
                owner: self.owner,
                exps: e.clone(),
            })
            .collect()
    }

    /// Depths occupied by the induced pcgs.
    pub fn depths(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&d| self.table[d].is_some()).collect()
    }

    pub fn contains(&self, g: &PcPresentation, x: &PcElement) -> Result<bool, PcError> {
        let e = g.unwrap_elem(x)?;
        Ok(g.sift(&self.table, e).exps.iter().all(|&v| v == 0))
    }

    /// Every element, as a sorted list of mixed-radix indices.
    pub fn element_indices(&self, g: &PcPresentation, cap: u64) -> Result<Vec<usize>, PcError> {
        let order = self.order(g);
        if order > cap as u128 {
            return Err(PcError::CapacityExceeded { order, cap });
        }
        let c = g.collector();
        let mut elems = vec![c.identity()];
        // products s_1^e_1 ... s_k^e_k, built from the deepest entry up
        for t in self.table.iter().rev().flatten() {
            let t = Elem {
                exps: t.clone(),
                tail: Vec::new(),
            };
            let mut next = Vec::with_capacity(elems.len() * g.prime() as usize);
            let mut power = c.identity();
            for _ in 0..g.prime() {
                for x in &elems {
                    next.push(c.product(&power, x));
                }
                c.mul_elem(&mut power, &t);
            }
            elems = next;
        }
        let mut idx: Vec<usize> = elems.into_iter().map(|e| g.index_of(&g.wrap(e))).collect();
        idx.sort_unstable();
        Ok(idx)
    }

    /// Exponents of `x` with respect to the induced pcgs; `None` if `x` is
    /// not a member.
    pub fn coordinates(&self, g: &PcPresentation, x: &PcElement) -> Result<Option<Vec<u32>>, PcError> {
        let mut e = g.unwrap_elem(x)?;
        let c = g.collector();
        let mut out = Vec::new();
        for (d, t) in self.table.iter().enumerate() {
            let Some(t) = t else { continue };
            let k = e.exps[d];
            out.push(k);
            if k != 0 {
                let t = Elem {
                    exps: t.clone(),
                    tail: Vec::new(),
                };
                e = c.product(&c.power(&t, -(k as i64)), &e);
            }
        }
        Ok(e.exps.iter().all(|&v| v == 0).then_some(out))
    }
}

/// The natural map onto `G/N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: PcPresentation,
    kernel: Vec<Option<Vec<u32>>>,
    kept: Vec<usize>,
    target: PcPresentation,
}

impl QuotientMap {
    pub fn target(&self) -> &PcPresentation {
        &self.target
    }

    /// Source generators that survive as the target's pc generators.
    pub fn kept_generators(&self) -> &[usize] {
        &self.kept
    }

    pub fn image(&self, x: &PcElement) -> Result<PcElement, PcError> {
        let e = self.source.unwrap_elem(x)?;
        let r = self.source.canonical_rep(&self.kernel, e);
        let exps: Vec<u32> = self.kept.iter().map(|&d| r.exps[d]).collect();
        self.target.element(&exps)
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&b| (a as u64 * b as u64) % p as u64 == 1)
        .expect("nonzero residue")
}

impl PcPresentation {
    fn sift(&self, table: &[Option<Vec<u32>>], mut x: Elem) -> Elem {
        let c = self.collector();
        for (d, entry) in table.iter().enumerate().take(self.ngens()) {
            let k = x.exps[d];
            if k == 0 {
                continue;
            }
            match entry {
                Some(t) => {
                    let t = Elem {
                        exps: t.clone(),
                        tail: Vec::new(),
                    };
                    x = c.product(&c.power(&t, -(k as i64)), &x);
                }
                None => return x,
            }
        }
        x
    }

    /// Sifts `x`; a nontrivial remainder becomes a new table entry.
    fn sift_insert(&self, table: &mut [Option<Vec<u32>>], x: Elem, queue: &mut VecDeque<usize>) {
        let r = self.sift(table, x);
        let d = match r.exps.iter().position(|&v| v != 0) {
            Some(d) => d,
            None => return,
        };
        let k = inv_mod(r.exps[d], self.prime());
        let r = self.collector().power(&r, k as i64);
        table[d] = Some(r.exps);
        queue.push_back(d);
    }

    fn close(&self, seeds: Vec<Elem>, normal: bool) -> Vec<Option<Vec<u32>>> {
        let c = self.collector();
        let n = self.ngens();
        let mut table = vec![None; n];
        let mut queue = VecDeque::new();
        for s in seeds {
            self.sift_insert(&mut table, s, &mut queue);
        }
        let comm = |a: &Elem, b: &Elem| {
            let mut st = c.product(&c.inverse(a), &c.inverse(b));
            c.mul_elem(&mut st, a);
            c.mul_elem(&mut st, b);
            st
        };
        while let Some(d) = queue.pop_front() {
            let y = Elem {
                exps: table[d].clone().expect("queued entries exist"),
                tail: Vec::new(),
            };
            let mut fresh = vec![c.power(&y, self.prime() as i64)];
            for z in table.iter().flatten() {
                let z = Elem {
                    exps: z.clone(),
                    tail: Vec::new(),
                };
                fresh.push(comm(&y, &z));
            }
            if normal {
                for i in 0..n {
                    fresh.push(comm(&y, &c.generator(i)));
                }
            }
            for x in fresh {
                self.sift_insert(&mut table, x, &mut queue);
            }
        }
        table
    }

    fn make_subgroup(&self, gens: &[PcElement], normal: bool) -> Result<Subgroup, PcError> {
        self.require_consistent()?;
        let seeds = gens
            .iter()
            .map(|x| self.unwrap_elem(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subgroup {
            owner: self.id,
            table: self.close(seeds, normal),
            generators: gens.to_vec(),
        })
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[PcElement]) -> Result<Subgroup, PcError> {
        self.make_subgroup(gens, false)
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, gens: &[PcElement]) -> Result<Subgroup, PcError> {
        self.make_subgroup(gens, true)
    }

    pub fn whole_group(&self) -> Result<Subgroup, PcError> {
        self.subgroup(&self.generators())
    }

    pub fn is_normal(&self, h: &Subgroup) -> Result<bool, PcError> {
        self.require_consistent()?;
        for t in h.induced_pcgs() {
            for g in self.generators() {
                if !h.contains(self, &self.conjugate(&t, &g)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_cap(&self, cap: u64) -> Result<u128, PcError> {
        let order = self.order()?;
        if order > cap as u128 {
            return Err(PcError::CapacityExceeded { order, cap });
        }
        Ok(order)
    }

    fn central_indices(&self, cap: u64) -> Result<Vec<usize>, PcError> {
        let order = self.check_cap(cap)? as usize;
        let gens = self.generators();
        let mut out = Vec::new();
        for i in 0..order {
            let x = self.element_at(i);
            let mut central = true;
            for g in &gens {
                if self.mul(&x, g)? != self.mul(g, &x)? {
                    central = false;
                    break;
                }
            }
            if central {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The center, found by testing every element against the generators.
    pub fn center(&self, cap: u64) -> Result<Subgroup, PcError> {
        let elems: Vec<PcElement> = self
            .central_indices(cap)?
            .into_iter()
            .map(|i| self.element_at(i))
            .collect();
        let mut sub = self.subgroup(&elems)?;
        // keep only a generating set rather than every central element
        sub.generators = sub.induced_pcgs();
        Ok(sub)
    }

    /// Normal closure of the commutators of the pc generators.
    pub fn derived_subgroup(&self) -> Result<Subgroup, PcError> {
        let gens = self.generators();
        let mut comms = Vec::new();
        for j in 0..gens.len() {
            for i in 0..j {
                comms.push(self.commutator(&gens[j], &gens[i])?);
            }
        }
        self.normal_closure(&comms)
    }

    /// Invariants of `G/G'` from the relation matrix of the abelianized
    /// presentation.
    pub fn abelianization(&self) -> Result<AbelianInvariants, PcError> {
        self.require_consistent()?;
        let n = self.ngens();
        let p = self.prime() as i64;
        let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
        let mut row = 0;
        for i in 0..n {
            triplets.push((row, i, BigInt::from(p)));
            for (k, &e) in self.power_rhs(i).iter().enumerate() {
                if e != 0 {
                    triplets.push((row, k, BigInt::from(-(e as i64))));
                }
            }
            row += 1;
        }
        for j in 0..n {
            for i in 0..j {
                for (k, &e) in self.comm_rhs(j, i).iter().enumerate() {
                    if e != 0 {
                        triplets.push((row, k, BigInt::from(e)));
                    }
                }
                row += 1;
            }
        }
        let m = SparseIntMatrix::from_triplets(row, n, triplets).expect("indices in range");
        let (free, inv) = cokernel_invariants(&m).expect("small matrix");
        debug_assert_eq!(free, 0, "finite group has finite abelianization");
        Ok(inv)
    }

    /// Largest element order.
    pub fn exponent(&self, cap: u64) -> Result<u64, PcError> {
        let order = self.check_cap(cap)? as usize;
        let mut best = 1;
        for i in 0..order {
            best = best.max(self.element_order(&self.element_at(i))?);
        }
        Ok(best)
    }

    /// Order of `x` by repeated `p`-th powers.
    fn fast_order(&self, x: &Elem) -> u64 {
        let c = self.collector();
        let mut y = x.clone();
        let mut k = 1u64;
        while y.exps.iter().any(|&v| v != 0) {
            y = c.power(&y, self.prime() as i64);
            k *= self.prime() as u64;
        }
        k
    }

    /// Coset representative with zero exponents at the kernel's depths.
    fn canonical_rep(&self, kernel: &[Option<Vec<u32>>], mut x: Elem) -> Elem {
        let c = self.collector();
        for (d, t) in kernel.iter().enumerate() {
            let Some(t) = t else { continue };
            let k = x.exps[d];
            if k != 0 {
                let t = Elem {
                    exps: t.clone(),
                    tail: Vec::new(),
                };
                c.mul_elem(&mut x, &c.power(&t, -(k as i64)));
            }
        }
        x
    }

    /// `G/N` for a normal subgroup `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientMap, PcError> {
        if n.owner != self.id {
            return Err(PcError::ForeignElement);
        }
        if !self.is_normal(n)? {
            return Err(PcError::NotNormal);
        }
        let c = self.collector();
        let kept: Vec<usize> = (0..self.ngens()).filter(|&d| n.table[d].is_none()).collect();
        let slot: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(k, &d)| (d, k)).collect();
        let project = |e: Elem| -> Vec<(usize, u32)> {
            let r = self.canonical_rep(&n.table, e);
            kept.iter()
                .filter(|&&d| r.exps[d] != 0)
                .map(|&d| (slot[&d], r.exps[d]))
                .collect()
        };
        let mut b = PcPresentation::builder(self.prime() as u64, kept.len()).name(format!("{}/N", self.name()));
        for (k, &d) in kept.iter().enumerate() {
            b = b.pow(k, &project(c.power_relation(d)));
            for (l, &e) in kept.iter().enumerate().take(k) {
                let mut st = c.generator(d);
                c.mul_gen(&mut st, e);
                // g_d g_e = g_e g_d [g_d, g_e]; read the commutator off
                let lhs = c.product(&c.inverse(&c.product(&c.generator(e), &c.generator(d))), &st);
                b = b.comm(k, l, &project(lhs));
            }
        }
        let target = b.build()?;
        debug_assert!(target.is_consistent());
        Ok(QuotientMap {
            source: self.clone(),
            kernel: n.table.clone(),
            kept,
            target,
        })
    }

    /// Pc presentation of a subgroup on its induced pcgs.
    pub fn subgroup_presentation(&self, h: &Subgroup) -> Result<PcPresentation, PcError> {
        if h.owner != self.id {
            return Err(PcError::ForeignElement);
        }
        let pcgs = h.induced_pcgs();
        let express = |x: &PcElement| -> Result<Vec<(usize, u32)>, PcError> {
            let coords = h.coordinates(self, x)?.expect("closed under powers and commutators");
            Ok(coords.into_iter().enumerate().filter(|&(_, e)| e != 0).collect())
        };
        let mut b = PcPresentation::builder(self.prime() as u64, pcgs.len()).name(format!("sub({})", self.name()));
        for (k, s) in pcgs.iter().enumerate() {
            b = b.pow(k, &express(&self.pow(s, self.prime() as i64)?)?);
            for (l, t) in pcgs.iter().enumerate().take(k) {
                b = b.comm(k, l, &express(&self.commutator(s, t)?)?);
            }
        }
        b.build()
    }

    /// Isomorphism-invariant summary. Abelianization and derived subgroup
    /// are computed from the presentation; the remaining fields enumerate.
    pub fn fingerprint(&self, cap: u64) -> Result<Fingerprint, PcError> {
        let order = self.check_cap(cap)?;
        let mut element_orders = BTreeMap::new();
        for i in 0..order as usize {
            let x = self.unwrap_elem(&self.element_at(i))?;
            *element_orders.entry(self.fast_order(&x)).or_insert(0) += 1;
        }
        Ok(Fingerprint {
            order,
            exponent: element_orders.keys().copied().max().unwrap_or(1),
            abelian_invariants: self.abelianization()?,
            derived_order: self.derived_subgroup()?.order(self),
            center_order: self.central_indices(cap)?.len() as u128,
            class_sizes: class_sizes(&IndexedPc(self)),
            element_orders,
        })
    }
}

/// Elements addressed by mixed-radix index.
pub(crate) struct IndexedPc<'a>(pub &'a PcPresentation);

impl IndexedGroup for IndexedPc<'_> {
    fn size(&self) -> usize {
        (self.0.prime() as usize).pow(self.0.ngens() as u32)
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let g = self.0;
        g.index_of(&g.mul(&g.element_at(a), &g.element_at(b)).expect("own elements"))
    }
    fn inv(&self, a: usize) -> usize {
        let g = self.0;
        g.index_of(&g.inverse(&g.element_at(a)).expect("own elements"))
    }
    fn generators(&self) -> Vec<usize> {
        (0..self.0.ngens())
            .map(|i| self.0.index_of(&self.0.generator(i).expect("in range")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::brute_force_fingerprint;

    fn d8() -> PcPresentation {
        PcPresentation::builder(2, 3)
            .name("D8")
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap()
    }

    fn q8() -> PcPresentation {
        PcPresentation::builder(2, 3)
            .name("Q8")
            .pow(0, &[(2, 1)])
            .pow(1, &[(2, 1)])
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap()
    }

    /// Extraspecial of order p^3 and exponent p.
    fn e1(p: u64) -> PcPresentation {
        PcPresentation::builder(p, 3).comm(1, 0, &[(2, 1)]).build().unwrap()
    }

    fn e2(p: u64) -> PcPresentation {
        PcPresentation::builder(p, 3)
            .pow(0, &[(2, 1)])
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap()
    }

    /// D16 on s, r, r^2, r^4.
    fn d16() -> PcPresentation {
        PcPresentation::builder(2, 4)
            .pow(1, &[(2, 1)])
            .pow(2, &[(3, 1)])
            .comm(1, 0, &[(2, 1), (3, 1)])
            .comm(2, 0, &[(3, 1)])
            .build()
            .unwrap()
    }

    #[test]
    fn basic_subgroup_orders() {
        assert!(d16().is_consistent());
        assert_eq!(e1(3).center(DEFAULT_CAP).unwrap().order(&e1(3)), 3);
        assert_eq!(d16().center(DEFAULT_CAP).unwrap().order(&d16()), 2);
        assert_eq!(q8().derived_subgroup().unwrap().order(&q8()), 2);
        assert_eq!(q8().abelianization().unwrap().factors(), &[2, 2]);
        assert_eq!(e2(3).exponent(DEFAULT_CAP).unwrap(), 9);
        assert_eq!(d16().exponent(DEFAULT_CAP).unwrap(), 8);
        let z4 = PcPresentation::builder(2, 2).pow(0, &[(1, 1)]).build().unwrap();
        assert_eq!(z4.abelianization().unwrap().factors(), &[4]);
        assert_eq!(z4.center(DEFAULT_CAP).unwrap().order(&z4), 4);
        assert_eq!(z4.derived_subgroup().unwrap().order(&z4), 1);
    }

    #[test]
    fn pc_fingerprint_matches_brute_force() {
        for g in [d8(), q8(), e1(3), e2(3), d16()] {
            let fast = g.fingerprint(DEFAULT_CAP).unwrap();
            let slow = brute_force_fingerprint(&IndexedPc(&g));
            assert_eq!(fast, slow, "{}", g.name());
        }
        assert_ne!(
            d8().fingerprint(DEFAULT_CAP).unwrap(),
            q8().fingerprint(DEFAULT_CAP).unwrap()
        );
        assert_ne!(
            e1(3).fingerprint(DEFAULT_CAP).unwrap(),
            e2(3).fingerprint(DEFAULT_CAP).unwrap()
        );
    }

    #[test]
    fn relabelled_d8_has_same_invariants() {
        // D8 with generators r, s: g1 = r, g2 = s, g1^2 = g3, [g2, g1] = g3
        let other = PcPresentation::builder(2, 3)
            .pow(0, &[(2, 1)])
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap();
        assert_eq!(
            other.fingerprint(DEFAULT_CAP).unwrap(),
            d8().fingerprint(DEFAULT_CAP).unwrap()
        );
    }

    #[test]
    fn capacity_is_enforced() {
        let g = d16();
        assert!(matches!(g.center(8), Err(PcError::CapacityExceeded { .. })));
        assert!(matches!(g.fingerprint(8), Err(PcError::CapacityExceeded { .. })));
    }

    #[test]
    fn quotient_by_center() {
        let g = d16();
        let z = g.center(DEFAULT_CAP).unwrap();
        let q = g.quotient(&z).unwrap();
        let t = q.target();
        assert!(t.is_consistent());
        assert_eq!(t.order().unwrap(), 8);
        assert_eq!(
            t.fingerprint(DEFAULT_CAP).unwrap(),
            d8().fingerprint(DEFAULT_CAP).unwrap()
        );
        // homomorphism on all pairs
        for a in 0..16 {
            for b in 0..16 {
                let (x, y) = (g.element_at(a), g.element_at(b));
                let lhs = q.image(&g.mul(&x, &y).unwrap()).unwrap();
                let rhs = t.mul(&q.image(&x).unwrap(), &q.image(&y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let g = d8();
        let h = g.subgroup(&[g.generator(0).unwrap()]).unwrap();
        assert_eq!(h.order(&g), 2);
        assert!(matches!(g.quotient(&h), Err(PcError::NotNormal)));
    }

    #[test]
    fn subgroup_presentations() {
        let g = d16();
        // cyclic subgroup generated by the rotation
        let h = g.subgroup(&[g.generator(1).unwrap()]).unwrap();
        let ph = g.subgroup_presentation(&h).unwrap();
        assert_eq!(ph.order().unwrap(), 8);
        assert_eq!(ph.abelianization().unwrap().factors(), &[8]);
        let idx = h.element_indices(&g, DEFAULT_CAP).unwrap();
        assert_eq!(idx.len(), 8);
        for i in idx {
            assert!(h.contains(&g, &g.element_at(i)).unwrap());
        }
        // s, r^2 generate a D8
        let k = g.subgroup(&[g.generator(0).unwrap(), g.generator(2).unwrap()]).unwrap();
        let pk = g.subgroup_presentation(&k).unwrap();
        assert_eq!(
            pk.fingerprint(DEFAULT_CAP).unwrap(),
            d8().fingerprint(DEFAULT_CAP).unwrap()
        );
    }
}
