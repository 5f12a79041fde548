//! Permutation groups and the regular representation of a coset table.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::fingerprint::{brute_force_fingerprint, Fingerprint, IndexedGroup};

use super::CosetTable;

/// Permutations of `0..degree`, composed left to right: `(xy)(i) = y(x(i))`.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<u32>>,
    elements: OnceLock<Elements>,
}

#[derive(Debug)]
struct Elements {
    perms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    gens: Vec<usize>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new(self.degree, self.generators.clone()).expect("validated on construction")
    }
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

impl PermGroup {
    /// Rejects images that are not bijections of `0..degree`.
    pub fn new(degree: usize, generators: Vec<Vec<u32>>) -> Option<PermGroup> {
        for g in &generators {
            if g.len() != degree {
                return None;
            }
            let mut seen = vec![false; degree];
            for &i in g {
                if i as usize >= degree || seen[i as usize] {
                    return None;
                }
                seen[i as usize] = true;
            }
        }
        Some(PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    /// One permutation per generator, acting on the cosets on the right.
    pub fn regular_rep(table: &CosetTable) -> Option<PermGroup> {
        let n = table.order()?;
        let gens = (0..table.ngens)
            .map(|g| (0..n).map(|c| table.act(c, g, false) as u32).collect())
            .collect();
        PermGroup::new(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Enumerates the group once; `None` when it exceeds `cap`. Failed
    /// attempts are not cached, so a later call may raise the cap.
    fn elements(&self, cap: usize) -> Option<&Elements> {
        if let Some(e) = self.elements.get() {
            return (e.perms.len() <= cap).then_some(e);
        }
        let id: Vec<u32> = (0..self.degree as u32).collect();
        let mut perms = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut k = 0;
        while k < perms.len() {
            for g in &self.generators {
                let y = compose(&perms[k], g);
                if !index.contains_key(&y) {
                    if perms.len() >= cap {
                        return None;
                    }
                    index.insert(y.clone(), perms.len());
                    perms.push(y);
                }
            }
            k += 1;
        }
        let gens = self.generators.iter().map(|g| index[g]).collect();
        Some(self.elements.get_or_init(|| Elements { perms, index, gens }))
    }

    /// The `i`-th enumerated element.
    pub(crate) fn element(&self, i: usize, cap: usize) -> Option<Vec<u32>> {
        self.elements(cap).and_then(|e| e.perms.get(i).cloned())
    }

    /// Group order, enumerating at most `cap` elements.
    pub fn order(&self, cap: usize) -> Option<usize> {
        self.elements(cap).map(|e| e.perms.len())
    }

    pub(crate) fn indexed(&self, cap: usize) -> Option<impl IndexedGroup + '_> {
        self.elements(cap).map(IndexedPerm)
    }
}

struct IndexedPerm<'a>(&'a Elements);

impl IndexedGroup for IndexedPerm<'_> {
    fn size(&self) -> usize {
        self.0.perms.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.index[&compose(&self.0.perms[a], &self.0.perms[b])]
    }
    fn inv(&self, a: usize) -> usize {
        let p = &self.0.perms[a];
        let mut q = vec![0u32; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j as usize] = i as u32;
        }
        self.0.index[&q]
    }
    fn generators(&self) -> Vec<usize> {
        self.0.gens.clone()
    }
}

/// Fingerprint by permutation arithmetic; `None` above `cap` elements.
pub fn perm_fingerprint(g: &PermGroup, cap: usize) -> Option<Fingerprint> {
    g.indexed(cap).map(|ig| brute_force_fingerprint(&ig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{parse_presentation, todd_coxeter, DEFAULT_MAX_COSETS};
    use crate::pc::{PcPresentation, DEFAULT_CAP};

    fn regular(src: &str) -> PermGroup {
        let t = todd_coxeter(&parse_presentation(src).unwrap(), DEFAULT_MAX_COSETS);
        PermGroup::regular_rep(&t).unwrap()
    }

    #[test]
    fn cyclic_table_is_a_cycle() {
        let g = regular("gens a; rels a^4;");
        assert_eq!(g.degree(), 4);
        let a = &g.generators()[0];
        let mut c = 0u32;
        for _ in 0..4 {
            c = a[c as usize];
        }
        assert_eq!(c, 0);
        assert!(a.iter().enumerate().all(|(i, &j)| i as u32 != j));
        assert_eq!(g.order(DEFAULT_CAP as usize), Some(4));
    }

    #[test]
    fn dihedral_and_quaternion() {
        let d16 = regular("gens a,b; rels a^8=b^2=1, b^-1*a*b=a^-1;");
        assert_eq!(d16.order(1000), Some(16));
        let f = perm_fingerprint(&d16, 1000).unwrap();
        assert_eq!(f.center_order, 2);
        assert_eq!(f.element_orders.get(&2), Some(&9));
        let q8 = regular("gens a,b; rels a^4=1, b^2=a^2, b^-1*a*b=a^-1;");
        let f = perm_fingerprint(&q8, 1000).unwrap();
        assert_eq!(f.order, 8);
        assert_eq!(f.element_orders.get(&2), Some(&1));
    }

    #[test]
    fn regular_d8_matches_pc_d8() {
        let d8 = regular("gens a,b; rels a^2, b^2, (ab)^4;");
        let pc = PcPresentation::builder(2, 3).comm(1, 0, &[(2, 1)]).build().unwrap();
        assert_eq!(
            perm_fingerprint(&d8, 1000).unwrap(),
            pc.fingerprint(DEFAULT_CAP).unwrap()
        );
    }

    #[test]
    fn trivial_and_invalid() {
        let t = regular("gens a; rels a;");
        let f = perm_fingerprint(&t, 10).unwrap();
        assert_eq!(f.order, 1);
        assert_eq!(f.exponent, 1);
        assert!(PermGroup::new(3, vec![vec![0, 0, 1]]).is_none());
        assert!(PermGroup::new(3, vec![vec![0, 1]]).is_none());
        let big = PermGroup::new(5, vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]]).unwrap();
        assert_eq!(big.order(100), None);
    }
}
