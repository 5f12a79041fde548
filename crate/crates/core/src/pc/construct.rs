//! Direct and central products.

use super::{PcElement, PcError, PcPresentation};

fn shifted(v: &[u32], offset: usize) -> Vec<(usize, u32)> {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| (k + offset, e))
        .collect()
}

impl PcPresentation {
    /// `a x b` with `a`'s generators first.
    pub fn direct_product(a: &PcPresentation, b: &PcPresentation) -> Result<PcPresentation, PcError> {
        if a.prime() != b.prime() {
            return Err(PcError::PrimeMismatch(a.prime(), b.prime()));
        }
        let (na, nb) = (a.ngens(), b.ngens());
        let mut builder =
            PcPresentation::builder(a.prime() as u64, na + nb).name(format!("{} x {}", a.name(), b.name()));
        for i in 0..na {
            builder = builder.pow(i, &shifted(a.power_rhs(i), 0));
            for j in i + 1..na {
                builder = builder.comm(j, i, &shifted(a.comm_rhs(j, i), 0));
            }
        }
        for i in 0..nb {
            builder = builder.pow(na + i, &shifted(b.power_rhs(i), na));
            for j in i + 1..nb {
                builder = builder.comm(na + j, na + i, &shifted(b.comm_rhs(j, i), na));
            }
        }
        builder.factors(a.clone(), b.clone()).build()
    }

    /// Images of `a`'s and `b`'s elements in `a x b` as built by
    /// [`PcPresentation::direct_product`].
    pub fn embed_pair(&self, x: &[u32], y: &[u32]) -> Result<PcElement, PcError> {
        let mut exps = x.to_vec();
        exps.extend_from_slice(y);
        self.element(&exps)
    }

    /// Central product identifying `x_k` in `a` with `y_k` in `b` for each
    /// pair. Each `x_k` must be central in `a`, each `y_k` central in `b`,
    /// and `x_k -> y_k` must extend to an isomorphism `<x_k> -> <y_k>`.
    pub fn central_product(
        a: &PcPresentation,
        b: &PcPresentation,
        pairs: &[(PcElement, PcElement)],
    ) -> Result<PcPresentation, PcError> {
        let d = PcPresentation::direct_product(a, b)?;
        let mut diag = Vec::new();
        let mut anti = Vec::new();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (x, y) in pairs {
            for g in a.generators() {
                if a.commutator(x, &g)? != a.identity() {
                    return Err(PcError::BadIdentification(format!(
                        "{:?} is not central in {}",
                        x.exponents(),
                        a.name()
                    )));
                }
            }
            for g in b.generators() {
                if b.commutator(y, &g)? != b.identity() {
                    return Err(PcError::BadIdentification(format!(
                        "{:?} is not central in {}",
                        y.exponents(),
                        b.name()
                    )));
                }
            }
            let y_inv = b.inverse(y)?;
            diag.push(d.embed_pair(x.exponents(), y.exponents())?);
            anti.push(d.embed_pair(x.exponents(), y_inv.exponents())?);
            xs.push(x.clone());
            ys.push(y.clone());
        }
        let ox = a.subgroup(&xs)?.order(a);
        let oy = b.subgroup(&ys)?.order(b);
        let od = d.subgroup(&diag)?.order(&d);
        if ox != oy || ox != od {
            return Err(PcError::BadIdentification(format!(
                "identified subgroups have orders {ox} and {oy}, their graph {od}"
            )));
        }
        let n = d.subgroup(&anti)?;
        let q = d.quotient(&n)?;
        Ok(q.target().clone().with_name(format!("{} o {}", a.name(), b.name())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::DEFAULT_CAP;

    fn cyclic(p: u64, e: usize) -> PcPresentation {
        let mut b = PcPresentation::builder(p, e);
        for i in 0..e.saturating_sub(1) {
            b = b.pow(i, &[(i + 1, 1)]);
        }
        b.build().unwrap()
    }

    fn e1(p: u64) -> PcPresentation {
        PcPresentation::builder(p, 3).comm(1, 0, &[(2, 1)]).build().unwrap()
    }

    #[test]
    fn direct_product_orders() {
        let g = e1(3);
        let t = PcPresentation::trivial(3).unwrap();
        let gt = PcPresentation::direct_product(&g, &t).unwrap();
        assert_eq!(
            gt.fingerprint(DEFAULT_CAP).unwrap(),
            g.fingerprint(DEFAULT_CAP).unwrap()
        );
        let mut big = g.clone();
        for _ in 0..4 {
            big = PcPresentation::direct_product(&big, &cyclic(3, 1)).unwrap();
        }
        assert!(big.is_consistent());
        assert_eq!(big.order().unwrap(), 3u128.pow(7));
        let (l, r) = big.direct_factors().unwrap();
        assert_eq!(l.order().unwrap() * r.order().unwrap(), big.order().unwrap());
        assert!(PcPresentation::direct_product(&g, &cyclic(2, 1)).is_err());
    }

    #[test]
    fn cyclic_central_product_with_e1() {
        let z9 = cyclic(3, 2);
        let g = e1(3);
        let x = z9.generator(1).unwrap();
        let y = g.generator(2).unwrap();
        let e4 = PcPresentation::central_product(&z9, &g, &[(x, y)]).unwrap();
        assert!(e4.is_consistent());
        assert_eq!(e4.order().unwrap(), 81);
        assert_eq!(e4.center(DEFAULT_CAP).unwrap().order(&e4), 9);
        assert_eq!(e4.abelianization().unwrap().factors(), &[3, 3, 3]);
    }

    #[test]
    fn trivial_identification_is_direct() {
        let a = cyclic(2, 2);
        let b = e1(2);
        let c = PcPresentation::central_product(&a, &b, &[]).unwrap();
        let d = PcPresentation::direct_product(&a, &b).unwrap();
        assert_eq!(c.fingerprint(DEFAULT_CAP).unwrap(), d.fingerprint(DEFAULT_CAP).unwrap());
    }

    #[test]
    fn bad_identifications() {
        let z9 = cyclic(3, 2);
        let g = e1(3);
        // g1 of E1 is not central
        let r = PcPresentation::central_product(&z9, &g, &[(z9.generator(1).unwrap(), g.generator(0).unwrap())]);
        assert!(matches!(r, Err(PcError::BadIdentification(_))));
        // order 9 against order 3
        let r = PcPresentation::central_product(&z9, &g, &[(z9.generator(0).unwrap(), g.generator(2).unwrap())]);
        assert!(matches!(r, Err(PcError::BadIdentification(_))));
    }
}
