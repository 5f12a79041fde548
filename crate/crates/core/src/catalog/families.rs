//! Parameterized families: cyclic, elementary abelian, dihedral,
//! quaternion and extraspecial groups, and the central product `E4`.

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::abelian::is_prime;
use crate::pc::{PcPresentation, DEFAULT_CAP};

/// For odd `p`, `Plus` has exponent `p` and `Minus` exponent `p^2`. For
/// `p = 2`, `Plus` is a central power of `D8` and `Minus` has one `Q8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtraspecialType {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Cyclic {
        p: u32,
        e: u32,
    },
    ElemAbelian {
        p: u32,
        r: u32,
    },
    /// Dihedral group of the given order, a power of 2 at least 8.
    Dihedral {
        order: u32,
    },
    Quaternion8,
    E1 {
        p: u32,
    },
    E2 {
        p: u32,
    },
    E4 {
        p: u32,
    },
    Extraspecial {
        p: u32,
        m: u32,
        kind: ExtraspecialType,
    },
}

fn prime(p: u32) -> Result<u64, CatalogError> {
    if is_prime(p as u64) {
        Ok(p as u64)
    } else {
        Err(CatalogError::BadParams(format!("{p} is not prime")))
    }
}

fn odd_prime(p: u32, what: &str) -> Result<u64, CatalogError> {
    let q = prime(p)?;
    if q == 2 {
        return Err(CatalogError::BadParams(format!("{what} needs an odd prime")));
    }
    Ok(q)
}

pub fn cyclic(p: u32, e: u32) -> Result<PcPresentation, CatalogError> {
    let q = prime(p)?;
    let e = e as usize;
    let mut b = PcPresentation::builder(q, e).name(format!("Z{}", (p as u64).pow(e as u32)));
    for i in 0..e.saturating_sub(1) {
        b = b.pow(i, &[(i + 1, 1)]);
    }
    Ok(b.build()?)
}

pub fn elem_abelian(p: u32, r: u32) -> Result<PcPresentation, CatalogError> {
    let q = prime(p)?;
    Ok(PcPresentation::builder(q, r as usize)
        .name(format!("Z{p}^{r}"))
        .build()?)
}

/// `D_{2^k}` on `s, r, r^2, ..., r^{2^{k-2}}` with `r^s = r^{-1}`.
pub fn dihedral(order: u32) -> Result<PcPresentation, CatalogError> {
    if order < 8 || !order.is_power_of_two() {
        return Err(CatalogError::BadParams(format!(
            "dihedral order {order} is not a power of 2 at least 8"
        )));
    }
    let n = order.trailing_zeros() as usize;
    let mut b = PcPresentation::builder(2, n).name(format!("D{order}"));
    for i in 1..n - 1 {
        b = b.pow(i, &[(i + 1, 1)]);
    }
    // [g_i, s] = r^{-2^i} = g_{i+1} g_{i+2} ... g_{n-1}
    for i in 1..n - 1 {
        let rhs: Vec<(usize, u32)> = (i + 1..n).map(|k| (k, 1)).collect();
        b = b.comm(i, 0, &rhs);
    }
    Ok(b.build()?)
}

pub fn quaternion8() -> Result<PcPresentation, CatalogError> {
    Ok(PcPresentation::builder(2, 3)
        .name("Q8")
        .pow(0, &[(2, 1)])
        .pow(1, &[(2, 1)])
        .comm(1, 0, &[(2, 1)])
        .build()?)
}

/// Extraspecial of order `p^3` and exponent `p`.
pub fn e1(p: u32) -> Result<PcPresentation, CatalogError> {
    let q = odd_prime(p, "E1")?;
    Ok(PcPresentation::builder(q, 3)
        .name(format!("E1_p{p}"))
        .comm(1, 0, &[(2, 1)])
        .build()?)
}

/// Extraspecial of order `p^3` and exponent `p^2`: `g1 = b`, `g2 = a`,
/// `g3 = a^p = [a, b]`.
pub fn e2(p: u32) -> Result<PcPresentation, CatalogError> {
    let q = odd_prime(p, "E2")?;
    Ok(PcPresentation::builder(q, 3)
        .name(format!("E2_p{p}"))
        .pow(1, &[(2, 1)])
        .comm(1, 0, &[(2, 1)])
        .build()?)
}

fn center_generator(g: &PcPresentation) -> Result<crate::pc::PcElement, CatalogError> {
    let z = g.center(DEFAULT_CAP)?;
    let pcgs = z.induced_pcgs();
    if pcgs.len() != 1 {
        return Err(CatalogError::BadParams(format!(
            "{} does not have a center of order p",
            g.name()
        )));
    }
    Ok(pcgs[0].clone())
}

/// `Z_{p^2}` centrally amalgamated with a non-abelian group of order `p^3`
/// (`E1` for odd `p`, `D8` for `p = 2`).
pub fn e4(p: u32) -> Result<PcPresentation, CatalogError> {
    let q = prime(p)?;
    let base = if q == 2 { dihedral(8)? } else { e1(p)? };
    let c = cyclic(p, 2)?;
    let x = c.generator(1)?;
    let y = center_generator(&base)?;
    Ok(PcPresentation::central_product(&c, &base, &[(x, y)])?.with_name(format!("E4_p{p}")))
}

/// Iterated central product of `m` extraspecial groups of order `p^3`.
pub fn extraspecial(p: u32, m: u32, kind: ExtraspecialType) -> Result<PcPresentation, CatalogError> {
    let q = prime(p)?;
    if m == 0 {
        return Err(CatalogError::BadParams("extraspecial needs m at least 1".into()));
    }
    let (first, rest) = match (q == 2, kind) {
        (true, ExtraspecialType::Plus) => (dihedral(8)?, dihedral(8)?),
        (true, ExtraspecialType::Minus) => (quaternion8()?, dihedral(8)?),
        (false, ExtraspecialType::Plus) => (e1(p)?, e1(p)?),
        (false, ExtraspecialType::Minus) => (e2(p)?, e1(p)?),
    };
    let mut acc = first;
    for _ in 1..m {
        let x = center_generator(&acc)?;
        let y = center_generator(&rest)?;
        acc = PcPresentation::central_product(&acc, &rest, &[(x, y)])?;
    }
    let sign = match kind {
        ExtraspecialType::Plus => '+',
        ExtraspecialType::Minus => '-',
    };
    Ok(acc.with_name(format!("ES{p}^{}{sign}", 2 * m + 1)))
}

pub fn build_family(f: &Family) -> Result<PcPresentation, CatalogError> {
    match *f {
        Family::Cyclic { p, e } => cyclic(p, e),
        Family::ElemAbelian { p, r } => elem_abelian(p, r),
        Family::Dihedral { order } => dihedral(order),
        Family::Quaternion8 => quaternion8(),
        Family::E1 { p } => e1(p),
        Family::E2 { p } => e2(p),
        Family::E4 { p } => e4(p),
        Family::Extraspecial { p, m, kind } => extraspecial(p, m, kind),
    }
}

/// `a x b`, named after the factors.
pub fn product(a: &PcPresentation, b: &PcPresentation) -> Result<PcPresentation, CatalogError> {
    Ok(PcPresentation::direct_product(a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_centers() {
        assert_eq!(dihedral(16).unwrap().order().unwrap(), 16);
        assert_eq!(dihedral(32).unwrap().center(DEFAULT_CAP).unwrap().order_exponent(), 1);
        let e4 = e4(3).unwrap();
        assert_eq!(e4.order().unwrap(), 81);
        assert_eq!(e4.center(DEFAULT_CAP).unwrap().order_exponent(), 2);
        assert_eq!(elem_abelian(5, 0).unwrap().order().unwrap(), 1);
        assert_eq!(cyclic(3, 2).unwrap().exponent(DEFAULT_CAP).unwrap(), 9);
    }

    #[test]
    fn extraspecial_types() {
        for (p, kind, exp) in [
            (3, ExtraspecialType::Plus, 3),
            (3, ExtraspecialType::Minus, 9),
            (5, ExtraspecialType::Plus, 5),
            (2, ExtraspecialType::Plus, 4),
            (2, ExtraspecialType::Minus, 4),
        ] {
            let g = extraspecial(p, 2, kind).unwrap();
            assert!(g.is_consistent());
            assert_eq!(g.ngens(), 5);
            let z = g.center(DEFAULT_CAP).unwrap();
            assert_eq!(z.order_exponent(), 1);
            assert_eq!(g.derived_subgroup().unwrap().order_exponent(), 1);
            assert_eq!(g.exponent(DEFAULT_CAP).unwrap(), exp);
        }
        // the two 2-groups differ in their count of involutions
        let plus = extraspecial(2, 2, ExtraspecialType::Plus)
            .unwrap()
            .fingerprint(DEFAULT_CAP)
            .unwrap();
        let minus = extraspecial(2, 2, ExtraspecialType::Minus)
            .unwrap()
            .fingerprint(DEFAULT_CAP)
            .unwrap();
        assert_eq!(plus.element_orders[&2], 19);
        assert_eq!(minus.element_orders[&2], 11);
    }

    #[test]
    fn bad_parameters() {
        assert!(dihedral(12).is_err());
        assert!(dihedral(4).is_err());
        assert!(e1(2).is_err());
        assert!(e2(4).is_err());
        assert!(extraspecial(3, 0, ExtraspecialType::Plus).is_err());
    }
}
