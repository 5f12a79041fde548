//! Upper bounds on `|M(G)|` in terms of `n`, `|G'|` and small quotients.

use serde::{Deserialize, Serialize};

use super::{abelian_multiplier, multiplier, p_exponent, MultiplierError, MultiplierOptions};
use crate::abelian::AbelianInvariants;
use crate::pc::{PcPresentation, DEFAULT_CAP};
use crate::zlinalg::abelian_tensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedBoundReport {
    pub group: String,
    pub n: usize,
    /// `log_p |G'|`.
    pub k: u32,
    pub multiplier_exponent: u32,
    /// `(n+k-2)(n-k-1)/2 + 1`.
    pub bound_exponent: u32,
    /// `(n-1)(n-2)/2 + 1`, the bound with `k` eliminated.
    pub general_bound_exponent: u32,
    pub holds: bool,
    /// Equality in the general bound.
    pub equality: bool,
    /// Fingerprint agrees with `E1(p) x Z_p^(n-3)`.
    pub equality_case_recognized: bool,
}

impl DerivedBoundReport {
    /// Equality and recognition coincide.
    pub fn consistent(&self) -> bool {
        self.equality == self.equality_case_recognized
    }
}

/// Heisenberg group of order `p^3` and exponent `p` times `Z_p^r`; `None`
/// for `p = 2`, where no such extraspecial group exists.
fn e1_times_elementary(p: u64, r: usize) -> Result<Option<PcPresentation>, MultiplierError> {
    if p == 2 {
        return Ok(None);
    }
    let e1 = PcPresentation::builder(p, 3).comm(1, 0, &[(2, 1)]).build()?;
    if r == 0 {
        return Ok(Some(e1));
    }
    let z = PcPresentation::builder(p, r).build()?;
    Ok(Some(PcPresentation::direct_product(&e1, &z)?))
}

fn recognize_e1_family(g: &PcPresentation, k: u32) -> Result<bool, MultiplierError> {
    let n = g.ngens();
    let p = g.prime() as u64;
    if k != 1 || n < 3 {
        return Ok(false);
    }
    let Some(model) = e1_times_elementary(p, n - 3)? else {
        return Ok(false);
    };
    // cheap invariants first
    if g.abelianization()? != model.abelianization()? {
        return Ok(false);
    }
    Ok(g.fingerprint(DEFAULT_CAP)? == model.fingerprint(DEFAULT_CAP)?)
}

pub fn derived_bound_check(g: &PcPresentation) -> Result<DerivedBoundReport, MultiplierError> {
    if g.is_abelian() {
        return Err(MultiplierError::Abelian);
    }
    let n = g.ngens() as i64;
    let k = g.derived_subgroup()?.order_exponent();
    let m = multiplier(g, &MultiplierOptions::default())?;
    let ki = k as i64;
    let bound = ((n + ki - 2) * (n - ki - 1) / 2 + 1) as u32;
    let general = ((n - 1) * (n - 2) / 2 + 1) as u32;
    let e = m.multiplier_exponent;
    Ok(DerivedBoundReport {
        group: g.name().to_string(),
        n: g.ngens(),
        k,
        multiplier_exponent: e,
        bound_exponent: bound,
        general_bound_exponent: general,
        holds: e <= bound && bound <= general,
        equality: e == general,
        equality_case_recognized: recognize_e1_family(g, k)?,
    })
}

pub const JONES_INTERPRETATION: &str =
    "both tensor factors are abelianized: |M(G)||G'| <= |M(G/G')| |(G')_ab (x) (G/Z(G))_ab|";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JonesReport {
    pub group: String,
    /// `log_p(|M(G)| |G'|)`.
    pub lhs_exponent: u32,
    /// `log_p(|M(G/G')| |G' (x) G/Z(G)|)`.
    pub rhs_exponent: u32,
    pub derived_invariants: AbelianInvariants,
    pub central_quotient_invariants: AbelianInvariants,
    /// `G' <= Z(G)`, the setting in which the inequality is asserted.
    pub derived_central: bool,
    pub holds: bool,
    pub interpretation: String,
}

pub fn jones_inequality_check(g: &PcPresentation) -> Result<JonesReport, MultiplierError> {
    if g.is_abelian() {
        return Err(MultiplierError::Abelian);
    }
    let p = g.prime();
    let m = multiplier(g, &MultiplierOptions::default())?;
    let derived = g.derived_subgroup()?;
    let k = derived.order_exponent();
    let derived_ab = g.subgroup_presentation(&derived)?.abelianization()?;
    let central_quotient = g.quotient(&g.center(DEFAULT_CAP)?)?;
    let cq_ab = central_quotient.target().abelianization()?;
    let m_ab = abelian_multiplier(&g.abelianization()?);
    let mut derived_central = true;
    for x in derived.induced_pcgs() {
        for y in g.generators() {
            derived_central &= g.commutator(&x, &y)?.is_identity();
        }
    }
    let lhs = m.multiplier_exponent + k;
    let rhs = p_exponent(&m_ab, p)? + p_exponent(&abelian_tensor(&derived_ab, &cq_ab), p)?;
    Ok(JonesReport {
        group: g.name().to_string(),
        lhs_exponent: lhs,
        rhs_exponent: rhs,
        derived_invariants: derived_ab,
        central_quotient_invariants: cq_ab,
        derived_central,
        holds: lhs <= rhs,
        interpretation: JONES_INTERPRETATION.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> PcPresentation {
        PcPresentation::builder(2, 3).comm(1, 0, &[(2, 1)]).build().unwrap()
    }

    fn q8() -> PcPresentation {
        PcPresentation::builder(2, 3)
            .pow(0, &[(2, 1)])
            .pow(1, &[(2, 1)])
            .comm(1, 0, &[(2, 1)])
            .build()
            .unwrap()
    }

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
    fn derived_bound_examples() {
        let g = e1_times_elementary(3, 2).unwrap().unwrap();
        let r = derived_bound_check(&g).unwrap();
        assert!(r.holds && r.equality && r.equality_case_recognized);
        assert_eq!(r.bound_exponent, 7);

        let r = derived_bound_check(&q8()).unwrap();
        assert_eq!((r.bound_exponent, r.multiplier_exponent), (2, 0));
        assert!(r.holds && !r.equality && !r.equality_case_recognized);

        let r = derived_bound_check(&d16()).unwrap();
        assert_eq!((r.n, r.k), (4, 2));
        assert_eq!((r.bound_exponent, r.multiplier_exponent), (3, 1));
        assert!(r.holds && r.consistent() && !r.equality);

        let z = PcPresentation::builder(3, 2).build().unwrap();
        assert!(matches!(derived_bound_check(&z), Err(MultiplierError::Abelian)));
    }

    #[test]
    fn d8_family_misses_equality_by_one() {
        for r in 0..3 {
            let g = if r == 0 {
                d8()
            } else {
                PcPresentation::direct_product(&d8(), &PcPresentation::builder(2, r).build().unwrap()).unwrap()
            };
            let rep = derived_bound_check(&g).unwrap();
            assert_eq!(rep.multiplier_exponent + 1, rep.general_bound_exponent);
            assert!(!rep.equality_case_recognized);
        }
    }

    #[test]
    fn jones_examples() {
        let e1 = e1_times_elementary(3, 0).unwrap().unwrap();
        let r = jones_inequality_check(&e1).unwrap();
        assert_eq!((r.lhs_exponent, r.rhs_exponent), (3, 3));
        assert!(r.holds);
        let r = jones_inequality_check(&d8()).unwrap();
        assert_eq!((r.lhs_exponent, r.rhs_exponent), (2, 3));
        assert!(r.interpretation.contains("abelianized"));
        assert!(r.derived_central);
        // outside class 2 the abelianized form can fail
        let d32 = PcPresentation::builder(2, 5)
            .pow(1, &[(2, 1)])
            .pow(2, &[(3, 1)])
            .pow(3, &[(4, 1)])
            .comm(1, 0, &[(2, 1), (3, 1), (4, 1)])
            .comm(2, 0, &[(3, 1), (4, 1)])
            .comm(3, 0, &[(4, 1)])
            .build()
            .unwrap();
        let r = jones_inequality_check(&d32).unwrap();
        assert!(!r.derived_central);
        assert_eq!((r.lhs_exponent, r.rhs_exponent, r.holds), (4, 3, false));
        let z = PcPresentation::builder(2, 1).build().unwrap();
        assert!(matches!(jones_inequality_check(&z), Err(MultiplierError::Abelian)));
    }
}
