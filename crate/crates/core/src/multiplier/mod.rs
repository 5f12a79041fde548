//! Schur multipliers of finite p-groups and the invariant
//! `t(G) = n(n-1)/2 - log_p |M(G)|` for `|G| = p^n`.

mod bounds;
mod tails;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianInvariants;
use crate::oracle::{bar_h2, MulTable, OracleError, DEFAULT_ORACLE_CAP};
use crate::pc::{PcError, PcPresentation};
use crate::zlinalg::{abelian_tensor, LinalgError};

pub use bounds::{derived_bound_check, jones_inequality_check, DerivedBoundReport, JonesReport};
pub use tails::tails_relation_matrix;

#[derive(Debug, thiserror::Error)]
pub enum MultiplierError {
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("method {0} does not apply: {1}")]
    Inapplicable(Method, String),
    #[error("{group}: {first} gives {a} but {second} gives {b}")]
    Disagreement {
        group: String,
        first: Method,
        second: Method,
        a: AbelianInvariants,
        b: AbelianInvariants,
    },
    #[error("the input group is abelian")]
    Abelian,
    #[error("invalid extraspecial parameters: {0}")]
    BadExtraspecial(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Tails,
    Kunneth,
    Extraspecial,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Tails => "tails",
            Method::Kunneth => "kunneth",
            Method::Extraspecial => "extraspecial",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "tails" => Ok(Method::Tails),
            "kunneth" => Ok(Method::Kunneth),
            "oracle" => Ok(Method::Oracle),
            _ => Err(format!(
                "unknown method '{s}' (expected auto, tails, kunneth or oracle)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub group: String,
    pub prime: u32,
    /// `|G| = p^n`.
    pub n: usize,
    pub method: Method,
    /// Further methods that ran and agreed.
    pub cross_checks: Vec<Method>,
    pub invariants: AbelianInvariants,
    pub multiplier_exponent: u32,
    pub t: u32,
    /// Free rank of `R/[F,R]`; tails only.
    pub free_rank: Option<usize>,
    pub elapsed_us: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplierOptions {
    pub method: Method,
    /// Also run the oracle under its cap when `method` is auto.
    pub cross_check: bool,
    pub oracle_cap: usize,
}

impl Default for MultiplierOptions {
    fn default() -> Self {
        MultiplierOptions {
            method: Method::Auto,
            cross_check: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// `log_p` of an invariant list, exactly.
pub fn p_exponent(inv: &AbelianInvariants, p: u32) -> Result<u32, MultiplierError> {
    inv.p_exponent(p as u64)
        .ok_or_else(|| MultiplierError::Internal(format!("{inv} is not a {p}-group")))
}

/// `n(n-1)/2 - e`, rejected when negative.
pub fn t_from_exponent(n: usize, e: u32) -> Result<u32, MultiplierError> {
    let green = (n * n.saturating_sub(1) / 2) as i64;
    let t = green - e as i64;
    if t < 0 {
        return Err(MultiplierError::Internal(format!(
            "multiplier exponent {e} exceeds the bound {green} for n = {n}"
        )));
    }
    Ok(t as u32)
}

/// `M(H x K) = M(H) + M(K) + H_ab (x) K_ab`.
pub fn kunneth_product(
    m_h: &AbelianInvariants,
    m_k: &AbelianInvariants,
    ab_h: &AbelianInvariants,
    ab_k: &AbelianInvariants,
) -> AbelianInvariants {
    m_h.direct_sum(m_k).direct_sum(&abelian_tensor(ab_h, ab_k))
}

/// Multiplier of an abelian group: `Z_{d_i}` for each pair `i < j`.
pub fn abelian_multiplier(inv: &AbelianInvariants) -> AbelianInvariants {
    let d = inv.factors();
    AbelianInvariants::from_cyclic_orders((0..d.len()).flat_map(|j| (0..j).map(move |i| d[i].min(d[j]))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtraspecialKind {
    D8,
    Q8,
    E1,
    E2,
    Generic,
}

/// `|M(G)|` for an extraspecial group of order `p^(2m+1)`.
pub fn extraspecial_multiplier_order(p: u32, m: u32, kind: ExtraspecialKind) -> Result<u128, MultiplierError> {
    use ExtraspecialKind::*;
    let p = p as u128;
    match (m, kind) {
        (0, _) => Err(MultiplierError::BadExtraspecial("m must be positive".into())),
        (1, D8) if p == 2 => Ok(2),
        (1, Q8) if p == 2 => Ok(1),
        (1, E1) if p != 2 => Ok(p * p),
        (1, E2) if p != 2 => Ok(1),
        (1, k) => Err(MultiplierError::BadExtraspecial(format!("{k:?} with p = {p}"))),
        (m, Generic) => Ok(p.pow(2 * m * m - m - 1)),
        (m, k) => Err(MultiplierError::BadExtraspecial(format!(
            "{k:?} with m = {m}; use Generic"
        ))),
    }
}

fn report(
    g: &PcPresentation,
    method: Method,
    invariants: AbelianInvariants,
    free_rank: Option<usize>,
    start: Instant,
) -> Result<MultiplierReport, MultiplierError> {
    let e = p_exponent(&invariants, g.prime())?;
    Ok(MultiplierReport {
        group: g.name().to_string(),
        prime: g.prime(),
        n: g.ngens(),
        method,
        cross_checks: Vec::new(),
        multiplier_exponent: e,
        t: t_from_exponent(g.ngens(), e)?,
        invariants,
        free_rank,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

/// Tails algorithm; the free rank of `R/[F,R]` is checked against `n`.
pub fn multiplier_tails(g: &PcPresentation) -> Result<MultiplierReport, MultiplierError> {
    let start = Instant::now();
    let (free, inv) = tails::tails_multiplier(g)?;
    report(g, Method::Tails, inv, Some(free), start)
}

/// Kunneth formula on a recorded direct product; factors use `auto`.
pub fn multiplier_kunneth(g: &PcPresentation) -> Result<MultiplierReport, MultiplierError> {
    let start = Instant::now();
    let (h, k) = g.direct_factors().ok_or_else(|| {
        MultiplierError::Inapplicable(Method::Kunneth, format!("{} is not a recorded product", g.name()))
    })?;
    let inv = kunneth_invariants(h, k)?;
    report(g, Method::Kunneth, inv, None, start)
}

fn kunneth_invariants(h: &PcPresentation, k: &PcPresentation) -> Result<AbelianInvariants, MultiplierError> {
    let opts = MultiplierOptions::default();
    let mh = multiplier(h, &opts)?.invariants;
    let mk = multiplier(k, &opts)?.invariants;
    Ok(kunneth_product(&mh, &mk, &h.abelianization()?, &k.abelianization()?))
}

/// Bar-resolution oracle under the given cap.
pub fn multiplier_oracle(g: &PcPresentation, cap: usize) -> Result<MultiplierReport, MultiplierError> {
    let start = Instant::now();
    let t = MulTable::from_pc(g, cap)?;
    let inv = bar_h2(&t)?;
    report(g, Method::Oracle, inv, None, start)
}

fn agree(g: &PcPresentation, base: &mut MultiplierReport, other: MultiplierReport) -> Result<(), MultiplierError> {
    if other.invariants != base.invariants {
        return Err(MultiplierError::Disagreement {
            group: g.name().to_string(),
            first: base.method,
            second: other.method,
            a: base.invariants.clone(),
            b: other.invariants,
        });
    }
    base.cross_checks.push(other.method);
    Ok(())
}

/// Dispatcher. `auto` runs tails, adds Kunneth on recorded products and the
/// oracle under its cap when cross-checking; all must agree.
pub fn multiplier(g: &PcPresentation, opts: &MultiplierOptions) -> Result<MultiplierReport, MultiplierError> {
    match opts.method {
        Method::Tails => multiplier_tails(g),
        Method::Kunneth => multiplier_kunneth(g),
        Method::Oracle => multiplier_oracle(g, opts.oracle_cap),
        Method::Extraspecial => Err(MultiplierError::Inapplicable(
            Method::Extraspecial,
            "the closed form needs the group's type; use extraspecial_multiplier_order".into(),
        )),
        Method::Auto => {
            let start = Instant::now();
            let mut base = multiplier_tails(g)?;
            if g.direct_factors().is_some() {
                agree(g, &mut base, multiplier_kunneth(g)?)?;
            }
            if opts.cross_check && g.order()? <= opts.oracle_cap as u128 {
                agree(g, &mut base, multiplier_oracle(g, opts.oracle_cap)?)?;
            }
            base.elapsed_us = start.elapsed().as_micros() as u64;
            Ok(base)
        }
    }
}

/// `t(G)` via the default dispatcher.
pub fn t_invariant(g: &PcPresentation) -> Result<u32, MultiplierError> {
    Ok(multiplier(g, &MultiplierOptions::default())?.t)
}
