//! Named groups: the parameterized families and the sixteen entries of the
//! classification of p-groups with `t(G) = 5`, each with an expected order
//! and `t` value and, where a defining presentation is known, its source.

mod corpus;
mod families;

use serde::{Deserialize, Serialize};

use crate::fingerprint::Fingerprint;
use crate::fp::{parse_presentation, perm_fingerprint, satisfies, todd_coxeter, FpParseError, PermGroup, Satisfaction};
use crate::pc::{PcError, PcPresentation, DEFAULT_CAP};

pub use corpus::{corpus, export_catalog, manifest, CorpusSpec, ManifestRecord};
pub use families::{
    build_family, cyclic, dihedral, e1, e2, e4, elem_abelian, extraspecial, quaternion8, ExtraspecialType, Family,
};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{name} is not defined for p = {p} (requires {constraint})")]
    Inadmissible {
        name: String,
        p: u32,
        constraint: PrimeConstraint,
    },
    #[error("unknown catalog name '{0}'")]
    Unknown(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error("presentation source of {name}: {err}")]
    Source { name: String, err: FpParseError },
    #[error("{0} is inconsistent")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeConstraint {
    Fixed(u32),
    Odd,
    OddNot3,
    Any,
}

impl PrimeConstraint {
    pub fn admits(self, p: u32) -> bool {
        crate::abelian::is_prime(p as u64)
            && match self {
                PrimeConstraint::Fixed(q) => p == q,
                PrimeConstraint::Odd => p != 2,
                PrimeConstraint::OddNot3 => p != 2 && p != 3,
                PrimeConstraint::Any => true,
            }
    }

    /// A prime to use when none is given.
    pub fn default_prime(self) -> u32 {
        match self {
            PrimeConstraint::Fixed(q) => q,
            PrimeConstraint::OddNot3 => 5,
            PrimeConstraint::Odd | PrimeConstraint::Any => 3,
        }
    }
}

impl std::fmt::Display for PrimeConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrimeConstraint::Fixed(q) => write!(f, "p = {q}"),
            PrimeConstraint::Odd => f.write_str("odd p"),
            PrimeConstraint::OddNot3 => f.write_str("odd p other than 3"),
            PrimeConstraint::Any => f.write_str("any p"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    MainTheorem,
    Family,
    Control,
}

/// A finitely presented source for a pc group, with the images of its
/// generators as exponent vectors.
#[derive(Clone, Debug)]
pub struct FpSource {
    pub text: String,
    pub images: Vec<Vec<u32>>,
    /// The group the source presents; for item 16 this is the
    /// non-abelian factor.
    pub group: PcPresentation,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// Lookup key such as `item6` or `D16`.
    pub name: String,
    pub item: Option<u8>,
    pub kind: EntryKind,
    pub p: u32,
    pub constraint: PrimeConstraint,
    pub pc: PcPresentation,
    pub fp: Option<FpSource>,
    pub expected_n: usize,
    pub expected_t: Option<u32>,
    pub notes: String,
}

impl CatalogEntry {
    /// `name` for fixed-prime entries, `name_p<p>` otherwise.
    pub fn label(&self) -> String {
        match self.constraint {
            PrimeConstraint::Fixed(_) => self.name.clone(),
            _ => format!("{}_p{}", self.name, self.p),
        }
    }
}

/// Smallest `n >= 2` that is not a square modulo the odd prime `p`.
pub fn least_nonresidue(p: u32) -> u32 {
    let p = p as u64;
    let squares: std::collections::BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
    (2..p)
        .find(|n| !squares.contains(n))
        .expect("an odd prime has non-residues") as u32
}

/// The Main-Theorem names; item 5 appears once per exponent type.
pub const MAIN_THEOREM_NAMES: [&str; 17] = [
    "item1", "item2", "item3", "item4", "item5", "item5b", "item6", "item7", "item8", "item9", "item10", "item11",
    "item12", "item13", "item14", "item15", "item16",
];

pub fn item_constraint(item: u8) -> Option<PrimeConstraint> {
    Some(match item {
        1 | 11..=16 => PrimeConstraint::Fixed(2),
        2..=7 | 10 => PrimeConstraint::Odd,
        8 => PrimeConstraint::OddNot3,
        9 => PrimeConstraint::Fixed(3),
        _ => return None,
    })
}

fn parse_item_name(name: &str) -> Option<(u8, bool)> {
    let rest = name.strip_prefix("item")?;
    let (digits, b) = match rest.strip_suffix('b') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    let item: u8 = digits.parse().ok()?;
    if item_constraint(item).is_none() || (b && item != 5) {
        return None;
    }
    Some((item, b))
}

fn gens(b: PcPresentation) -> Result<PcPresentation, CatalogError> {
    if !b.is_consistent() {
        return Err(CatalogError::Inconsistent(b.name().to_string()));
    }
    Ok(b)
}

/// Item 6: `g1 = a, g2 = b, g3 = a^p, g4 = b^p`.
fn item6(p: u64) -> Result<(PcPresentation, FpSource), CatalogError> {
    let g = PcPresentation::builder(p, 4)
        .pow(0, &[(2, 1)])
        .pow(1, &[(3, 1)])
        .comm(1, 0, &[(2, p as u32 - 1)])
        .build()?;
    let text = format!("gens a,b; rels a^{0}, b^{0}, [a,b,a], [a,b,b], [a,b]=a^{p};", p * p);
    Ok((
        gens(g.clone())?,
        FpSource {
            text,
            images: unit_images(4, &[0, 1]),
            group: g,
        },
    ))
}

/// Items 7 and 8 share `g1 = b, g2 = a, g3 = [a,b], g4 = a^p`.
fn item7(p: u64) -> Result<(PcPresentation, FpSource), CatalogError> {
    let g = PcPresentation::builder(p, 4)
        .pow(1, &[(3, 1)])
        .comm(1, 0, &[(2, 1)])
        .comm(2, 0, &[(3, 1)])
        .comm(2, 1, &[(3, 1)])
        .build()?;
    let text = format!(
        "gens a,b; rels a^{}, b^{p}, [a,b,a]=a^{p}, [a,b,b]=a^{p}, [a,b,b,b];",
        p * p
    );
    Ok((
        gens(g.clone())?,
        FpSource {
            text,
            images: unit_images(4, &[1, 0]),
            group: g,
        },
    ))
}

fn item8(p: u64) -> Result<(PcPresentation, FpSource), CatalogError> {
    let n = least_nonresidue(p as u32) as u64;
    let g = PcPresentation::builder(p, 4)
        .pow(1, &[(3, 1)])
        .comm(1, 0, &[(2, 1)])
        .comm(2, 0, &[(3, n as u32)])
        .build()?;
    let text = format!(
        "gens a,b; rels a^{}, b^{p}, [a,b,a], [a,b,b]=a^{}, [a,b,b,b];",
        p * p,
        n * p
    );
    Ok((
        gens(g.clone())?,
        FpSource {
            text,
            images: unit_images(4, &[1, 0]),
            group: g,
        },
    ))
}

/// Item 9 (p = 3): `b^3 = a^3` and `[a,b,b] = a^6`.
fn item9() -> Result<(PcPresentation, FpSource), CatalogError> {
    let g = PcPresentation::builder(3, 4)
        .pow(0, &[(3, 1)])
        .pow(1, &[(3, 1)])
        .comm(1, 0, &[(2, 1)])
        .comm(2, 0, &[(3, 2)])
        .build()?;
    let text = "gens a,b; rels a^9, b^3=a^3, [a,b,a], [a,b,b]=a^6, [a,b,b,b];".to_string();
    Ok((
        gens(g.clone())?,
        FpSource {
            text,
            images: unit_images(4, &[1, 0]),
            group: g,
        },
    ))
}

/// Item 10: `g1 = b, g2 = a, g3 = [a,b], g4 = [a,b,b] = b^p`.
fn item10(p: u64) -> Result<(PcPresentation, FpSource), CatalogError> {
    let g = PcPresentation::builder(p, 4)
        .pow(0, &[(3, 1)])
        .comm(1, 0, &[(2, 1)])
        .comm(2, 0, &[(3, 1)])
        .build()?;
    let text = format!("gens a,b; rels a^{p}, b^{p}=[a,b,b], [a,b,a], [a,b,b,a], [a,b,b,b];");
    Ok((
        gens(g.clone())?,
        FpSource {
            text,
            images: unit_images(4, &[1, 0]),
            group: g,
        },
    ))
}

/// Item 12: `g1 = a, g2 = b, g3 = a^2, g4 = b^2`.
fn item12() -> Result<(PcPresentation, FpSource), CatalogError> {
    let g = PcPresentation::builder(2, 4)
        .pow(0, &[(2, 1)])
        .pow(1, &[(3, 1)])
        .comm(1, 0, &[(3, 1)])
        .build()?;
    let text = "gens a,b; rels a^4=b^4=1, a^-1*b*a=b^-1;".to_string();
    Ok((
        gens(g.clone())?,
        FpSource {
            text,
            images: unit_images(4, &[0, 1]),
            group: g,
        },
    ))
}

/// The non-abelian factor of item 16: `g1 = a, g2 = b, g3 = abc`,
/// `g4 = (abc)^2`, so `c = g1 g2 g3 g4`.
fn item16_inner() -> Result<(PcPresentation, FpSource), CatalogError> {
    let g = PcPresentation::builder(2, 4)
        .name("item16_inner")
        .pow(2, &[(3, 1)])
        .comm(1, 0, &[(3, 1)])
        .build()?;
    let text = "gens a,b,c; rels a^2=b^2=c^2=1, abc=bca=cab;".to_string();
    let images = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 1, 1]];
    Ok((gens(g.clone())?, FpSource { text, images, group: g }))
}

fn unit_images(n: usize, order: &[usize]) -> Vec<Vec<u32>> {
    order
        .iter()
        .map(|&k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        })
        .collect()
}

/// Builds a Main-Theorem entry by name (`item1` to `item16`, or `item5b`
/// for the exponent-`p^2` extraspecial group of item 5).
pub fn build_main_theorem_named(name: &str, p: u32) -> Result<CatalogEntry, CatalogError> {
    let (item, b) = parse_item_name(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
    let constraint = item_constraint(item).expect("validated");
    if !constraint.admits(p) {
        return Err(CatalogError::Inadmissible {
            name: name.to_string(),
            p,
            constraint,
        });
    }
    let q = p as u64;
    let z = |r| elem_abelian(p, r);
    let mut fp = None;
    let (pc, notes) = match (item, b) {
        (1, _) => (families::product(&dihedral(8)?, &z(3)?)?, "D8 x Z2^3"),
        (2, _) => (families::product(&e1(p)?, &z(4)?)?, "E1 x Zp^4"),
        (3, _) => (families::product(&e2(p)?, &z(2)?)?, "E2 x Zp^2"),
        (4, _) => (families::product(&e4(p)?, &z(1)?)?, "E4 x Zp"),
        (5, false) => (
            extraspecial(p, 2, ExtraspecialType::Plus)?,
            "extraspecial of order p^5, exponent p",
        ),
        (5, true) => (
            extraspecial(p, 2, ExtraspecialType::Minus)?,
            "extraspecial of order p^5, exponent p^2",
        ),
        (11, _) => (dihedral(16)?, "D16"),
        (13, _) => (families::product(&quaternion8()?, &z(2)?)?, "Q8 x Z2^2"),
        (14, _) => (
            extraspecial(2, 2, ExtraspecialType::Plus)?,
            "realized as D8 o D8, which is (D8 x Z2) extended by an involution",
        ),
        (15, _) => (
            extraspecial(2, 2, ExtraspecialType::Minus)?,
            "realized as Q8 o D8, which is (Q8 x Z2) extended by an involution",
        ),
        (16, _) => {
            let (inner, src) = item16_inner()?;
            fp = Some(src);
            (
                families::product(&z(1)?, &inner)?,
                "Z2 x <a,b,c | a^2=b^2=c^2=1, abc=bca=cab>",
            )
        }
        _ => {
            let (g, src) = match item {
                6 => item6(q)?,
                7 => item7(q)?,
                8 => item8(q)?,
                9 => item9()?,
                10 => item10(q)?,
                12 => item12()?,
                _ => unreachable!("all items covered"),
            };
            fp = Some(src);
            (g, "two-generator presentation")
        }
    };
    let entry = CatalogEntry {
        name: name.to_string(),
        item: Some(item),
        kind: EntryKind::MainTheorem,
        p,
        constraint,
        pc: pc.clone(),
        fp,
        expected_n: pc.ngens(),
        expected_t: Some(5),
        notes: notes.to_string(),
    };
    let label = entry.label();
    Ok(CatalogEntry {
        pc: gens(pc.with_name(label))?,
        ..entry
    })
}

/// Main-Theorem item `1..=16`; item 5 gives the exponent-`p` type.
pub fn build_main_theorem(item: u8, p: u32) -> Result<CatalogEntry, CatalogError> {
    build_main_theorem_named(&format!("item{item}"), p)
}

fn family_entry(
    name: String,
    kind: EntryKind,
    p: u32,
    pc: PcPresentation,
    expected_t: Option<u32>,
    notes: &str,
) -> Result<CatalogEntry, CatalogError> {
    Ok(CatalogEntry {
        expected_n: pc.ngens(),
        pc: gens(pc.with_name(name.clone()))?,
        name,
        item: None,
        kind,
        p,
        constraint: PrimeConstraint::Fixed(p),
        fp: None,
        expected_t,
        notes: notes.to_string(),
    })
}

fn parse_power(s: &str) -> Option<(u32, u32)> {
    let m: u64 = s.parse().ok()?;
    let f = crate::abelian::factorize(m);
    match f.as_slice() {
        [(p, e)] => Some((*p as u32, *e)),
        _ => None,
    }
}

/// Resolves a catalog name. Main-Theorem names and `E1`, `E2`, `E4` take
/// `p` (defaulting per item); other names carry their prime: `Z9`,
/// `Z3^2`, `D16`, `Q8`, `E1_p5`, `ES3^5+`, `ES2^5-`.
pub fn lookup(name: &str, p: Option<u32>) -> Result<CatalogEntry, CatalogError> {
    if let Some((item, _)) = parse_item_name(name) {
        let p = p.unwrap_or_else(|| item_constraint(item).expect("valid item").default_prime());
        return build_main_theorem_named(name, p);
    }
    let unknown = || CatalogError::Unknown(name.to_string());
    let fam = |pc: PcPresentation, p: u32, t: Option<u32>| {
        family_entry(pc.name().to_string(), EntryKind::Family, p, pc, t, "")
    };
    if let Some(rest) = name.strip_prefix("ES") {
        let (body, kind) = match rest.chars().last() {
            Some('+') => (&rest[..rest.len() - 1], ExtraspecialType::Plus),
            Some('-') => (&rest[..rest.len() - 1], ExtraspecialType::Minus),
            _ => return Err(unknown()),
        };
        let (pp, e) = body.split_once('^').ok_or_else(unknown)?;
        let pp: u32 = pp.parse().map_err(|_| unknown())?;
        let e: u32 = e.parse().map_err(|_| unknown())?;
        if e < 3 || e.is_multiple_of(2) {
            return Err(CatalogError::BadParams(format!("extraspecial order {pp}^{e}")));
        }
        return fam(extraspecial(pp, (e - 1) / 2, kind)?, pp, None);
    }
    let (base, sub) = match name.split_once("_p") {
        Some((b, s)) => (b, Some(s.parse::<u32>().map_err(|_| unknown())?)),
        None => (name, None),
    };
    let prime_for = |q: Option<u32>| q.or(sub).or(p).unwrap_or(3);
    match base {
        "Q8" => fam(quaternion8()?, 2, Some(3)),
        "E1" => {
            let q = prime_for(None);
            fam(e1(q)?, q, Some(1))
        }
        "E2" => {
            let q = prime_for(None);
            fam(e2(q)?, q, Some(3))
        }
        "E4" => {
            let q = prime_for(None);
            fam(e4(q)?, q, None)
        }
        "1" | "trivial" => {
            let q = prime_for(None);
            fam(elem_abelian(q, 0)?, q, Some(0))
        }
        _ => {
            if let Some(order) = base.strip_prefix('D') {
                let order: u32 = order.parse().map_err(|_| unknown())?;
                return fam(dihedral(order)?, 2, None);
            }
            let zs = base.strip_prefix('Z').ok_or_else(unknown)?;
            let (m, r) = match zs.split_once('^') {
                Some((m, r)) => (m, r.parse::<u32>().map_err(|_| unknown())?),
                None => (zs, 1),
            };
            let (q, e) = parse_power(m).ok_or_else(unknown)?;
            let pc = if e == 1 {
                elem_abelian(q, r)?
            } else {
                let c = cyclic(q, e)?;
                let mut acc = c.clone();
                for _ in 1..r {
                    acc = PcPresentation::direct_product(&acc, &c)?;
                }
                if r == 0 {
                    elem_abelian(q, 0)?
                } else {
                    acc.with_name(base)
                }
            };
            fam(pc, q, None)
        }
    }
}

/// Outcome of checking a presentation source against its pc group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub name: String,
    pub satisfaction: Satisfaction,
    pub pc_order: u128,
    /// Coset count from enumeration, `None` when the cap was hit.
    pub coset_order: Option<usize>,
    pub fingerprints_match: bool,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.satisfaction.holds()
            && self.coset_order.map(|c| c as u128) == Some(self.pc_order)
            && self.fingerprints_match
    }
}

/// Checks that the source's relators hold at the recorded images, that the
/// images generate, that coset enumeration gives the same order, and that
/// the regular representation has the pc group's fingerprint.
pub fn certify(entry: &CatalogEntry, max_cosets: usize) -> Result<Option<Certification>, CatalogError> {
    let Some(src) = &entry.fp else {
        return Ok(None);
    };
    let fp = parse_presentation(&src.text).map_err(|err| CatalogError::Source {
        name: entry.label(),
        err,
    })?;
    let g = &src.group;
    let images = src.images.iter().map(|v| g.element(v)).collect::<Result<Vec<_>, _>>()?;
    let satisfaction = satisfies(&fp, g, &images)?;
    let table = todd_coxeter(&fp, max_cosets);
    let coset_order = table.order();
    let pc_fp: Fingerprint = g.fingerprint(DEFAULT_CAP)?;
    let fingerprints_match = PermGroup::regular_rep(&table)
        .and_then(|perm| perm_fingerprint(&perm, max_cosets))
        .is_some_and(|f| f == pc_fp);
    Ok(Some(Certification {
        name: entry.label(),
        satisfaction,
        pc_order: g.order()?,
        coset_order,
        fingerprints_match,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_MAX_COSETS;

    #[test]
    fn nonresidues() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(5), 2);
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(least_nonresidue(23), 5);
    }

    #[test]
    fn admissibility() {
        assert!(matches!(
            build_main_theorem(8, 3),
            Err(CatalogError::Inadmissible { .. })
        ));
        assert!(matches!(
            build_main_theorem(1, 3),
            Err(CatalogError::Inadmissible { .. })
        ));
        assert!(matches!(
            build_main_theorem(6, 2),
            Err(CatalogError::Inadmissible { .. })
        ));
        assert!(matches!(
            build_main_theorem(9, 5),
            Err(CatalogError::Inadmissible { .. })
        ));
        assert!(matches!(build_main_theorem(17, 2), Err(CatalogError::Unknown(_))));
        assert!(matches!(lookup("item12b", None), Err(CatalogError::Unknown(_))));
    }

    #[test]
    fn declared_orders() {
        for name in MAIN_THEOREM_NAMES {
            for p in [2, 3, 5] {
                let Ok(e) = build_main_theorem_named(name, p) else {
                    continue;
                };
                assert!(e.pc.is_consistent(), "{}", e.label());
                assert_eq!(e.pc.ngens(), e.expected_n);
            }
        }
        assert_eq!(build_main_theorem(1, 2).unwrap().pc.order().unwrap(), 64);
        assert_eq!(build_main_theorem(2, 3).unwrap().expected_n, 7);
        assert_eq!(build_main_theorem(16, 2).unwrap().expected_n, 5);
    }

    #[test]
    fn certify_small_sources() {
        for (name, p) in [("item6", 3), ("item12", 2), ("item16", 2), ("item9", 3), ("item10", 3)] {
            let e = build_main_theorem_named(name, p).unwrap();
            let c = certify(&e, DEFAULT_MAX_COSETS).unwrap().unwrap();
            assert!(c.passed(), "{c:?}");
        }
        assert!(certify(&build_main_theorem(11, 2).unwrap(), 100).unwrap().is_none());
    }

    #[test]
    fn lookup_names() {
        assert_eq!(lookup("D16", None).unwrap().pc.order().unwrap(), 16);
        assert_eq!(lookup("Z3^2", None).unwrap().pc.order().unwrap(), 9);
        assert_eq!(lookup("Z9", None).unwrap().pc.exponent(DEFAULT_CAP).unwrap(), 9);
        assert_eq!(lookup("Z4^2", None).unwrap().pc.order().unwrap(), 16);
        assert_eq!(lookup("E1", Some(5)).unwrap().pc.order().unwrap(), 125);
        assert_eq!(lookup("E2_p3", None).unwrap().p, 3);
        assert_eq!(lookup("ES3^5-", None).unwrap().pc.ngens(), 5);
        assert_eq!(lookup("item6", None).unwrap().p, 3);
        assert_eq!(lookup("item8", None).unwrap().p, 5);
        assert!(lookup("Z6", None).is_err());
        assert!(lookup("nonsense", None).is_err());
    }
}
