//! Test corpus assembly and the on-disk catalog.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::families::{cyclic, dihedral, e1, e2, e4, elem_abelian, product, quaternion8};
use super::{
    build_main_theorem_named, family_entry, CatalogEntry, CatalogError, EntryKind, PrimeConstraint, MAIN_THEOREM_NAMES,
};
use crate::pc::text::print_pc;

/// Primes with the largest order exponent admitted for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub primes: Vec<(u32, usize)>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            primes: vec![(2, 6), (3, 7), (5, 5)],
        }
    }
}

impl CorpusSpec {
    pub fn empty() -> Self {
        CorpusSpec { primes: Vec::new() }
    }
}

fn families_for(p: u32, max_n: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    let fam = |pc: crate::pc::PcPresentation, t: Option<u32>, kind: EntryKind, notes: &str| {
        family_entry(pc.name().to_string(), kind, p, pc, t, notes)
    };
    let mut out = Vec::new();
    for e in 1..=3u32 {
        out.push(fam(cyclic(p, e)?, Some(e * (e - 1) / 2), EntryKind::Family, "cyclic")?);
    }
    for r in 0..=3 {
        out.push(fam(
            elem_abelian(p, r)?,
            Some(0),
            EntryKind::Family,
            "elementary abelian",
        )?);
    }
    out.push(fam(
        product(&cyclic(p, 2)?, &cyclic(p, 1)?)?,
        Some(2),
        EntryKind::Family,
        "abelian",
    )?);
    if p == 2 {
        out.push(fam(dihedral(8)?, Some(2), EntryKind::Family, "dihedral")?);
        out.push(fam(quaternion8()?, Some(3), EntryKind::Family, "quaternion")?);
        out.push(fam(dihedral(32)?, Some(9), EntryKind::Family, "dihedral")?);
        out.push(fam(e4(2)?, None, EntryKind::Family, "Z4 o D8")?);
        out.push(fam(
            product(&quaternion8()?, &elem_abelian(2, 1)?)?,
            None,
            EntryKind::Family,
            "",
        )?);
        out.push(fam(
            product(&dihedral(8)?, &elem_abelian(2, 1)?)?,
            Some(3),
            EntryKind::Family,
            "",
        )?);
        out.push(fam(
            product(&dihedral(8)?, &elem_abelian(2, 2)?)?,
            Some(4),
            EntryKind::Control,
            "D8 x Z2^2, must not have t = 5",
        )?);
    } else {
        out.push(fam(e1(p)?, Some(1), EntryKind::Family, "extraspecial, exponent p")?);
        out.push(fam(e2(p)?, Some(3), EntryKind::Family, "extraspecial, exponent p^2")?);
        out.push(fam(e4(p)?, None, EntryKind::Family, "Z_{p^2} o E1")?);
        for r in 1..=4 {
            out.push(fam(
                product(&e1(p)?, &elem_abelian(p, r)?)?,
                Some(r + 1),
                EntryKind::Family,
                "E1 x Zp^r, attains the general multiplier bound",
            )?);
        }
        out.push(fam(
            product(&e2(p)?, &elem_abelian(p, 1)?)?,
            Some(4),
            EntryKind::Control,
            "E2 x Zp, must not have t = 5",
        )?);
    }
    Ok(out.into_iter().filter(|e| e.expected_n <= max_n).collect())
}

/// Deterministic corpus: families, Main-Theorem entries and negative
/// controls for each listed prime, up to the given order exponent.
pub fn corpus(spec: &CorpusSpec) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &(p, max_n) in &spec.primes {
        let mut batch = Vec::new();
        for name in MAIN_THEOREM_NAMES {
            match build_main_theorem_named(name, p) {
                Ok(e) if e.expected_n <= max_n => batch.push(e),
                Ok(_) | Err(CatalogError::Inadmissible { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        batch.extend(families_for(p, max_n)?);
        for e in batch {
            if seen.insert((p, e.label())) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// One manifest line per catalog file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub name: String,
    pub label: String,
    pub item: Option<u8>,
    pub kind: EntryKind,
    pub p: u32,
    pub admissible: PrimeConstraint,
    pub expected_n: usize,
    pub expected_t: Option<u32>,
    pub pc_file: String,
    pub grp_file: Option<String>,
    pub notes: String,
}

fn file_stem(label: &str) -> String {
    let mut s: String = label
        .chars()
        .map(|c| match c {
            '+' => 'p',
            '-' => 'm',
            c if c.is_ascii_alphanumeric() || c == '_' => c,
            _ => '_',
        })
        .collect();
    while s.contains("__") {
        s = s.replace("__", "_");
    }
    s
}

pub fn manifest(entries: &[CatalogEntry]) -> Vec<ManifestRecord> {
    entries
        .iter()
        .map(|e| {
            let stem = file_stem(&e.label());
            ManifestRecord {
                name: e.name.clone(),
                label: e.label(),
                item: e.item,
                kind: e.kind,
                p: e.p,
                admissible: e.constraint,
                expected_n: e.expected_n,
                expected_t: e.expected_t,
                pc_file: format!("{stem}.pc"),
                grp_file: e.fp.as_ref().map(|_| format!("{stem}.grp")),
                notes: e.notes.clone(),
            }
        })
        .collect()
}

/// Writes `manifest.json` plus one `.pc` file per entry and one `.grp`
/// file per presentation source.
pub fn export_catalog(dir: &Path, entries: &[CatalogEntry]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let records = manifest(entries);
    for (e, r) in entries.iter().zip(&records) {
        fs::write(dir.join(&r.pc_file), print_pc(&e.pc))?;
        if let (Some(src), Some(f)) = (&e.fp, &r.grp_file) {
            let what = if src.group.ngens() == e.pc.ngens() {
                ""
            } else {
                ", non-abelian factor"
            };
            fs::write(dir.join(f), format!("# {}{what}\n{}\n", r.label, src.text))?;
        }
    }
    let json = serde_json::to_string_pretty(&records).map_err(io::Error::other)?;
    fs::write(dir.join("manifest.json"), json + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        assert!(corpus(&CorpusSpec::empty()).unwrap().is_empty());
        let c = corpus(&CorpusSpec::default()).unwrap();
        assert!(c.len() >= 40, "{}", c.len());
        let two = corpus(&CorpusSpec { primes: vec![(2, 6)] }).unwrap();
        let items: BTreeSet<u8> = two.iter().filter_map(|e| e.item).collect();
        assert_eq!(items, BTreeSet::from([1, 11, 12, 13, 14, 15, 16]));
        assert!(two.iter().any(|e| e.kind == EntryKind::Control));
        let three = corpus(&CorpusSpec { primes: vec![(3, 7)] }).unwrap();
        assert!(three.iter().any(|e| e.name == "item2"));
        assert!(!three.iter().any(|e| e.name == "item8"));
    }

    #[test]
    fn stems_are_safe() {
        assert_eq!(file_stem("E1_p3 x Z3^2"), "E1_p3_x_Z3_2");
        assert_eq!(file_stem("ES3^5+"), "ES3_5p");
    }
}
