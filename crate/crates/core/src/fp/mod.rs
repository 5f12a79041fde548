//! Finitely presented groups: parsing, coset enumeration and evaluation of
//! relators in pc groups.

mod parse;
mod perm;
mod todd_coxeter;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pc::{PcElement, PcError, PcPresentation};
use crate::word::Word;

pub use parse::{parse_presentation, FpErrorKind, FpParseError};
pub use perm::{perm_fingerprint, PermGroup};
pub use todd_coxeter::{todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};

/// Where a relator came from in the source text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub word: Word,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

impl FpPresentation {
    pub fn relator_words(&self) -> Vec<&Word> {
        self.relators.iter().map(|r| &r.word).collect()
    }

    /// Same generators and relator words, ignoring source spans.
    pub fn same_structure(&self, other: &FpPresentation) -> bool {
        self.generators == other.generators && self.relator_words() == other.relator_words()
    }
}

/// Canonical text: one relator per entry, `*` between factors.
impl fmt::Display for FpPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {};", self.generators.join(", "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.word.display_with(&self.generators).to_string())
            .collect();
        if rels.is_empty() {
            writeln!(f, "rels ;")
        } else {
            writeln!(f, "rels {};", rels.join(",\n     "))
        }
    }
}

/// Outcome of evaluating a presentation inside a pc group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Satisfaction {
    /// Indices of relators that do not evaluate to the identity.
    pub failing_relators: Vec<usize>,
    pub generates: bool,
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        self.failing_relators.is_empty() && self.generates
    }
}

/// Evaluates `w` with generator `i` sent to `images[i]`.
pub fn evaluate(g: &PcPresentation, w: &Word, images: &[PcElement]) -> Result<PcElement, PcError> {
    let mut acc = g.identity();
    for &(x, e) in w.syllables() {
        let img = images.get(x).ok_or(PcError::GeneratorOutOfRange {
            index: x,
            n: images.len(),
        })?;
        acc = g.mul(&acc, &g.pow(img, e)?)?;
    }
    Ok(acc)
}

/// Whether the images satisfy every relator and generate `g`.
pub fn satisfies(fp: &FpPresentation, g: &PcPresentation, images: &[PcElement]) -> Result<Satisfaction, PcError> {
    g.require_consistent()?;
    if images.len() != fp.generators.len() {
        return Err(PcError::BadIdentification(format!(
            "{} images for {} generators",
            images.len(),
            fp.generators.len()
        )));
    }
    let mut failing = Vec::new();
    for (k, r) in fp.relators.iter().enumerate() {
        if !evaluate(g, &r.word, images)?.is_identity() {
            failing.push(k);
        }
    }
    let generates = g.subgroup(images)?.order(g) == g.order()?;
    Ok(Satisfaction {
        failing_relators: failing,
        generates,
    })
}
