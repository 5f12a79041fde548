//! Words over an ordered generating set.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A sequence of `(generator, exponent)` syllables. Exponents are arbitrary
/// integers; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        if e == 0 {
            Word::identity()
        } else {
            Word(vec![(g, e)])
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 0)
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    /// Total number of letters, counting `g^e` as `|e|` letters.
    pub fn letter_count(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Word {
        if let [(g, k)] = self.0[..] {
            return Word::power_of(g, k * e);
        }
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.0.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// Left-normed commutator `[x1, x2, ..., xk] = [[x1, x2], ..., xk]`.
    pub fn left_normed_commutator(parts: &[Word]) -> Word {
        let mut iter = parts.iter();
        let mut acc = match iter.next() {
            Some(w) => w.clone(),
            None => return Word::identity(),
        };
        for w in iter {
            acc = Word::commutator(&acc, w);
        }
        acc
    }

    /// Replace each generator by a word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for &(g, e) in &self.0 {
            v.extend(images[g].pow(e).0);
        }
        Word(v)
    }

    /// Render with the given generator names, e.g. `a^-1*b*a`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedWord { word: self, names }
    }
}

struct NamedWord<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for NamedWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.word.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            let name = self.names.get(g).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{}", i + 1))
            .collect();
        NamedWord {
            word: self,
            names: &names,
        }
        .fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_expansion_lengths() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert_eq!(Word::commutator(&a, &b).letter_count(), 4);
        let w = Word::left_normed_commutator(&[a.clone(), b.clone(), b.clone(), b.clone()]);
        assert_eq!(w.letter_count(), 22);
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let w = Word(vec![(0, 2), (1, -1)]);
        assert_eq!(w.inverse(), Word(vec![(1, 1), (0, -2)]));
        assert_eq!(w.pow(-1), w.inverse());
        assert!(Word::identity().is_identity());
    }
}
