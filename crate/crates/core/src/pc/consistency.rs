//! Consistency test words for presentations whose relative orders are all `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::collect::{Collector, Elem};

/// One associativity overlap. Generator indices are 0-based; `Display`
/// prints them 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TestWord {
    /// `(g_k g_j) g_i = g_k (g_j g_i)` for `k > j > i`.
    Triple { k: usize, j: usize, i: usize },
    /// `(g_j^p) g_i = g_j^(p-1) (g_j g_i)` for `j > i`.
    PowerLeft { j: usize, i: usize },
    /// `(g_j g_i^(p-1)) g_i = g_j (g_i^p)` for `j > i`.
    PowerRight { j: usize, i: usize },
    /// `(g_i^p) g_i = g_i (g_i^p)`.
    PowerSelf { i: usize },
}

impl fmt::Display for TestWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestWord::Triple { k, j, i } => write!(f, "(g{0}*g{1})*g{2} = g{0}*(g{1}*g{2})", k + 1, j + 1, i + 1),
            TestWord::PowerLeft { j, i } => {
                write!(f, "(g{0}^p)*g{1} = g{0}^(p-1)*(g{0}*g{1})", j + 1, i + 1)
            }
            TestWord::PowerRight { j, i } => {
                write!(f, "(g{0}*g{1}^(p-1))*g{1} = g{0}*(g{1}^p)", j + 1, i + 1)
            }
            TestWord::PowerSelf { i } => write!(f, "(g{0}^p)*g{0} = g{0}*(g{0}^p)", i + 1),
        }
    }
}

/// Both sides of a test word after collection.
pub(crate) struct Evaluated {
    pub word: TestWord,
    pub lhs: Elem,
    pub rhs: Elem,
}

/// Every test word in a fixed order: triples, then left power overlaps,
/// right power overlaps and finally self overlaps.
pub(crate) fn test_words(n: usize) -> Vec<TestWord> {
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                out.push(TestWord::Triple { k, j, i });
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            out.push(TestWord::PowerLeft { j, i });
        }
    }
    for j in 0..n {
        for i in 0..j {
            out.push(TestWord::PowerRight { j, i });
        }
    }
    for i in 0..n {
        out.push(TestWord::PowerSelf { i });
    }
    out
}

pub(crate) fn evaluate(c: &Collector, word: TestWord) -> Evaluated {
    let p = c.prime();
    let (lhs, rhs) = match word {
        TestWord::Triple { k, j, i } => {
            let mut lhs = c.generator(k);
            c.mul_gen(&mut lhs, j);
            c.mul_gen(&mut lhs, i);
            let mut ji = c.generator(j);
            c.mul_gen(&mut ji, i);
            let rhs = c.product(&c.generator(k), &ji);
            (lhs, rhs)
        }
        TestWord::PowerLeft { j, i } => {
            let mut lhs = c.power_relation(j);
            c.mul_gen(&mut lhs, i);
            let mut ji = c.generator(j);
            c.mul_gen(&mut ji, i);
            let mut rhs = c.identity();
            for _ in 0..p - 1 {
                c.mul_gen(&mut rhs, j);
            }
            c.mul_elem(&mut rhs, &ji);
            (lhs, rhs)
        }
        TestWord::PowerRight { j, i } => {
            let mut lhs = c.generator(j);
            for _ in 0..p {
                c.mul_gen(&mut lhs, i);
            }
            let rhs = c.product(&c.generator(j), &c.power_relation(i));
            (lhs, rhs)
        }
        TestWord::PowerSelf { i } => {
            let mut lhs = c.power_relation(i);
            c.mul_gen(&mut lhs, i);
            let rhs = c.product(&c.generator(i), &c.power_relation(i));
            (lhs, rhs)
        }
    };
    Evaluated { word, lhs, rhs }
}

/// Outcome of a consistency check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Test words whose two sides collect to different normal forms.
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub word: TestWord,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

pub(crate) fn check(c: &Collector) -> ConsistencyReport {
    let violations: Vec<Violation> = test_words(c.ngens())
        .into_iter()
        .map(|w| evaluate(c, w))
        .filter(|ev| ev.lhs.exps != ev.rhs.exps)
        .map(|ev| Violation {
            word: ev.word,
            lhs: ev.lhs.exps,
            rhs: ev.rhs.exps,
        })
        .collect();
    ConsistencyReport {
        consistent: violations.is_empty(),
        violations,
    }
}
