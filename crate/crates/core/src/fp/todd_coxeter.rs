//! HLT coset enumeration over the trivial subgroup.
//!
//! Column `2g` is generator `g`, column `2g + 1` its inverse. Cosets are
//! defined in order of first need; coincidences are merged with a
//! union-find and a queue, always keeping the smaller coset.

use serde::{Deserialize, Serialize};

use super::FpPresentation;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: u32 = u32::MAX;

/// A coset table. When `complete`, the rows are renumbered `0..order` with
/// row 0 the subgroup and every entry defined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub ngens: usize,
    pub complete: bool,
    /// Cosets allocated during the run, live or not.
    pub allocated: usize,
    rows: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Number of cosets when complete.
    pub fn order(&self) -> Option<usize> {
        self.complete.then_some(self.rows.len())
    }

    /// Image of coset `c` under generator `g` (inverse when `inverse`).
    pub fn act(&self, c: usize, g: usize, inverse: bool) -> usize {
        self.rows[c][2 * g + inverse as usize] as usize
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max: usize,
    overflow: bool,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn n(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.ncols + x] = v;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c as u32
    }

    fn new_coset(&mut self) -> Option<usize> {
        if self.n() >= self.max {
            self.overflow = true;
            return None;
        }
        let c = self.n();
        self.parent.push(c as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        Some(c)
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        match self.new_coset() {
            Some(d) => {
                self.set(c, x, d as u32);
                self.set(d, inv_col(x), c as u32);
                true
            }
            None => false,
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != r {
            let next = self.parent[k] as usize;
            self.parent[k] = r as u32;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep as u32;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                let xi = inv_col(x);
                if self.get(f, xi) == e as u32 {
                    self.set(f, xi, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let t = self.get(e1, x);
                if t != NONE {
                    self.merge(f1, t as usize, &mut queue);
                } else {
                    let t = self.get(f1, xi);
                    if t != NONE {
                        self.merge(e1, t as usize, &mut queue);
                    } else {
                        self.set(e1, x, f1 as u32);
                        self.set(f1, xi, e1 as u32);
                    }
                }
            }
        }
    }

    /// Scans `w` at `alpha`, defining cosets until the scan closes.
    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j {
                let t = self.get(f, w[i as usize]);
                if t == NONE {
                    break;
                }
                f = t as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i {
                let t = self.get(b, inv_col(w[j as usize]));
                if t == NONE {
                    break;
                }
                b = t as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b as u32);
                self.set(b, inv_col(x), f as u32);
                return;
            }
            if !self.define(f, w[i as usize]) {
                return;
            }
        }
    }
}

fn relator_columns(fp: &FpPresentation) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = fp
        .relators
        .iter()
        .map(|r| {
            let mut cols = Vec::new();
            for &(g, e) in r.word.syllables() {
                let x = 2 * g + (e < 0) as usize;
                cols.extend(std::iter::repeat_n(x, e.unsigned_abs() as usize));
            }
            cols
        })
        .collect();
    out.retain(|w| !w.is_empty());
    out
}

/// Enumerates the cosets of the trivial subgroup, giving up once
/// `max_cosets` cosets have been allocated.
pub fn todd_coxeter(fp: &FpPresentation, max_cosets: usize) -> CosetTable {
    let ncols = 2 * fp.generators.len();
    let rels = relator_columns(fp);
    let mut en = Enumerator {
        ncols,
        table: Vec::new(),
        parent: Vec::new(),
        max: max_cosets.max(1),
        overflow: false,
    };
    en.new_coset();
    let mut c = 0;
    while c < en.n() && !en.overflow {
        for r in &rels {
            if !en.alive(c) || en.overflow {
                break;
            }
            en.scan_and_fill(c, r);
        }
        for x in 0..ncols {
            if !en.alive(c) || en.overflow {
                break;
            }
            if en.get(c, x) == NONE {
                en.define(c, x);
            }
        }
        c += 1;
    }
    let allocated = en.n();
    if en.overflow {
        return CosetTable {
            ngens: fp.generators.len(),
            complete: false,
            allocated,
            rows: Vec::new(),
        };
    }
    let live: Vec<usize> = (0..en.n()).filter(|&c| en.alive(c)).collect();
    let mut renum = vec![NONE; en.n()];
    for (k, &c) in live.iter().enumerate() {
        renum[c] = k as u32;
    }
    let rows = live
        .iter()
        .map(|&c| (0..ncols).map(|x| renum[en.get(c, x) as usize]).collect())
        .collect();
    CosetTable {
        ngens: fp.generators.len(),
        complete: true,
        allocated,
        rows,
    }
}
