//! Collection from the left.
//!
//! The collector optionally carries a block of central, infinite-order
//! "tail" generators. Each power and commutator relation may then contribute
//! an integer vector of tails; since tails are central they are accumulated
//! directly instead of being moved through the word.

use crate::word::Word;

/// Right-hand side of a relation: pc letters in normal-form order plus a
/// sparse tail vector.
#[derive(Clone, Debug, Default)]
pub(crate) struct Rel {
    letters: Vec<u16>,
    tail: Vec<(usize, i64)>,
}

/// A collected element: normal-form exponents and, when tails are present,
/// the tail coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Elem {
    pub exps: Vec<u32>,
    pub tail: Vec<i64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Collector {
    p: u32,
    n: usize,
    ntails: usize,
    pow: Vec<Rel>,
    /// `comm[j][i]` for `i < j`.
    comm: Vec<Vec<Rel>>,
    inv_gen: Vec<Elem>,
}

fn letters_of(exps: &[u32]) -> Vec<u16> {
    let mut v = Vec::new();
    for (j, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            v.push(j as u16);
        }
    }
    v
}

impl Collector {
    /// Collector for the presentation itself (no tails).
    pub fn new(p: u32, pow: &[Vec<u32>], comm: &[Vec<Vec<u32>>]) -> Self {
        let rels_pow = pow
            .iter()
            .map(|w| Rel {
                letters: letters_of(w),
                tail: Vec::new(),
            })
            .collect();
        let rels_comm = comm
            .iter()
            .map(|row| {
                row.iter()
                    .map(|w| Rel {
                        letters: letters_of(w),
                        tail: Vec::new(),
                    })
                    .collect()
            })
            .collect();
        Self::assemble(p, pow.len(), 0, rels_pow, rels_comm)
    }

    /// Collector with one fresh tail appended to every relation: tail `i`
    /// on `g_i^p`, then tails `n + idx(j, i)` on `[g_j, g_i]` in the order
    /// `(1,0), (2,0), (2,1), (3,0), ...`.
    pub fn with_tails(p: u32, pow: &[Vec<u32>], comm: &[Vec<Vec<u32>>]) -> Self {
        let n = pow.len();
        let ntails = n + n * n.saturating_sub(1) / 2;
        let rels_pow = pow
            .iter()
            .enumerate()
            .map(|(i, w)| Rel {
                letters: letters_of(w),
                tail: vec![(i, 1)],
            })
            .collect();
        let mut next = n;
        let rels_comm = comm
            .iter()
            .map(|row| {
                row.iter()
                    .map(|w| {
                        let rel = Rel {
                            letters: letters_of(w),
                            tail: vec![(next, 1)],
                        };
                        next += 1;
                        rel
                    })
                    .collect()
            })
            .collect();
        Self::assemble(p, n, ntails, rels_pow, rels_comm)
    }

    fn assemble(p: u32, n: usize, ntails: usize, pow: Vec<Rel>, comm: Vec<Vec<Rel>>) -> Self {
        let mut c = Collector {
            p,
            n,
            ntails,
            pow,
            comm,
            inv_gen: Vec::new(),
        };
        // g_k^-1 = g_k^(p-1) * (g_k^p)^-1, built from the top generator down
        let mut inv: Vec<Option<Elem>> = vec![None; n];
        for k in (0..n).rev() {
            let mut st = c.identity();
            for _ in 0..p - 1 {
                c.mul_gen(&mut st, k);
            }
            let pw = c.relation_elem(&c.pow[k]);
            let mut pw_inv = Elem {
                exps: vec![0; n],
                tail: pw.tail.iter().map(|t| -t).collect(),
            };
            for j in (k + 1..n).rev() {
                for _ in 0..pw.exps[j] {
                    let g = inv[j].as_ref().expect("higher inverses computed first");
                    c.mul_elem(&mut pw_inv, g);
                }
            }
            c.mul_elem(&mut st, &pw_inv);
            inv[k] = Some(st);
        }
        c.inv_gen = inv.into_iter().map(Option::unwrap).collect();
        c
    }

    fn relation_elem(&self, rel: &Rel) -> Elem {
        let mut e = self.identity();
        for &l in &rel.letters {
            e.exps[l as usize] += 1;
        }
        for &(t, v) in &rel.tail {
            e.tail[t] += v;
        }
        e
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn ntails(&self) -> usize {
        self.ntails
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn identity(&self) -> Elem {
        Elem {
            exps: vec![0; self.n],
            tail: vec![0; self.ntails],
        }
    }

    pub fn generator(&self, k: usize) -> Elem {
        let mut e = self.identity();
        e.exps[k] = 1;
        e
    }

    /// The power relation `g_i^p` as an element (with its tail).
    pub fn power_relation(&self, i: usize) -> Elem {
        self.relation_elem(&self.pow[i])
    }

    /// Multiplies `st` on the right by the letters, left to right.
    fn mul_letters(&self, st: &mut Elem, letters: &[u16]) {
        let mut stack: Vec<u16> = letters.iter().rev().copied().collect();
        let mut scratch: Vec<u16> = Vec::new();
        let p = self.p;
        while let Some(k) = stack.pop() {
            let k = k as usize;
            scratch.clear();
            // u * g_k = prefix * g_k^(e_k + 1) * s^(g_k), with s the part of u above k
            for j in k + 1..self.n {
                let e = st.exps[j];
                if e == 0 {
                    continue;
                }
                st.exps[j] = 0;
                let rel = &self.comm[j][k];
                for &(t, v) in &rel.tail {
                    st.tail[t] += v * e as i64;
                }
                for _ in 0..e {
                    scratch.push(j as u16);
                    scratch.extend_from_slice(&rel.letters);
                }
            }
            stack.extend(scratch.iter().rev());
            if st.exps[k] + 1 == p {
                st.exps[k] = 0;
                let rel = &self.pow[k];
                for &(t, v) in &rel.tail {
                    st.tail[t] += v;
                }
                stack.extend(rel.letters.iter().rev());
            } else {
                st.exps[k] += 1;
            }
        }
    }

    pub fn mul_gen(&self, st: &mut Elem, k: usize) {
        self.mul_letters(st, &[k as u16]);
    }

    pub fn mul_elem(&self, st: &mut Elem, x: &Elem) {
        for (t, v) in st.tail.iter_mut().zip(&x.tail) {
            *t += v;
        }
        self.mul_letters(st, &letters_of(&x.exps));
    }

    pub fn product(&self, a: &Elem, b: &Elem) -> Elem {
        let mut st = a.clone();
        self.mul_elem(&mut st, b);
        st
    }

    pub fn inverse(&self, x: &Elem) -> Elem {
        let mut st = Elem {
            exps: vec![0; self.n],
            tail: x.tail.iter().map(|t| -t).collect(),
        };
        for j in (0..self.n).rev() {
            for _ in 0..x.exps[j] {
                self.mul_elem(&mut st, &self.inv_gen[j]);
            }
        }
        st
    }

    pub fn power(&self, x: &Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inverse(x) } else { x.clone() };
        let mut st = self.identity();
        for _ in 0..e.unsigned_abs() {
            self.mul_elem(&mut st, &base);
        }
        st
    }

    /// Collects a word; generator indices must be below `ngens`.
    pub fn collect_word(&self, w: &Word) -> Elem {
        let mut st = self.identity();
        for &(g, e) in w.syllables() {
            if e >= 0 {
                for _ in 0..e {
                    self.mul_gen(&mut st, g);
                }
            } else {
                for _ in 0..e.unsigned_abs() {
                    self.mul_elem(&mut st, &self.inv_gen[g]);
                }
            }
        }
        st
    }
}
