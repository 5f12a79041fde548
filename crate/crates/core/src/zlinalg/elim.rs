//! Sparse elimination on unit pivots.
//!
//! Every unit pivot contributes an invariant factor 1 and removes one row
//! and one column; whatever is left has no unit entries and is handed to a
//! dense Smith reduction.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient ring seen by the eliminator.
pub(crate) trait ElimRing {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_unit(&self, a: &Self::E) -> bool;
    /// `a / u` for a unit `u`.
    fn quo_unit(&self, a: &Self::E, u: &Self::E) -> Self::E;
    /// `a - f * b`, or `None` on overflow.
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Option<Self::E>;
    /// `-f * b`, or `None` on overflow.
    fn neg_mul(&self, f: &Self::E, b: &Self::E) -> Option<Self::E>;
}

/// Machine integers with overflow detection.
pub(crate) struct CheckedI64;

impl ElimRing for CheckedI64 {
    type E = i64;
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &i64) -> bool {
        a.abs() == 1
    }
    fn quo_unit(&self, a: &i64, u: &i64) -> i64 {
        a * u
    }
    fn sub_mul(&self, a: &i64, f: &i64, b: &i64) -> Option<i64> {
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn neg_mul(&self, f: &i64, b: &i64) -> Option<i64> {
        f.checked_mul(*b)?.checked_neg()
    }
}

pub(crate) struct Big;

impl ElimRing for Big {
    type E = BigInt;
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn quo_unit(&self, a: &BigInt, u: &BigInt) -> BigInt {
        a * u
    }
    fn sub_mul(&self, a: &BigInt, f: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a - f * b)
    }
    fn neg_mul(&self, f: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(-(f * b))
    }
}

/// Integers modulo `p^e`.
pub(crate) struct ModPrimePower {
    pub p: u64,
    pub modulus: u64,
}

impl ModPrimePower {
    pub fn new(p: u64, e: u32) -> Self {
        ModPrimePower {
            p,
            modulus: p.checked_pow(e).expect("modulus fits in 64 bits"),
        }
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = ((v % &m) + &m) % &m;
        r.to_u64().expect("reduced value fits")
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn inverse(&self, u: u64) -> u64 {
        // extended Euclid on (u, modulus)
        let (mut r0, mut r1) = (self.modulus as i128, u as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "not a unit");
        t0.rem_euclid(self.modulus as i128) as u64
    }

    /// p-adic valuation of a nonzero residue.
    pub fn valuation(&self, mut a: u64) -> u32 {
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }
}

impl ElimRing for ModPrimePower {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        !a.is_multiple_of(self.p)
    }
    fn quo_unit(&self, a: &u64, u: &u64) -> u64 {
        self.mul(*a, self.inverse(*u))
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> Option<u64> {
        let fb = self.mul(*f, *b);
        Some((*a + self.modulus - fb) % self.modulus)
    }
    fn neg_mul(&self, f: &u64, b: &u64) -> Option<u64> {
        Some((self.modulus - self.mul(*f, *b)) % self.modulus)
    }
}

pub(crate) type SparseRow<E> = Vec<(u32, E)>;

/// Result of the unit-pivot phase.
pub(crate) struct Reduced<E> {
    pub unit_pivots: usize,
    /// Remaining nonzero rows; no entry is a unit.
    pub residual: Vec<SparseRow<E>>,
}

fn entry_at<E>(row: &SparseRow<E>, col: u32) -> Option<&E> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// `target - f * pivot`, merged by column. `None` on overflow.
fn combine<R: ElimRing>(
    ring: &R,
    target: &SparseRow<R::E>,
    f: &R::E,
    pivot: &SparseRow<R::E>,
) -> Option<SparseRow<R::E>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(u32::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, ring.neg_mul(f, &pivot[j].1)?));
            j += 1;
        } else {
            let v = ring.sub_mul(&target[i].1, f, &pivot[j].1)?;
            if !ring.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Eliminates unit pivots until none remain. Columns are visited in order
/// of increasing occupancy; within a column the shortest row holding a unit
/// wins, ties to the lowest row index. Returns `None` if the ring overflows.
pub(crate) fn eliminate_units<R: ElimRing>(
    ring: &R,
    mut rows: Vec<SparseRow<R::E>>,
    ncols: usize,
) -> Option<Reduced<R::E>> {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c as usize].push(r as u32);
        }
    }
    let mut row_alive = vec![true; rows.len()];
    let mut col_alive = vec![true; ncols];
    let mut unit_pivots = 0;

    loop {
        let mut progress = false;
        let mut order: Vec<usize> = (0..ncols).filter(|&c| col_alive[c]).collect();
        order.sort_by_key(|&c| (col_rows[c].len(), c));
        for c in order {
            let col = c as u32;
            let mut best: Option<(usize, u32)> = None;
            for &r in &col_rows[c] {
                if !row_alive[r as usize] {
                    continue;
                }
                let row = &rows[r as usize];
                if let Some(v) = entry_at(row, col) {
                    if ring.is_unit(v) {
                        let key = (row.len(), r);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((_, pr)) = best else { continue };
            let pr = pr as usize;
            let pivot_row = std::mem::take(&mut rows[pr]);
            let pv = entry_at(&pivot_row, col).unwrap().clone();
            let mut hits = std::mem::take(&mut col_rows[c]);
            hits.sort_unstable();
            hits.dedup();
            for r in hits {
                let r = r as usize;
                if r == pr || !row_alive[r] {
                    continue;
                }
                let Some(v) = entry_at(&rows[r], col) else { continue };
                let f = ring.quo_unit(v, &pv);
                let new_row = combine(ring, &rows[r], &f, &pivot_row)?;
                for (nc, _) in &new_row {
                    if entry_at(&rows[r], *nc).is_none() {
                        col_rows[*nc as usize].push(r as u32);
                    }
                }
                rows[r] = new_row;
            }
            row_alive[pr] = false;
            col_alive[c] = false;
            unit_pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let residual = rows
        .into_iter()
        .zip(row_alive)
        .filter(|(row, alive)| *alive && !row.is_empty())
        .map(|(row, _)| row)
        .collect();
    Some(Reduced { unit_pivots, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        let r = ModPrimePower::new(2, 5);
        for u in (1..32).step_by(2) {
            assert_eq!(r.mul(u, r.inverse(u)), 1);
        }
        assert_eq!(r.valuation(12), 2);
    }

    #[test]
    fn unit_elimination_counts_pivots() {
        // [[1, 1], [1, -1]] has one unit pivot then residual [-2]
        let rows = vec![vec![(0u32, 1i64), (1, 1)], vec![(0, 1), (1, -1)]];
        let red = eliminate_units(&CheckedI64, rows, 2).unwrap();
        assert_eq!(red.unit_pivots, 1);
        assert_eq!(red.residual, vec![vec![(1u32, -2i64)]]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2 + 2;
        let rows = vec![vec![(0u32, 1i64), (1, big)], vec![(0, 1), (1, -big)]];
        assert!(eliminate_units(&CheckedI64, rows, 2).is_none());
    }
}
