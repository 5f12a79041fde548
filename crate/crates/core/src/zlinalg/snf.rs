use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elim::{eliminate_units, Big, CheckedI64, ElimRing, ModPrimePower, SparseRow};
use super::{LinalgError, SparseIntMatrix};

/// Matrices at most this size in both dimensions skip the sparse phase.
const DENSE_LIMIT: usize = 64;

/// Smith normal form `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Positive diagonal entries `d1 | d2 | ... | d_rank`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)`, both unimodular, when requested.
    pub transforms: Option<(SparseIntMatrix, SparseIntMatrix)>,
}

impl SmithForm {
    /// `D` embedded in an `nrows x ncols` matrix.
    pub fn diagonal_matrix(&self, nrows: usize, ncols: usize) -> SparseIntMatrix {
        SparseIntMatrix::from_triplets(
            nrows,
            ncols,
            self.diagonal.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
        .expect("rank bounded by dimensions")
    }
}

/// Smith normal form of `a`. With `want_transforms` the dense algorithm runs
/// on the whole matrix; otherwise large inputs go through sparse unit-pivot
/// elimination first.
pub fn smith_normal_form(a: &SparseIntMatrix, want_transforms: bool) -> SmithForm {
    if want_transforms || (a.nrows() <= DENSE_LIMIT && a.ncols() <= DENSE_LIMIT) {
        let mut dense = DenseSnf::new(a.to_dense(), want_transforms);
        dense.run();
        return dense.finish();
    }

    let (units, residual_rows) = match reduce_sparse(&CheckedI64, a, |v| v.to_i64()) {
        Some((u, res)) => (
            u,
            res.into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect(),
        ),
        None => reduce_sparse(&Big, a, |v| Some(v.clone())).expect("bigint elimination cannot overflow"),
    };
    let residual = compact(residual_rows, BigInt::zero());
    let mut dense = DenseSnf::new(residual, false);
    dense.run();
    let tail = dense.finish();
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(tail.diagonal);
    SmithForm {
        rank: diagonal.len(),
        diagonal,
        transforms: None,
    }
}

/// Diagonal of the Smith form over `Z / p^e`, each entry a power `p^v` with
/// `v < e`; entries divisible by `p^e` are omitted.
pub fn smith_normal_form_mod_prime_power(a: &SparseIntMatrix, p: u64, e: u32) -> Result<Vec<u64>, LinalgError> {
    let ring = ModPrimePower::new(p, e);
    let (units, residual) = reduce_sparse(&ring, a, |v| Some(ring.reduce(v)))
        .ok_or_else(|| LinalgError::Overflow("modular elimination".into()))?;
    let mut dense = compact(residual, 0u64);
    let mut diag = vec![1u64; units];
    diag.extend(local_snf(&ring, &mut dense));
    Ok(diag)
}

fn reduce_sparse<R: ElimRing>(
    ring: &R,
    a: &SparseIntMatrix,
    convert: impl Fn(&BigInt) -> Option<R::E>,
) -> Option<(usize, Vec<SparseRow<R::E>>)> {
    let mut rows: Vec<SparseRow<R::E>> = vec![Vec::new(); a.nrows()];
    for (r, c, v) in a.entries() {
        let v = convert(v)?;
        if !ring.is_zero(&v) {
            rows[*r].push((*c as u32, v));
        }
    }
    let red = eliminate_units(ring, rows, a.ncols())?;
    Some((red.unit_pivots, red.residual))
}

/// Packs sparse rows into a dense matrix over the columns they use.
fn compact<E: Clone>(rows: Vec<SparseRow<E>>, zero: E) -> Vec<Vec<E>> {
    let mut cols: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    rows.into_iter()
        .map(|row| {
            let mut dense = vec![zero.clone(); cols.len()];
            for (c, v) in row {
                dense[cols.binary_search(&c).unwrap()] = v;
            }
            dense
        })
        .collect()
}

/// Classical Smith reduction on a dense integer matrix.
struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

impl DenseSnf {
    fn new(a: Vec<Vec<BigInt>>, transforms: bool) -> Self {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        DenseSnf {
            a,
            m,
            n,
            u: transforms.then(|| identity(m)),
            v: transforms.then(|| identity(n)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        let (src, dst) = pair_mut(&mut self.a, k, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d -= q * s;
            }
        }
        if let Some(u) = &mut self.u {
            let (src, dst) = pair_mut(u, k, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
    }

    fn negate_row(&mut self, k: usize) {
        for x in &mut self.a[k] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[k] {
                *x = -std::mem::take(x);
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[k].is_zero() {
                let t = q * &row[k];
                row[j] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[k].is_zero() {
                    let t = q * &row[k];
                    row[j] -= t;
                }
            }
        }
    }

    /// Smallest nonzero |a[i][j]| with i, j >= k; ties by lowest (row, col).
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..self.m {
            for j in k..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                    best = Some((ax, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Smallest nonzero entry in row k or column k (beyond the pivot).
    fn find_cross_pivot(&self, k: usize) -> (usize, usize) {
        let mut best = (self.a[k][k].abs(), k, k);
        for i in k + 1..self.m {
            let x = self.a[i][k].abs();
            if !x.is_zero() && x < best.0 {
                best = (x, i, k);
            }
        }
        for j in k + 1..self.n {
            let x = self.a[k][j].abs();
            if !x.is_zero() && x < best.0 {
                best = (x, k, j);
            }
        }
        (best.1, best.2)
    }

    fn run(&mut self) {
        let steps = self.m.min(self.n);
        for k in 0..steps {
            let Some((pi, pj)) = self.find_pivot(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                let mut clean = true;
                for i in k + 1..self.m {
                    if self.a[i][k].is_zero() {
                        continue;
                    }
                    let q = &self.a[i][k] / &self.a[k][k];
                    if !q.is_zero() {
                        self.row_axpy(i, k, &q);
                    }
                    if !self.a[i][k].is_zero() {
                        clean = false;
                    }
                }
                for j in k + 1..self.n {
                    if self.a[k][j].is_zero() {
                        continue;
                    }
                    let q = &self.a[k][j] / &self.a[k][k];
                    if !q.is_zero() {
                        self.col_axpy(j, k, &q);
                    }
                    if !self.a[k][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (i, j) = self.find_cross_pivot(k);
                    self.swap_rows(k, i);
                    self.swap_cols(k, j);
                    continue;
                }
                // pivot must divide the rest of the block
                let d = self.a[k][k].clone();
                let offender = (k + 1..self.m).find(|&i| (k + 1..self.n).any(|j| !(&self.a[i][j] % &d).is_zero()));
                match offender {
                    Some(i) => self.row_axpy(k, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[k][k].is_negative() {
                self.negate_row(k);
            }
        }
    }

    fn finish(self) -> SmithForm {
        let steps = self.m.min(self.n);
        let diagonal: Vec<BigInt> = (0..steps)
            .map(|k| self.a[k][k].clone())
            .take_while(|d| !d.is_zero())
            .collect();
        let transforms = match (self.u, self.v) {
            (Some(u), Some(v)) => Some((
                SparseIntMatrix::from_dense(&u).expect("square"),
                SparseIntMatrix::from_dense(&v).expect("square"),
            )),
            _ => None,
        };
        SmithForm {
            rank: diagonal.len(),
            diagonal,
            transforms,
        }
    }
}

/// Mutable access to row `dst` with shared access to row `src`.
fn pair_mut<T>(rows: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    if src == dst {
        panic!("pair_mut on a single row");
    }
    if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// Smith reduction over `Z / p^e`: pivot on an entry of least valuation,
/// which divides everything left in the block.
fn local_snf(ring: &ModPrimePower, a: &mut [Vec<u64>]) -> Vec<u64> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for k in 0..m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let v = ring.valuation(x);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pk = ring.p.pow(val);
        let unit = a[k][k] / pk;
        let unit_inv = ring.inverse(unit);
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k] == 0 {
                continue;
            }
            let f = ring.mul(row[k] / pk, unit_inv);
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x = ring.sub_mul(x, &f, &y).unwrap();
            }
        }
        // the row operations above cleared column k; clear row k likewise
        a[k][k + 1..n].fill(0);
        diag.push(pk);
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn diag_u64(s: &SmithForm) -> Vec<u64> {
        s.diagonal.iter().map(|d| d.to_u64().unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        let id = SparseIntMatrix::identity(3);
        assert_eq!(diag_u64(&smith_normal_form(&id, false)), vec![1, 1, 1]);
        let a = m(&[&[2, 4], &[6, 8]]);
        assert_eq!(diag_u64(&smith_normal_form(&a, true)), vec![2, 4]);
        let z = SparseIntMatrix::zeros(3, 2);
        let s = smith_normal_form(&z, true);
        assert_eq!(s.rank, 0);
        assert!(s.diagonal.is_empty());
        let empty = SparseIntMatrix::zeros(0, 0);
        assert_eq!(smith_normal_form(&empty, false).rank, 0);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a, true);
        assert_eq!(diag_u64(&s), vec![2, 6, 12]);
        let (u, v) = s.transforms.clone().unwrap();
        let d = u.mul(&a).unwrap().mul(&v).unwrap();
        assert_eq!(d, s.diagonal_matrix(3, 3));
    }

    #[test]
    fn sparse_path_matches_dense() {
        // a 70x70 block-diagonal matrix forces the sparse route
        let mut trip = Vec::new();
        for b in 0..35 {
            let (i, j) = (2 * b, 2 * b + 1);
            trip.extend([(i, i, 2i64), (i, j, 1), (j, i, 4), (j, j, 6)]);
        }
        let a = SparseIntMatrix::from_triplets(70, 70, trip).unwrap();
        let sparse = smith_normal_form(&a, false);
        let dense = smith_normal_form(&a, true);
        assert_eq!(sparse.diagonal, dense.diagonal);
        // each block [[2,1],[4,6]] has determinant 8 and content 1
        assert_eq!(sparse.diagonal.iter().filter(|d| **d == BigInt::from(8)).count(), 35);
    }

    #[test]
    fn modular_path() {
        let a = m(&[&[2, 0], &[0, 4], &[2, 4]]);
        assert_eq!(smith_normal_form_mod_prime_power(&a, 2, 5).unwrap(), vec![2, 4]);
        // 32 vanishes mod 2^5 and is dropped
        let b = m(&[&[32, 0], &[0, 3]]);
        assert_eq!(smith_normal_form_mod_prime_power(&b, 2, 5).unwrap(), vec![1]);
    }
}
