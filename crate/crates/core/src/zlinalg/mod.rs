//! Exact integer matrices, Smith normal form and cokernels.

mod elim;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::AbelianInvariants;

pub use snf::{smith_normal_form, smith_normal_form_mod_prime_power, SmithForm};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {nrows}x{ncols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}

/// Sparse matrix over the integers, stored as row-major sorted triplets
/// with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix {
            nrows: n,
            ncols: n,
            entries: (0..n).map(|i| (i, i, BigInt::one())).collect(),
        }
    }

    /// Builds a matrix from triplets; repeated positions are summed.
    pub fn from_triplets<T, I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        T: Into<BigInt>,
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut raw: Vec<(usize, usize, BigInt)> = Vec::new();
        for (row, col, v) in triplets {
            if row >= nrows || col >= ncols {
                return Err(LinalgError::OutOfBounds { row, col, nrows, ncols });
            }
            raw.push((row, col, v.into()));
        }
        raw.sort_by_key(|e| (e.0, e.1));
        let mut entries: Vec<(usize, usize, BigInt)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero());
        Ok(SparseIntMatrix { nrows, ncols, entries })
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::DimensionMismatch("ragged dense rows".into()));
        }
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(nrows, ncols, trip)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        match self.entries.binary_search_by(|e| (e.0, e.1).cmp(&(row, col))) {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        SparseIntMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.ncols != other.nrows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let other_rows = other.row_lists();
        let mut trip = Vec::new();
        for (r, c, v) in &self.entries {
            for (c2, w) in &other_rows[*c] {
                trip.push((*r, *c2, v * w));
            }
        }
        Self::from_triplets(self.nrows, other.ncols, trip)
    }

    /// Number of nonzeros in the densest column.
    pub fn max_column_nnz(&self) -> usize {
        let mut counts = vec![0usize; self.ncols];
        for (_, c, _) in &self.entries {
            counts[*c] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (r, c, v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    pub(crate) fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }
}

/// Structure of `Z^ncols / rowspace(A)`: free rank and torsion invariants.
pub fn cokernel_invariants(a: &SparseIntMatrix) -> Result<(usize, AbelianInvariants), LinalgError> {
    let snf = smith_normal_form(a, false);
    let free_rank = a.ncols() - snf.rank;
    Ok((free_rank, diagonal_invariants(&snf.diagonal)?))
}

/// Cokernel computed modulo `p^e`. Exact when every torsion invariant of the
/// true cokernel is a power of `p` strictly below `p^e`.
pub fn cokernel_invariants_mod_prime_power(
    a: &SparseIntMatrix,
    p: u64,
    e: u32,
) -> Result<(usize, AbelianInvariants), LinalgError> {
    let diag = smith_normal_form_mod_prime_power(a, p, e)?;
    let rank = diag.len();
    Ok((
        a.ncols() - rank,
        AbelianInvariants::from_cyclic_orders(diag.into_iter().filter(|&d| d > 1)),
    ))
}

fn diagonal_invariants(diag: &[BigInt]) -> Result<AbelianInvariants, LinalgError> {
    let mut orders = Vec::new();
    for d in diag {
        let d = d.abs();
        if d > BigInt::one() {
            orders.push(d.to_u64().ok_or_else(|| LinalgError::Overflow(d.to_string()))?);
        }
    }
    Ok(AbelianInvariants::from_cyclic_orders(orders))
}

/// `A (x) B = sum over i, j of Z_gcd(a_i, b_j)`.
pub fn abelian_tensor(a: &AbelianInvariants, b: &AbelianInvariants) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(
        a.factors()
            .iter()
            .flat_map(|&x| b.factors().iter().map(move |&y| x.gcd(&y))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let a = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 3), (1, 1, 2)]).unwrap();
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(1, 1), BigInt::from(5));
        assert!(SparseIntMatrix::from_triplets(1, 1, [(1, 0, 1)]).is_err());
    }

    #[test]
    fn cokernel_examples() {
        let (free, inv) = cokernel_invariants(&m(&[&[3]])).unwrap();
        assert_eq!((free, inv.factors()), (0, &[3u64][..]));
        let (free, inv) = cokernel_invariants(&SparseIntMatrix::zeros(0, 2)).unwrap();
        assert_eq!((free, inv.is_trivial()), (2, true));
        // Z2 x Z4 with redundant relations: 2x = 0, 4y = 0, 2x + 4y = 0, 6x = 0
        let (free, inv) = cokernel_invariants(&m(&[&[2, 0], &[0, 4], &[2, 4], &[6, 0]])).unwrap();
        assert_eq!((free, inv.factors()), (0, &[2u64, 4][..]));
    }

    #[test]
    fn tensor_examples() {
        let z2 = AbelianInvariants::from_cyclic_orders([2]);
        let z4 = AbelianInvariants::from_cyclic_orders([4]);
        assert_eq!(abelian_tensor(&z2, &z4).factors(), &[2]);
        assert!(abelian_tensor(&AbelianInvariants::trivial(), &z4).is_trivial());
        let pp = AbelianInvariants::from_cyclic_orders([5, 5]);
        assert_eq!(abelian_tensor(&pp, &pp).factors(), &[5, 5, 5, 5]);
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = a.mul(&SparseIntMatrix::identity(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.transpose().get(0, 1), BigInt::from(3));
        assert!(a.mul(&SparseIntMatrix::identity(3)).is_err());
    }
}
