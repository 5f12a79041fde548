//! `H_2(G, Z)` from a multiplication table via the normalized bar
//! resolution.
//!
//! With trivial coefficients `C_k` is free on `k`-tuples of non-identity
//! elements. `C_2 / im d_3` splits as `H_2 + im d_2` and `im d_2` is free, so
//! `H_2` is the torsion of the cokernel of `d_3`, and the free rank of that
//! cokernel must equal `rank d_2`. A second route through an explicit
//! kernel basis of `d_2` is kept for small groups as a cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::AbelianInvariants;
use crate::fingerprint::IndexedGroup;
use crate::fp::PermGroup;
use crate::pc::{PcError, PcPresentation};
use crate::zlinalg::{
    cokernel_invariants, smith_normal_form, smith_normal_form_mod_prime_power, LinalgError, SparseIntMatrix,
};

pub const DEFAULT_ORACLE_CAP: usize = 64;

/// Orders up to this bound get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 32;
const RANDOM_TRIPLES: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("group of order {order} exceeds the oracle cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Cayley table with elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl MulTable {
    /// Validates the Latin-square, identity, inverse and associativity
    /// properties.
    pub fn new(order: usize, table: Vec<u32>, generators: Vec<usize>) -> Result<MulTable, OracleError> {
        if table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(OracleError::NotAGroup("table shape".into()));
        }
        for r in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for c in 0..order {
                row[table[r * order + c] as usize] = true;
                col[table[c * order + r] as usize] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(OracleError::NotAGroup("not a Latin square".into()));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| OracleError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0u32; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .expect("Latin square rows contain the identity");
            if table[y * order + x] as usize != identity {
                return Err(OracleError::NotAGroup(format!("left and right inverses of {x} differ")));
            }
            *inv = y as u32;
        }
        let t = MulTable {
            order,
            table,
            identity,
            inverse,
            generators,
        };
        t.check_associative()?;
        Ok(t)
    }

    fn check_associative(&self) -> Result<(), OracleError> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(OracleError::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..RANDOM_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(OracleError::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
        Ok(())
    }

    /// Elements indexed by their lexicographic normal forms.
    pub fn from_pc(g: &PcPresentation, cap: usize) -> Result<MulTable, OracleError> {
        let order = g.order()?;
        if order > cap as u128 {
            return Err(OracleError::CapExceeded { order, cap });
        }
        let n = order as usize;
        let elems: Vec<_> = (0..n).map(|i| g.element_at(i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(g.index_of(&g.mul(a, b)?) as u32);
            }
        }
        let gens = g.generators().iter().map(|x| g.index_of(x)).collect();
        MulTable::new(n, table, gens)
    }

    /// Elements indexed by sorted permutation images.
    pub fn from_perm(g: &PermGroup, cap: usize) -> Result<MulTable, OracleError> {
        let ig = g.indexed(cap).ok_or(OracleError::CapExceeded {
            order: g.order(crate::pc::DEFAULT_CAP as usize).unwrap_or(0) as u128,
            cap,
        })?;
        let n = ig.size();
        let perms: Vec<Vec<u32>> = (0..n).map(|i| g.element(i, cap).expect("enumerated")).collect();
        let mut order_idx: Vec<usize> = (0..n).collect();
        order_idx.sort_by(|&a, &b| perms[a].cmp(&perms[b]));
        let mut rank = vec![0usize; n];
        for (r, &i) in order_idx.iter().enumerate() {
            rank[i] = r;
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[rank[a] * n + rank[b]] = rank[ig.mul(a, b)] as u32;
            }
        }
        let gens = ig.generators().into_iter().map(|x| rank[x]).collect();
        MulTable::new(n, table, gens)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Positions of the non-identity elements, used as basis labels.
    fn labels(&self) -> (Vec<usize>, Vec<usize>) {
        let mut pos = vec![usize::MAX; self.order];
        let mut elems = Vec::new();
        for (x, slot) in pos.iter_mut().enumerate() {
            if x != self.identity {
                *slot = elems.len();
                elems.push(x);
            }
        }
        (elems, pos)
    }
}

impl IndexedGroup for MulTable {
    fn size(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        MulTable::mul(self, a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.inverse(a)
    }
    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }
}

/// `d_2 : C_2 -> C_1` or `d_3 : C_3 -> C_2`; columns are domain tuples in
/// lexicographic order.
pub fn boundary_matrix(t: &MulTable, k: usize) -> Result<SparseIntMatrix, OracleError> {
    let (elems, pos) = t.labels();
    let m = elems.len();
    let e = t.identity();
    let mut trip: Vec<(usize, usize, i64)> = Vec::new();
    match k {
        2 => {
            for (i1, &g1) in elems.iter().enumerate() {
                for (i2, &g2) in elems.iter().enumerate() {
                    let col = i1 * m + i2;
                    let g12 = t.mul(g1, g2);
                    trip.push((pos[g2], col, 1));
                    if g12 != e {
                        trip.push((pos[g12], col, -1));
                    }
                    trip.push((pos[g1], col, 1));
                }
            }
            Ok(SparseIntMatrix::from_triplets(m, m * m, trip)?)
        }
        3 => {
            let pair = |a: usize, b: usize| -> Option<usize> { (a != e && b != e).then(|| pos[a] * m + pos[b]) };
            for (i1, &g1) in elems.iter().enumerate() {
                for (i2, &g2) in elems.iter().enumerate() {
                    let g12 = t.mul(g1, g2);
                    for (i3, &g3) in elems.iter().enumerate() {
                        let col = (i1 * m + i2) * m + i3;
                        let g23 = t.mul(g2, g3);
                        for (term, sign) in [
                            (pair(g2, g3), 1),
                            (pair(g12, g3), -1),
                            (pair(g1, g23), 1),
                            (pair(g1, g2), -1),
                        ] {
                            if let Some(r) = term {
                                trip.push((r, col, sign));
                            }
                        }
                    }
                }
            }
            Ok(SparseIntMatrix::from_triplets(m * m, m * m * m, trip)?)
        }
        _ => Err(OracleError::Internal(format!("boundary d_{k} is not provided"))),
    }
}

/// `H_1` as the cokernel of `d_2`; must be finite.
pub fn bar_h1(t: &MulTable) -> Result<AbelianInvariants, OracleError> {
    let d2 = boundary_matrix(t, 2)?;
    let (free, inv) = cokernel_invariants(&d2.transpose())?;
    if free != 0 {
        return Err(OracleError::Internal(format!("H_1 has free rank {free}")));
    }
    Ok(inv)
}

/// `H_2(G, Z)` exactly.
pub fn bar_h2(t: &MulTable) -> Result<AbelianInvariants, OracleError> {
    if t.order() == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let d2 = boundary_matrix(t, 2)?;
    let d3 = boundary_matrix(t, 3)?;
    let rank2 = smith_normal_form(&d2, false).rank;
    // SNF is transpose-invariant, so d_3 itself presents coker d_3
    let snf = smith_normal_form(&d3, false);
    let free = d3.nrows() - snf.rank;
    if free != rank2 {
        return Err(OracleError::Internal(format!(
            "coker d_3 has free rank {free}, expected rank d_2 = {rank2}"
        )));
    }
    let orders = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| u64::try_from(d.abs()).map_err(|_| LinalgError::Overflow(d.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AbelianInvariants::from_cyclic_orders(orders))
}

/// `H_2` computed modulo `p^e`; exact when `|H_2| < p^e` and the group is a
/// `p`-group.
pub fn bar_h2_mod_prime_power(t: &MulTable, p: u64, e: u32) -> Result<AbelianInvariants, OracleError> {
    if t.order() == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let d2 = boundary_matrix(t, 2)?;
    let d3 = boundary_matrix(t, 3)?;
    let rank2 = smith_normal_form_mod_prime_power(&d2, p, e)?.len();
    let diag = smith_normal_form_mod_prime_power(&d3, p, e)?;
    if d3.nrows() - diag.len() != rank2 {
        return Err(OracleError::Internal(
            "modular ranks disagree; raise the exponent".into(),
        ));
    }
    Ok(AbelianInvariants::from_cyclic_orders(
        diag.into_iter().filter(|&d| d > 1),
    ))
}

/// Modulus exponent for a `p`-group of order `p^n`: `p^e` exceeds every
/// multiplier order the group can have.
pub fn modulus_exponent(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2 + 1
}

/// `H_2` through an explicit basis of `ker d_2`: the columns of `V` past
/// the rank, with `im d_3` rewritten in that basis via `V^-1`. Dense; for
/// small groups only.
pub fn bar_h2_kernel_basis(t: &MulTable) -> Result<AbelianInvariants, OracleError> {
    if t.order() == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let d2 = boundary_matrix(t, 2)?;
    let d3 = boundary_matrix(t, 3)?;
    let snf = smith_normal_form(&d2, true);
    let (_, v) = snf.transforms.expect("requested");
    let vinv = unimodular_inverse(v.to_dense())?;
    let r = snf.rank;
    // coordinates of d_3's columns in the basis given by V's columns
    let coords = SparseIntMatrix::from_dense(&vinv)?.mul(&d3)?;
    for (row, _, val) in coords.entries() {
        if *row < r && !val.is_zero() {
            return Err(OracleError::Internal("d_2 d_3 != 0".into()));
        }
    }
    let k = d2.ncols() - r;
    let restricted = SparseIntMatrix::from_triplets(
        k,
        coords.ncols(),
        coords
            .entries()
            .iter()
            .filter(|(row, _, _)| *row >= r)
            .map(|(row, c, v)| (row - r, *c, v.clone())),
    )?;
    let (free, inv) = cokernel_invariants(&restricted.transpose())?;
    if free != 0 {
        return Err(OracleError::Internal(format!("H_2 has free rank {free}")));
    }
    Ok(inv)
}

/// Inverse of a unimodular matrix by integer row reduction of `[V | I]`.
fn unimodular_inverse(mut a: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>, OracleError> {
    let n = a.len();
    let mut inv: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        // Euclid on column c below the diagonal until one row remains
        loop {
            let mut piv: Option<usize> = None;
            for r in c..n {
                if !a[r][c].is_zero() && piv.is_none_or(|p| a[r][c].abs() < a[p][c].abs()) {
                    piv = Some(r);
                }
            }
            let Some(p) = piv else {
                return Err(OracleError::Internal("transform is singular".into()));
            };
            a.swap(c, p);
            inv.swap(c, p);
            let mut done = true;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[c][c]);
                for j in 0..n {
                    let (x, y) = (a[c][j].clone(), inv[c][j].clone());
                    a[r][j] -= &q * x;
                    inv[r][j] -= &q * y;
                }
                if !a[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[c][c].abs().is_one() {
            return Err(OracleError::Internal("transform is not unimodular".into()));
        }
        if a[c][c].is_negative() {
            for j in 0..n {
                a[c][j] = -a[c][j].clone();
                inv[c][j] = -inv[c][j].clone();
            }
        }
    }
    // back substitution
    for c in (0..n).rev() {
        for r in 0..c {
            if a[r][c].is_zero() {
                continue;
            }
            let q = a[r][c].clone();
            for j in 0..n {
                let (x, y) = (a[c][j].clone(), inv[c][j].clone());
                a[r][j] -= &q * x;
                inv[r][j] -= &q * y;
            }
        }
    }
    Ok(inv)
}
