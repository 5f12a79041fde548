//! The tails algorithm.
//!
//! Each power and commutator relation receives a fresh central generator of
//! infinite order. Collecting both sides of every consistency test word
//! with the tails carried along yields an integer relation among them, and
//! the resulting abelian group presents `R/[F,R]`. For a finite group that
//! is `Z^n` plus the multiplier.

use num_bigint::BigInt;

use super::MultiplierError;
use crate::abelian::AbelianInvariants;
use crate::pc::collect::Collector;
use crate::pc::consistency::{evaluate, test_words};
use crate::pc::PcPresentation;
use crate::zlinalg::{cokernel_invariants, SparseIntMatrix};

/// Relation matrix among the tails: one row per test word.
pub fn tails_relation_matrix(g: &PcPresentation) -> Result<SparseIntMatrix, MultiplierError> {
    g.require_consistent()?;
    let n = g.ngens();
    let pow: Vec<Vec<u32>> = (0..n).map(|i| g.power_rhs(i).to_vec()).collect();
    let comm: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|j| (0..j).map(|i| g.comm_rhs(j, i).to_vec()).collect())
        .collect();
    let c = Collector::with_tails(g.prime(), &pow, &comm);
    let mut triplets = Vec::new();
    let mut row = 0;
    for w in test_words(n) {
        let ev = evaluate(&c, w);
        if ev.lhs.exps != ev.rhs.exps {
            return Err(MultiplierError::Internal(format!(
                "test word {w} leaves a non-tail residue {:?} vs {:?}",
                ev.lhs.exps, ev.rhs.exps
            )));
        }
        let mut any = false;
        for (k, (a, b)) in ev.lhs.tail.iter().zip(&ev.rhs.tail).enumerate() {
            if a != b {
                triplets.push((row, k, BigInt::from(a - b)));
                any = true;
            }
        }
        if any {
            row += 1;
        }
    }
    Ok(SparseIntMatrix::from_triplets(row, c.ntails(), triplets)?)
}

/// `(free rank of R/[F,R], M(G))`. A free rank other than `n` is reported
/// as an internal failure.
pub(crate) fn tails_multiplier(g: &PcPresentation) -> Result<(usize, AbelianInvariants), MultiplierError> {
    let m = tails_relation_matrix(g)?;
    let (free, torsion) = cokernel_invariants(&m)?;
    if free != g.ngens() {
        return Err(MultiplierError::Internal(format!(
            "R/[F,R] has free rank {free} but the presentation has {} generators",
            g.ngens()
        )));
    }
    Ok((free, torsion))
}
