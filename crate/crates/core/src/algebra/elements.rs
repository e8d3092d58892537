//! Words for the distinguished elements `B_k`, `B̄_k`, `T^±_{k,j}`,
//! `T̄^-_{k,j}` and `E_{i,j}`.

use super::{Algebra, AlgebraElement, Generator};
use crate::coxeter::{Block, SignedPerm};
use crate::error::{out_of_range, Result};
use crate::partitions::SetPartition0;

/// `T_{k-1} ... T_j` (empty when `j >= k`).
fn descending(k: usize, j: usize) -> Vec<Generator> {
    (j..k).rev().map(Generator::T).collect()
}

/// `B_k = T_{k-1} ... T_1 B_1 T_1^{-1} ... T_{k-1}^{-1}`
pub fn word_b(k: usize) -> Vec<Generator> {
    let mut w = descending(k, 1);
    w.push(Generator::B);
    w.extend((1..k).map(Generator::TInv));
    w
}

/// `B̄_k = T_{k-1} ... T_1 B_1 T_1 ... T_{k-1}`
pub fn word_bbar(k: usize) -> Vec<Generator> {
    let mut w = descending(k, 1);
    w.push(Generator::B);
    w.extend((1..k).map(Generator::T));
    w
}

/// `T^+_{k,j} = T_{k-1} ... T_j`
pub fn word_t_plus(k: usize, j: usize) -> Vec<Generator> {
    descending(k, j)
}

/// `T^-_{k,j} = T_{k-1} ... T_j B_j`, with `T^-_{k,k} = B_k`.
pub fn word_t_minus(k: usize, j: usize) -> Vec<Generator> {
    let mut w = descending(k, j);
    w.extend(word_b(j));
    w
}

/// `T̄^-_{k,j} = T_{k-1} ... T_j B̄_j`
pub fn word_tbar_minus(k: usize, j: usize) -> Vec<Generator> {
    let mut w = descending(k, j);
    w.extend(word_bbar(j));
    w
}

/// The factor `T^±_{k,j}` named by a normal-form block.
pub fn block_word(b: &Block) -> Vec<Generator> {
    if b.negative {
        word_t_minus(b.k, b.j)
    } else {
        word_t_plus(b.k, b.j)
    }
}

impl Algebra {
    /// `E_{i,j}`, the tie between strands `i` and `j` (with `0` the fixed
    /// strand, so that `E_{0,j} = F_j`).
    pub fn e_ij(&self, n: usize, i: usize, j: usize) -> Result<AlgebraElement> {
        for x in [i, j] {
            if x > n {
                return Err(out_of_range("strand", x as i64, 0, n as i64));
            }
        }
        let part = SetPartition0::singletons(n).join_set(&[i, j])?;
        Ok(AlgebraElement::basis(part, SignedPerm::identity(n)))
    }

    /// `E_{i,j}` for `0 < i < j` built as `T_i ... T_{j-2} E_{j-1} T_{j-2}^{-1} ... T_i^{-1}`.
    pub fn e_ij_by_conjugation(&self, n: usize, i: usize, j: usize) -> Result<AlgebraElement> {
        let mut word: Vec<Generator> = (i..j - 1).map(Generator::T).collect();
        word.push(Generator::E(j - 1));
        word.extend((i..j - 1).rev().map(Generator::TInv));
        self.eval_word(n, &word)
    }

    /// `EF_I` as an element.
    pub fn ef(&self, i: &SetPartition0) -> AlgebraElement {
        AlgebraElement::basis(i.clone(), SignedPerm::identity(i.n()))
    }

    /// `T_w`
    pub fn t_w(&self, w: &SignedPerm) -> AlgebraElement {
        AlgebraElement::basis(SetPartition0::singletons(w.n()), w.clone())
    }

    /// `T_w^{-1}`, from the inverses of a reduced word in reverse order.
    pub fn t_w_inv(&self, w: &SignedPerm) -> Result<AlgebraElement> {
        let word: Vec<Generator> = w
            .reduced_word()
            .into_iter()
            .rev()
            .map(|g| match g {
                crate::coxeter::CoxGen::R => Generator::BInv,
                crate::coxeter::CoxGen::S(i) => Generator::TInv(i),
            })
            .collect();
        self.eval_word(w.n(), &word)
    }
}
