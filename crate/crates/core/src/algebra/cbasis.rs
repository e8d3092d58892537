//! The basis `{m_1 ... m_n EF_I}` with `m_k = T^±_{k,j}`.
//!
//! Expanding a descriptor in the `EF_I T_w` basis gives the term
//! `(eta(w)(I), w)` with coefficient one, `w` the product of the blocks, plus
//! terms of strictly smaller Coxeter length. Re-expressing an element is
//! therefore plain back substitution from the longest terms down.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{block_word, Algebra, AlgebraElement, Generator};
use crate::coeff::LaurentPoly;
use crate::coxeter::{Block, SignedPerm};
use crate::error::{Error, Result};
use crate::partitions::SetPartition0;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CDescriptor {
    pub blocks: Vec<Block>,
    pub partition: SetPartition0,
}

impl CDescriptor {
    pub fn new(blocks: Vec<Block>, partition: SetPartition0) -> Result<Self> {
        let n = blocks.len();
        if partition.n() != n {
            return Err(Error::SizeMismatch(n, partition.n()));
        }
        for (idx, b) in blocks.iter().enumerate() {
            if b.k != idx + 1 || b.j == 0 || b.j > b.k {
                return Err(Error::InvalidPermutation(format!("bad block {b} at {}", idx + 1)));
            }
        }
        Ok(CDescriptor { blocks, partition })
    }

    /// The descriptor whose expansion leads with `(i, w)`.
    pub fn leading(i: &SetPartition0, w: &SignedPerm) -> Self {
        CDescriptor {
            blocks: w.normal_form(),
            partition: i.apply_perm(&w.eta().inverse()),
        }
    }

    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// The group element obtained by reading `B_k` as `r_k`.
    pub fn perm(&self) -> SignedPerm {
        let n = self.n();
        self.blocks.iter().fold(SignedPerm::identity(n), |acc, b| {
            acc.mul(&b.to_perm(n)).expect("same n")
        })
    }

    pub fn word(&self) -> Vec<Generator> {
        self.blocks.iter().flat_map(block_word).collect()
    }

    /// Every descriptor for `n` strands.
    pub fn all(n: usize) -> Vec<CDescriptor> {
        let mut block_lists: Vec<Vec<Block>> = vec![vec![]];
        for k in 1..=n {
            block_lists = block_lists
                .into_iter()
                .flat_map(|bs| {
                    Block::all(k).into_iter().map(move |b| {
                        let mut bs = bs.clone();
                        bs.push(b);
                        bs
                    })
                })
                .collect();
        }
        let parts = SetPartition0::enumerate(n);
        block_lists
            .into_iter()
            .flat_map(|bs| {
                parts.iter().map(move |p| CDescriptor {
                    blocks: bs.clone(),
                    partition: p.clone(),
                })
            })
            .collect()
    }
}

impl fmt::Display for CDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks.iter().filter(|b| !b.is_one()) {
            write!(f, "{b} ")?;
        }
        write!(f, "EF{}", self.partition)
    }
}

impl fmt::Debug for CDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n())
    }
}

impl Algebra {
    /// `m_1 ... m_n EF_I` in the `EF_I T_w` basis.
    pub fn expand_c(&self, d: &CDescriptor) -> Arc<AlgebraElement> {
        if let Some(e) = self.c_expansions.read().expect("lock").get(d) {
            return e.clone();
        }
        let e = self
            .eval_word(d.n(), &d.word())
            .and_then(|e| e.mul_ef(&d.partition))
            .expect("descriptor is well formed");
        let e = Arc::new(e);
        self.c_expansions
            .write()
            .expect("lock")
            .insert(d.clone(), e.clone());
        e
    }

    pub fn basis_c(&self, n: usize) -> Vec<(CDescriptor, Arc<AlgebraElement>)> {
        CDescriptor::all(n)
            .into_iter()
            .map(|d| {
                let e = self.expand_c(&d);
                (d, e)
            })
            .collect()
    }

    /// Coordinates of `e` in the descriptor basis.
    pub fn express_in_c(&self, e: &AlgebraElement) -> Result<BTreeMap<CDescriptor, LaurentPoly>> {
        let mut rest = e.clone();
        let mut out = BTreeMap::new();
        while let Some(len) = rest.max_length() {
            let (i, w, c) = rest
                .terms()
                .find(|(_, w, _)| w.length() == len)
                .map(|(i, w, c)| (i.clone(), w.clone(), c.clone()))
                .expect("a longest term exists");
            let d = CDescriptor::leading(&i, &w);
            let x = self.expand_c(&d);
            if !x.coeff(&i, &w).is_one() {
                return Err(Error::InvalidPartition(format!(
                    "descriptor {d} does not lead with coefficient one"
                )));
            }
            rest = rest.sub(&x.scale(&c))?;
            out.insert(d, c);
        }
        Ok(out)
    }

    /// Inverse of [`express_in_c`](Self::express_in_c).
    pub fn from_c(&self, n: usize, coords: &BTreeMap<CDescriptor, LaurentPoly>) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(n);
        for (d, c) in coords {
            out = out.add(&self.expand_c(d).scale(c))?;
        }
        Ok(out)
    }
}
