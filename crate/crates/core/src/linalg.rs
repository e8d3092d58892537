//! Exact rank of sparse rational matrices.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

pub type SparseRow = BTreeMap<usize, BigRational>;

/// Row echelon form built one row at a time. Every stored pivot row has its
/// pivot as smallest column and leading entry one.
#[derive(Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` and keeps it if independent. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&c, lead)) = row.iter().next() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = lead.clone();
                    for (col, val) in p {
                        let e = row.entry(*col).or_insert_with(BigRational::zero);
                        *e -= &f * val;
                        if e.is_zero() {
                            row.remove(col);
                        }
                    }
                }
                None => {
                    let inv = lead.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }
}

pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}
