//! Set partitions of `{0, 1, ..., n}`, where `0` stands for the fixed strand.
//!
//! A partition is stored as a block-minimum map: `parent[i]` is the smallest
//! element of the block containing `i`. Removing an element other than the
//! largest one leaves a hole in the ground set; holes are stored as
//! [`ABSENT`] and trailing holes are trimmed, so equal partitions have equal
//! maps.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coxeter::Perm;
use crate::error::{out_of_range, Error, Result};

const ABSENT: u8 = u8::MAX;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition0 {
    parent: Vec<u8>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind((0..len).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller root so roots are block minima
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
    }
}

impl SetPartition0 {
    /// The partition of `{0..n}` into singletons.
    pub fn singletons(n: usize) -> Self {
        assert!(n < ABSENT as usize, "n too large");
        SetPartition0 {
            parent: (0..=n as u8).collect(),
        }
    }

    /// Builds a partition of `{0..n}` from its non-singleton blocks.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut uf = UnionFind::new(n + 1);
        for block in blocks {
            for &i in block.iter() {
                if i > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} outside 0..={n}"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("element {i} repeated")));
                }
                seen[i] = true;
            }
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let present = vec![true; n + 1];
        Ok(Self::from_union_find(&mut uf, &present))
    }

    fn from_union_find(uf: &mut UnionFind, present: &[bool]) -> Self {
        let mut parent: Vec<u8> = (0..present.len())
            .map(|i| {
                if present[i] {
                    uf.find(i) as u8
                } else {
                    ABSENT
                }
            })
            .collect();
        while parent.last() == Some(&ABSENT) {
            parent.pop();
        }
        SetPartition0 { parent }
    }

    fn union_find(&self, len: usize) -> (UnionFind, Vec<bool>) {
        let mut uf = UnionFind::new(len);
        let mut present = vec![false; len];
        for (i, &p) in self.parent.iter().enumerate() {
            if p != ABSENT {
                present[i] = true;
                uf.union(i, p as usize);
            }
        }
        (uf, present)
    }

    /// Largest label of the ground set.
    pub fn n(&self) -> usize {
        self.parent.len().saturating_sub(1)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.parent.get(i).is_some_and(|&p| p != ABSENT)
    }

    pub fn ground(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.parent.len()).filter(|&i| self.contains(i))
    }

    pub fn block_min(&self, i: usize) -> Option<usize> {
        match self.parent.get(i) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        matches!((self.block_min(i), self.block_min(j)), (Some(a), Some(b)) if a == b)
    }

    /// Whether `i` lies in a block of size at least two.
    pub fn in_support(&self, i: usize) -> bool {
        match self.block_min(i) {
            None => false,
            Some(m) => self
                .parent
                .iter()
                .enumerate()
                .any(|(j, &p)| j != i && p as usize == m),
        }
    }

    pub fn is_singletons(&self) -> bool {
        self.parent
            .iter()
            .enumerate()
            .all(|(i, &p)| p == ABSENT || p as usize == i)
    }

    /// All blocks (including singletons), sorted by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (i, &p) in self.parent.iter().enumerate() {
            if p == ABSENT {
                continue;
            }
            if p as usize == i {
                out.push(vec![i]);
            } else {
                let b = out.iter_mut().find(|b| b[0] == p as usize).expect("min first");
                b.push(i);
            }
        }
        out
    }

    pub fn nontrivial_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks().into_iter().filter(|b| b.len() > 1).collect()
    }

    /// `I * A`: the finest coarsening of `self` in which `A` lies in one block.
    pub fn join_set(&self, a: &[usize]) -> Result<Self> {
        for &i in a {
            if !self.contains(i) {
                return Err(out_of_range("partition element", i as i64, 0, self.n() as i64));
            }
        }
        let len = self.parent.len();
        let (mut uf, present) = self.union_find(len);
        for w in a.windows(2) {
            uf.union(w[0], w[1]);
        }
        Ok(Self::from_union_find(&mut uf, &present))
    }

    /// `I * {i, j}` for two ground elements, panicking on bad input.
    pub(crate) fn join_pair(&self, i: usize, j: usize) -> Self {
        if self.same_block(i, j) {
            return self.clone();
        }
        self.join_set(&[i, j]).expect("elements in range")
    }

    /// Lattice join. Ground sets may differ; an element missing from one side
    /// counts as a singleton there.
    pub fn join(&self, other: &Self) -> Self {
        let len = self.parent.len().max(other.parent.len());
        let (mut uf, mut present) = self.union_find(len);
        for (i, &p) in other.parent.iter().enumerate() {
            if p != ABSENT {
                present[i] = true;
                uf.union(i, p as usize);
            }
        }
        Self::from_union_find(&mut uf, &present)
    }

    /// Same ground set, and every block of `self` is inside a block of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        self.parent.len() == other.parent.len()
            && self.ground().all(|i| other.contains(i))
            && &self.join(other) == other
    }

    /// Deletes `k >= 1` from the ground set; the other labels are unchanged.
    pub fn remove(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(out_of_range("removed element", 0, 1, self.n() as i64));
        }
        if !self.contains(k) {
            return Err(out_of_range("removed element", k as i64, 1, self.n() as i64));
        }
        let len = self.parent.len();
        let (mut uf, mut present) = self.union_find(len);
        present[k] = false;
        // rebuild without k
        let mut uf2 = UnionFind::new(len);
        let mut by_root: Vec<Option<usize>> = vec![None; len];
        for i in (0..len).filter(|&i| present[i]) {
            let r = uf.find(i);
            match by_root[r] {
                None => by_root[r] = Some(i),
                Some(first) => uf2.union(first, i),
            }
        }
        Ok(Self::from_union_find(&mut uf2, &present))
    }

    /// Blockwise image under a permutation of `{1..m}` (0 is fixed). Labels
    /// beyond `m` are fixed as well.
    pub fn apply_perm(&self, sigma: &Perm) -> Self {
        let len = self.parent.len().max(sigma.n() + 1);
        let img = |i: usize| if i <= sigma.n() { sigma.apply(i) } else { i };
        let mut uf = UnionFind::new(len);
        let mut present = vec![false; len];
        for (i, &p) in self.parent.iter().enumerate() {
            if p != ABSENT {
                present[img(i)] = true;
                uf.union(img(i), img(p as usize));
            }
        }
        Self::from_union_find(&mut uf, &present)
    }

    /// `tau_{n,k}(I) = (I * {n, k}) \ n` for `k < n`.
    pub fn tau(&self, n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(out_of_range("tau lower index", k as i64, 0, n as i64 - 1));
        }
        self.join_set(&[n, k])?.remove(n)
    }

    /// Adds `extra` new singleton labels on top.
    pub fn extend(&self, extra: usize) -> Self {
        let mut parent = self.parent.clone();
        let n = parent.len();
        parent.extend((n..n + extra).map(|i| i as u8));
        SetPartition0 { parent }
    }

    /// Splits into the pair `(E-partition, F-set)` with `EF_I = E_{I'} F_A`.
    pub fn psi(&self) -> (SetPartition0, BTreeSet<usize>) {
        let zero_block: BTreeSet<usize> = self
            .ground()
            .filter(|&i| i != 0 && self.same_block(i, 0))
            .collect();
        if zero_block.is_empty() {
            return (self.clone(), zero_block);
        }
        let mut parent = self.parent.clone();
        for &i in &zero_block {
            parent[i] = i as u8;
        }
        // non-zero blocks keep their minima
        (SetPartition0 { parent }, zero_block)
    }

    /// Inverse of [`psi`](Self::psi): `J * (A ∪ {0})`.
    pub fn phi(j: &SetPartition0, a: &BTreeSet<usize>) -> Result<Self> {
        let mut set: Vec<usize> = vec![0];
        set.extend(a.iter().copied());
        j.join_set(&set)
    }

    /// Every partition of `{0..n}`, via restricted growth strings.
    pub fn enumerate(n: usize) -> Vec<SetPartition0> {
        let len = n + 1;
        let mut out = Vec::new();
        let mut rgs = vec![0usize; len];
        fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition0>) {
            if pos == rgs.len() {
                let mut mins: Vec<usize> = Vec::new();
                let parent = rgs
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| {
                        if b == mins.len() {
                            mins.push(i);
                        }
                        mins[b] as u8
                    })
                    .collect();
                out.push(SetPartition0 { parent });
                return;
            }
            for b in 0..=max + 1 {
                rgs[pos] = b;
                rec(pos + 1, max.max(b), rgs, out);
            }
        }
        rgs[0] = 0;
        if len == 1 {
            out.push(SetPartition0 { parent: vec![0] });
        } else {
            rec(1, 0, &mut rgs, &mut out);
        }
        out
    }
}

impl fmt::Display for SetPartition0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.nontrivial_blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SetPartition0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n())
    }
}

impl Serialize for SetPartition0 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition0 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        let covered = blocks.iter().map(Vec::len).sum::<usize>();
        if covered != n + 1 {
            return Err(D::Error::custom("blocks must cover 0..=n"));
        }
        let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
        SetPartition0::from_blocks(n, &refs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> SetPartition0 {
        SetPartition0::from_blocks(n, blocks).unwrap()
    }

    /// Bell numbers by the triangle recurrence.
    fn bell(m: usize) -> usize {
        let mut row = vec![1usize];
        for _ in 0..m {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            row = next;
        }
        row[0]
    }

    /// Connected components of the union of both block graphs.
    fn join_oracle(a: &SetPartition0, b: &SetPartition0) -> Vec<Vec<usize>> {
        let len = a.n().max(b.n()) + 1;
        let mut adj = vec![vec![false; len]; len];
        for p in [a, b] {
            for blk in p.blocks() {
                for &i in &blk {
                    for &j in &blk {
                        adj[i][j] = true;
                    }
                }
            }
        }
        let mut seen = vec![false; len];
        let mut comps = Vec::new();
        for s in 0..len {
            if seen[s] || !(a.contains(s) || b.contains(s)) {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in 0..len {
                    if adj[i][j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    #[test]
    fn join_set_examples() {
        let i = part(8, &[&[1, 4], &[2, 5], &[3, 6, 7]]);
        assert_eq!(
            i.join_set(&[4, 5, 8]).unwrap(),
            part(8, &[&[1, 2, 4, 5, 8], &[3, 6, 7]])
        );
        assert_eq!(
            i.join_set(&[2, 3]).unwrap(),
            part(8, &[&[1, 4], &[2, 3, 5, 6, 7]])
        );
        assert_eq!(i.join_set(&[6, 7]).unwrap(), i);
        assert!(i.join_set(&[9]).is_err());
    }

    #[test]
    fn join_examples() {
        let i = part(8, &[&[1, 4], &[2, 5], &[3, 6, 7]]);
        assert_eq!(i.join(&i), i);
        assert_eq!(i.join(&SetPartition0::singletons(8)), i);
        let a = part(3, &[&[1, 2]]);
        let b = part(3, &[&[2, 3]]);
        let j = a.join(&b);
        assert_eq!(j, part(3, &[&[1, 2, 3]]));
        assert_eq!(j.blocks(), join_oracle(&a, &b));
    }

    #[test]
    fn join_matches_graph_oracle() {
        let all = SetPartition0::enumerate(3);
        for a in &all {
            for b in &all {
                let j = a.join(b);
                assert_eq!(j.blocks(), join_oracle(a, b));
                assert_eq!(j, b.join(a));
                assert!(a.refines(&j) && b.refines(&j));
            }
        }
    }

    #[test]
    fn remove_examples() {
        let i = part(6, &[&[1, 2, 3], &[4, 6]]);
        let r = i.remove(6).unwrap();
        assert_eq!(r, part(5, &[&[1, 2, 3]]));
        assert_eq!(
            SetPartition0::singletons(4).remove(4).unwrap(),
            SetPartition0::singletons(3)
        );
        assert_eq!(
            part(3, &[&[0, 3]]).remove(3).unwrap(),
            SetPartition0::singletons(2)
        );
        assert!(i.remove(0).is_err());
        // removing a block minimum from the middle keeps the remaining labels
        let r = part(4, &[&[1, 3, 4]]).remove(1).unwrap();
        assert!(!r.contains(1));
        assert!(r.same_block(3, 4));
        assert_eq!(r.to_string(), "({3,4})");
    }

    #[test]
    fn apply_perm_examples() {
        let i = part(3, &[&[1, 2]]);
        assert_eq!(i.apply_perm(&Perm::identity(3)), i);
        assert_eq!(i.apply_perm(&Perm::transposition(3, 1)), i);
        assert_eq!(
            i.apply_perm(&Perm::transposition(3, 2)),
            part(3, &[&[1, 3]])
        );
    }

    #[test]
    fn tau_examples() {
        assert_eq!(
            SetPartition0::singletons(2).tau(2, 1).unwrap(),
            SetPartition0::singletons(1)
        );
        assert_eq!(
            part(3, &[&[1, 3]]).tau(3, 1).unwrap(),
            SetPartition0::singletons(2)
        );
        assert_eq!(part(3, &[&[0, 3]]).tau(3, 2).unwrap(), part(2, &[&[0, 2]]));
        assert!(SetPartition0::singletons(3).tau(2, 2).is_err());
        assert!(SetPartition0::singletons(3).tau(2, 3).is_err());
    }

    #[test]
    fn psi_phi_examples() {
        let (e, f) = SetPartition0::singletons(3).psi();
        assert_eq!(e, SetPartition0::singletons(3));
        assert!(f.is_empty());

        let i = part(6, &[&[0, 2, 3, 5], &[4, 6]]);
        let (e, f) = i.psi();
        assert_eq!(e, part(6, &[&[4, 6]]));
        assert_eq!(f, BTreeSet::from([2, 3, 5]));

        let (e, f) = part(1, &[&[0, 1]]).psi();
        assert_eq!(e, SetPartition0::singletons(1));
        assert_eq!(f, BTreeSet::from([1]));

        let j = part(6, &[&[2, 3, 5], &[4, 6]]);
        assert_eq!(SetPartition0::phi(&j, &BTreeSet::from([3])).unwrap(), i);
        assert_eq!(
            SetPartition0::phi(&SetPartition0::singletons(2), &BTreeSet::new()).unwrap(),
            SetPartition0::singletons(2)
        );
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..=6 {
            let all = SetPartition0::enumerate(n);
            assert_eq!(all.len(), bell(n + 1), "n = {n}");
            let set: BTreeSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
        }
        assert_eq!(SetPartition0::enumerate(1).len(), 2);
        assert_eq!(SetPartition0::enumerate(2).len(), 5);
        assert_eq!(SetPartition0::enumerate(3).len(), 15);
    }

    #[test]
    fn text_and_json_forms() {
        let i = part(3, &[&[0, 2], &[1, 3]]);
        assert_eq!(i.to_string(), "({0,2},{1,3})");
        assert_eq!(SetPartition0::singletons(2).to_string(), "()");
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, "[[0,2],[1,3]]");
        let back: SetPartition0 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
        assert!(serde_json::from_str::<SetPartition0>("[[0,2],[2,3]]").is_err());
    }

    fn support(i: &SetPartition0) -> Vec<usize> {
        (1..=i.n()).filter(|&k| i.in_support(k)).collect()
    }

    #[test]
    fn perm_commutes_with_remove() {
        for n in 1..=4 {
            for sigma in Perm::all(n) {
                for i in SetPartition0::enumerate(n) {
                    for k in support(&i) {
                        let lhs = i.remove(k).unwrap().apply_perm(&sigma);
                        let rhs = i.apply_perm(&sigma).remove(sigma.apply(k)).unwrap();
                        assert_eq!(lhs, rhs, "sigma={sigma:?} I={i:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn perm_commutes_with_join_pair() {
        for n in 1..=4 {
            for sigma in Perm::all(n) {
                for i in SetPartition0::enumerate(n) {
                    for j in 1..=n {
                        for k in 1..=n {
                            let lhs = i.join_set(&[j, k]).unwrap().apply_perm(&sigma);
                            let rhs = i
                                .apply_perm(&sigma)
                                .join_set(&[sigma.apply(j), sigma.apply(k)])
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn perm_commutes_with_tau() {
        let mut checked = 0;
        for n in 2..=4 {
            for sigma in Perm::all(n) {
                for i in SetPartition0::enumerate(n) {
                    for k in 1..n {
                        let (sn, sk) = (sigma.apply(n), sigma.apply(k));
                        if sk > sn {
                            continue;
                        }
                        let lhs = i.tau(n, k).unwrap().apply_perm(&sigma);
                        let rhs = i.apply_perm(&sigma).tau(sn, sk).unwrap();
                        assert_eq!(lhs, rhs);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    /// `sigma_{j,k}^{-1}` from its closed form.
    fn sigma_inv(n: usize, j: usize, k: usize) -> Perm {
        let images = (1..=n)
            .map(|i| {
                if i == j {
                    k
                } else if k <= i && i < j {
                    i + 1
                } else {
                    i
                }
            })
            .collect();
        Perm::from_images(images).unwrap()
    }

    #[test]
    fn sigma_closed_form_matches_transpositions() {
        for n in 1..=5 {
            for j in 1..=n {
                for k in 1..=j {
                    let word = (k..j)
                        .rev()
                        .fold(Perm::identity(n), |acc, i| acc.compose(&Perm::transposition(n, i)));
                    assert_eq!(word, Perm::cycle_down(n, j, k));
                    assert_eq!(word.inverse(), sigma_inv(n, j, k));
                }
            }
        }
    }

    #[test]
    fn join_then_contract_equivalence() {
        for n in 2..=4 {
            for j in SetPartition0::enumerate(n - 1) {
                for i in SetPartition0::enumerate(n) {
                    for k in 1..n {
                        let a = j.apply_perm(&sigma_inv(n, n, k));
                        let lhs = a.join(&i).tau(n, k).unwrap();
                        let b = j.apply_perm(&sigma_inv(n - 1, n - 1, k));
                        let rhs = b.join(&i.tau(n, k).unwrap());
                        assert_eq!(lhs, rhs, "J={j:?} I={i:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_phi_round_trip() {
        for n in 0..=6 {
            for i in SetPartition0::enumerate(n) {
                let (e, f) = i.psi();
                assert!(!f.contains(&0));
                assert!(!(1..=n).any(|k| k != 0 && e.same_block(0, k)));
                assert_eq!(SetPartition0::phi(&e, &f).unwrap(), i);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn join_is_a_semilattice(a in 0usize..52, b in 0usize..52, c in 0usize..52) {
            let all = SetPartition0::enumerate(4);
            let (a, b, c) = (&all[a], &all[b], &all[c]);
            proptest::prop_assert_eq!(a.join(b), b.join(a));
            proptest::prop_assert_eq!(a.join(&b.join(c)), a.join(b).join(c));
            proptest::prop_assert_eq!(a.join(a), a.clone());
        }
    }
}
