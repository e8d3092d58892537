//! The tensor representation of `E_n^B` on `V^{⊗n}`, where `V` has basis
//! `v_i^r` with `i ∈ ±{1..n}` and `0 ≤ r < d`. Operators act on the right
//! and are applied as local rules on one or two tensor factors.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::algebra::relations::{Relation, RelationStatus, Side};
use crate::algebra::{Algebra, AlgebraElement, Generator, Params};
use crate::coeff::LaurentPoly;
use crate::coxeter::CoxGen;
use crate::error::{out_of_range, Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::partitions::SetPartition0;

/// One tensor factor `v_i^r`.
pub type Factor = (i32, u32);

#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    n: usize,
    entries: BTreeMap<Vec<Factor>, LaurentPoly>,
}

impl TensorVector {
    pub fn zero(n: usize) -> Self {
        TensorVector {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[Factor], &LaurentPoly)> {
        self.entries.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn coeff(&self, idx: &[Factor]) -> LaurentPoly {
        self.entries.get(idx).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, idx: Vec<Factor>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (k, c) in &other.entries {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (k, d) in &self.entries {
            out.add_term(k.clone(), d * c);
        }
        out
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, r) in idx {
                write!(f, " v[{i}^{r}]")?;
            }
        }
        Ok(())
    }
}

/// The representation `Φ` on `V^{⊗n}` with `d` ranks.
#[derive(Clone, Debug)]
pub struct TensorRep {
    n: usize,
    d: u32,
    params: Params,
}

impl TensorRep {
    /// The faithful case `d = n + 1`.
    pub fn new(n: usize, params: Params) -> Self {
        Self::with_d(n, n as u32 + 1, params)
    }

    pub fn with_d(n: usize, d: u32, params: Params) -> Self {
        assert!(d >= 1, "at least one rank");
        TensorRep { n, d, params }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn basis_vector(&self, idx: Vec<Factor>) -> Result<TensorVector> {
        if idx.len() != self.n {
            return Err(Error::SizeMismatch(self.n, idx.len()));
        }
        let n = self.n as i32;
        for &(i, r) in &idx {
            if i == 0 || i.abs() > n {
                return Err(out_of_range("tensor index", i as i64, -(n as i64), n as i64));
            }
            if r >= self.d {
                return Err(out_of_range("rank", r as i64, 0, self.d as i64 - 1));
            }
        }
        let mut v = TensorVector::zero(self.n);
        v.add_term(idx, LaurentPoly::one());
        Ok(v)
    }

    /// Number of basis vectors of `V`.
    pub fn factor_dim(&self) -> usize {
        2 * self.n * self.d as usize
    }

    fn factor_slot(&self, (i, r): Factor) -> usize {
        let s = if i > 0 {
            (i - 1) as usize
        } else {
            self.n + (-i - 1) as usize
        };
        s * self.d as usize + r as usize
    }

    /// Position of a basis vector of `V^{⊗n}` in a flat enumeration.
    pub fn flat_index(&self, idx: &[Factor]) -> usize {
        idx.iter()
            .fold(0, |acc, &f| acc * self.factor_dim() + self.factor_slot(f))
    }

    pub fn all_factors(&self) -> Vec<Factor> {
        let n = self.n as i32;
        let mut out = Vec::new();
        for i in (1..=n).chain((1..=n).map(|i| -i)) {
            for r in 0..self.d {
                out.push((i, r));
            }
        }
        out
    }

    pub fn all_basis_vectors(&self) -> Vec<TensorVector> {
        let factors = self.all_factors();
        let mut idxs: Vec<Vec<Factor>> = vec![Vec::new()];
        for _ in 0..self.n {
            idxs = idxs
                .into_iter()
                .flat_map(|p| {
                    factors.iter().map(move |&f| {
                        let mut q = p.clone();
                        q.push(f);
                        q
                    })
                })
                .collect();
        }
        idxs.into_iter()
            .map(|i| self.basis_vector(i).expect("in range"))
            .collect()
    }

    pub fn random_basis_vector<R: Rng>(&self, rng: &mut R) -> TensorVector {
        let factors = self.all_factors();
        let idx = (0..self.n)
            .map(|_| factors[rng.gen_range(0..factors.len())])
            .collect();
        self.basis_vector(idx).expect("in range")
    }

    /// `v^I = v_1^{r_1} ⊗ ⋯ ⊗ v_n^{r_n}` where `r_i` is the label of the block
    /// holding `i`: `0` for the block of `0`, then `1, 2, …` by smallest
    /// element. Labels are reduced modulo `d`.
    pub fn v_of_partition(&self, i: &SetPartition0) -> Result<TensorVector> {
        if i.n() != self.n {
            return Err(Error::SizeMismatch(self.n, i.n()));
        }
        let mut label = vec![0u32; self.n + 1];
        for (k, block) in i.blocks().iter().enumerate() {
            for &x in block {
                label[x] = k as u32 % self.d;
            }
        }
        let idx = (1..=self.n).map(|p| (p as i32, label[p])).collect();
        self.basis_vector(idx)
    }

    fn push_gen(&self, out: &mut TensorVector, idx: &[Factor], c: &LaurentPoly, g: Generator) {
        match g {
            Generator::F(j) => {
                if idx[j - 1].1 == 0 {
                    out.add_term(idx.to_vec(), c.clone());
                }
            }
            Generator::E(k) => {
                if idx[k - 1].1 == idx[k].1 {
                    out.add_term(idx.to_vec(), c.clone());
                }
            }
            Generator::B => {
                let (i, r) = idx[0];
                let mut flipped = idx.to_vec();
                flipped[0] = (-i, r);
                out.add_term(flipped, c.clone());
                if r == 0 && i < 0 {
                    out.add_term(idx.to_vec(), c * self.params.qv());
                }
            }
            Generator::T(k) => {
                let (a, b) = (idx[k - 1], idx[k]);
                let mut swapped = idx.to_vec();
                swapped.swap(k - 1, k);
                if a.1 == b.1 && a.0 == b.0 {
                    out.add_term(swapped, c * self.params.u());
                } else {
                    out.add_term(swapped, c.clone());
                    if a.1 == b.1 && a.0 > b.0 {
                        out.add_term(idx.to_vec(), c * self.params.qu());
                    }
                }
            }
            Generator::TInv(k) => {
                self.push_gen(out, idx, c, Generator::T(k));
                self.push_gen(out, idx, &-(c * self.params.qu()), Generator::E(k));
            }
            Generator::BInv => {
                self.push_gen(out, idx, c, Generator::B);
                self.push_gen(out, idx, &-(c * self.params.qv()), Generator::F(1));
            }
        }
    }

    fn check_vec(&self, v: &TensorVector) -> Result<()> {
        if v.n != self.n {
            return Err(Error::SizeMismatch(self.n, v.n));
        }
        Ok(())
    }

    pub fn apply_gen(&self, v: &TensorVector, g: Generator) -> Result<TensorVector> {
        self.check_vec(v)?;
        g.check(self.n)?;
        let mut out = TensorVector::zero(self.n);
        for (idx, c) in &v.entries {
            self.push_gen(&mut out, idx, c, g);
        }
        Ok(out)
    }

    /// `(v) g_1 g_2 ⋯`, generators applied left to right.
    pub fn apply_word(&self, v: &TensorVector, word: &[Generator]) -> Result<TensorVector> {
        word.iter().try_fold(v.clone(), |acc, &g| self.apply_gen(&acc, g))
    }

    pub fn apply_side(&self, v: &TensorVector, side: &Side) -> Result<TensorVector> {
        let mut out = TensorVector::zero(self.n);
        for (c, word) in &side.0 {
            let part = self.apply_word(v, word)?;
            out = out.add(&part.scale(&self.params.coerce(c)))?;
        }
        Ok(out)
    }

    /// Whether `(idx) EF_I` is nonzero: ranks agree inside each block and
    /// vanish on the block of `0`.
    pub fn ef_fixes(i: &SetPartition0, idx: &[Factor]) -> bool {
        i.blocks().iter().all(|block| {
            let mut ranks = block.iter().map(|&x| if x == 0 { 0 } else { idx[x - 1].1 });
            let first = ranks.next().expect("nonempty block");
            ranks.all(|r| r == first)
        })
    }

    pub fn apply_elem(&self, v: &TensorVector, e: &AlgebraElement) -> Result<TensorVector> {
        self.check_vec(v)?;
        if e.n() != self.n {
            return Err(Error::SizeMismatch(self.n, e.n()));
        }
        let mut out = TensorVector::zero(self.n);
        for (i, w, c) in e.terms() {
            let mut fixed = TensorVector::zero(self.n);
            for (idx, d) in &v.entries {
                if Self::ef_fixes(i, idx) {
                    fixed.add_term(idx.clone(), d * &self.params.coerce(c));
                }
            }
            if fixed.is_zero() {
                continue;
            }
            let word: Vec<Generator> = w
                .reduced_word()
                .into_iter()
                .map(|g| match g {
                    CoxGen::R => Generator::B,
                    CoxGen::S(k) => Generator::T(k),
                })
                .collect();
            out = out.add(&self.apply_word(&fixed, &word)?)?;
        }
        Ok(out)
    }

    /// Checks each relation on each of the given vectors.
    pub fn check_relations(&self, rels: &[Relation], vectors: &[TensorVector]) -> Result<Vec<RelationStatus>> {
        let mut out = Vec::with_capacity(rels.len());
        for r in rels {
            let mut ok = true;
            for v in vectors {
                if self.apply_side(v, &r.lhs)? != self.apply_side(v, &r.rhs)? {
                    ok = false;
                    break;
                }
            }
            out.push(RelationStatus {
                relation: r.name.to_string(),
                index: r.index.clone(),
                status: if ok { "pass" } else { "fail" },
            });
        }
        Ok(out)
    }

    /// Coordinates of `(v^I Φ(x))_I` for every partition `I`, as one row.
    /// The map `x ↦ (v^I Φ(x))_I` is injective exactly when these rows for
    /// the basis `{EF_J T_w}` have full rank.
    pub fn certificate_row(&self, x: &AlgebraElement, partitions: &[(SetPartition0, TensorVector)]) -> Result<SparseRow> {
        let width = self.factor_dim().pow(self.n as u32);
        let mut row = SparseRow::new();
        for (k, (_, vi)) in partitions.iter().enumerate() {
            let image = self.apply_elem(vi, x)?;
            for (idx, c) in image.entries() {
                let val = c.as_constant().ok_or(Error::Unsupported {
                    what: "certificate rows need numeric parameters",
                    n: self.n,
                    max: 0,
                })?;
                row.insert(k * width + self.flat_index(idx), val);
            }
        }
        Ok(row)
    }

    /// Rank of the certificate rows over all of `basis_B(n)`.
    pub fn certificate_rank(&self) -> Result<usize> {
        if !self.params.is_symbolic() {
            let partitions: Vec<(SetPartition0, TensorVector)> = SetPartition0::enumerate(self.n)
                .into_iter()
                .map(|i| {
                    let v = self.v_of_partition(&i)?;
                    Ok((i, v))
                })
                .collect::<Result<_>>()?;
            let mut ech = Echelon::new();
            for x in Algebra::basis_b(self.n) {
                ech.insert(self.certificate_row(&x, &partitions)?);
            }
            return Ok(ech.rank());
        }
        Err(Error::Unsupported {
            what: "certificate rows need numeric parameters",
            n: self.n,
            max: 0,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankTrial {
    pub u: String,
    pub v: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub d: u32,
    pub expected: u128,
    pub trials: Vec<RankTrial>,
    pub ok: bool,
}

/// Exact ranks of the certificate rows at `trials` random points `(u, v)`.
/// `ok` holds when every trial reaches the dimension of `E_n^B`.
pub fn independence_certificate<R: Rng>(n: usize, d: u32, trials: usize, rng: &mut R) -> Result<CertificateReport> {
    if n > 3 {
        return Err(Error::Unsupported {
            what: "independence certificate",
            n,
            max: 3,
        });
    }
    let expected = crate::algebra::dimension(n);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (u, v): (BigRational, BigRational) = (crate::random::rational_point(rng), crate::random::rational_point(rng));
        let rep = TensorRep::with_d(n, d, Params::at(u.clone(), v.clone())?);
        out.push(RankTrial {
            u: u.to_string(),
            v: v.to_string(),
            rank: rep.certificate_rank()?,
        });
    }
    let ok = out.iter().all(|t| t.rank as u128 == expected);
    Ok(CertificateReport {
        n,
        d,
        expected,
        trials: out,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::relations::defining_relations;
    use crate::coeff::{rat, Var};
    use crate::coxeter::SignedPerm;
    use crate::random;

    fn rep(n: usize) -> TensorRep {
        TensorRep::new(n, Params::symbolic())
    }

    fn bv(r: &TensorRep, idx: &[Factor]) -> TensorVector {
        r.basis_vector(idx.to_vec()).unwrap()
    }

    #[test]
    fn local_rules() {
        let r = rep(2);
        let qv = LaurentPoly::q_minus_inv(Var::V);
        let qu = LaurentPoly::q_minus_inv(Var::U);
        // F keeps rank zero and kills the rest
        assert_eq!(r.apply_gen(&bv(&r, &[(1, 0), (2, 1)]), Generator::F(1)).unwrap(), bv(&r, &[(1, 0), (2, 1)]));
        assert!(r.apply_gen(&bv(&r, &[(1, 1), (2, 1)]), Generator::F(1)).unwrap().is_zero());
        assert!(r.apply_gen(&bv(&r, &[(1, 0), (2, 1)]), Generator::F(2)).unwrap().is_zero());
        // B flips the sign of the first index
        assert_eq!(r.apply_gen(&bv(&r, &[(1, 0), (2, 0)]), Generator::B).unwrap(), bv(&r, &[(-1, 0), (2, 0)]));
        assert_eq!(r.apply_gen(&bv(&r, &[(-2, 1), (1, 0)]), Generator::B).unwrap(), bv(&r, &[(2, 1), (1, 0)]));
        let expect = bv(&r, &[(1, 0), (2, 0)]).add(&bv(&r, &[(-1, 0), (2, 0)]).scale(&qv)).unwrap();
        assert_eq!(r.apply_gen(&bv(&r, &[(-1, 0), (2, 0)]), Generator::B).unwrap(), expect);
        // E tests equality of ranks
        assert!(r.apply_gen(&bv(&r, &[(1, 0), (2, 1)]), Generator::E(1)).unwrap().is_zero());
        assert_eq!(r.apply_gen(&bv(&r, &[(1, 2), (-2, 2)]), Generator::E(1)).unwrap(), bv(&r, &[(1, 2), (-2, 2)]));
        // T by comparison of signed indices
        let u = LaurentPoly::var(Var::U);
        assert_eq!(r.apply_gen(&bv(&r, &[(2, 1), (2, 1)]), Generator::T(1)).unwrap(), bv(&r, &[(2, 1), (2, 1)]).scale(&u));
        assert_eq!(r.apply_gen(&bv(&r, &[(-1, 1), (2, 1)]), Generator::T(1)).unwrap(), bv(&r, &[(2, 1), (-1, 1)]));
        let expect = bv(&r, &[(-1, 1), (2, 1)]).add(&bv(&r, &[(2, 1), (-1, 1)]).scale(&qu)).unwrap();
        assert_eq!(r.apply_gen(&bv(&r, &[(2, 1), (-1, 1)]), Generator::T(1)).unwrap(), expect);
        assert_eq!(r.apply_gen(&bv(&r, &[(2, 0), (1, 1)]), Generator::T(1)).unwrap(), bv(&r, &[(1, 1), (2, 0)]));
    }

    #[test]
    fn index_validation() {
        let r = rep(2);
        assert!(r.basis_vector(vec![(3, 0), (1, 0)]).is_err());
        assert!(r.basis_vector(vec![(0, 0), (1, 0)]).is_err());
        assert!(r.basis_vector(vec![(1, 3), (1, 0)]).is_err());
        assert!(r.basis_vector(vec![(1, 0)]).is_err());
        assert_eq!(r.all_basis_vectors().len(), 144);
    }

    #[test]
    fn unit_and_idempotent_terms() {
        let r = rep(3);
        let mut g = random::rng(7);
        for _ in 0..20 {
            let v = r.random_basis_vector(&mut g);
            assert_eq!(r.apply_elem(&v, &AlgebraElement::unit(3)).unwrap(), v);
        }
        for i in SetPartition0::enumerate(3) {
            let vi = r.v_of_partition(&i).unwrap();
            let ef = AlgebraElement::basis(i.clone(), SignedPerm::identity(3));
            assert_eq!(r.apply_elem(&vi, &ef).unwrap(), vi);
            // a coarser idempotent kills v^I
            for j in SetPartition0::enumerate(3) {
                let ej = AlgebraElement::basis(j.clone(), SignedPerm::identity(3));
                let fixed = !r.apply_elem(&vi, &ej).unwrap().is_zero();
                assert_eq!(fixed, j.refines(&i), "{j} on v^{i}");
            }
        }
    }

    /// On `v_1^{r_1} ⊗ ⋯ ⊗ v_n^{r_n}`, `T_w` sends factor `k` to `v_{m_k}^{r_{|m_k|}}`
    /// where `(m_1, …, m_n)` is the window of `w`.
    #[test]
    fn permutation_images_are_monomial() {
        for n in 1..=3 {
            let r = rep(n);
            let ranks: Vec<u32> = (0..n as u32).map(|k| k % (n as u32 + 1)).collect();
            let idx: Vec<Factor> = (1..=n).map(|p| (p as i32, ranks[p - 1])).collect();
            let v = bv(&r, &idx);
            for w in SignedPerm::enumerate(n) {
                let img = r.apply_elem(&v, &AlgebraElement::basis(SetPartition0::singletons(n), w.clone())).unwrap();
                assert_eq!(img.len(), 1, "{w:?}");
                let (out, c) = img.entries().next().unwrap();
                assert!(c.is_one());
                let expect: Vec<Factor> = (1..=n)
                    .map(|k| {
                        let m = w.apply(k as i32);
                        (m, ranks[m.unsigned_abs() as usize - 1])
                    })
                    .collect();
                assert_eq!(out, expect.as_slice(), "{w:?}");
            }
        }
    }

    #[test]
    fn relations_hold_on_all_vectors_small() {
        for n in 1..=2 {
            let r = rep(n);
            let vs = r.all_basis_vectors();
            for st in r.check_relations(&defining_relations(n), &vs).unwrap() {
                assert_eq!(st.status, "pass", "{} {}", st.relation, st.index);
            }
        }
    }

    #[test]
    fn relations_hold_at_a_point_sampled() {
        let r = TensorRep::new(3, Params::at(rat(3, 2), rat(-5, 7)).unwrap());
        let mut g = random::rng(11);
        let vs: Vec<_> = (0..60).map(|_| r.random_basis_vector(&mut g)).collect();
        for st in r.check_relations(&defining_relations(3), &vs).unwrap() {
            assert_eq!(st.status, "pass", "{} {}", st.relation, st.index);
        }
    }

    #[test]
    fn homomorphism_on_random_pairs() {
        let alg = Algebra::symbolic();
        let mut g = random::rng(3);
        for n in 1..=3 {
            let r = rep(n);
            for _ in 0..25 {
                let a = random::basis_element(&mut g, n);
                let b = random::basis_element(&mut g, n);
                let v = r.random_basis_vector(&mut g);
                let ab = alg.mul(&a, &b).unwrap();
                let lhs = r.apply_elem(&v, &ab).unwrap();
                let rhs = r.apply_elem(&r.apply_elem(&v, &a).unwrap(), &b).unwrap();
                assert_eq!(lhs, rhs, "{a:?} * {b:?}");
            }
        }
    }

    #[test]
    fn certificate_small() {
        let mut g = random::rng(5);
        for (n, dim) in [(1usize, 4usize), (2, 40)] {
            let rep = independence_certificate(n, n as u32 + 1, 2, &mut g).unwrap();
            assert!(rep.ok);
            assert!(rep.trials.iter().all(|t| t.rank == dim));
        }
    }

    #[test]
    fn certificate_fails_with_one_rank() {
        let mut g = random::rng(5);
        let rep = independence_certificate(2, 1, 1, &mut g).unwrap();
        assert!(!rep.ok);
        // with a single rank every idempotent acts trivially
        assert_eq!(rep.trials[0].rank, 8);
    }
}
