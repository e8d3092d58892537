//! Elements of the algebra `E_n^B` in the basis `{EF_I T_w}` and their
//! multiplication.

mod cbasis;
mod elements;
pub mod relations;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{LaurentPoly, Var};
use crate::coxeter::{CoxGen, SignedPerm};
use crate::error::{out_of_range, Error, Result};
use crate::partitions::SetPartition0;

pub use cbasis::CDescriptor;
pub use elements::{block_word, word_b, word_bbar, word_t_minus, word_t_plus, word_tbar_minus};

/// A defining generator of `E_n^B` or the inverse of an invertible one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    T(usize),
    TInv(usize),
    E(usize),
    F(usize),
    B,
    BInv,
}

impl Generator {
    pub fn check(&self, n: usize) -> Result<()> {
        match *self {
            Generator::T(i) | Generator::TInv(i) | Generator::E(i) => {
                if i == 0 || i >= n {
                    return Err(out_of_range("generator", i as i64, 1, n as i64 - 1));
                }
            }
            Generator::F(j) => {
                if j == 0 || j > n {
                    return Err(out_of_range("generator", j as i64, 1, n as i64));
                }
            }
            Generator::B | Generator::BInv => {
                if n == 0 {
                    return Err(out_of_range("generator", 1, 1, 0));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T(i) => write!(f, "T{i}"),
            Generator::TInv(i) => write!(f, "T{i}^-1"),
            Generator::E(i) => write!(f, "E{i}"),
            Generator::F(j) => write!(f, "F{j}"),
            Generator::B => f.write_str("B1"),
            Generator::BInv => f.write_str("B1^-1"),
        }
    }
}

/// The structure parameters `u`, `v`, either symbolic or fixed rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    point: Option<(BigRational, BigRational)>,
    u: LaurentPoly,
    v: LaurentPoly,
    qu: LaurentPoly,
    qv: LaurentPoly,
}

impl Params {
    pub fn symbolic() -> Self {
        Params {
            point: None,
            u: LaurentPoly::var(Var::U),
            v: LaurentPoly::var(Var::V),
            qu: LaurentPoly::q_minus_inv(Var::U),
            qv: LaurentPoly::q_minus_inv(Var::V),
        }
    }

    /// `u` and `v` specialized to nonzero rationals.
    pub fn at(u: BigRational, v: BigRational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::Pole("u"));
        }
        if v.is_zero() {
            return Err(Error::Pole("v"));
        }
        let q = |t: &BigRational| LaurentPoly::constant(t - t.recip());
        Ok(Params {
            qu: q(&u),
            qv: q(&v),
            u: LaurentPoly::constant(u.clone()),
            v: LaurentPoly::constant(v.clone()),
            point: Some((u, v)),
        })
    }

    pub fn is_symbolic(&self) -> bool {
        self.point.is_none()
    }

    pub fn point(&self) -> Option<&(BigRational, BigRational)> {
        self.point.as_ref()
    }

    pub fn u(&self) -> &LaurentPoly {
        &self.u
    }

    pub fn v(&self) -> &LaurentPoly {
        &self.v
    }

    /// `u - u^{-1}`
    pub fn qu(&self) -> &LaurentPoly {
        &self.qu
    }

    /// `v - v^{-1}`
    pub fn qv(&self) -> &LaurentPoly {
        &self.qv
    }

    /// Substitutes the fixed values of `u`, `v` (identity when symbolic).
    pub fn coerce(&self, p: &LaurentPoly) -> LaurentPoly {
        match &self.point {
            None => p.clone(),
            Some((u, v)) => {
                let mut pt: [Option<BigRational>; 6] = Default::default();
                pt[Var::U.index()] = Some(u.clone());
                pt[Var::V.index()] = Some(v.clone());
                p.specialize(&pt).expect("u, v nonzero")
            }
        }
    }
}

pub type Key = (SetPartition0, SignedPerm);

/// A finite combination of basis elements `EF_I T_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Key, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        Self::basis(SetPartition0::singletons(n), SignedPerm::identity(n))
    }

    /// The basis element `EF_I T_w`.
    pub fn basis(i: SetPartition0, w: SignedPerm) -> Self {
        Self::term(i, w, LaurentPoly::one())
    }

    pub fn term(i: SetPartition0, w: SignedPerm, c: LaurentPoly) -> Self {
        assert_eq!(i.n(), w.n(), "partition and permutation sizes differ");
        let mut e = Self::zero(w.n());
        e.add_term(i, w, c);
        e
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(SetPartition0::singletons(0), SignedPerm::identity(0), c)
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SetPartition0, SignedPerm, LaurentPoly)>,
    {
        let mut e = Self::zero(n);
        for (i, w, c) in terms {
            if i.n() != n || w.n() != n || (0..=n).any(|k| !i.contains(k)) {
                return Err(Error::SizeMismatch(n, i.n().max(w.n())));
            }
            e.add_term(i, w, c);
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartition0, &SignedPerm, &LaurentPoly)> {
        self.terms.iter().map(|((i, w), c)| (i, w, c))
    }

    pub fn coeff(&self, i: &SetPartition0, w: &SignedPerm) -> LaurentPoly {
        self.terms
            .get(&(i.clone(), w.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// The coefficient of the unit, i.e. the value of an element of `E_0`.
    pub fn scalar_part(&self) -> LaurentPoly {
        self.coeff(&SetPartition0::singletons(self.n), &SignedPerm::identity(self.n))
    }

    pub fn add_term(&mut self, i: SetPartition0, w: SignedPerm, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, w)) {
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

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for ((i, w), c) in &other.terms {
            out.add_term(i.clone(), w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&LaurentPoly::from_int(-1))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for ((i, w), d) in &self.terms {
            out.add_term(i.clone(), w.clone(), d * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for ((i, w), c) in &self.terms {
            out.add_term(i.clone(), w.clone(), f(c));
        }
        out
    }

    /// The inclusion `E_n -> E_{n+extra}`.
    pub fn embed(&self, extra: usize) -> Self {
        let mut out = Self::zero(self.n + extra);
        for ((i, w), c) in &self.terms {
            out.add_term(i.extend(extra), w.extend(extra), c.clone());
        }
        out
    }

    /// Right multiplication by the idempotent `EF_J`.
    pub fn mul_ef(&self, j: &SetPartition0) -> Result<Self> {
        if j.n() != self.n {
            return Err(Error::SizeMismatch(self.n, j.n()));
        }
        if j.is_singletons() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.n);
        for ((i, w), c) in &self.terms {
            let moved = j.apply_perm(&w.eta());
            out.add_term(i.join(&moved), w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Largest Coxeter length among the terms.
    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|(_, w)| w.length()).max()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, w), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) EF{i} T{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {self}", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    partition: SetPartition0,
    window: Vec<i32>,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    n: usize,
    terms: Vec<JsonTerm>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonElement {
            n: self.n,
            terms: self
                .terms()
                .map(|(i, w, c)| JsonTerm {
                    partition: i.clone(),
                    window: w.window().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = JsonElement::deserialize(d)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let w = SignedPerm::from_window(t.window).map_err(D::Error::custom)?;
            terms.push((t.partition, w, t.coeff));
        }
        AlgebraElement::from_terms(j.n, terms).map_err(D::Error::custom)
    }
}

/// Multiplication context: structure parameters plus memo tables for the
/// second basis and the traces.
pub struct Algebra {
    params: Params,
    pub(crate) c_expansions: RwLock<HashMap<CDescriptor, Arc<AlgebraElement>>>,
    pub(crate) theta_cache: RwLock<HashMap<CDescriptor, Arc<AlgebraElement>>>,
    pub(crate) trace_cache: RwLock<HashMap<CDescriptor, LaurentPoly>>,
}

impl Algebra {
    pub fn new(params: Params) -> Self {
        Algebra {
            params,
            c_expansions: RwLock::new(HashMap::new()),
            theta_cache: RwLock::new(HashMap::new()),
            trace_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn symbolic() -> Self {
        Self::new(Params::symbolic())
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn gen_elem(&self, g: Generator, n: usize) -> Result<AlgebraElement> {
        g.check(n)?;
        let one = SetPartition0::singletons(n);
        let id = SignedPerm::identity(n);
        let s = |i: usize| SignedPerm::generator(n, CoxGen::S(i)).expect("checked");
        let r = || SignedPerm::generator(n, CoxGen::R).expect("checked");
        Ok(match g {
            Generator::T(i) => AlgebraElement::basis(one, s(i)),
            Generator::E(i) => AlgebraElement::basis(one.join_pair(i, i + 1), id),
            Generator::F(j) => AlgebraElement::basis(one.join_pair(0, j), id),
            Generator::B => AlgebraElement::basis(one, r()),
            Generator::TInv(i) => {
                let mut e = AlgebraElement::basis(one.clone(), s(i));
                e.add_term(one.join_pair(i, i + 1), id, -self.params.qu());
                e
            }
            Generator::BInv => {
                let mut e = AlgebraElement::basis(one.clone(), r());
                e.add_term(one.join_pair(0, 1), id, -self.params.qv());
                e
            }
        })
    }

    fn push_gen(&self, out: &mut AlgebraElement, i: &SetPartition0, w: &SignedPerm, c: &LaurentPoly, g: Generator) {
        let abs = |w: &SignedPerm, k: usize| w.apply(k as i32).unsigned_abs() as usize;
        match g {
            Generator::E(k) => {
                out.add_term(i.join_pair(abs(w, k), abs(w, k + 1)), w.clone(), c.clone());
            }
            Generator::F(j) => {
                out.add_term(i.join_pair(0, abs(w, j)), w.clone(), c.clone());
            }
            Generator::T(k) => {
                let ws = w.mul_gen(CoxGen::S(k));
                if w.is_right_descent(CoxGen::S(k)) {
                    let joined = i.join_pair(abs(&ws, k), abs(&ws, k + 1));
                    out.add_term(joined, w.clone(), c * self.params.qu());
                }
                out.add_term(i.clone(), ws, c.clone());
            }
            Generator::B => {
                let wr = w.mul_gen(CoxGen::R);
                if w.is_right_descent(CoxGen::R) {
                    let joined = i.join_pair(0, abs(&wr, 1));
                    out.add_term(joined, w.clone(), c * self.params.qv());
                }
                out.add_term(i.clone(), wr, c.clone());
            }
            Generator::TInv(k) => {
                self.push_gen(out, i, w, c, Generator::T(k));
                self.push_gen(out, i, w, &-(c * self.params.qu()), Generator::E(k));
            }
            Generator::BInv => {
                self.push_gen(out, i, w, c, Generator::B);
                self.push_gen(out, i, w, &-(c * self.params.qv()), Generator::F(1));
            }
        }
    }

    pub fn mul_gen_right(&self, e: &AlgebraElement, g: Generator) -> Result<AlgebraElement> {
        g.check(e.n)?;
        let mut out = AlgebraElement::zero(e.n);
        for ((i, w), c) in &e.terms {
            self.push_gen(&mut out, i, w, c, g);
        }
        Ok(out)
    }

    /// Right multiplication by `T_w`, following a reduced word of `w`.
    pub fn mul_tw(&self, e: &AlgebraElement, w: &SignedPerm) -> Result<AlgebraElement> {
        if w.n() != e.n {
            return Err(Error::SizeMismatch(e.n, w.n()));
        }
        let mut cur = e.clone();
        for g in w.reduced_word() {
            let g = match g {
                CoxGen::R => Generator::B,
                CoxGen::S(i) => Generator::T(i),
            };
            cur = self.mul_gen_right(&cur, g)?;
        }
        Ok(cur)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        a.check_same(b)?;
        let mut out = AlgebraElement::zero(a.n);
        for ((j, v), c) in &b.terms {
            let part = self.mul_tw(&a.mul_ef(j)?, v)?;
            for ((i, w), d) in part.terms {
                out.add_term(i, w, d * c);
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[&AlgebraElement]) -> Result<AlgebraElement> {
        let (first, rest) = factors.split_first().ok_or(Error::SizeMismatch(0, 0))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, f| self.mul(&acc, f))
    }

    /// The product of a word of generators in `E_n`.
    pub fn eval_word(&self, n: usize, word: &[Generator]) -> Result<AlgebraElement> {
        self.apply_word(&AlgebraElement::unit(n), word)
    }

    pub fn apply_word(&self, e: &AlgebraElement, word: &[Generator]) -> Result<AlgebraElement> {
        word.iter().try_fold(e.clone(), |acc, &g| self.mul_gen_right(&acc, g))
    }

    /// The basis `{EF_I T_w}` in a fixed order.
    pub fn basis_b(n: usize) -> Vec<AlgebraElement> {
        let perms = SignedPerm::enumerate(n);
        SetPartition0::enumerate(n)
            .into_iter()
            .flat_map(|i| {
                perms
                    .iter()
                    .map(move |w| AlgebraElement::basis(i.clone(), w.clone()))
            })
            .collect()
    }

    /// Specializes the coefficients to this context's `u`, `v`.
    pub fn coerce(&self, e: &AlgebraElement) -> AlgebraElement {
        if self.params.is_symbolic() {
            return e.clone();
        }
        e.map_coeffs(|c| self.params.coerce(c))
    }
}

/// `b_{n+1} 2^n n!`
pub fn dimension(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n + 1 {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    let bell = row[0];
    let fact: u128 = (1..=n as u128).product();
    bell * (1u128 << n) * fact
}

#[cfg(test)]
mod tests;
