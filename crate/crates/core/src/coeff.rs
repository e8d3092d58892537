//! Exact Laurent polynomials in the six variables `u, v, x, y, z, w` over
//! arbitrary-precision rationals.
//!
//! Terms are kept in a vector sorted by exponent vector (lexicographic over
//! `(u, v, x, y, z, w)`), with no zero coefficients, so structural equality
//! is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const NVARS: usize = 6;
pub const VAR_NAMES: [&str; NVARS] = ["u", "v", "x", "y", "z", "w"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U = 0,
    V = 1,
    X = 2,
    Y = 3,
    Z = 4,
    W = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::X, Var::Y, Var::Z, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self as usize]
    }

    /// `x`, `y` and `w` only ever appear with nonnegative exponents in trace
    /// values; `u`, `v`, `z` are units of the ring.
    pub fn is_invertible(self) -> bool {
        matches!(self, Var::U | Var::V | Var::Z)
    }

    fn from_char(c: char) -> Option<Var> {
        Some(match c {
            'u' => Var::U,
            'v' => Var::V,
            'x' => Var::X,
            'y' => Var::Y,
            'z' => Var::Z,
            'w' => Var::W,
            _ => return None,
        })
    }
}

/// Exponent vector over `(u, v, x, y, z, w)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigRational)>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::monomial(BigRational::one(), Monomial::var(v, e))
    }

    /// `t - t^{-1}` for an invertible variable `t`.
    pub fn q_minus_inv(v: Var) -> Self {
        Self::var(v) - Self::var_pow(v, -1)
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> BigRational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// The constant if this polynomial is one, else `None`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, v: Var, k: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = *m;
                m.0[v.index()] += k;
                (m, c.clone())
            })
            .collect();
        // shifting one coordinate preserves lexicographic order
        Self { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { -c } else { c.clone() })),
        );
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (mb, cb) = &other.terms[0];
            // multiplying by a monomial is order preserving
            return Self {
                terms: self.terms.iter().map(|(m, c)| (m.mul(mb), c * cb)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.product(self);
        }
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Exact value at a point `(u, v, x, y, z, w)`.
    pub fn eval(&self, point: &[BigRational; NVARS]) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let base = &point[v.index()];
                if e < 0 && base.is_zero() {
                    return Err(Error::Pole(v.name()));
                }
                t *= rat_pow(base, e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes the variables given as `Some(value)`, keeping the others
    /// symbolic.
    pub fn specialize(&self, point: &[Option<BigRational>; NVARS]) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut m = *m;
            for v in Var::ALL {
                if let Some(val) = &point[v.index()] {
                    let e = m.exp(v);
                    if e < 0 && val.is_zero() {
                        return Err(Error::Pole(v.name()));
                    }
                    c *= rat_pow(val, e);
                    m.0[v.index()] = 0;
                }
            }
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Ok(Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Replaces `v` by the polynomial `by`. Negative powers of `v` are only
    /// allowed when `by` is a single term.
    pub fn substitute(&self, v: Var, by: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero();
        for (k, part) in self.collect_in(v) {
            let power = if k >= 0 {
                by.pow(k as u32)
            } else {
                match by.terms.as_slice() {
                    [(m, c)] => {
                        let mut inv = Monomial::default();
                        for (e, f) in inv.0.iter_mut().zip(m.0.iter()) {
                            *e = -f;
                        }
                        Self::monomial(c.recip(), inv).pow((-k) as u32)
                    }
                    _ => return Err(Error::Pole(v.name())),
                }
            };
            out += &(&part * &power);
        }
        Ok(out)
    }

    /// Splits into coefficients of powers of `v`: `self = sum_k coeffs[k] v^k`.
    pub fn collect_in(&self, v: Var) -> BTreeMap<i32, LaurentPoly> {
        let mut parts: BTreeMap<i32, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v.index()] = 0;
            parts.entry(m.exp(v)).or_default().push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|(k, ts)| (k, LaurentPoly::from_terms(ts)))
            .collect()
    }
}

fn rat_pow(base: &BigRational, e: i32) -> BigRational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.merge(b, false));
forward_binop!(Sub, sub, |a, b| a.merge(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, true);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

// ---------------------------------------------------------------------------
// text form

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<i32> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let d = self.digits()?;
        let e: i32 = match i32::try_from(&d) {
            Ok(e) => e,
            Err(_) => return self.err("exponent too large"),
        };
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::ONE;
        let mut seen = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.digits()?;
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.digits()?;
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(num, den);
            seen = true;
        }
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if Var::from_char(c as char).is_some() => {}
                        _ => return self.err("expected variable after '*'"),
                    }
                }
                Some(c) if Var::from_char(c as char).is_some() => {
                    self.pos += 1;
                    let v = Var::from_char(c as char).unwrap();
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    mono.0[v.index()] += e;
                    seen = true;
                }
                _ => break,
            }
        }
        if !seen {
            return self.err("expected term");
        }
        Ok((mono, coeff))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * &sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                None => break,
                Some(_) => return self.err("unexpected character"),
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        p.poly()
    }
}

// ---------------------------------------------------------------------------
// JSON form: [{"exps": [..6 ints..], "num": "..", "den": ".."}, ...]

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exps: [i32; NVARS],
    num: String,
    den: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                exps: m.0,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            out.push((Monomial(t.exps), BigRational::new(num, den)));
        }
        Ok(LaurentPoly::from_terms(out))
    }
}
