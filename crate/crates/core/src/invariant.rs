//! The solid-torus link invariant `Δ̄_B(α) = D^{n-1} (√L)^{e(α)} tr_n(π(α))`
//! with `L = (z - (u - u^{-1}) x) / z` and `D = 1 / (z √L)`.
//!
//! Values are kept as `s^p · numer / (z^a Λ^b)` where `s = √L`, `p ∈ {0, 1}`
//! and `Λ = z - (u - u^{-1}) x`. Two values are compared by
//! cross-multiplication.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement, Generator};
use crate::coeff::{LaurentPoly, Var};
use crate::coxeter::{BraidWord, CoxGen};
use crate::error::Result;

/// `Λ = z - (u - u^{-1}) x`
pub fn lambda() -> LaurentPoly {
    &LaurentPoly::var(Var::Z) - &(&LaurentPoly::q_minus_inv(Var::U) * &LaurentPoly::var(Var::X))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantValue {
    pub s_parity: u8,
    pub numer: LaurentPoly,
    pub z_pow: i32,
    pub l_pow: u32,
}

impl InvariantValue {
    pub fn new(s_parity: u8, numer: LaurentPoly, z_pow: i32, l_pow: u32) -> Self {
        let mut v = InvariantValue {
            s_parity: s_parity % 2,
            numer,
            z_pow,
            l_pow,
        };
        v.normalize_z();
        v
    }

    /// Moves powers of `z` so that the numerator has smallest `z`-degree 0.
    fn normalize_z(&mut self) {
        if self.numer.is_zero() {
            self.z_pow = 0;
            self.l_pow = 0;
            self.s_parity = 0;
            return;
        }
        let lo = self
            .numer
            .terms()
            .map(|(m, _)| m.exp(Var::Z))
            .min()
            .expect("nonzero");
        self.numer = self.numer.shift(Var::Z, -lo);
        self.z_pow -= lo;
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Applies `f` to the numerator, e.g. a substitution of trace parameters.
    pub fn map_numer(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::new(self.s_parity, f(&self.numer), self.z_pow, self.l_pow)
    }

    /// The value after `w = x y`.
    pub fn on_w_xy_locus(&self) -> Self {
        self.map_numer(crate::trace::on_w_xy_locus)
    }

    /// Equality in the ring extended by `s` with `s² = L`.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.s_parity != other.s_parity {
            return false;
        }
        let lam = lambda();
        let lhs = (&self.numer * &lam.pow(other.l_pow)).shift(Var::Z, other.z_pow);
        let rhs = (&other.numer * &lam.pow(self.l_pow)).shift(Var::Z, self.z_pow);
        lhs == rhs
    }

    pub fn pretty(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = self.s_parity == 0 && self.z_pow == 0 && self.l_pow == 0;
        if plain {
            return write!(f, "{}", self.numer);
        }
        if self.s_parity == 1 {
            f.write_str("sqrt(L) * ")?;
        }
        write!(f, "({})", self.numer)?;
        let mut den = Vec::new();
        match self.z_pow {
            0 => {}
            1 => den.push("z".to_string()),
            a => den.push(format!("z^{a}")),
        }
        match self.l_pow {
            0 => {}
            1 => den.push("(z - (u - u^-1) x)".to_string()),
            b => den.push(format!("(z - (u - u^-1) x)^{b}")),
        }
        match den.as_slice() {
            [] => {}
            [one] if one.starts_with('(') => write!(f, " / {one}")?,
            _ => write!(f, " / ({})", den.join(" "))?,
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct InvariantJson<'a> {
    s_parity: u8,
    numer: &'a LaurentPoly,
    z_pow: i32,
    #[serde(rename = "L_pow")]
    l_pow: u32,
    pretty: String,
}

impl InvariantValue {
    /// `{s_parity, numer, z_pow, L_pow, pretty}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(InvariantJson {
            s_parity: self.s_parity,
            numer: &self.numer,
            z_pow: self.z_pow,
            l_pow: self.l_pow,
            pretty: self.pretty(),
        })
        .expect("serializable")
    }
}

pub fn invariant_eq(p: &InvariantValue, q: &InvariantValue) -> bool {
    p.same_as(q)
}

pub fn exponent_sum(word: &BraidWord) -> i64 {
    word.exponent_sum()
}

/// `σ_i ↦ T_i`, `ρ_1 ↦ B_1` and inverses to inverses.
pub fn word_generators(word: &BraidWord) -> Vec<Generator> {
    word.letters
        .iter()
        .map(|l| match (l.gen, l.inverse) {
            (CoxGen::R, false) => Generator::B,
            (CoxGen::R, true) => Generator::BInv,
            (CoxGen::S(i), false) => Generator::T(i),
            (CoxGen::S(i), true) => Generator::TInv(i),
        })
        .collect()
}

impl Algebra {
    pub fn pi_natural(&self, word: &BraidWord) -> Result<AlgebraElement> {
        self.eval_word(word.strands, &word_generators(word))
    }

    pub fn delta_b(&self, word: &BraidWord) -> Result<InvariantValue> {
        let n = word.strands as i64;
        let t = self.markov_trace(&self.pi_natural(word)?)?;
        let m = word.exponent_sum() - (n - 1);
        let parity = m.rem_euclid(2);
        let q = (m - parity) / 2;
        let numer = if q > 0 { &t * &lambda().pow(q as u32) } else { t };
        Ok(InvariantValue::new(
            parity as u8,
            numer,
            (n - 1 + q) as i32,
            (-q).max(0) as u32,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(src: &str, n: usize) -> InvariantValue {
        Algebra::symbolic()
            .delta_b(&BraidWord::parse(src, n).unwrap())
            .unwrap()
    }

    #[test]
    fn golden_values() {
        assert_eq!(delta("", 1).to_string(), "1");
        assert_eq!(delta("r", 1).to_string(), "y");
        let qv = LaurentPoly::q_minus_inv(Var::V);
        let expect = &LaurentPoly::one() + &(&qv * &LaurentPoly::var(Var::W));
        assert_eq!(delta("r r", 1), InvariantValue::new(0, expect, 0, 0));
        assert_eq!(delta("s1", 2).to_string(), "1");
        assert_eq!(delta("", 2).to_string(), "sqrt(L) * (1) / (z - (u - u^-1) x)");
    }

    #[test]
    fn exponent_sums() {
        let e = |s: &str, n| BraidWord::parse(s, n).unwrap().exponent_sum();
        assert_eq!(e("", 1), 0);
        assert_eq!(e("s1 s1 s2'", 3), 1);
        assert_eq!(e("r s1 r'", 2), 1);
    }

    #[test]
    fn natural_map() {
        let alg = Algebra::symbolic();
        let pi = |s: &str, n| alg.pi_natural(&BraidWord::parse(s, n).unwrap()).unwrap();
        assert_eq!(pi("", 2), AlgebraElement::unit(2));
        assert_eq!(pi("s1 s1'", 2), AlgebraElement::unit(2));
        assert_eq!(pi("r r'", 2), AlgebraElement::unit(2));
        assert_eq!(pi("r s1 r s1", 2), pi("s1 r s1 r", 2));
        assert_eq!(pi("s1 s2 s1", 3), pi("s2 s1 s2", 3));
    }

    #[test]
    fn equality_rules() {
        let v = delta("r", 1);
        assert!(invariant_eq(&v, &v));
        assert!(!invariant_eq(&delta("", 1), &delta("r", 1)));
        // the same value written with an extra Λ in numerator and denominator
        let lam = lambda();
        let a = InvariantValue::new(1, LaurentPoly::var(Var::Y), 2, 0);
        let b = InvariantValue::new(1, &LaurentPoly::var(Var::Y) * &lam, 2, 1);
        assert!(invariant_eq(&a, &b));
        let c = InvariantValue::new(0, LaurentPoly::var(Var::Y), 2, 0);
        assert!(!invariant_eq(&a, &c));
        let zero = InvariantValue::new(1, LaurentPoly::zero(), 3, 1);
        assert!(invariant_eq(&zero, &InvariantValue::new(0, LaurentPoly::zero(), 0, 0)));
    }

    #[test]
    fn json_shape() {
        let j = delta("s1", 2).to_json();
        assert_eq!(j["pretty"], "1");
        assert_eq!(j["s_parity"], 0);
        assert_eq!(j["z_pow"], 0);
        assert_eq!(j["L_pow"], 0);
        assert!(j.get("numer").is_some());
    }
}
