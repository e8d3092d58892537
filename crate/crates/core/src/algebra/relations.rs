//! Defining relations and rewriting identities as pairs of linear
//! combinations of generator words.

use serde::Serialize;

use super::{word_b, word_bbar, word_t_minus, word_t_plus, word_tbar_minus, Algebra, AlgebraElement, Generator};
use crate::coeff::{LaurentPoly, Var};
use crate::error::Result;

use Generator::{BInv, TInv, B, E, F, T};

/// A linear combination of words; coefficients are polynomials in the
/// symbolic `u`, `v`.
#[derive(Clone, Debug, Default)]
pub struct Side(pub Vec<(LaurentPoly, Vec<Generator>)>);

impl Side {
    pub fn word(w: Vec<Generator>) -> Self {
        Side(vec![(LaurentPoly::one(), w)])
    }

    pub fn plus(mut self, c: LaurentPoly, w: Vec<Generator>) -> Self {
        self.0.push((c, w));
        self
    }

    pub fn words(&self) -> impl Iterator<Item = &[Generator]> {
        self.0.iter().map(|(_, w)| w.as_slice())
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub index: String,
    pub lhs: Side,
    pub rhs: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationStatus {
    pub relation: String,
    pub index: String,
    pub status: &'static str,
}

fn qu() -> LaurentPoly {
    LaurentPoly::q_minus_inv(Var::U)
}

fn qv() -> LaurentPoly {
    LaurentPoly::q_minus_inv(Var::V)
}

fn cat(parts: &[&[Generator]]) -> Vec<Generator> {
    parts.concat()
}

fn rel(name: &'static str, index: String, lhs: Side, rhs: Side) -> Relation {
    Relation {
        name,
        index,
        lhs,
        rhs,
    }
}

fn eq(name: &'static str, index: String, lhs: Vec<Generator>, rhs: Vec<Generator>) -> Relation {
    rel(name, index, Side::word(lhs), Side::word(rhs))
}

/// Reverses a word of invertible generators and inverts each letter.
pub fn invert_word(word: &[Generator]) -> Option<Vec<Generator>> {
    word.iter()
        .rev()
        .map(|g| match *g {
            T(i) => Some(TInv(i)),
            TInv(i) => Some(T(i)),
            B => Some(BInv),
            BInv => Some(B),
            E(_) | F(_) => None,
        })
        .collect()
}

/// `E_{i,j}` for `0 < i < j` as `T_i ... T_{j-2} E_{j-1} T_{j-2}^{-1} ... T_i^{-1}`.
pub fn word_e_ij(i: usize, j: usize) -> Vec<Generator> {
    let mut w: Vec<Generator> = (i..j - 1).map(T).collect();
    w.push(E(j - 1));
    w.extend((i..j - 1).rev().map(TInv));
    w
}

/// Every defining relation of `E_n^B`, at every legal index.
pub fn defining_relations(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let idx1 = |i: usize| format!("i={i}");
    let idx2 = |i: usize, j: usize| format!("i={i},j={j}");
    let m = n.saturating_sub(1);
    for i in 1..=m {
        for j in 1..=m {
            if i.abs_diff(j) > 1 {
                out.push(eq("TT-commute", idx2(i, j), vec![T(i), T(j)], vec![T(j), T(i)]));
                out.push(eq("ET-commute-far", idx2(i, j), vec![E(i), T(j)], vec![T(j), E(i)]));
            }
            if i.abs_diff(j) == 1 {
                out.push(eq("EET", idx2(i, j), vec![E(i), E(j), T(i)], vec![T(i), E(i), E(j)]));
                out.push(eq("EET'", idx2(i, j), vec![T(i), E(i), E(j)], vec![E(j), T(i), E(j)]));
                out.push(eq("ETT", idx2(i, j), vec![E(i), T(j), T(i)], vec![T(j), T(i), E(j)]));
            }
            out.push(eq("EE-commute", idx2(i, j), vec![E(i), E(j)], vec![E(j), E(i)]));
        }
        if i < m {
            out.push(eq(
                "braid",
                idx1(i),
                vec![T(i), T(i + 1), T(i)],
                vec![T(i + 1), T(i), T(i + 1)],
            ));
        }
        out.push(rel(
            "T-quadratic",
            idx1(i),
            Side::word(vec![T(i), T(i)]),
            Side::word(vec![]).plus(qu(), vec![E(i), T(i)]),
        ));
        out.push(eq("E-idempotent", idx1(i), vec![E(i), E(i)], vec![E(i)]));
        out.push(eq("ET-commute", idx1(i), vec![E(i), T(i)], vec![T(i), E(i)]));
        out.push(eq("BE-commute", idx1(i), vec![B, E(i)], vec![E(i), B]));
        if i > 1 {
            out.push(eq("BT-commute", idx1(i), vec![B, T(i)], vec![T(i), B]));
        }
        out.push(eq("EF-tie", idx1(i), vec![E(i), F(i)], vec![F(i), F(i + 1)]));
        out.push(eq("EF-tie'", idx1(i), vec![F(i), F(i + 1)], vec![E(i), F(i + 1)]));
    }
    if n >= 2 {
        out.push(eq(
            "BT-braid",
            String::new(),
            vec![B, T(1), B, T(1)],
            vec![T(1), B, T(1), B],
        ));
    }
    if n >= 1 {
        out.push(rel(
            "B-quadratic",
            String::new(),
            Side::word(vec![B, B]),
            Side::word(vec![]).plus(qv(), vec![F(1), B]),
        ));
    }
    for j in 1..=n {
        out.push(eq("F-idempotent", format!("j={j}"), vec![F(j), F(j)], vec![F(j)]));
        out.push(eq("BF-commute", format!("j={j}"), vec![B, F(j)], vec![F(j), B]));
        for i in 1..=m {
            out.push(eq("FE-commute", idx2(j, i), vec![F(j), E(i)], vec![E(i), F(j)]));
            let sj = if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            };
            out.push(eq("FT-perm", idx2(j, i), vec![F(j), T(i)], vec![T(i), F(sj)]));
        }
        for k in 1..=n {
            out.push(eq("FF-commute", format!("i={j},j={k}"), vec![F(j), F(k)], vec![F(k), F(j)]));
        }
    }
    for i in 1..=m {
        out.push(eq("T-inverse", idx1(i), vec![T(i), TInv(i)], vec![]));
        out.push(eq("T-inverse'", idx1(i), vec![TInv(i), T(i)], vec![]));
    }
    if n >= 1 {
        out.push(eq("B-inverse", String::new(), vec![B, BInv], vec![]));
        out.push(eq("B-inverse'", String::new(), vec![BInv, B], vec![]));
    }
    out
}

/// Which index the tie factor of the correction term `alpha_{n,k}` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaReading {
    /// `E_{1,k}`
    K,
    /// `E_{1,n}`
    N,
}

/// `alpha_{n,k} = B_1 T_1^{-1} ... T_{k-2}^{-1} T^-_{n,1} E_{1,K}
///              - T_1^{-1} ... T_{k-2}^{-1} T^-_{n,1} B_1 E_{1,K}`
pub fn alpha_side(n: usize, k: usize, reading: AlphaReading, scale: LaurentPoly) -> Side {
    let big_k = match reading {
        AlphaReading::K => k,
        AlphaReading::N => n,
    };
    let inv: Vec<Generator> = (1..k.saturating_sub(1)).map(TInv).collect();
    let tm = word_t_minus(n, 1);
    let e1k = word_e_ij(1, big_k);
    Side(vec![
        (scale.clone(), cat(&[&[B], &inv, &tm, &e1k])),
        (-scale, cat(&[&inv, &tm, &[B], &e1k])),
    ])
}

fn t_pm(neg: bool, k: usize, j: usize) -> Vec<Generator> {
    if neg {
        word_t_minus(k, j)
    } else {
        word_t_plus(k, j)
    }
}

fn tbar_pm(neg: bool, k: usize, j: usize) -> Vec<Generator> {
    if neg {
        word_tbar_minus(k, j)
    } else {
        word_t_plus(k, j)
    }
}

/// Commutation rules for `T^±_{n,k}` and `T̄^±_{n,k}` against `T_j` and `B_1`,
/// with the correction term read as `reading`.
pub fn rewriting_identities(n: usize, reading: AlphaReading) -> Vec<Relation> {
    let mut out = Vec::new();
    for neg in [false, true] {
        let sign = if neg { "-" } else { "+" };
        for k in 1..=n {
            for j in 1..n {
                let idx = format!("{sign},n={n},k={k},j={j}");
                // unbarred
                let lhs = cat(&[&t_pm(neg, n, k), &[T(j)]]);
                let rhs = if j + 1 < k {
                    Side::word(cat(&[&[T(j)], &t_pm(neg, n, k)]))
                } else if j + 1 == k {
                    Side::word(t_pm(neg, n, k - 1))
                } else if j == k {
                    Side::word(t_pm(neg, n, k + 1)).plus(qu(), cat(&[&t_pm(neg, n, k), &[E(j)]]))
                } else {
                    Side::word(cat(&[&[T(j - 1)], &t_pm(neg, n, k)]))
                };
                out.push(rel("T(n,k)*T_j", idx.clone(), Side::word(lhs), rhs));
                // barred
                let lhs = cat(&[&tbar_pm(neg, n, k), &[T(j)]]);
                let rhs = if j + 1 < k {
                    Side::word(cat(&[&[T(j)], &tbar_pm(neg, n, k)]))
                } else if j + 1 == k {
                    let s = Side::word(tbar_pm(neg, n, k - 1));
                    if neg {
                        s.plus(qu(), cat(&[&tbar_pm(neg, n, k), &[E(j)]]))
                    } else {
                        s
                    }
                } else if j == k {
                    let s = Side::word(tbar_pm(neg, n, k + 1));
                    if neg {
                        s
                    } else {
                        s.plus(qu(), cat(&[&tbar_pm(neg, n, k), &[E(j)]]))
                    }
                } else {
                    Side::word(cat(&[&[T(j - 1)], &tbar_pm(neg, n, k)]))
                };
                out.push(rel("Tbar(n,k)*T_j", idx, Side::word(lhs), rhs));
            }
            let idx = format!("{sign},n={n},k={k}");
            // against B_1
            let lhs = cat(&[&t_pm(neg, n, k), &[B]]);
            let rhs = match (neg, k == 1) {
                (true, true) => Side::word(t_pm(false, n, 1)).plus(qv(), cat(&[&t_pm(true, n, 1), &[F(1)]])),
                (false, true) => Side::word(t_pm(true, n, 1)),
                (false, false) => Side::word(cat(&[&[B], &t_pm(false, n, k)])),
                (true, false) => {
                    let mut s = Side::word(cat(&[&[B], &t_pm(true, n, k)]));
                    s.0.extend(alpha_side(n, k, reading, qu()).0);
                    s
                }
            };
            out.push(rel("T(n,k)*B_1", idx.clone(), Side::word(lhs), rhs));
            let lhs = cat(&[&tbar_pm(neg, n, k), &[B]]);
            let rhs = match (neg, k == 1) {
                (true, true) => Side::word(tbar_pm(false, n, 1)).plus(qv(), cat(&[&tbar_pm(true, n, 1), &[F(1)]])),
                (false, true) => Side::word(tbar_pm(true, n, 1)),
                _ => Side::word(cat(&[&[B], &tbar_pm(neg, n, k)])),
            };
            out.push(rel("Tbar(n,k)*B_1", idx, Side::word(lhs), rhs));
        }
    }
    // the special cases spelled out for B_n and B̄_n
    for j in 1..n {
        let idx = format!("n={n},j={j}");
        if j + 1 < n {
            out.push(eq("B_n*T_j", idx.clone(), cat(&[&word_b(n), &[T(j)]]), cat(&[&[T(j)], &word_b(n)])));
            out.push(eq(
                "Bbar_n*T_j",
                idx.clone(),
                cat(&[&word_bbar(n), &[T(j)]]),
                cat(&[&[T(j)], &word_bbar(n)]),
            ));
        } else {
            out.push(eq(
                "B_n*T_j",
                idx.clone(),
                cat(&[&word_b(n), &[T(j)]]),
                cat(&[&[T(j)], &word_b(n - 1)]),
            ));
            out.push(rel(
                "Bbar_n*T_j",
                idx,
                Side::word(cat(&[&word_bbar(n), &[T(j)]])),
                Side::word(cat(&[&[T(j)], &word_bbar(n - 1)])).plus(qu(), cat(&[&word_bbar(n), &[E(j)]])),
            ));
        }
    }
    out
}

/// `T_k B_k B_{k+1} = B_k T_k B_k` and `T^-_{k,j} B_k = B_{k-1} T^-_{k,j}`.
pub fn remaining_identities(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for k in 1..n {
        out.push(eq(
            "T_k B_k B_k+1",
            format!("k={k}"),
            cat(&[&[T(k)], &word_b(k), &word_b(k + 1)]),
            cat(&[&word_b(k), &[T(k)], &word_b(k)]),
        ));
    }
    for k in 2..=n {
        for j in 1..k {
            out.push(eq(
                "T-(k,j) B_k",
                format!("k={k},j={j}"),
                cat(&[&word_t_minus(k, j), &word_b(k)]),
                cat(&[&word_b(k - 1), &word_t_minus(k, j)]),
            ));
        }
    }
    out
}

impl Algebra {
    pub fn eval_side(&self, n: usize, side: &Side) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(n);
        for (c, w) in &side.0 {
            let e = self.eval_word(n, w)?;
            out = out.add(&e.scale(&self.params().coerce(c)))?;
        }
        Ok(out)
    }

    pub fn check_relation(&self, n: usize, r: &Relation) -> Result<bool> {
        Ok(self.eval_side(n, &r.lhs)? == self.eval_side(n, &r.rhs)?)
    }

    pub fn check_relations(&self, n: usize, rels: &[Relation]) -> Result<Vec<RelationStatus>> {
        rels.iter()
            .map(|r| {
                let ok = self.check_relation(n, r)?;
                Ok(RelationStatus {
                    relation: r.name.to_string(),
                    index: r.index.clone(),
                    status: if ok { "pass" } else { "fail" },
                })
            })
            .collect()
    }
}
