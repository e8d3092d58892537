//! The hyperoctahedral group `W_n` realised as signed permutations, its
//! Coxeter structure over `{r_1, s_1, ..., s_{n-1}}`, and type-B braid words.
//!
//! Composition convention: `(a * b)(i) = a(b(i))`, so `w * s_i` swaps the
//! window entries at positions `i` and `i + 1`, and `w * r_1` negates the
//! first entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// A permutation of `{1, ..., n}`, extended to fix `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// The transposition `(i, i+1)`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// `s_{j-1} ... s_k` for `k <= j`: sends `k` to `j` and shifts `k+1..=j`
    /// down by one.
    pub fn cycle_down(n: usize, j: usize, k: usize) -> Self {
        let mut p = Self::identity(n);
        for i in (k..j).rev() {
            p = p.compose(&Self::transposition(n, i));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j - 1] = i + 1;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    /// All permutations of `{1..n}` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 1..=n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
        out
    }
}

/// A Coxeter generator of `W_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoxGen {
    /// `r_1`, the sign change of the first coordinate.
    R,
    /// `s_i`, the transposition `(i, i+1)`.
    S(usize),
}

impl fmt::Display for CoxGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxGen::R => f.write_str("r"),
            CoxGen::S(i) => write!(f, "s{i}"),
        }
    }
}

/// An element of `W_n`, stored in window notation `(w(1), ..., w(n))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm(Vec<i32>);

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm((1..=n as i32).collect())
    }

    pub fn from_window(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &m in &window {
            let a = m.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation(format!("{window:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPerm(window))
    }

    pub fn generator(n: usize, g: CoxGen) -> Result<Self> {
        let mut w = Self::identity(n);
        match g {
            CoxGen::R if n >= 1 => w.0[0] = -1,
            CoxGen::S(i) if i >= 1 && i < n => w.0.swap(i - 1, i),
            CoxGen::R => return Err(out_of_range("r_1 on n", n as i64, 1, i64::MAX)),
            CoxGen::S(i) => return Err(out_of_range("s", i as i64, 1, n as i64 - 1)),
        }
        Ok(w)
    }

    /// The product `g_1 g_2 ... g_m` of a word of generators.
    pub fn from_word(n: usize, word: &[CoxGen]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &g in word {
            Self::generator(n, g)?;
            w = w.mul_gen(g);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.0
    }

    pub fn apply(&self, i: i32) -> i32 {
        if i > 0 {
            self.0[i as usize - 1]
        } else if i < 0 {
            -self.0[(-i) as usize - 1]
        } else {
            0
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &m)| m == i as i32 + 1)
    }

    pub fn mul(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(SignedPerm(other.0.iter().map(|&i| self.apply(i)).collect()))
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0; self.0.len()];
        for (i, &m) in self.0.iter().enumerate() {
            inv[m.unsigned_abs() as usize - 1] = m.signum() * (i as i32 + 1);
        }
        SignedPerm(inv)
    }

    /// Right multiplication by a generator (assumed in range).
    pub fn mul_gen(&self, g: CoxGen) -> SignedPerm {
        let mut w = self.0.clone();
        match g {
            CoxGen::R => w[0] = -w[0],
            CoxGen::S(i) => w.swap(i - 1, i),
        }
        SignedPerm(w)
    }

    /// Embedding `W_n -> W_{n+extra}` fixing the new points.
    pub fn extend(&self, extra: usize) -> SignedPerm {
        let n = self.0.len() as i32;
        let mut w = self.0.clone();
        w.extend(n + 1..=n + extra as i32);
        SignedPerm(w)
    }

    /// Coxeter length: inversions of the window plus the absolute values of
    /// its negative entries.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut inv = 0usize;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        let neg: usize = w.iter().filter(|&&m| m < 0).map(|&m| (-m) as usize).sum();
        inv + neg
    }

    pub fn is_right_descent(&self, g: CoxGen) -> bool {
        match g {
            CoxGen::R => self.0[0] < 0,
            CoxGen::S(i) => self.0[i - 1] > self.0[i],
        }
    }

    pub fn right_descents(&self) -> Vec<CoxGen> {
        let mut out = Vec::new();
        if self.n() == 0 {
            return out;
        }
        if self.is_right_descent(CoxGen::R) {
            out.push(CoxGen::R);
        }
        for i in 1..self.n() {
            if self.is_right_descent(CoxGen::S(i)) {
                out.push(CoxGen::S(i));
            }
        }
        out
    }

    /// A reduced word, obtained by repeatedly stripping the first right
    /// descent.
    pub fn reduced_word(&self) -> Vec<CoxGen> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(&g) = w.right_descents().first() {
            rev.push(g);
            w = w.mul_gen(g);
        }
        rev.reverse();
        rev
    }

    /// The natural projection `W_n -> S_n`, `i -> |w(i)|`.
    pub fn eta(&self) -> Perm {
        Perm(self.0.iter().map(|m| m.unsigned_abs() as usize).collect())
    }

    /// Factorization `w = n_1 n_2 ... n_n` with `n_k` in the coset
    /// representatives `N_k`.
    pub fn normal_form(&self) -> Vec<Block> {
        let n = self.n();
        let mut cur = self.clone();
        let mut blocks = Vec::with_capacity(n);
        for k in (1..=n).rev() {
            let p = cur.inverse().apply(k as i32);
            let block = Block {
                k,
                j: p.unsigned_abs() as usize,
                negative: p < 0,
            };
            let elem = block.to_perm(n);
            cur = cur.mul(&elem.inverse()).expect("same n");
            debug_assert_eq!(cur.apply(k as i32), k as i32);
            blocks.push(block);
        }
        blocks.reverse();
        blocks
    }

    /// Every element of `W_n`, as products of coset representatives.
    pub fn enumerate(n: usize) -> Vec<SignedPerm> {
        let mut out = vec![SignedPerm::identity(n)];
        for k in 1..=n {
            let reps: Vec<SignedPerm> = Block::all(k).iter().map(|b| b.to_perm(n)).collect();
            out = out
                .iter()
                .flat_map(|w| reps.iter().map(move |b| w.mul(b).expect("same n")))
                .collect();
        }
        out
    }
}

/// One factor `n_k` of the normal form, describing
/// `s_{k-1} ... s_j` (with `j = k` meaning the empty product), followed by
/// `r_j` when `negative` is set. `(k, k, negative)` is `r_k`.
///
/// The same triples label the factors `T^+_{k,j}` / `T^-_{k,j}` of the
/// algebra's second basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub k: usize,
    pub j: usize,
    pub negative: bool,
}

impl Block {
    pub fn one(k: usize) -> Self {
        Block {
            k,
            j: k,
            negative: false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.j == self.k && !self.negative
    }

    /// All `2k` elements of `N_k`.
    pub fn all(k: usize) -> Vec<Block> {
        let mut out = Vec::with_capacity(2 * k);
        for negative in [false, true] {
            for j in (1..=k).rev() {
                out.push(Block { k, j, negative });
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        if self.negative {
            self.k + self.j - 1
        } else {
            self.k - self.j
        }
    }

    /// Reduced word; `r_j` is spelled `s_{j-1} ... s_1 r_1 s_1 ... s_{j-1}`.
    pub fn word(&self) -> Vec<CoxGen> {
        let mut word: Vec<CoxGen> = (self.j..self.k).rev().map(CoxGen::S).collect();
        if self.negative {
            word.extend((1..self.j).rev().map(CoxGen::S));
            word.push(CoxGen::R);
            word.extend((1..self.j).map(CoxGen::S));
        }
        word
    }

    pub fn to_perm(&self, n: usize) -> SignedPerm {
        SignedPerm::from_word(n, &self.word()).expect("block fits in n")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "T{sign}({},{})", self.k, self.j)
    }
}

// ---------------------------------------------------------------------------
// braid words

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidLetter {
    pub gen: CoxGen,
    pub inverse: bool,
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen, if self.inverse { "'" } else { "" })
    }
}

/// A word in the type-B braid group on `strands` moving strands:
/// `r` / `r'` for the loop generator and its inverse, `sK` / `sK'` for the
/// crossing generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        for l in &letters {
            if let CoxGen::S(i) = l.gen {
                if i == 0 || i >= strands {
                    return Err(out_of_range("sigma", i as i64, 1, strands as i64 - 1));
                }
            }
        }
        if strands == 0 {
            return Err(out_of_range("strand count", 0, 1, i64::MAX));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn parse(src: &str, strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: "strand count must be at least 1".into(),
            });
        }
        let mut letters = Vec::new();
        let mut pos = 0;
        for tok in src.split_inclusive(char::is_whitespace) {
            let start = pos;
            pos += tok.len();
            let tok = tok.trim_end();
            if tok.is_empty() {
                continue;
            }
            let (body, inverse) = match tok.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let gen = if body == "r" {
                CoxGen::R
            } else if let Some(idx) = body.strip_prefix('s') {
                let i: usize = idx.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("bad token '{tok}'"),
                })?;
                if i == 0 || i >= strands {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("generator '{tok}' out of range for {strands} strands"),
                    });
                }
                CoxGen::S(i)
            } else {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("bad token '{tok}'"),
                });
            };
            letters.push(BraidLetter { gen, inverse });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Sum of the exponents of the crossing generators (loops count zero).
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match (l.gen, l.inverse) {
                (CoxGen::R, _) => 0,
                (CoxGen::S(_), false) => 1,
                (CoxGen::S(_), true) => -1,
            })
            .sum()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::SizeMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// The same word viewed on `strands + extra` strands.
    pub fn widen(&self, extra: usize) -> BraidWord {
        BraidWord {
            strands: self.strands + extra,
            letters: self.letters.clone(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for CoxGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "r" {
            return Ok(CoxGen::R);
        }
        s.strip_prefix('s')
            .and_then(|i| i.parse().ok())
            .map(CoxGen::S)
            .ok_or(Error::Parse {
                pos: 0,
                msg: format!("bad generator '{s}'"),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, VecDeque};

    fn gens(n: usize) -> Vec<CoxGen> {
        let mut g = vec![CoxGen::R];
        g.extend((1..n).map(CoxGen::S));
        g
    }

    /// Breadth-first distances from the identity in the Cayley graph.
    fn bfs_lengths(n: usize) -> HashMap<SignedPerm, usize> {
        let mut dist = HashMap::new();
        let id = SignedPerm::identity(n);
        dist.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for g in gens(n) {
                let next = w.mul_gen(g);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn group_operations() {
        let n = 3;
        let s1 = SignedPerm::generator(n, CoxGen::S(1)).unwrap();
        let r1 = SignedPerm::generator(n, CoxGen::R).unwrap();
        let id = SignedPerm::identity(n);
        assert_eq!(id.mul(&s1).unwrap(), s1);
        assert_eq!(r1.inverse(), r1);
        // (s_1 r_1)(1) = s_1(-1) = -2, (s_1 r_1)(2) = s_1(2) = 1
        let sr = s1.mul(&r1).unwrap();
        assert_eq!(sr.window(), &[-2, 1, 3]);
        for i in [-3, -2, -1, 1, 2, 3] {
            assert_eq!(sr.apply(i), s1.apply(r1.apply(i)));
        }
        for w in SignedPerm::enumerate(3) {
            assert!(w.mul(&w.inverse()).unwrap().is_identity());
        }
        assert!(id.mul(&SignedPerm::identity(2)).is_err());
    }

    #[test]
    fn lengths_match_bfs() {
        for n in 1..=3 {
            let dist = bfs_lengths(n);
            assert_eq!(dist.len(), (1 << n) * (1..=n).product::<usize>());
            for (w, d) in &dist {
                assert_eq!(w.length(), *d, "{w}");
            }
        }
        let r2 = SignedPerm::from_word(2, &[CoxGen::S(1), CoxGen::R, CoxGen::S(1)]).unwrap();
        assert_eq!(r2.length(), 3);
        assert_eq!(SignedPerm::identity(2).length(), 0);
        assert_eq!(SignedPerm::generator(1, CoxGen::R).unwrap().length(), 1);
    }

    #[test]
    fn descents_match_lengths() {
        for n in 1..=3 {
            for w in SignedPerm::enumerate(n) {
                for g in gens(n) {
                    let shorter = w.mul_gen(g).length() < w.length();
                    assert_eq!(w.is_right_descent(g), shorter, "{w} {g}");
                }
            }
        }
        assert!(SignedPerm::identity(3).right_descents().is_empty());
        let w = SignedPerm::from_window(vec![-1, 2]).unwrap();
        assert_eq!(w.right_descents(), vec![CoxGen::R]);
        let w = SignedPerm::from_window(vec![2, 1]).unwrap();
        assert_eq!(w.right_descents(), vec![CoxGen::S(1)]);
    }

    #[test]
    fn reduced_words_rebuild() {
        for n in 1..=4 {
            for w in SignedPerm::enumerate(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(SignedPerm::from_word(n, &word).unwrap(), w);
            }
        }
    }

    #[test]
    fn normal_form_round_trip() {
        for n in 1..=4 {
            for w in SignedPerm::enumerate(n) {
                let blocks = w.normal_form();
                assert_eq!(blocks.len(), n);
                let word: Vec<CoxGen> = blocks.iter().flat_map(|b| b.word()).collect();
                assert_eq!(word.len(), w.length(), "{w}");
                assert_eq!(SignedPerm::from_word(n, &word).unwrap(), w);
                for (k, b) in blocks.iter().enumerate() {
                    assert_eq!(b.k, k + 1);
                }
            }
        }
        assert!(SignedPerm::identity(3)
            .normal_form()
            .iter()
            .all(|b| b.is_one()));
        let r2 = SignedPerm::from_word(2, &[CoxGen::S(1), CoxGen::R, CoxGen::S(1)]).unwrap();
        assert_eq!(
            r2.normal_form()[1],
            Block {
                k: 2,
                j: 2,
                negative: true
            }
        );
        let s1 = SignedPerm::generator(2, CoxGen::S(1)).unwrap();
        assert_eq!(
            s1.normal_form(),
            vec![
                Block::one(1),
                Block {
                    k: 2,
                    j: 1,
                    negative: false
                }
            ]
        );
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(SignedPerm::enumerate(1).len(), 2);
        assert_eq!(SignedPerm::enumerate(2).len(), 8);
        let all = SignedPerm::enumerate(3);
        assert_eq!(all.len(), 48);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 48);
        assert_eq!(Block::all(2).len(), 4);
    }

    #[test]
    fn eta_projection() {
        let r1 = SignedPerm::generator(2, CoxGen::R).unwrap();
        assert!(r1.eta().is_identity());
        let s1 = SignedPerm::generator(2, CoxGen::S(1)).unwrap();
        assert_eq!(s1.eta(), Perm::transposition(2, 1));
        let r2 = SignedPerm::from_word(2, &[CoxGen::S(1), CoxGen::R, CoxGen::S(1)]).unwrap();
        assert!(r2.eta().is_identity());
        let all = SignedPerm::enumerate(3);
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                let ab = a.mul(b).unwrap();
                assert_eq!(ab.eta(), a.eta().compose(&b.eta()));
            }
        }
    }

    #[test]
    fn cycle_down_matches_closed_form() {
        let n = 5;
        for j in 1..=n {
            for k in 1..=j {
                let s = Perm::cycle_down(n, j, k);
                for i in 1..=n {
                    let expect = if i == k {
                        j
                    } else if k < i && i <= j {
                        i - 1
                    } else {
                        i
                    };
                    assert_eq!(s.apply(i), expect);
                    let inv = if i == j {
                        k
                    } else if k <= i && i < j {
                        i + 1
                    } else {
                        i
                    };
                    assert_eq!(s.inverse().apply(i), inv);
                }
            }
        }
    }

    #[test]
    fn braid_word_parsing() {
        let w = BraidWord::parse("s1 s1 s2'", 3).unwrap();
        assert_eq!(w.exponent_sum(), 1);
        assert_eq!(w.to_string(), "s1 s1 s2'");
        let w = BraidWord::parse("r s1 r'", 2).unwrap();
        assert_eq!(w.exponent_sum(), 1);
        assert_eq!(BraidWord::parse("", 1).unwrap().letters.len(), 0);
        assert_eq!(BraidWord::parse("   ", 1).unwrap().exponent_sum(), 0);
        match BraidWord::parse("s1 s3", 3) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        match BraidWord::parse("r  x1", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(BraidWord::parse("S1", 2).is_err());
        assert!(BraidWord::parse("s0", 2).is_err());
        assert!(BraidWord::parse("s1''", 2).is_err());
    }
}
