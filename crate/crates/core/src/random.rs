//! Seeded random sampling of elements, words, vectors and parameter values.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Generator};
use crate::coeff::{rat, LaurentPoly, Monomial};
use crate::coxeter::{BraidLetter, BraidWord, CoxGen, SignedPerm};
use crate::partitions::SetPartition0;

pub const DEFAULT_SEED: u64 = 20240917;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with small numerator and denominator, never `±1`.
pub fn rational_point<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=9);
        let r = rat(p, q);
        if p != 0 && r != rat(1, 1) && r != rat(-1, 1) {
            return r;
        }
    }
}

pub fn partition<R: Rng>(rng: &mut R, n: usize) -> SetPartition0 {
    // restricted growth string with uniform choices
    let mut labels = vec![0usize];
    let mut next = 1;
    for _ in 1..=n {
        let l = rng.gen_range(0..=next);
        if l == next {
            next += 1;
        }
        labels.push(l);
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); next];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l].push(i);
    }
    let refs: Vec<&[usize]> = blocks.iter().map(|b| b.as_slice()).collect();
    SetPartition0::from_blocks(n, &refs).expect("valid blocks")
}

pub fn signed_perm<R: Rng>(rng: &mut R, n: usize) -> SignedPerm {
    let mut w: Vec<i32> = (1..=n as i32).collect();
    w.shuffle(rng);
    for x in &mut w {
        if rng.gen_bool(0.5) {
            *x = -*x;
        }
    }
    SignedPerm::from_window(w).expect("valid window")
}

pub fn basis_element<R: Rng>(rng: &mut R, n: usize) -> AlgebraElement {
    AlgebraElement::basis(partition(rng, n), signed_perm(rng, n))
}

/// A small integer coefficient times a monomial in `u`, `v`.
pub fn uv_coeff<R: Rng>(rng: &mut R) -> LaurentPoly {
    let c: i64 = loop {
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    let m = Monomial([rng.gen_range(-1..=1), rng.gen_range(-1..=1), 0, 0, 0, 0]);
    LaurentPoly::monomial(rat(c, 1), m)
}

pub fn element<R: Rng>(rng: &mut R, n: usize, terms: usize) -> AlgebraElement {
    let mut e = AlgebraElement::zero(n);
    for _ in 0..terms {
        e.add_term(partition(rng, n), signed_perm(rng, n), uv_coeff(rng));
    }
    e
}

pub fn generator<R: Rng>(rng: &mut R, n: usize) -> Generator {
    let mut pool = vec![Generator::B, Generator::BInv];
    for i in 1..n {
        pool.extend([Generator::T(i), Generator::TInv(i), Generator::E(i)]);
    }
    for j in 1..=n {
        pool.push(Generator::F(j));
    }
    *pool.choose(rng).expect("nonempty pool")
}

pub fn braid_word<R: Rng>(rng: &mut R, strands: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let k = rng.gen_range(0..strands.max(1));
            let gen = if k == 0 { CoxGen::R } else { CoxGen::S(k) };
            BraidLetter {
                gen,
                inverse: rng.gen_bool(0.5),
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters in range")
}
