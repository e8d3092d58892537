//! Verification suites shared by the command line `selfcheck` and the
//! acceptance tests. Every randomized suite draws from its own generator
//! seeded from the run seed.

use serde::Serialize;

use crate::algebra::relations::{defining_relations, remaining_identities, rewriting_identities, AlphaReading, RelationStatus};
use crate::algebra::{block_word, dimension, Algebra, AlgebraElement, Generator, Params};
use crate::coeff::LaurentPoly;
use crate::coxeter::{Block, BraidLetter, CoxGen, Perm, SignedPerm};
use crate::error::Result;
use crate::invariant::{invariant_eq, InvariantValue};
use crate::partitions::SetPartition0;
use crate::random::{self, SeededRng};
use crate::tensorrep::{independence_certificate, CertificateReport, TensorRep};
use crate::trace::{on_w_xy_locus, trace_value_is_sane};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub check: String,
    pub cases: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Counts cases and keeps the first few failure descriptions.
struct Tally {
    suite: &'static str,
    check: String,
    cases: usize,
    failures: Vec<String>,
    failed: usize,
    note: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, check: impl Into<String>) -> Self {
        Tally {
            suite,
            check: check.into(),
            cases: 0,
            failures: Vec::new(),
            failed: 0,
            note: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn error(&mut self, e: crate::Error) {
        self.cases += 1;
        self.failed += 1;
        if self.failures.len() < 5 {
            self.failures.push(format!("error: {e}"));
        }
    }

    fn check(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => self.error(e),
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            suite: self.suite,
            check: self.check,
            cases: self.cases,
            status: if self.failed == 0 && self.cases > 0 { "pass" } else { "fail" },
            failures: self.failures,
            note: self.note,
        }
    }
}

fn point_params(rng: &mut SeededRng) -> Params {
    Params::at(random::rational_point(rng), random::rational_point(rng)).expect("nonzero point")
}

fn random_elem(alg: &Algebra, rng: &mut SeededRng, n: usize, terms: usize) -> AlgebraElement {
    alg.coerce(&random::element(rng, n, terms))
}

// ---------------------------------------------------------------------------
// dimensions, partitions, Coxeter group

pub fn dims_suite(max_n: usize) -> Vec<CheckResult> {
    let mut t = Tally::new("dims", format!("basis size = b(n+1) 2^n n!, n <= {max_n}"));
    for n in 0..=max_n {
        let count = Algebra::basis_b(n).len() as u128;
        let c_count = crate::algebra::CDescriptor::all(n).len() as u128;
        let expect = dimension(n);
        t.record(count == expect && c_count == expect, || format!("n={n}: {count}, {c_count} vs {expect}"));
    }
    vec![t.finish()]
}

pub fn partition_suite(round_trip_n: usize, prop_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut t = Tally::new("partitions", format!("psi/phi round trip, n <= {round_trip_n}"));
    for n in 0..=round_trip_n {
        for i in SetPartition0::enumerate(n) {
            let (e, a) = i.psi();
            let ok = !a.contains(&0)
                && (1..=n).all(|k| !e.same_block(0, k))
                && SetPartition0::phi(&e, &a).ok().as_ref() == Some(&i);
            t.record(ok, || format!("{i:?}"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("partitions", format!("permutations commute with removal, join and tau, n <= {prop_n}"));
    for n in 1..=prop_n {
        let parts = SetPartition0::enumerate(n);
        for sigma in Perm::all(n) {
            for i in &parts {
                let si = i.apply_perm(&sigma);
                for k in (1..=n).filter(|&k| i.in_support(k)) {
                    let ok = i.remove(k).map(|r| r.apply_perm(&sigma)).ok() == si.remove(sigma.apply(k)).ok();
                    t.record(ok, || format!("remove {k} from {i:?} under {sigma:?}"));
                }
                for j in 1..=n {
                    for k in 1..=n {
                        let lhs = i.join_set(&[j, k]).map(|p| p.apply_perm(&sigma));
                        let rhs = si.join_set(&[sigma.apply(j), sigma.apply(k)]);
                        t.record(lhs.ok() == rhs.ok(), || format!("join {{{j},{k}}} in {i:?} under {sigma:?}"));
                    }
                }
                for k in 1..n {
                    let (sn, sk) = (sigma.apply(n), sigma.apply(k));
                    if sk < sn {
                        let lhs = i.tau(n, k).map(|p| p.apply_perm(&sigma));
                        let rhs = si.tau(sn, sk);
                        t.record(lhs.ok() == rhs.ok(), || format!("tau({n},{k}) of {i:?} under {sigma:?}"));
                    }
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("partitions", format!("join then contract equivalence, n <= {prop_n}"));
    for n in 2..=prop_n {
        for j in SetPartition0::enumerate(n - 1) {
            for i in SetPartition0::enumerate(n) {
                for k in 1..n {
                    let a = j.apply_perm(&Perm::cycle_down(n, n, k).inverse());
                    let b = j.apply_perm(&Perm::cycle_down(n - 1, n - 1, k).inverse());
                    let lhs = a.join(&i).tau(n, k);
                    let rhs = i.tau(n, k).map(|r| b.join(&r));
                    t.record(lhs.is_ok() && lhs.ok() == rhs.ok(), || format!("J={j:?} I={i:?} k={k}"));
                }
            }
        }
    }
    out.push(t.finish());
    out
}

pub fn coxeter_suite(max_n: usize) -> Vec<CheckResult> {
    let mut t = Tally::new("coxeter", format!("reduced words and normal forms, n <= {max_n}"));
    for n in 0..=max_n {
        let all = SignedPerm::enumerate(n);
        let size: usize = (1..=n).product::<usize>() << n;
        t.record(all.len() == size, || format!("n={n}: {} elements", all.len()));
        for w in &all {
            let word = w.reduced_word();
            let ok = word.len() == w.length()
                && SignedPerm::from_word(n, &word).ok().as_ref() == Some(w)
                && w.normal_form().iter().map(Block::length).sum::<usize>() == w.length()
                && w.normal_form().iter().fold(SignedPerm::identity(n), |acc, b| acc.mul(&b.to_perm(n)).expect("same n")) == *w;
            t.record(ok, || format!("{w:?}"));
        }
    }
    vec![t.finish()]
}

// ---------------------------------------------------------------------------
// relations in the algebra and in the tensor representation

fn statuses_to_check(suite: &'static str, check: String, st: Result<Vec<RelationStatus>>) -> (CheckResult, Vec<RelationStatus>) {
    let mut t = Tally::new(suite, check);
    match st {
        Ok(list) => {
            for s in &list {
                t.record(s.status == "pass", || format!("{} [{}]", s.relation, s.index));
            }
            (t.finish(), list)
        }
        Err(e) => {
            t.error(e);
            (t.finish(), Vec::new())
        }
    }
}

/// Defining relations under multiplication, symbolically and at a random point.
pub fn algebra_relations_suite(n: usize, rng: &mut SeededRng) -> (Vec<CheckResult>, Vec<RelationStatus>) {
    let rels = defining_relations(n);
    let mut all = Vec::new();
    let mut out = Vec::new();
    let (c, list) = statuses_to_check("relations", format!("defining relations, symbolic, n={n}"), Algebra::symbolic().check_relations(n, &rels));
    out.push(c);
    all.extend(list);
    let alg = Algebra::new(point_params(rng));
    let (c, _) = statuses_to_check("relations", format!("defining relations, random point, n={n}"), alg.check_relations(n, &rels));
    out.push(c);
    (out, all)
}

/// Rewriting lemmas and the conjugation action on idempotents.
pub fn rewriting_suite(n: usize) -> (Vec<CheckResult>, Vec<RelationStatus>) {
    let alg = Algebra::symbolic();
    let mut rels = rewriting_identities(n, AlphaReading::K);
    rels.extend(remaining_identities(n));
    let (c, list) = statuses_to_check("rewriting", format!("commutation lemmas incl. correction term, n={n}"), alg.check_relations(n, &rels));
    let mut out = vec![c];

    let mut t = Tally::new("rewriting", format!("T_w EF_I T_w^-1 = EF_eta(w)(I), n={n}"));
    for w in SignedPerm::enumerate(n) {
        let inv = match alg.t_w_inv(&w) {
            Ok(x) => x,
            Err(e) => {
                t.error(e);
                continue;
            }
        };
        for i in SetPartition0::enumerate(n) {
            let lhs = alg.mul_all(&[&alg.t_w(&w), &alg.ef(&i), &inv]);
            let rhs = alg.ef(&i.apply_perm(&w.eta()));
            t.check(lhs.map(|l| l == rhs), || format!("w={w:?} I={i:?}"));
        }
    }
    out.push(t.finish());
    (out, list)
}

/// Defining relations applied to vectors of `V^{⊗n}`: all basis vectors when
/// `sample` is `None`, otherwise a random sample at a random point.
pub fn tensor_relations_suite(n: usize, sample: Option<usize>, rng: &mut SeededRng) -> (Vec<CheckResult>, Vec<RelationStatus>) {
    let rels = defining_relations(n);
    let (rep, vectors, how) = match sample {
        None => {
            let rep = TensorRep::new(n, Params::symbolic());
            let v = rep.all_basis_vectors();
            (rep, v, "all basis vectors, symbolic".to_string())
        }
        Some(k) => {
            let rep = TensorRep::new(n, point_params(rng));
            let v = (0..k).map(|_| rep.random_basis_vector(rng)).collect();
            (rep, v, format!("{k} random vectors, random point"))
        }
    };
    let (c, list) = statuses_to_check("tensor", format!("defining relations on {how}, n={n}"), rep.check_relations(&rels, &vectors));
    (vec![c], list)
}

/// `Φ(ab) = Φ(a) Φ(b)` on random basis vectors for random basis pairs.
pub fn oracle_suite(n: usize, pairs: usize, rng: &mut SeededRng) -> Vec<CheckResult> {
    let alg = Algebra::symbolic();
    let rep = TensorRep::new(n, Params::symbolic());
    let mut t = Tally::new("oracle", format!("tensor image of products, n={n}"));
    for _ in 0..pairs {
        let a = random::basis_element(rng, n);
        let b = random::basis_element(rng, n);
        let v = rep.random_basis_vector(rng);
        let r = alg.mul(&a, &b).and_then(|ab| {
            let lhs = rep.apply_elem(&v, &ab)?;
            let rhs = rep.apply_elem(&rep.apply_elem(&v, &a)?, &b)?;
            Ok(lhs == rhs)
        });
        t.check(r, || format!("{a:?} * {b:?} on {v:?}"));
    }
    let mut idem = Tally::new("oracle", format!("idempotent terms act idempotently, n={n}"));
    for i in SetPartition0::enumerate(n) {
        let e = alg.ef(&i);
        let v = rep.random_basis_vector(rng);
        let r = rep.apply_elem(&v, &e).and_then(|once| Ok(rep.apply_elem(&once, &e)? == once));
        idem.check(r, || format!("{i:?}"));
    }
    vec![t.finish(), idem.finish()]
}

/// Full-rank certificate with `d = n + 1`, plus the collapsed `d = 1` control
/// at `n = 2` when `with_control` is set.
pub fn certificate_suite(n: usize, trials: usize, with_control: bool, rng: &mut SeededRng) -> (Vec<CheckResult>, Vec<CertificateReport>) {
    let mut out = Vec::new();
    let mut reports = Vec::new();
    let mut t = Tally::new("certificate", format!("rank = {} at {trials} random points, n={n}", dimension(n)));
    match independence_certificate(n, n as u32 + 1, trials, rng) {
        Ok(rep) => {
            for tr in &rep.trials {
                t.record(tr.rank as u128 == rep.expected, || format!("rank {} at u={}, v={}", tr.rank, tr.u, tr.v));
            }
            reports.push(rep);
        }
        Err(e) => t.error(e),
    }
    out.push(t.finish());
    if with_control {
        let mut t = Tally::new("certificate", "one rank only (d = 1) loses independence, n=2");
        match independence_certificate(2, 1, 1, rng) {
            Ok(rep) => {
                let rank = rep.trials[0].rank;
                t.record(!rep.ok && (rank as u128) < rep.expected, || format!("rank {rank}"));
                reports.push(rep);
            }
            Err(e) => t.error(e),
        }
        out.push(t.finish());
    }
    (out, reports)
}

// ---------------------------------------------------------------------------
// Markov trace

fn var(v: crate::coeff::Var) -> LaurentPoly {
    LaurentPoly::var(v)
}

/// The Markov rules for `X ∈ E_n` against `tr_{n+1}`, and `tr(XY) = tr(YX)`
/// in `E_n`. The last one is compared after `w = xy`; the count of pairs
/// that differ for generic `w` goes into the note.
pub fn markov_suite(n: usize, instances: usize, symbolic: bool, rng: &mut SeededRng) -> Vec<CheckResult> {
    use crate::coeff::Var::{W, X, Y, Z};
    let alg = if symbolic { Algebra::symbolic() } else { Algebra::new(point_params(rng)) };
    let how = if symbolic { "symbolic" } else { "random (u,v)" };
    let g = |x: Generator| alg.gen_elem(x, n + 1).expect("generator in range");
    let b_next = alg.eval_word(n + 1, &crate::algebra::word_b(n + 1)).expect("word in range");
    let t_n = g(Generator::T(n));
    let e_n = g(Generator::E(n));
    let f_next = g(Generator::F(n + 1));
    let e_t = alg.mul(&e_n, &t_n).expect("same n");
    let b_e = alg.mul(&b_next, &e_n).expect("same n");
    let b_f = alg.mul(&b_next, &f_next).expect("same n");
    let rules: Vec<(&str, &AlgebraElement, LaurentPoly)> = vec![
        ("tr(X T_n) = z tr(X)", &t_n, var(Z)),
        ("tr(X E_n T_n) = z tr(X)", &e_t, var(Z)),
        ("tr(X E_n) = x tr(X)", &e_n, var(X)),
        ("tr(X B_n+1) = y tr(X)", &b_next, var(Y)),
        ("tr(X B_n+1 E_n) = w tr(X)", &b_e, var(W)),
        ("tr(X B_n+1 F_n+1) = w tr(X)", &b_f, var(W)),
    ];
    let mut out = Vec::new();

    let mut unit = Tally::new("markov", format!("tr(1) = 1, n={n}"));
    unit.check(alg.markov_trace(&AlgebraElement::unit(n)).map(|t| t.is_one()), || "tr(1)".into());
    out.push(unit.finish());

    let xs: Vec<AlgebraElement> = (0..instances).map(|_| random_elem(&alg, rng, n, 2)).collect();
    let traces: Vec<Result<LaurentPoly>> = xs.iter().map(|x| alg.markov_trace(x)).collect();
    for (name, right, factor) in rules {
        let mut t = Tally::new("markov", format!("{name}, {how}, n={n}"));
        for (x, tx) in xs.iter().zip(&traces) {
            let r = (|| {
                let tx = tx.clone()?;
                let lhs = alg.markov_trace(&alg.mul(&x.embed(1), right)?)?;
                Ok(lhs == &factor * &tx)
            })();
            t.check(r, || format!("X = {x:?}"));
        }
        out.push(t.finish());
    }

    let mut t = Tally::new("markov", format!("tr(XY) = tr(YX) on w = xy, {how}, n={n}"));
    let mut generic = 0;
    let mut sane = Tally::new("markov", format!("trace values have no negative parameter powers, n={n}"));
    for _ in 0..instances {
        let x = random_elem(&alg, rng, n, 2);
        let y = random_elem(&alg, rng, n, 2);
        let r = (|| {
            let a = alg.markov_trace(&alg.mul(&x, &y)?)?;
            let b = alg.markov_trace(&alg.mul(&y, &x)?)?;
            Ok((a, b))
        })();
        match r {
            Ok((a, b)) => {
                if a != b {
                    generic += 1;
                }
                sane.record(trace_value_is_sane(&a) && trace_value_is_sane(&b), || format!("{a} / {b}"));
                t.record(on_w_xy_locus(&a) == on_w_xy_locus(&b), || format!("X = {x:?}, Y = {y:?}"));
            }
            Err(e) => t.error(e),
        }
    }
    t.note = Some(format!("{generic} of {instances} pairs differ for generic w"));
    out.push(t.finish());
    out.push(sane.finish());
    out
}

/// The smallest witness that `tr(XY) = tr(YX)` needs `w = xy`:
/// `tr(E_1 T_1 B_1 · T_1) - tr(T_1 · E_1 T_1 B_1) = w - xy`.
pub fn generic_trace_witness() -> Vec<CheckResult> {
    use crate::coeff::Var::{W, X, Y};
    let alg = Algebra::symbolic();
    let mut t = Tally::new("markov", "generic w: tr(E_1 T_1 B_1 T_1) - tr(T_1 E_1 T_1 B_1) = w - xy");
    let r = (|| {
        let x = alg.eval_word(2, &[Generator::E(1), Generator::T(1), Generator::B])?;
        let t1 = alg.gen_elem(Generator::T(1), 2)?;
        let d = &alg.markov_trace(&alg.mul(&x, &t1)?)? - &alg.markov_trace(&alg.mul(&t1, &x)?)?;
        Ok(d == &var(W) - &(&var(X) * &var(Y)))
    })();
    t.check(r, || "witness".into());
    vec![t.finish()]
}

// ---------------------------------------------------------------------------
// relative-trace lemmas

fn theta2(alg: &Algebra, e: &AlgebraElement) -> Result<AlgebraElement> {
    alg.theta(&alg.theta(e)?)
}

fn locus_elem(e: &AlgebraElement) -> AlgebraElement {
    e.map_coeffs(on_w_xy_locus)
}

/// Randomized and exhaustive checks of the relative-trace lemmas at `n`.
pub fn trace_lemma_suite(n: usize, count: usize, rng: &mut SeededRng) -> Vec<CheckResult> {
    assert!(n >= 2);
    let alg = Algebra::symbolic();
    let g = |x: Generator, m: usize| alg.gen_elem(x, m).expect("generator in range");
    let t_last = g(Generator::T(n - 1), n);
    let t_last_inv = g(Generator::TInv(n - 1), n);
    let e_last = g(Generator::E(n - 1), n);
    let mut out = Vec::new();

    let mut t = Tally::new("trace lemmas", format!("theta(X Y Z) = X theta(Y) Z, n={n}"));
    for _ in 0..count {
        let x = random_elem(&alg, rng, n - 1, 2);
        let z = random_elem(&alg, rng, n - 1, 2);
        let y = random_elem(&alg, rng, n, 2);
        let r = (|| {
            let lhs = alg.theta(&alg.mul_all(&[&x.embed(1), &y, &z.embed(1)])?)?;
            let rhs = alg.mul_all(&[&x, &alg.theta(&y)?, &z])?;
            Ok(lhs == rhs)
        })();
        t.check(r, || format!("X={x:?} Y={y:?} Z={z:?}"));
    }
    out.push(t.finish());

    let mut t = Tally::new("trace lemmas", format!("theta(T X T^-1) = theta(T^-1 X T) = theta_(n-1)(X), n={n}, all basis X"));
    for x in Algebra::basis_b(n - 1) {
        let r = (|| {
            let up = x.embed(1);
            let expect = alg.theta(&x)?.embed(1);
            let a = alg.theta(&alg.mul_all(&[&t_last, &up, &t_last_inv])?)?;
            let b = alg.theta(&alg.mul_all(&[&t_last_inv, &up, &t_last])?)?;
            Ok(a == expect && b == expect)
        })();
        t.check(r, || format!("X={x:?}"));
    }
    out.push(t.finish());

    let mut t = Tally::new("trace lemmas", format!("theta(E X T) = theta(T X E), n={n}, all basis X"));
    for x in Algebra::basis_b(n - 1) {
        let r = (|| {
            let up = x.embed(1);
            let a = alg.theta(&alg.mul_all(&[&e_last, &up, &t_last])?)?;
            let b = alg.theta(&alg.mul_all(&[&t_last, &up, &e_last])?)?;
            Ok(a == b)
        })();
        t.check(r, || format!("X={x:?}"));
    }
    out.push(t.finish());

    let mut ce = Tally::new("trace lemmas", format!("theta theta(E Y) = theta theta(Y E), n={n}, all basis Y"));
    let mut ct = Tally::new("trace lemmas", format!("theta theta(X T) = theta theta(T X) on w = xy, n={n}, all basis X"));
    let mut generic = 0;
    for y in Algebra::basis_b(n) {
        let r = (|| Ok(theta2(&alg, &alg.mul(&e_last, &y)?)? == theta2(&alg, &alg.mul(&y, &e_last)?)?))();
        ce.check(r, || format!("Y={y:?}"));
        let r = (|| {
            let a = theta2(&alg, &alg.mul(&y, &t_last)?)?;
            let b = theta2(&alg, &alg.mul(&t_last, &y)?)?;
            Ok((a != b, locus_elem(&a) == locus_elem(&b)))
        })();
        match r {
            Ok((differs, ok)) => {
                generic += differs as usize;
                ct.record(ok, || format!("X={y:?}"));
            }
            Err(e) => ct.error(e),
        }
    }
    ct.note = Some(format!("{generic} basis elements differ for generic w"));
    out.push(ce.finish());
    out.push(ct.finish());

    let mut t = Tally::new("trace lemmas", format!("five-case rule with an arbitrary prefix, n={n}"));
    for _ in 0..count {
        let v = random_elem(&alg, rng, n - 1, 3);
        let blocks = Block::all(n);
        let m = blocks[rand::Rng::gen_range(rng, 0..blocks.len())];
        let i = random::partition(rng, n);
        let r = (|| {
            let e = alg.apply_word(&v.embed(1), &block_word(&m))?.mul_ef(&i)?;
            Ok(alg.theta(&e)? == alg.theta_formula(&v, m, &i)?)
        })();
        t.check(r, || format!("v={v:?} m={m} I={i:?}"));
    }
    out.push(t.finish());
    out
}

// ---------------------------------------------------------------------------
// invariant

fn delta(alg: &Algebra, src: &str, n: usize) -> Result<InvariantValue> {
    alg.delta_b(&crate::coxeter::BraidWord::parse(src, n)?)
}

/// Golden values, conjugation and stabilization invariance.
pub fn invariant_suite(pairs: usize, max_n: usize, rng: &mut SeededRng) -> Vec<CheckResult> {
    use crate::coeff::Var::{V, W, Y};
    let alg = Algebra::symbolic();
    let mut out = Vec::new();

    let mut t = Tally::new("invariant", "golden values");
    let golden: Vec<(&str, usize, InvariantValue)> = vec![
        ("", 1, InvariantValue::new(0, LaurentPoly::one(), 0, 0)),
        ("r", 1, InvariantValue::new(0, var(Y), 0, 0)),
        (
            "r r",
            1,
            InvariantValue::new(0, &LaurentPoly::one() + &(&LaurentPoly::q_minus_inv(V) * &var(W)), 0, 0),
        ),
        ("s1", 2, InvariantValue::new(0, LaurentPoly::one(), 0, 0)),
    ];
    for (src, n, expect) in golden {
        t.check(delta(&alg, src, n).map(|v| v == expect), || format!("'{src}' on {n}"));
    }
    t.check(
        (|| Ok(!invariant_eq(&delta(&alg, "", 1)?, &delta(&alg, "r", 1)?)))(),
        || "r vs empty".into(),
    );
    for (a, na, b, nb) in [("s1 s2", 3, "s2 s1", 3), ("", 1, "s1", 2), ("r", 1, "r s1", 2)] {
        t.check((|| Ok(invariant_eq(&delta(&alg, a, na)?, &delta(&alg, b, nb)?)))(), || format!("'{a}' vs '{b}'"));
    }
    out.push(t.finish());

    let locus = InvariantValue::on_w_xy_locus;
    let mut conj = Tally::new("invariant", format!("conjugation invariance on w = xy, n <= {max_n}"));
    let mut generic = 0;
    for k in 0..pairs {
        let n = 1 + k % max_n;
        let a = random::braid_word(rng, n, 3);
        let b = random::braid_word(rng, n, 3);
        let r = (|| {
            let p = alg.delta_b(&a.concat(&b)?)?;
            let q = alg.delta_b(&b.concat(&a)?)?;
            Ok((invariant_eq(&p, &q), invariant_eq(&locus(&p), &locus(&q))))
        })();
        match r {
            Ok((g, l)) => {
                generic += !g as usize;
                conj.record(l, || format!("'{a}' / '{b}' on {n}"));
            }
            Err(e) => conj.error(e),
        }
    }
    conj.note = Some(format!("{generic} of {pairs} pairs differ for generic w"));
    out.push(conj.finish());

    let mut stab = Tally::new("invariant", format!("stabilization invariance, n <= {max_n}"));
    for k in 0..pairs {
        let n = 1 + k % max_n;
        let a = random::braid_word(rng, n, 4);
        let inverse = rand::Rng::gen_bool(rng, 0.5);
        let mut wide = a.widen(1);
        wide.letters.push(BraidLetter { gen: CoxGen::S(n), inverse });
        let r = (|| Ok(invariant_eq(&alg.delta_b(&a)?, &alg.delta_b(&wide)?)))();
        stab.check(r, || format!("'{a}' on {n} vs '{wide}'"));
    }
    out.push(stab.finish());
    out
}

// ---------------------------------------------------------------------------
// the whole run

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub relations: Vec<RelationStatus>,
    pub certificates: Vec<CertificateReport>,
}

/// Runs every suite. `Quick` stays at `n ≤ 2`; `Full` adds `n = 3` and the
/// rank-720 certificate.
pub fn run(level: Level, seed: u64) -> Report {
    let full = level == Level::Full;
    let top = if full { 3 } else { 2 };
    let mut seeds = random::rng(seed);
    let mut next = || random::rng(rand::Rng::gen(&mut seeds));
    let mut checks = Vec::new();
    let mut relations = Vec::new();
    let mut certificates = Vec::new();

    checks.extend(dims_suite(top));
    checks.extend(partition_suite(if full { 6 } else { 4 }, if full { 4 } else { 3 }));
    checks.extend(coxeter_suite(top + 1));
    for n in 1..=top {
        let (c, r) = algebra_relations_suite(n, &mut next());
        checks.extend(c);
        relations.extend(r);
        if n >= 2 {
            let (c, r) = rewriting_suite(n);
            checks.extend(c);
            relations.extend(r);
        }
        let sample = if n == 3 { Some(500) } else { None };
        let (c, r) = tensor_relations_suite(n, sample, &mut next());
        checks.extend(c);
        relations.extend(r);
        checks.extend(oracle_suite(n, if full { 300 } else { 60 }, &mut next()));
        let (c, r) = certificate_suite(n, if full { 3 } else { 1 }, n == 2, &mut next());
        checks.extend(c);
        certificates.extend(r);
    }
    let markov_count = if full { 200 } else { 25 };
    for n in 1..=2 {
        checks.extend(markov_suite(n, markov_count, true, &mut next()));
    }
    if full {
        checks.extend(markov_suite(3, markov_count, false, &mut next()));
    }
    checks.extend(generic_trace_witness());
    for n in 2..=top {
        checks.extend(trace_lemma_suite(n, if full { 100 } else { 20 }, &mut next()));
    }
    checks.extend(invariant_suite(if full { 120 } else { 30 }, top, &mut next()));

    let passed = checks.iter().all(CheckResult::passed);
    Report {
        seed,
        level,
        passed,
        checks,
        relations,
        certificates,
    }
}
