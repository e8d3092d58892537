//! Relative traces `θ_n : E_n^B → E_{n-1}^B` and the Markov trace
//! `tr_n = θ_1 ∘ ⋯ ∘ θ_n`, computed on the descriptor basis
//! `m_1 ⋯ m_n EF_I` (idempotent on the right).

use std::sync::Arc;

use crate::algebra::{block_word, Algebra, AlgebraElement, CDescriptor, Generator};
use crate::coeff::{LaurentPoly, Var};
use crate::coxeter::Block;
use crate::error::{Error, Result};
use crate::partitions::SetPartition0;

/// The trace parameters `x`, `y`, `z`, `w`, always kept as variables.
#[derive(Clone, Copy, Debug, Default)]
pub struct TraceParams;

impl TraceParams {
    pub fn x(&self) -> LaurentPoly {
        LaurentPoly::var(Var::X)
    }

    pub fn y(&self) -> LaurentPoly {
        LaurentPoly::var(Var::Y)
    }

    pub fn z(&self) -> LaurentPoly {
        LaurentPoly::var(Var::Z)
    }

    pub fn w(&self) -> LaurentPoly {
        LaurentPoly::var(Var::W)
    }
}

impl Algebra {
    /// `θ_k` on one descriptor of `E_k`.
    pub fn theta_descriptor(&self, d: &CDescriptor) -> Result<Arc<AlgebraElement>> {
        if let Some(e) = self.theta_cache.read().expect("lock").get(d) {
            return Ok(e.clone());
        }
        let k = d.n();
        if k == 0 {
            return Err(Error::SizeMismatch(1, 0));
        }
        let prefix: Vec<Generator> = d.blocks[..k - 1].iter().flat_map(block_word).collect();
        let prefix = self.eval_word(k - 1, &prefix)?;
        let out = self.theta_formula(&prefix, d.blocks[k - 1], &d.partition)?;
        let out = Arc::new(out);
        self.theta_cache
            .write()
            .expect("lock")
            .insert(d.clone(), out.clone());
        Ok(out)
    }

    /// The right side of the five-case rule for `θ_k(v m_k EF_I)` with an
    /// arbitrary `v ∈ E_{k-1}`.
    pub fn theta_formula(&self, v: &AlgebraElement, m: Block, i: &SetPartition0) -> Result<AlgebraElement> {
        let k = v.n() + 1;
        if m.k != k || i.n() != k {
            return Err(Error::SizeMismatch(k, m.k.max(i.n())));
        }
        let tp = TraceParams;
        if m.j < k {
            let lowered = Block {
                k: k - 1,
                j: m.j,
                negative: m.negative,
            };
            return Ok(self
                .apply_word(v, &block_word(&lowered))?
                .mul_ef(&i.tau(k, m.j)?)?
                .scale(&tp.z()));
        }
        let c = match (m.negative, i.in_support(k)) {
            (false, false) => LaurentPoly::one(),
            (false, true) => tp.x(),
            (true, false) => tp.y(),
            (true, true) => tp.w(),
        };
        Ok(v.mul_ef(&i.remove(k)?)?.scale(&c))
    }

    /// The relative trace `θ_n`, with `n = e.n() ≥ 1`.
    pub fn theta(&self, e: &AlgebraElement) -> Result<AlgebraElement> {
        let n = e.n();
        if n == 0 {
            return Err(Error::SizeMismatch(1, 0));
        }
        let mut out = AlgebraElement::zero(n - 1);
        for (d, c) in self.express_in_c(e)? {
            out = out.add(&self.theta_descriptor(&d)?.scale(&c))?;
        }
        Ok(out)
    }

    fn trace_descriptor(&self, d: &CDescriptor) -> Result<LaurentPoly> {
        if let Some(t) = self.trace_cache.read().expect("lock").get(d) {
            return Ok(t.clone());
        }
        let t = self.markov_trace(&*self.theta_descriptor(d)?)?;
        self.trace_cache
            .write()
            .expect("lock")
            .insert(d.clone(), t.clone());
        Ok(t)
    }

    /// `tr_n(e)` for `n = e.n()`; on `E_0` this is the scalar itself.
    pub fn markov_trace(&self, e: &AlgebraElement) -> Result<LaurentPoly> {
        if e.n() == 0 {
            return Ok(e.scalar_part());
        }
        let mut out = LaurentPoly::zero();
        for (d, c) in self.express_in_c(e)? {
            out += &(&c * &self.trace_descriptor(&d)?);
        }
        debug_assert!(trace_value_is_sane(&out), "negative trace-parameter exponent in {out}");
        Ok(out)
    }
}

/// Substitutes `w = x y`, the locus on which the trace is a genuine trace.
pub fn on_w_xy_locus(p: &LaurentPoly) -> LaurentPoly {
    let xy = &LaurentPoly::var(Var::X) * &LaurentPoly::var(Var::Y);
    p.substitute(Var::W, &xy).expect("w has no negative powers")
}

/// No negative powers of `x`, `y`, `z`, `w`.
pub fn trace_value_is_sane(t: &LaurentPoly) -> bool {
    t.terms().all(|(m, _)| [Var::X, Var::Y, Var::Z, Var::W].iter().all(|&v| m.exp(v) >= 0))
}
