//! Reals presented as limsups of rational sequences, formal differences of
//! such reals, and the finite-evidence queries available on them.
//!
//! Nothing here claims the value of a represented real. Every query answers
//! from a finite window and reports that window.

use std::io::Write;

use crate::approx::ApproxTable;
use crate::constructions::decompose_nce;
use crate::density::{extremum, RationalSequence};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::window::Window;
use crate::Rational;

/// The real `limsup_n q_n` of a nonempty rational sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimsupReal<Q = Rational> {
    seq: RationalSequence<Q>,
}

impl<Q: ExactScalar> LimsupReal<Q> {
    pub fn new(seq: RationalSequence<Q>) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptyWindow {
                lo: 0,
                hi: 0,
                domain_lo: 0,
                domain_hi: 0,
            });
        }
        Ok(LimsupReal { seq })
    }

    pub fn constant(value: Q, len: usize) -> Result<Self> {
        Self::new(RationalSequence::constant(value, len))
    }

    pub fn sequence(&self) -> &RationalSequence<Q> {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The default tail window `[T/2, T-1]`.
    pub fn tail_window(&self) -> Window {
        Window::tail(0, self.len() - 1)
    }
}

/// `limsup(plus) − limsup(minus)`, kept as a formal pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReal<Q = Rational> {
    pub plus: LimsupReal<Q>,
    pub minus: LimsupReal<Q>,
}

/// `|{n ∈ window : q_n > q}|`, the evidence count for `q < limsup`.
pub fn cut_evidence<Q: ExactScalar>(r: &LimsupReal<Q>, q: &Q, window: Window) -> Result<usize> {
    let window = window.within(0, r.len() - 1)?;
    Ok(window.indices().filter(|&n| r.seq.get(n) > q).count())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimsupEstimate<Q = Rational> {
    pub window: Window,
    pub value: Q,
    pub witness: usize,
}

/// Max of `q_n` over the window, first maximizing index as witness.
pub fn limsup_estimate<Q: ExactScalar>(
    r: &LimsupReal<Q>,
    window: Window,
) -> Result<LimsupEstimate<Q>> {
    let window = window.within(0, r.len() - 1)?;
    let (witness, value) = extremum(window, |n| r.seq.get(n), |a, b| a > b);
    Ok(LimsupEstimate {
        window,
        value,
        witness,
    })
}

/// One prefix length of the stagewise audit `ρ_s(A) = u_s − v_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRow<Q = Rational> {
    pub s: usize,
    pub rho_a: Q,
    pub u: Q,
    pub v: Q,
    pub residual: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRepresentation<Q = Rational> {
    /// `u_s` and `v_s` for `s = 1..=N`, stored at index `s - 1`.
    pub real: DiffReal<Q>,
    /// Layer count after padding to an even number.
    pub layers: usize,
    pub rows: Vec<DiffRow<Q>>,
}

impl<Q: ExactScalar> DiffRepresentation<Q> {
    /// Prefix lengths where the residual is nonzero.
    pub fn failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| !r.residual.is_zero())
            .map(|r| r.s)
            .collect()
    }

    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.residual.is_zero())
    }

    /// CSV with columns `s,rho_s_A,u_s,v_s,residual`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "rho_s_A", "u_s", "v_s", "residual"])?;
        for r in &self.rows {
            w.write_record([
                r.s.to_string(),
                r.rho_a.to_string(),
                r.u.to_string(),
                r.v.to_string(),
                r.residual.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Splits an n-c.e. table into nested c.e. layers `A_1 ⊇ … ⊇ A_{2k}` and
/// returns `u_s = Σ_odd ρ_s(A_j)`, `v_s = Σ_even ρ_s(A_j)` with the exact audit
/// `ρ_s(A) = u_s − v_s` for every `1 ≤ s ≤ N`.
pub fn diff_representation<Q: ExactScalar>(t: &ApproxTable) -> Result<DiffRepresentation<Q>> {
    let decomposition = decompose_nce(t);
    let target = t.final_set();
    if decomposition.reassemble() != target {
        return Err(Error::Internal(
            "decomposition does not reassemble the limit set".into(),
        ));
    }
    let layers = decomposition.layers().len();
    let padded = layers + layers % 2;
    let universe = t.universe();

    let layer_counts: Vec<Vec<usize>> = decomposition
        .layers()
        .iter()
        .map(|l| l.final_set().prefix_counts())
        .collect();
    let a_counts = target.prefix_counts();

    let mut u_seq = Vec::with_capacity(universe);
    let mut v_seq = Vec::with_capacity(universe);
    let mut rows = Vec::with_capacity(universe);
    for s in 1..=universe {
        let mut u = Q::zero();
        let mut v = Q::zero();
        for (j, counts) in layer_counts.iter().enumerate() {
            let a_js = Q::ratio(counts[s], s);
            // layers are numbered from 1: j = 0 is A_1 (odd)
            if j % 2 == 0 {
                u = u + a_js;
            } else {
                v = v + a_js;
            }
        }
        let rho_a = Q::ratio(a_counts[s], s);
        let residual = rho_a.clone() - (u.clone() - v.clone());
        u_seq.push(u.clone());
        v_seq.push(v.clone());
        rows.push(DiffRow {
            s,
            rho_a,
            u,
            v,
            residual,
        });
    }
    let real = DiffReal {
        plus: LimsupReal::new(RationalSequence::new(u_seq))?,
        minus: LimsupReal::new(RationalSequence::new(v_seq))?,
    };
    Ok(DiffRepresentation {
        real,
        layers: padded,
        rows,
    })
}
