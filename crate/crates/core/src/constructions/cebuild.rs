use std::ops::Range;

use crate::approx::ApproxTable;
use crate::error::{Error, Result};
use crate::reals::LimsupReal;
use crate::scalar::ExactScalar;

/// Partition of `[0, N)` into consecutive blocks `I_0, I_1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSchedule {
    /// `|I_n| = first · 2^n`, the last block cut off at `N`.
    Geometric { first: usize },
    /// Explicit block lengths; must sum to `N`.
    Explicit(Vec<usize>),
}

impl Default for BlockSchedule {
    fn default() -> Self {
        BlockSchedule::Geometric { first: 64 }
    }
}

impl BlockSchedule {
    pub fn blocks(&self, universe: usize) -> Result<Vec<Range<usize>>> {
        let mut out = Vec::new();
        match self {
            BlockSchedule::Geometric { first } => {
                if *first == 0 {
                    return Err(Error::ScheduleMismatch {
                        covered: 0,
                        universe,
                    });
                }
                let mut start = 0;
                let mut len = *first;
                while start < universe {
                    let end = start.saturating_add(len).min(universe);
                    out.push(start..end);
                    start = end;
                    len = len.saturating_mul(2);
                }
            }
            BlockSchedule::Explicit(lengths) => {
                let covered: usize = lengths.iter().sum();
                if covered != universe || lengths.contains(&0) {
                    return Err(Error::ScheduleMismatch { covered, universe });
                }
                let mut start = 0;
                for &len in lengths {
                    out.push(start..start + len);
                    start += len;
                }
            }
        }
        Ok(out)
    }
}

/// Bit-reversal (van der Corput) priority order on `0..len`: any prefix of the
/// order is spread evenly across the block.
pub fn van_der_corput_order(len: usize) -> Vec<usize> {
    if len <= 1 {
        return (0..len).collect();
    }
    let width = len.next_power_of_two();
    let bits = width.trailing_zeros();
    (0..width)
        .map(|i| i.reverse_bits() >> (usize::BITS - bits))
        .filter(|&i| i < len)
        .collect()
}

/// A c.e. set whose block `I_n` ends up holding the first `⌈τ_n·|I_n|⌉`
/// positions of `I_n` in van der Corput order, `τ_n = max{q_m : n ≤ m < T}`.
///
/// At stage `t` block `n` holds `⌈τ_n^t·|I_n|⌉` positions with
/// `τ_n^t = max{q_m : n ≤ m < t}`; targets only grow, so every column is
/// monotone. The table has `T + 1` stages.
pub fn build_ce_density<Q: ExactScalar>(
    target: &LimsupReal<Q>,
    schedule: &BlockSchedule,
    universe: usize,
) -> Result<ApproxTable> {
    let q = target.sequence();
    if let Some(bad) = q.values().iter().find(|v| !v.in_unit_interval()) {
        return Err(Error::OutOfUnitInterval {
            value: bad.to_string(),
        });
    }
    let blocks = schedule.blocks(universe)?;
    if q.len() < blocks.len() {
        return Err(Error::TargetTooShort {
            len: q.len(),
            blocks: blocks.len(),
        });
    }
    let stages = q.len() + 1;
    let mut flips = vec![Vec::new(); universe];
    let mut settled = vec![Some(0); universe];
    for (n, block) in blocks.iter().enumerate() {
        let order = van_der_corput_order(block.len());
        let mut running = Q::zero();
        let mut filled = 0;
        for t in (n + 1)..=q.len() {
            let candidate = q.get(t - 1);
            if candidate > &running {
                running = candidate.clone();
            }
            let want = (running.clone() * Q::from_count(block.len()))
                .ceil_count()
                .ok_or_else(|| Error::Internal("block target out of range".into()))?;
            for &offset in &order[filled..want] {
                let x = block.start + offset;
                flips[x].push(t);
                settled[x] = Some(t);
            }
            filled = filled.max(want);
        }
    }
    ApproxTable::from_flips(stages, flips, settled)
}
