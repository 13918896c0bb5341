use std::io::Write;

use crate::approx::{ApproxTable, BoundFunction};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::Rational;

use super::transfer::{transfer, Transfer};

/// Stagewise history of one element `z` of the transferred set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementRecord {
    pub z: usize,
    /// `f(z)`, which is also `g(z, 0)`.
    pub f_z: usize,
    /// `(stage, new value)` for every change of `g(z, ·)`.
    pub g_changes: Vec<(usize, usize)>,
    /// Stage at which `z` fell below the stage counter and got a first guess.
    pub resolved_at: usize,
    /// Stages at which `B_s(z)` changed.
    pub b_changes: Vec<usize>,
    pub b_final: bool,
    /// Membership of `z` in the set built from the limit.
    pub b_limit: bool,
    /// `z < m(f(z))`, when `m(f(z))` lies inside the computed modulus prefix.
    pub anchor: Option<bool>,
}

impl ElementRecord {
    pub fn bound_ok(&self) -> bool {
        self.b_changes.len() <= self.f_z && self.g_changes.len() <= self.f_z
    }

    pub fn limit_agrees(&self) -> bool {
        self.b_final == self.b_limit
    }

    /// Every change of `B_s(z)` happens at the resolution stage or at a stage
    /// where `g(z, ·)` changed.
    pub fn coupled(&self) -> bool {
        self.b_changes
            .iter()
            .all(|&s| s == self.resolved_at || self.g_changes.iter().any(|&(t, _)| t == s))
    }

    /// `g(z, s)`.
    pub fn g_at(&self, s: usize) -> usize {
        let k = self.g_changes.partition_point(|&(t, _)| t <= s);
        if k == 0 {
            self.f_z
        } else {
            self.g_changes[k - 1].1
        }
    }
}

/// A stagewise approximation `B_s` to the transferred set together with the
/// level guesses `g(z, s)` that bound its mind changes by `f(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferCertificate<Q = Rational> {
    pub transfer: Transfer<Q>,
    pub elements: Vec<ElementRecord>,
    /// Number of approximation stages, `S + 1`.
    pub stages: usize,
}

impl<Q: ExactScalar> TransferCertificate<Q> {
    pub fn bound_violations(&self) -> Vec<usize> {
        self.select(|e| !e.bound_ok())
    }

    pub fn disagreements(&self) -> Vec<usize> {
        self.select(|e| !e.limit_agrees())
    }

    pub fn coupling_violations(&self) -> Vec<usize> {
        self.select(|e| !e.coupled())
    }

    pub fn anchor_violations(&self) -> Vec<usize> {
        self.select(|e| e.anchor == Some(false))
    }

    pub fn holds(&self) -> bool {
        self.elements
            .iter()
            .all(|e| e.bound_ok() && e.limit_agrees() && e.coupled() && e.anchor != Some(false))
    }

    fn select(&self, bad: impl Fn(&ElementRecord) -> bool) -> Vec<usize> {
        self.elements
            .iter()
            .filter(|e| bad(e))
            .map(|e| e.z)
            .collect()
    }

    /// `B_s` as an approximation table.
    pub fn staged_table(&self) -> Result<ApproxTable> {
        let flips = self.elements.iter().map(|e| e.b_changes.clone()).collect();
        let settled = self
            .elements
            .iter()
            .map(|e| Some(e.b_changes.last().copied().unwrap_or(0)))
            .collect();
        ApproxTable::from_flips(self.stages, flips, settled)
    }

    /// CSV with columns `z,f_z,g_changes,B_changes,bound_ok,limit_agrees`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "z",
            "f_z",
            "g_changes",
            "B_changes",
            "bound_ok",
            "limit_agrees",
        ])?;
        for e in &self.elements {
            w.write_record([
                e.z.to_string(),
                e.f_z.to_string(),
                e.g_changes.len().to_string(),
                e.b_changes.len().to_string(),
                e.bound_ok().to_string(),
                e.limit_agrees().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Modulus levels visible at stage `s`, reading table stages `0..s` only.
///
/// Level `x` is kept while its value, computed with the last changes observed
/// so far, is at most `s − 1`. Each kept value is a lower bound for `m(x)`,
/// and the whole list only grows pointwise as `s` increases.
fn visible_levels(t: &ApproxTable, f: &BoundFunction, s: usize) -> Vec<usize> {
    let mut levels: Vec<usize> = Vec::new();
    let mut stable = 0;
    loop {
        let x = levels.len();
        let floor = match levels.last() {
            None => 0,
            Some(&prev) => match x.checked_mul(prev).and_then(|v| v.checked_add(1)) {
                Some(v) if v < s => v,
                _ => break,
            },
        };
        if x > 0 {
            if x > t.universe() {
                break;
            }
            stable = stable.max(t.last_change_by(x - 1, s - 1));
        }
        let Some(threshold) = f.first_exceeding(x, s) else {
            break;
        };
        let v = floor.max(stable).max(threshold);
        if v >= s {
            break;
        }
        levels.push(v);
    }
    levels
}

/// Runs the transfer with a stage-by-stage approximation.
///
/// At stage `s ≥ 1` only table stages before `s` are read. `g(z, 0) = f(z)`;
/// once `z < s`, `g(z, s) = min(f(z), number of visible levels ≤ z)`. The
/// guess `B_s(z)` is recomputed from the stage-`s` data when `g(z, ·)` changes
/// and once when `z` first falls below `s`, and is frozen otherwise.
pub fn certify_fce<Q: ExactScalar>(
    t: &ApproxTable,
    f: &BoundFunction,
    horizon: usize,
) -> Result<TransferCertificate<Q>> {
    let limit = transfer::<Q>(t, f, horizon)?;
    let last_stage = t.stages();
    let universe = t.universe();

    let mut elements = Vec::with_capacity(horizon);
    for z in 0..horizon {
        let f_z = f.eval(z).ok_or(Error::BoundUndefined { argument: z })?;
        elements.push(ElementRecord {
            z,
            f_z,
            g_changes: Vec::new(),
            resolved_at: z + 1,
            b_changes: Vec::new(),
            b_final: false,
            b_limit: limit.b.contains(z),
            anchor: limit.modulus.get(f_z).map(|m| z < m),
        });
    }

    let mut flips_at = vec![Vec::new(); last_stage];
    for x in 0..universe {
        for &c in t.flips(x) {
            flips_at[c].push(x);
        }
    }
    let mut a_now = t.snapshot(0);
    let mut a_counts = a_now.prefix_counts();

    let mut g: Vec<usize> = elements.iter().map(|e| e.f_z).collect();
    let mut b = vec![false; horizon];
    let mut cache = vec![false; horizon];
    let mut cache_counts = vec![0usize; horizon + 1];
    let mut valid = 0;
    let mut levels: Vec<usize> = Vec::new();

    for s in 1..=last_stage {
        if !flips_at[s - 1].is_empty() {
            for &x in &flips_at[s - 1] {
                a_now.set(x, !a_now.contains(x));
            }
            a_counts = a_now.prefix_counts();
            valid = 0;
        }
        let mut triggered = Vec::new();
        let fresh = visible_levels(t, f, s);
        if fresh != levels {
            levels = fresh;
            for z in 0..(s - 1).min(horizon) {
                let guess = elements[z].f_z.min(levels.partition_point(|&v| v <= z));
                if guess != g[z] {
                    g[z] = guess;
                    elements[z].g_changes.push((s, guess));
                    valid = valid.min(z);
                    triggered.push(z);
                }
            }
        }
        if s - 1 < horizon {
            let z = s - 1;
            let guess = elements[z].f_z.min(levels.partition_point(|&v| v <= z));
            if guess != g[z] {
                g[z] = guess;
                elements[z].g_changes.push((s, guess));
                valid = valid.min(z);
            }
            triggered.push(z);
        }
        for z in triggered {
            while valid <= z {
                let y = valid;
                let k = g[y];
                if k > universe {
                    return Err(Error::UniverseTooSmall {
                        universe,
                        level: k - 1,
                        needed: k,
                    });
                }
                let bit = if k == 0 {
                    false
                } else if y == 0 {
                    a_counts[k] > 0
                } else {
                    cache_counts[y] * k < a_counts[k] * y
                };
                cache[y] = bit;
                cache_counts[y + 1] = cache_counts[y] + usize::from(bit);
                valid += 1;
            }
            if cache[z] != b[z] {
                b[z] = cache[z];
                elements[z].b_changes.push(s);
            }
        }
    }
    for (e, &bit) in elements.iter_mut().zip(&b) {
        e.b_final = bit;
    }
    Ok(TransferCertificate {
        transfer: limit,
        elements,
        stages: last_stage + 1,
    })
}
