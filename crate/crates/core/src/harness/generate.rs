//! Seeded corpus generation.
//!
//! Every random choice comes from ChaCha8 seeded with `seed` through
//! `seed_from_u64`, so a spec and a seed determine the output bit for bit.
//! Corpus item `i` of a suite uses seed `base + i`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{ApproxTable, SetPrefix};
use crate::density::beatty_set;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Any number of changes the settle window allows.
    Delta2,
    /// At most `n` changes per column.
    Nce(usize),
    /// At most one change per column.
    Ce,
    /// `⋃_{k even} [4^k, 4^{k+1})`, settled at stage 1.
    OscillatingBlocks,
    /// The Beatty set of `q`, settled at stage 1.
    Beatty(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SettleMode {
    /// Column `x` changes only at stages `1..=x`, so column 0 is constant and
    /// every column has settled before stage `x + 1`.
    Early,
    /// Every column changes only at stages `1..=budget`.
    Uniform(usize),
}

/// How many changes a column gets, up to the cap its kind and window allow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChangeDistribution {
    /// Uniform on `0..=cap`.
    Uniform,
    /// Always `cap`.
    Saturated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GenKind,
    pub universe: usize,
    pub stages: usize,
    pub seed: u64,
    pub settle: SettleMode,
    pub distribution: ChangeDistribution,
}

impl GeneratorSpec {
    pub fn new(kind: GenKind, universe: usize, stages: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            universe,
            stages,
            seed,
            settle: SettleMode::Uniform(stages.saturating_sub(1)),
            distribution: ChangeDistribution::Uniform,
        }
    }

    pub fn settle(mut self, settle: SettleMode) -> Self {
        self.settle = settle;
        self
    }

    pub fn distribution(mut self, distribution: ChangeDistribution) -> Self {
        self.distribution = distribution;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Table(ApproxTable),
    Set(SetPrefix),
}

impl Generated {
    /// The table, with sets wrapped as tables settled at stage 1.
    pub fn into_table(self, stages: usize) -> Result<ApproxTable> {
        match self {
            Generated::Table(t) => Ok(t),
            Generated::Set(s) => ApproxTable::settled_at_one(&s, stages),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Generated::Table(t) => t.to_text(),
            Generated::Set(s) => s.to_text(),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    if spec.universe == 0 || spec.stages == 0 {
        return Err(Error::Infeasible(
            "universe and stages must be positive".into(),
        ));
    }
    match &spec.kind {
        GenKind::OscillatingBlocks => return Ok(Generated::Set(oscillating_blocks(spec.universe))),
        GenKind::Beatty(q) => return Ok(Generated::Set(beatty_set(q, spec.universe)?)),
        _ => {}
    }
    let cap = match spec.kind {
        GenKind::Nce(n) => n,
        GenKind::Ce => 1,
        _ => usize::MAX,
    };
    if cap != usize::MAX && cap > spec.stages - 1 {
        return Err(Error::Infeasible(format!(
            "budget {cap} exceeds the {} stages available after stage 0",
            spec.stages - 1
        )));
    }
    if let SettleMode::Uniform(budget) = spec.settle {
        if budget > spec.stages - 1 {
            return Err(Error::Infeasible(format!(
                "settle budget {budget} exceeds stage count {}",
                spec.stages
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut flips = Vec::with_capacity(spec.universe);
    let mut settled = Vec::with_capacity(spec.universe);
    for x in 0..spec.universe {
        let window = match spec.settle {
            SettleMode::Early => x.min(spec.stages - 1),
            SettleMode::Uniform(budget) => budget,
        };
        let most = cap.min(window);
        let count = match spec.distribution {
            ChangeDistribution::Uniform => rng.gen_range(0..=most),
            ChangeDistribution::Saturated => most,
        };
        let mut stages: Vec<usize> = sample(&mut rng, window, count)
            .into_iter()
            .map(|i| i + 1)
            .collect();
        stages.sort_unstable();
        settled.push(Some(stages.last().copied().unwrap_or(0)));
        flips.push(stages);
    }
    Ok(Generated::Table(ApproxTable::from_flips(
        spec.stages,
        flips,
        settled,
    )?))
}

/// `⋃_{k even} [4^k, 4^{k+1})` below `universe`.
pub fn oscillating_blocks(universe: usize) -> SetPrefix {
    SetPrefix::from_fn(universe, |x| x > 0 && x.ilog(4) % 2 == 0)
}

/// Each element independently with probability `p`.
pub fn random_set(rng: &mut impl Rng, universe: usize, p: f64) -> SetPrefix {
    SetPrefix::from_fn(universe, |_| rng.gen_bool(p))
}

/// ChaCha8 seeded with `seed`.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{classify, mind_changes};

    #[test]
    fn ce_is_ce() {
        for seed in 0..20 {
            let t = generate(&GeneratorSpec::new(GenKind::Ce, 64, 32, seed))
                .unwrap()
                .into_table(32)
                .unwrap();
            let c = classify(&t, None);
            assert!(c.computably_enumerable && c.certified);
        }
    }

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec::new(GenKind::Delta2, 40, 30, 7);
        assert_eq!(
            generate(&spec).unwrap().to_text(),
            generate(&spec).unwrap().to_text()
        );
        let other = GeneratorSpec { seed: 8, ..spec };
        assert_ne!(
            generate(&other).unwrap(),
            generate(&GeneratorSpec::new(GenKind::Delta2, 40, 30, 7)).unwrap()
        );
    }

    #[test]
    fn nce_budget_reached() {
        let max = (0..500)
            .map(|seed| {
                let t = generate(&GeneratorSpec::new(GenKind::Nce(4), 16, 64, seed))
                    .unwrap()
                    .into_table(64)
                    .unwrap();
                mind_changes(&t).max
            })
            .max();
        assert_eq!(max, Some(4));
    }

    #[test]
    fn early_settling() {
        let spec = GeneratorSpec::new(GenKind::Delta2, 16, 1000, 3)
            .settle(SettleMode::Early)
            .distribution(ChangeDistribution::Saturated);
        let t = generate(&spec).unwrap().into_table(1000).unwrap();
        for x in 0..16 {
            assert_eq!(t.flips(x).len(), x);
            assert!(t.settled_by(x).unwrap() <= x);
        }
    }

    #[test]
    fn infeasible() {
        assert!(matches!(
            generate(&GeneratorSpec::new(GenKind::Nce(10), 8, 10, 0)),
            Err(Error::Infeasible(_))
        ));
        let spec = GeneratorSpec::new(GenKind::Delta2, 8, 10, 0).settle(SettleMode::Uniform(10));
        assert!(matches!(generate(&spec), Err(Error::Infeasible(_))));
    }

    #[test]
    fn blocks() {
        let b = oscillating_blocks(20);
        assert_eq!(
            b.elements().collect::<Vec<_>>(),
            vec![1, 2, 3, 16, 17, 18, 19]
        );
    }
}
