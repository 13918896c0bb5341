use crate::approx::{ApproxTable, BoundFunction, BoundKind};
use crate::error::{Error, Result};

/// Why the modulus prefix ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusStop {
    /// The next value would not fit below the stage count.
    StageHorizon,
    /// The next level reads columns past the table's universe.
    UniverseExhausted,
}

/// The three lower bounds combined at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    pub level: usize,
    pub value: usize,
    /// `x·m(x−1) + 1`, or 0 at level 0.
    pub growth_floor: usize,
    /// Least stage where `A↾x` stops changing, or 0 at level 0.
    pub stable_from: usize,
    /// `μs[f(s) > x]`.
    pub bound_threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusPrefix {
    levels: Vec<LevelRecord>,
    bound: BoundFunction,
    stop: ModulusStop,
    stages: usize,
}

impl ModulusPrefix {
    /// `m(0), m(1), …` up to the last level that fits.
    pub fn values(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.value).collect()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.levels.get(x).map(|l| l.value)
    }

    pub fn levels(&self) -> &[LevelRecord] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn bound(&self) -> &BoundFunction {
        &self.bound
    }

    pub fn stop(&self) -> ModulusStop {
        self.stop
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    /// The level `x` with `m(x) ≤ y < m(x+1)`, or `None` below `m(0)`.
    /// Past the last computed value the last level is returned.
    pub fn level_of(&self, y: usize) -> Option<usize> {
        let k = self.levels.partition_point(|l| l.value <= y);
        k.checked_sub(1)
    }
}

/// `m(0) = μs[f(s) > 0]`,
/// `m(x+1) = max((x+1)·m(x) + 1, μs[A_t↾(x+1) constant for t ≥ s], μs[f(s) > x+1])`,
/// computed while values stay below the stage count.
///
/// Stability is read off the settling certificates of columns `0..=x`, so an
/// uncertified column is an error. When `f` is a constant or a table, a level
/// that fits but has no stage with `f(s)` above it is an error too.
pub fn modulus(t: &ApproxTable, f: &BoundFunction) -> Result<ModulusPrefix> {
    let stages = t.stages();
    let mut levels: Vec<LevelRecord> = Vec::new();
    let mut stable = 0;
    let stop = loop {
        let x = levels.len();
        let growth_floor = match levels.last() {
            None => 0,
            Some(prev) => match x.checked_mul(prev.value).and_then(|v| v.checked_add(1)) {
                Some(v) if v < stages => v,
                _ => break ModulusStop::StageHorizon,
            },
        };
        if x > 0 {
            let column = x - 1;
            if column >= t.universe() {
                break ModulusStop::UniverseExhausted;
            }
            if t.settled_by(column).is_none() {
                return Err(Error::MissingCertificate { element: column });
            }
            stable = stable.max(t.last_change(column));
        }
        let Some(bound_threshold) = f.first_exceeding(x, stages) else {
            if matches!(f.kind(), BoundKind::Identity) {
                break ModulusStop::StageHorizon;
            }
            return Err(Error::InsufficientBound { level: x, stages });
        };
        let value = growth_floor.max(stable).max(bound_threshold);
        if value >= stages {
            break ModulusStop::StageHorizon;
        }
        levels.push(LevelRecord {
            level: x,
            value,
            growth_floor,
            stable_from: stable,
            bound_threshold,
        });
    };
    Ok(ModulusPrefix {
        levels,
        bound: f.clone(),
        stop,
        stages,
    })
}
