use super::bound::BoundFunction;
use super::set::SetPrefix;
use super::table::ApproxTable;

/// Per-element mind-change counts `|{s : g(x,s) ≠ g(x,s+1)}|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MindChangeProfile {
    pub counts: Vec<usize>,
    pub max: usize,
    /// `monotone[x]` iff column `x` is nondecreasing in `s`.
    pub monotone: Vec<bool>,
}

pub fn mind_changes(t: &ApproxTable) -> MindChangeProfile {
    let counts: Vec<usize> = (0..t.universe()).map(|x| t.flips(x).len()).collect();
    // columns start at 0, so nondecreasing means at most one flip
    let monotone = counts.iter().map(|&c| c <= 1).collect();
    let max = counts.iter().copied().max().unwrap_or(0);
    MindChangeProfile {
        counts,
        max,
        monotone,
    }
}

/// `A(x) = g(x, S-1)`, with the elements whose limit is not certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitSet {
    pub set: SetPrefix,
    pub uncertified: Vec<usize>,
}

impl LimitSet {
    pub fn is_certified(&self) -> bool {
        self.uncertified.is_empty()
    }
}

pub fn limit_set(t: &ApproxTable) -> LimitSet {
    LimitSet {
        set: t.final_set(),
        uncertified: (0..t.universe())
            .filter(|&x| t.settled_by(x).is_none())
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub bound: BoundFunction,
    pub holds: bool,
    /// Elements with `count(x) > f(x)` (or `f(x)` undefined).
    pub violations: Vec<usize>,
}

/// Ershov position of a table, valid within its stage horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Least `n` with every count `≤ n`.
    pub minimal_level: usize,
    pub computably_enumerable: bool,
    pub bound: Option<BoundCheck>,
    pub horizon: usize,
    /// Every column carries a settling certificate; otherwise the result only
    /// describes the observed stages.
    pub certified: bool,
}

pub fn classify(t: &ApproxTable, f: Option<&BoundFunction>) -> Classification {
    let profile = mind_changes(t);
    let bound = f.map(|f| {
        let violations: Vec<usize> = profile
            .counts
            .iter()
            .enumerate()
            .filter(|&(x, &c)| f.eval(x).is_none_or(|fx| c > fx))
            .map(|(x, _)| x)
            .collect();
        BoundCheck {
            bound: f.clone(),
            holds: violations.is_empty(),
            violations,
        }
    });
    Classification {
        minimal_level: profile.max,
        computably_enumerable: profile.monotone.iter().all(|&m| m),
        bound,
        horizon: t.stages(),
        certified: t.is_certified(),
    }
}
