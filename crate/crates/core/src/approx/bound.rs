use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Identity,
    Constant(usize),
    /// Values on `0..len`; undefined beyond.
    Table(Vec<usize>),
}

/// A nondecreasing mind-change budget `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundFunction {
    kind: BoundKind,
}

impl BoundFunction {
    pub fn identity() -> Self {
        BoundFunction {
            kind: BoundKind::Identity,
        }
    }

    /// The constant function `c_n`.
    pub fn constant(n: usize) -> Self {
        BoundFunction {
            kind: BoundKind::Constant(n),
        }
    }

    pub fn table(values: Vec<usize>) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::NotMonotone { index: i + 1 });
        }
        Ok(BoundFunction {
            kind: BoundKind::Table(values),
        })
    }

    pub fn kind(&self) -> &BoundKind {
        &self.kind
    }

    pub fn eval(&self, s: usize) -> Option<usize> {
        match &self.kind {
            BoundKind::Identity => Some(s),
            BoundKind::Constant(n) => Some(*n),
            BoundKind::Table(v) => v.get(s).copied(),
        }
    }

    /// `f` on `0..stages`.
    pub fn values(&self, stages: usize) -> Vec<Option<usize>> {
        (0..stages).map(|s| self.eval(s)).collect()
    }

    /// Whether the function is flagged unbounded. An explicit table qualifies
    /// when it takes every value from 0 up to its maximum, the finite stand-in
    /// for growing without bound.
    pub fn is_unbounded(&self) -> bool {
        match &self.kind {
            BoundKind::Identity => true,
            BoundKind::Constant(_) => false,
            BoundKind::Table(v) => v.first() == Some(&0) && v.windows(2).all(|w| w[1] - w[0] <= 1),
        }
    }

    /// `(μs < limit)[f(s) > level]`.
    pub fn first_exceeding(&self, level: usize, limit: usize) -> Option<usize> {
        match &self.kind {
            BoundKind::Identity => Some(level + 1).filter(|&s| s < limit),
            BoundKind::Constant(n) => (*n > level && limit > 0).then_some(0),
            BoundKind::Table(v) => {
                let end = v.len().min(limit);
                let k = v[..end].partition_point(|&f| f <= level);
                (k < end).then_some(k)
            }
        }
    }

    /// Parses `id`, `const:N`, or a whitespace-separated list of naturals.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "id" || spec == "identity" {
            return Ok(Self::identity());
        }
        if let Some(n) = spec.strip_prefix("const:") {
            let n = n
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad constant `{n}`")))?;
            return Ok(Self::constant(n));
        }
        let values = spec
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(0, format!("bad bound value `{t}`")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if values.is_empty() {
            return Err(Error::parse(0, "empty bound table"));
        }
        Self::table(values)
    }
}

impl fmt::Display for BoundFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BoundKind::Identity => write!(f, "id"),
            BoundKind::Constant(n) => write!(f, "const:{n}"),
            BoundKind::Table(v) => write!(f, "table[{}]", v.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_exceeding_matches_scan() {
        let fs = [
            BoundFunction::identity(),
            BoundFunction::constant(3),
            BoundFunction::constant(0),
            BoundFunction::table(vec![0, 0, 1, 1, 2, 4, 4, 5]).unwrap(),
        ];
        for f in &fs {
            for level in 0..7 {
                for limit in 0..10 {
                    let scan = (0..limit).find(|&s| f.eval(s).is_some_and(|v| v > level));
                    assert_eq!(
                        f.first_exceeding(level, limit),
                        scan,
                        "{f} level {level} limit {limit}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_must_be_nondecreasing() {
        assert_eq!(
            BoundFunction::table(vec![0, 2, 1]),
            Err(Error::NotMonotone { index: 2 })
        );
    }

    #[test]
    fn unbounded_flag() {
        assert!(BoundFunction::identity().is_unbounded());
        assert!(!BoundFunction::constant(9).is_unbounded());
        assert!(BoundFunction::table(vec![0, 1, 1, 2, 3])
            .unwrap()
            .is_unbounded());
        assert!(!BoundFunction::table(vec![0, 2, 3]).unwrap().is_unbounded());
        assert!(!BoundFunction::table(vec![1, 2, 3]).unwrap().is_unbounded());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            BoundFunction::parse("id").unwrap(),
            BoundFunction::identity()
        );
        assert_eq!(
            BoundFunction::parse("const:4").unwrap(),
            BoundFunction::constant(4)
        );
        assert_eq!(
            BoundFunction::parse("0 1\n2, 2").unwrap().kind(),
            &BoundKind::Table(vec![0, 1, 2, 2])
        );
        assert!(BoundFunction::parse("const:x").is_err());
        assert!(BoundFunction::parse("").is_err());
    }
}
