use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::Rational;

/// A finite run `q_0, …, q_{T-1}` of an exact rational sequence, optionally
/// with declared bounds `L ≤ q_n ≤ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSequence<Q = Rational> {
    values: Vec<Q>,
    bounds: Option<(Q, Q)>,
}

impl<Q: ExactScalar> RationalSequence<Q> {
    pub fn new(values: Vec<Q>) -> Self {
        RationalSequence {
            values,
            bounds: None,
        }
    }

    /// Attaches bounds after checking them pointwise.
    pub fn with_bounds(values: Vec<Q>, lower: Q, upper: Q) -> Result<Self> {
        if lower > upper {
            return Err(Error::BoundViolated {
                index: 0,
                detail: format!("lower bound {lower} exceeds upper bound {upper}"),
            });
        }
        for (n, v) in values.iter().enumerate() {
            if v < &lower || v > &upper {
                return Err(Error::BoundViolated {
                    index: n,
                    detail: format!("{v} outside [{lower}, {upper}]"),
                });
            }
        }
        Ok(RationalSequence {
            values,
            bounds: Some((lower, upper)),
        })
    }

    pub fn constant(value: Q, len: usize) -> Self {
        RationalSequence::new(vec![value; len])
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> Q) -> Self {
        RationalSequence::new((0..len).map(f).collect())
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &Q {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn bounds(&self) -> Option<&(Q, Q)> {
        self.bounds.as_ref()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("ERSHOV-SEQ v1\n");
        if let Some((l, m)) = &self.bounds {
            let _ = writeln!(out, "bounds {l} {m}");
        }
        for v in &self.values {
            let _ = writeln!(out, "{v}");
        }
        out
    }

    /// Parses an `ERSHOV-SEQ v1` file: header, optional `bounds L M`, then one
    /// rational `p/r` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .peekable();
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty sequence file"))?;
        if header != "ERSHOV-SEQ v1" {
            return Err(Error::parse(
                ln,
                format!("expected `ERSHOV-SEQ v1`, found `{header}`"),
            ));
        }
        let mut bounds = None;
        if let Some((ln, l)) = lines.peek().copied() {
            if let Some(rest) = l.strip_prefix("bounds") {
                let mut parts = rest.split_whitespace();
                let lo = parts.next().and_then(Q::parse_exact);
                let hi = parts.next().and_then(Q::parse_exact);
                match (lo, hi, parts.next()) {
                    (Some(lo), Some(hi), None) => bounds = Some((lo, hi)),
                    _ => return Err(Error::parse(ln, "expected `bounds L M`")),
                }
                lines.next();
            }
        }
        let values = lines
            .map(|(ln, l)| {
                Q::parse_exact(l).ok_or_else(|| Error::parse(ln, format!("bad rational `{l}`")))
            })
            .collect::<Result<Vec<Q>>>()?;
        match bounds {
            Some((lo, hi)) => Self::with_bounds(values, lo, hi),
            None => Ok(Self::new(values)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::parse_exact(s).unwrap()
    }

    #[test]
    fn parse_with_and_without_bounds() {
        let s: RationalSequence =
            RationalSequence::parse("ERSHOV-SEQ v1\nbounds 0 1\n1/2\n3/4\n1\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.bounds(), Some(&(q("0"), q("1"))));
        assert_eq!(RationalSequence::parse(&s.to_text()).unwrap(), s);

        let s: RationalSequence = RationalSequence::parse("ERSHOV-SEQ v1\n-2/3\n").unwrap();
        assert!(s.bounds().is_none());
        assert_eq!(s.get(0), &q("-2/3"));
    }

    #[test]
    fn parse_errors() {
        assert!(RationalSequence::<Rational>::parse("ERSHOV-SEQ v1\nbounds 0\n1").is_err());
        assert!(RationalSequence::<Rational>::parse("ERSHOV-SEQ v1\n1/0").is_err());
        assert!(RationalSequence::<Rational>::parse("ERSHOV-SEQ v1\nbounds 0 1\n3/2").is_err());
        assert!(RationalSequence::<Rational>::parse("SEQ\n1").is_err());
    }
}
