use std::fmt::Write as _;

use crate::error::{Error, Result};

/// The restriction `X↾N` of a set of naturals to its first `N` elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPrefix {
    bits: Vec<bool>,
}

impl SetPrefix {
    pub fn empty(universe: usize) -> Self {
        SetPrefix {
            bits: vec![false; universe],
        }
    }

    pub fn full(universe: usize) -> Self {
        SetPrefix {
            bits: vec![true; universe],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SetPrefix { bits }
    }

    pub fn from_fn(universe: usize, f: impl FnMut(usize) -> bool) -> Self {
        SetPrefix {
            bits: (0..universe).map(f).collect(),
        }
    }

    pub fn from_elements(
        universe: usize,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut bits = vec![false; universe];
        for x in elements {
            if x >= universe {
                return Err(Error::OutOfRange {
                    index: x,
                    max: universe.saturating_sub(1),
                });
            }
            bits[x] = true;
        }
        Ok(SetPrefix { bits })
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Membership; elements at or beyond the universe are reported absent.
    pub fn contains(&self, x: usize) -> bool {
        self.bits.get(x).copied().unwrap_or(false)
    }

    pub fn set(&mut self, x: usize, member: bool) {
        self.bits[x] = member;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(x, &b)| b.then_some(x))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// `|X↾n|`, with `n` clamped to the universe.
    pub fn count_below(&self, n: usize) -> usize {
        self.bits[..n.min(self.bits.len())]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// `counts[n] = |X↾n|` for `n = 0..=N`.
    pub fn prefix_counts(&self) -> Vec<usize> {
        let mut counts = Vec::with_capacity(self.bits.len() + 1);
        let mut c = 0;
        counts.push(0);
        for &b in &self.bits {
            c += usize::from(b);
            counts.push(c);
        }
        counts
    }

    pub fn complement(&self) -> Self {
        SetPrefix {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &SetPrefix) -> bool {
        self.elements().all(|x| other.contains(x))
    }

    /// Restriction to the first `n` elements.
    pub fn truncate(&self, n: usize) -> Self {
        SetPrefix {
            bits: self.bits[..n.min(self.bits.len())].to_vec(),
        }
    }

    pub fn to_bitstring(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Serializes as an `ERSHOV-SET v1` file using the `bits` form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ERSHOV-SET v1");
        let _ = writeln!(out, "universe {}", self.universe());
        let _ = writeln!(out, "bits {}", self.to_bitstring());
        out
    }

    /// Parses an `ERSHOV-SET v1` file (`bits` or `elems` body).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty set file"))?;
        if header != "ERSHOV-SET v1" {
            return Err(Error::parse(
                ln,
                format!("expected `ERSHOV-SET v1`, found `{header}`"),
            ));
        }
        let (ln, uline) = lines
            .next()
            .ok_or_else(|| Error::parse(2, "missing universe line"))?;
        let universe = parse_keyword_usize(ln, uline, "universe")?;
        let (ln, body) = lines
            .next()
            .ok_or_else(|| Error::parse(3, "missing bits/elems line"))?;
        let set = if let Some(rest) = body.strip_prefix("bits") {
            let rest = rest.trim();
            if rest.len() != universe {
                return Err(Error::parse(
                    ln,
                    format!(
                        "bitstring has length {}, universe is {universe}",
                        rest.len()
                    ),
                ));
            }
            SetPrefix::from_bits(parse_bits(ln, rest)?)
        } else if let Some(rest) = body.strip_prefix("elems") {
            let mut prev: Option<usize> = None;
            let mut elems = Vec::new();
            for tok in rest
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad element `{tok}`")))?;
                if prev.is_some_and(|p| p >= x) {
                    return Err(Error::parse(ln, "elements must be strictly increasing"));
                }
                if x >= universe {
                    return Err(Error::parse(
                        ln,
                        format!("element {x} outside universe {universe}"),
                    ));
                }
                prev = Some(x);
                elems.push(x);
            }
            SetPrefix::from_elements(universe, elems)?
        } else {
            return Err(Error::parse(
                ln,
                format!("expected `bits` or `elems`, found `{body}`"),
            ));
        };
        if let Some((ln, extra)) = lines.next() {
            return Err(Error::parse(ln, format!("trailing content `{extra}`")));
        }
        Ok(set)
    }
}

pub(crate) fn parse_keyword_usize(line: usize, text: &str, keyword: &str) -> Result<usize> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(
            line,
            format!("expected `{keyword} <n>`, found `{text}`"),
        ));
    }
    let value = parts
        .next()
        .ok_or_else(|| Error::parse(line, format!("`{keyword}` needs a value")))?;
    if parts.next().is_some() {
        return Err(Error::parse(
            line,
            format!("trailing tokens after `{keyword}`"),
        ));
    }
    value
        .parse()
        .map_err(|_| Error::parse(line, format!("bad natural `{value}`")))
}

pub(crate) fn parse_bits(line: usize, s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::parse(line, format!("bad bit `{other}`"))),
        })
        .collect()
}
