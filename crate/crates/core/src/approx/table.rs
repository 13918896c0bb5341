use std::fmt::Write as _;

use super::set::{parse_bits, parse_keyword_usize, SetPrefix};
use crate::error::{Error, Result};

/// One element's approximation `s ↦ g(x, s)`, stored as the stages at which it
/// flips. A flip at stage `c` means `g(x, c) ≠ g(x, c - 1)`; since `g(x, 0) = 0`
/// the value at stage `s` is the parity of the flips at or before `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Column {
    flips: Vec<usize>,
    settled_by: Option<usize>,
}

/// Finite-horizon approximation table `g(x, s)` for `x < N`, `s < S`.
///
/// Invariants, checked by every constructor: `N ≥ 1`, `S ≥ 1`, `g(x, 0) = 0`,
/// and a present `settled_by(x)` is consistent with the entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ApproxTable {
    stages: usize,
    columns: Vec<Column>,
}

impl ApproxTable {
    /// Builds a table from per-element flip stages.
    pub fn from_flips(
        stages: usize,
        flips: Vec<Vec<usize>>,
        settled_by: Vec<Option<usize>>,
    ) -> Result<Self> {
        if flips.is_empty() {
            return Err(Error::InvalidTable("universe must be at least 1".into()));
        }
        if stages == 0 {
            return Err(Error::InvalidTable("stage count must be at least 1".into()));
        }
        if settled_by.len() != flips.len() {
            return Err(Error::LengthMismatch {
                left: flips.len(),
                right: settled_by.len(),
            });
        }
        let mut columns = Vec::with_capacity(flips.len());
        for (x, (fl, st)) in flips.into_iter().zip(settled_by).enumerate() {
            if fl.first() == Some(&0) {
                return Err(Error::NonzeroStart { element: x });
            }
            if fl.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidTable(format!(
                    "flip stages of element {x} are not strictly increasing"
                )));
            }
            if let Some(&last) = fl.last() {
                if last >= stages {
                    return Err(Error::InvalidTable(format!(
                        "element {x} flips at stage {last}, beyond the horizon {stages}"
                    )));
                }
            }
            let column = Column {
                flips: fl,
                settled_by: st,
            };
            if let Some(claimed) = st {
                check_settling(x, &column, claimed, stages)?;
            }
            columns.push(column);
        }
        Ok(ApproxTable { stages, columns })
    }

    /// Builds a table from explicit rows `row[x][s] = g(x, s)`.
    pub fn from_rows(rows: &[Vec<bool>], settled_by: Vec<Option<usize>>) -> Result<Self> {
        let stages = rows.first().map_or(0, Vec::len);
        let mut flips = Vec::with_capacity(rows.len());
        for (x, row) in rows.iter().enumerate() {
            if row.len() != stages {
                return Err(Error::InvalidTable(format!(
                    "row {x} has {} stages, expected {stages}",
                    row.len()
                )));
            }
            if row.first() == Some(&true) {
                return Err(Error::NonzeroStart { element: x });
            }
            flips.push((1..row.len()).filter(|&s| row[s] != row[s - 1]).collect());
        }
        Self::from_flips(stages, flips, settled_by)
    }

    /// A table whose columns jump to the target value at stage 1 (or stay 0)
    /// and are certified settled from then on.
    pub fn settled_at_one(set: &SetPrefix, stages: usize) -> Result<Self> {
        let flips = (0..set.universe())
            .map(|x| if set.contains(x) { vec![1] } else { vec![] })
            .collect();
        let settled = (0..set.universe())
            .map(|x| Some(usize::from(set.contains(x))))
            .collect();
        Self::from_flips(stages, flips, settled)
    }

    pub fn universe(&self) -> usize {
        self.columns.len()
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    /// `g(x, s)`.
    pub fn get(&self, x: usize, s: usize) -> bool {
        let flips = &self.columns[x].flips;
        flips.partition_point(|&c| c <= s) % 2 == 1
    }

    /// `g(x, S - 1)`.
    pub fn final_value(&self, x: usize) -> bool {
        self.columns[x].flips.len() % 2 == 1
    }

    pub fn flips(&self, x: usize) -> &[usize] {
        &self.columns[x].flips
    }

    pub fn settled_by(&self, x: usize) -> Option<usize> {
        self.columns[x].settled_by
    }

    pub fn is_certified(&self) -> bool {
        self.columns.iter().all(|c| c.settled_by.is_some())
    }

    /// Last stage at which column `x` flips, or 0 for a constant column.
    pub fn last_change(&self, x: usize) -> usize {
        self.columns[x].flips.last().copied().unwrap_or(0)
    }

    /// Last flip of column `x` at or before stage `s`, or 0.
    pub fn last_change_by(&self, x: usize, s: usize) -> usize {
        let flips = &self.columns[x].flips;
        let k = flips.partition_point(|&c| c <= s);
        if k == 0 {
            0
        } else {
            flips[k - 1]
        }
    }

    /// `A_s` as a set prefix.
    pub fn snapshot(&self, s: usize) -> SetPrefix {
        SetPrefix::from_fn(self.universe(), |x| self.get(x, s))
    }

    /// `A_s↾k`.
    pub fn prefix_snapshot(&self, s: usize, k: usize) -> SetPrefix {
        SetPrefix::from_fn(k.min(self.universe()), |x| self.get(x, s))
    }

    pub fn final_set(&self) -> SetPrefix {
        SetPrefix::from_fn(self.universe(), |x| self.final_value(x))
    }

    pub fn row(&self, x: usize) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.stages);
        let mut value = false;
        let mut next = self.columns[x].flips.iter().peekable();
        for s in 0..self.stages {
            if next.peek() == Some(&&s) {
                value = !value;
                next.next();
            }
            out.push(value);
        }
        out
    }

    /// Stagewise containment: `self_s ⊆ other_s` for every stage `s`. Returns
    /// the first witness `(x, s)` where it fails.
    pub fn stagewise_subset_of(
        &self,
        other: &ApproxTable,
    ) -> std::result::Result<(), (usize, usize)> {
        let stages = self.stages.max(other.stages);
        for x in 0..self.universe() {
            let mut points: Vec<usize> = self.flips(x).to_vec();
            if x < other.universe() {
                points.extend_from_slice(other.flips(x));
            }
            points.push(0);
            points.sort_unstable();
            points.dedup();
            for &s in &points {
                if s >= stages {
                    continue;
                }
                let mine = self.get(x, s.min(self.stages - 1));
                let theirs = x < other.universe() && other.get(x, s.min(other.stages - 1));
                if mine && !theirs {
                    return Err((x, s));
                }
            }
        }
        Ok(())
    }

    /// Serializes to the canonical `ERSHOV-TABLE v1` text form.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.universe() * (self.stages + 16) + 64);
        let _ = writeln!(out, "ERSHOV-TABLE v1");
        let _ = writeln!(out, "universe {}", self.universe());
        let _ = writeln!(out, "stages {}", self.stages);
        for x in 0..self.universe() {
            let _ = write!(out, "row {x} ");
            for b in self.row(x) {
                out.push(if b { '1' } else { '0' });
            }
            out.push('\n');
        }
        for (x, c) in self.columns.iter().enumerate() {
            if let Some(st) = c.settled_by {
                let _ = writeln!(out, "settled {x} {st}");
            }
        }
        out
    }

    /// Parses and validates an `ERSHOV-TABLE v1` file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty table file"))?;
        if header != "ERSHOV-TABLE v1" {
            return Err(Error::parse(
                ln,
                format!("expected `ERSHOV-TABLE v1`, found `{header}`"),
            ));
        }
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(2, "missing universe line"))?;
        let universe = parse_keyword_usize(ln, l, "universe")?;
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(3, "missing stages line"))?;
        let stages = parse_keyword_usize(ln, l, "stages")?;
        if universe == 0 || stages == 0 {
            return Err(Error::parse(ln, "universe and stages must be at least 1"));
        }

        let mut rows: Vec<Option<Vec<bool>>> = vec![None; universe];
        let mut settled: Vec<Option<usize>> = vec![None; universe];
        for (ln, l) in lines {
            let mut parts = l.split_whitespace();
            match parts.next() {
                Some("row") => {
                    let x = parse_index(ln, parts.next(), universe)?;
                    let bits = parts
                        .next()
                        .ok_or_else(|| Error::parse(ln, "row needs a bitstring"))?;
                    if parts.next().is_some() {
                        return Err(Error::parse(ln, "trailing tokens after row"));
                    }
                    if bits.len() != stages {
                        return Err(Error::parse(
                            ln,
                            format!("row {x} has length {}, expected {stages}", bits.len()),
                        ));
                    }
                    if rows[x].is_some() {
                        return Err(Error::parse(ln, format!("duplicate row {x}")));
                    }
                    rows[x] = Some(parse_bits(ln, bits)?);
                }
                Some("settled") => {
                    let x = parse_index(ln, parts.next(), universe)?;
                    let st: usize = parts
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(ln, "settled needs a stage"))?;
                    if parts.next().is_some() {
                        return Err(Error::parse(ln, "trailing tokens after settled"));
                    }
                    if settled[x].is_some() {
                        return Err(Error::parse(ln, format!("duplicate settled line for {x}")));
                    }
                    settled[x] = Some(st);
                }
                _ => return Err(Error::parse(ln, format!("unexpected line `{l}`"))),
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(x, r)| r.ok_or_else(|| Error::parse(0, format!("missing row {x}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows, settled)
    }
}

fn parse_index(line: usize, tok: Option<&str>, universe: usize) -> Result<usize> {
    let x: usize = tok
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(line, "expected an element index"))?;
    if x >= universe {
        return Err(Error::parse(
            line,
            format!("element {x} outside universe {universe}"),
        ));
    }
    Ok(x)
}

fn check_settling(x: usize, column: &Column, claimed: usize, stages: usize) -> Result<()> {
    if claimed >= stages {
        return Err(Error::InvalidTable(format!(
            "settled_by({x}) = {claimed} lies beyond the horizon {stages}"
        )));
    }
    // g(x, s) must equal g(x, S-1) for all s >= claimed: no flip after `claimed`.
    let flips = &column.flips;
    let late = flips.partition_point(|&c| c <= claimed);
    if late < flips.len() {
        let final_value = flips.len() % 2 == 1;
        let value_at_claim = late % 2 == 1;
        // first stage >= claimed holding the wrong value
        let witness = if value_at_claim != final_value {
            claimed
        } else {
            flips[late]
        };
        return Err(Error::SettlingContradicted {
            element: x,
            claimed,
            witness,
        });
    }
    Ok(())
}
