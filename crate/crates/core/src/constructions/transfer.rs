use std::cmp::Ordering;
use std::io::Write;

use crate::approx::{ApproxTable, BoundFunction, SetPrefix};
use crate::density::{density_series, window_extrema, WindowExtrema};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::window::Window;
use crate::Rational;

use super::modulus::{modulus, ModulusPrefix};

/// One level of the tracking audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackingRow<Q = Rational> {
    pub x: usize,
    pub m_x: usize,
    pub rho_x_a: Q,
    pub rho_mx_b: Q,
    /// `|ρ_{m(x)}(B) − ρ_x(A)|`.
    pub error: Q,
    pub bound: Q,
    pub ok: bool,
    /// `|ρ_{m(x)}(B) − ρ_{x+1}(A)|`, the density `B` was steering toward on
    /// the interval that starts at `m(x)`. Informational.
    pub error_next: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer<Q = Rational> {
    /// `B↾H`.
    pub b: SetPrefix,
    /// The limit set `A` read from the table.
    pub target: SetPrefix,
    pub modulus: ModulusPrefix,
    pub horizon: usize,
    /// Levels `x ≥ 1` with `m(x) ≤ H`.
    pub tracking: Vec<TrackingRow<Q>>,
    /// Number of `y` checked against the interval property.
    pub interval_checked: usize,
    /// `(x, y)` where `ρ_y(B)` strays from both `ρ_{m(x)}(B)` and `ρ_{x+1}(A)`.
    pub interval_violations: Vec<(usize, usize)>,
    /// Extrema of `ρ_n(B)` over `[⌈H/2⌉, H]`.
    pub b_extrema: WindowExtrema<Q>,
}

impl<Q: ExactScalar> Transfer<Q> {
    pub fn tracking_holds(&self) -> bool {
        self.tracking.iter().all(|r| r.ok)
    }

    pub fn holds(&self) -> bool {
        self.tracking_holds() && self.interval_violations.is_empty()
    }

    /// The window of `B`'s density series that corresponds to `A`'s window
    /// `[lo, hi]` under the modulus, `[m(lo), H]`.
    pub fn corresponding_window(&self, a_window: Window) -> Option<Window> {
        let lo = self.modulus.get(a_window.lo)?;
        (lo <= self.horizon).then(|| Window::new(lo.max(1), self.horizon))
    }

    /// CSV with columns `x,m_x,rho_x_A,rho_mx_B,error,bound_1_over_x,ok`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "x",
            "m_x",
            "rho_x_A",
            "rho_mx_B",
            "error",
            "bound_1_over_x",
            "ok",
        ])?;
        for r in &self.tracking {
            w.write_record([
                r.x.to_string(),
                r.m_x.to_string(),
                r.rho_x_a.to_string(),
                r.rho_mx_b.to_string(),
                r.error.to_string(),
                r.bound.to_string(),
                r.ok.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `a/b` with `b > 0`, compared by cross-multiplication.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: u128,
    den: u128,
}

impl Frac {
    fn new(num: usize, den: usize) -> Self {
        Frac {
            num: num as u128,
            den: den.max(1) as u128,
        }
    }

    fn cmp(self, other: Frac) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }

    /// `|self − other| ≤ 1/k`.
    fn within(self, other: Frac, k: usize) -> bool {
        let diff = (self.num * other.den).abs_diff(other.num * self.den);
        diff * k as u128 <= self.den * other.den
    }
}

/// Builds `B↾H` from the limit of `t`: below `m(0)` nothing is in `B`; for
/// `m(x) ≤ y < m(x+1)`, `y ∈ B` iff `ρ_y(B) < ρ_{x+1}(A)`, with `ρ_0(B) = 0`.
///
/// Requires `H ≤ S`, settling certificates on every column the construction
/// reads, and a universe covering `A↾(x+1)` for the last level used.
pub fn transfer<Q: ExactScalar>(
    t: &ApproxTable,
    f: &BoundFunction,
    horizon: usize,
) -> Result<Transfer<Q>> {
    if horizon == 0 {
        return Err(Error::EmptyWindow {
            lo: 0,
            hi: 0,
            domain_lo: 1,
            domain_hi: t.stages(),
        });
    }
    if horizon > t.stages() {
        return Err(Error::HorizonExceedsStages {
            horizon,
            stages: t.stages(),
        });
    }
    let m = modulus(t, f)?;
    let values = m.values();
    if let Some(top) = m.level_of(horizon - 1) {
        if top + 1 > t.universe() {
            return Err(Error::UniverseTooSmall {
                universe: t.universe(),
                level: top,
                needed: top + 1,
            });
        }
        if let Some(x) = (0..=top).find(|&x| t.settled_by(x).is_none()) {
            return Err(Error::MissingCertificate { element: x });
        }
    }
    let target = t.final_set();
    let a_counts = target.prefix_counts();

    let mut b = SetPrefix::empty(horizon);
    let mut count = 0;
    for y in 0..horizon {
        let Some(x) = m.level_of(y) else { continue };
        let goal = Frac::new(a_counts[x + 1], x + 1);
        let member = if y == 0 {
            goal.num > 0
        } else {
            Frac::new(count, y).cmp(goal) == Ordering::Less
        };
        if member {
            b.set(y, true);
            count += 1;
        }
    }
    let b_counts = b.prefix_counts();

    let mut interval_checked = 0;
    let mut interval_violations = Vec::new();
    for (x, &start) in values.iter().enumerate() {
        if start >= horizon {
            break;
        }
        let end = values.get(x + 1).copied().unwrap_or(horizon).min(horizon);
        let from = Frac::new(b_counts[start], start);
        let goal = Frac::new(a_counts[x + 1], x + 1);
        let (lo, hi) = if from.cmp(goal) == Ordering::Greater {
            (goal, from)
        } else {
            (from, goal)
        };
        for (y, &count) in b_counts.iter().enumerate().take(end).skip(start.max(1)) {
            let r = Frac::new(count, y);
            let between = lo.cmp(r) != Ordering::Greater && r.cmp(hi) != Ordering::Greater;
            if !between && !r.within(goal, x + 1) {
                interval_violations.push((x, y));
            }
            interval_checked += 1;
        }
    }

    let mut tracking = Vec::new();
    for (x, &mx) in values.iter().enumerate().skip(1) {
        if mx > horizon || mx == 0 {
            break;
        }
        let rho_x_a = Q::ratio(a_counts[x], x);
        let rho_mx_b = Q::ratio(b_counts[mx], mx);
        let error = (rho_mx_b.clone() - rho_x_a.clone()).abs();
        let bound = Q::ratio(1, x);
        let error_next = if x < t.universe() {
            (rho_mx_b.clone() - Q::ratio(a_counts[x + 1], x + 1)).abs()
        } else {
            error.clone()
        };
        tracking.push(TrackingRow {
            x,
            m_x: mx,
            ok: error <= bound,
            rho_x_a,
            rho_mx_b,
            error,
            bound,
            error_next,
        });
    }

    let series = density_series::<Q>(&b, "B");
    let b_extrema = window_extrema(&series, Window::density_tail(horizon))?;
    Ok(Transfer {
        b,
        target,
        modulus: m,
        horizon,
        tracking,
        interval_checked,
        interval_violations,
        b_extrema,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settled(set: &[bool], stages: usize) -> ApproxTable {
        ApproxTable::settled_at_one(&SetPrefix::from_bits(set.to_vec()), stages).unwrap()
    }

    #[test]
    fn empty_target_gives_empty_b() {
        let t = settled(&[false; 12], 20_000);
        let tr = transfer::<Rational>(&t, &BoundFunction::identity(), 20_000).unwrap();
        assert!(tr.b.is_empty());
        assert!(tr.holds());
    }

    #[test]
    fn full_target_tracks_density_one() {
        let t = settled(&[true; 12], 20_000);
        let tr = transfer::<Rational>(&t, &BoundFunction::identity(), 20_000).unwrap();
        assert!(tr.holds());
        assert!(tr.tracking.len() >= 5);
        assert!(tr.b_extrema.min > Rational::ratio(99, 100));
    }

    #[test]
    fn alternating_target() {
        let bits: Vec<bool> = (0..12).map(|x| x % 2 == 0).collect();
        let t = settled(&bits, 20_000);
        let tr = transfer::<Rational>(&t, &BoundFunction::identity(), 20_000).unwrap();
        assert!(
            tr.holds(),
            "{:?} {:?}",
            tr.tracking,
            &tr.interval_violations[..tr.interval_violations.len().min(5)]
        );
    }

    #[test]
    fn preconditions() {
        let t = settled(&[false; 12], 100);
        assert!(matches!(
            transfer::<Rational>(&t, &BoundFunction::identity(), 101),
            Err(Error::HorizonExceedsStages { .. })
        ));
        let t = settled(&[false; 2], 100_000);
        assert!(matches!(
            transfer::<Rational>(&t, &BoundFunction::identity(), 100_000),
            Err(Error::UniverseTooSmall { .. })
        ));
        let t = settled(&[false; 12], 1000);
        assert!(matches!(
            transfer::<Rational>(&t, &BoundFunction::constant(2), 1000),
            Err(Error::InsufficientBound { .. })
        ));
    }
}
