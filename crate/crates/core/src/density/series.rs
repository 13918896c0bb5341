use std::io::Write;

use crate::approx::SetPrefix;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::window::Window;
use crate::Rational;

/// `ρ_n(X) = |X↾n| / n` in lowest terms.
pub fn prefix_density<Q: ExactScalar>(x: &SetPrefix, n: usize) -> Result<Q> {
    if n == 0 || n > x.universe() {
        return Err(Error::OutOfRange {
            index: n,
            max: x.universe(),
        });
    }
    Ok(Q::ratio(x.count_below(n), n))
}

/// Exact partial densities `ρ_1, …, ρ_N` of one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensitySeries<Q = Rational> {
    /// `values[n - 1] = ρ_n`.
    values: Vec<Q>,
    counts: Vec<usize>,
    pub source: String,
}

impl<Q: ExactScalar> DensitySeries<Q> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ρ_n`, for `1 ≤ n ≤ N`.
    pub fn rho(&self, n: usize) -> &Q {
        &self.values[n - 1]
    }

    /// `|X↾n|`, for `0 ≤ n ≤ N`.
    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// Checks `0 ≤ ρ_n ≤ 1`, `n·ρ_n ∈ ℕ` and `|(n+1)ρ_{n+1} − nρ_n| ∈ {0, 1}`.
    /// Returns the first offending `n`.
    pub fn check_invariants(&self) -> std::result::Result<(), usize> {
        let mut prev_mass = Q::zero();
        for n in 1..=self.len() {
            let rho = self.rho(n);
            if !rho.in_unit_interval() {
                return Err(n);
            }
            let mass = rho.clone() * Q::from_count(n);
            if mass.floor_count() != mass.ceil_count() {
                return Err(n);
            }
            let step = mass.clone() - prev_mass;
            if step != Q::zero() && step != Q::one() {
                return Err(n);
            }
            prev_mass = mass;
        }
        Ok(())
    }

    /// CSV with columns `n,rho_n`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "rho_n"])?;
        for (i, v) in self.values.iter().enumerate() {
            w.write_record([(i + 1).to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn density_series<Q: ExactScalar>(
    x: &SetPrefix,
    source: impl Into<String>,
) -> DensitySeries<Q> {
    let counts = x.prefix_counts();
    let values = (1..=x.universe()).map(|n| Q::ratio(counts[n], n)).collect();
    DensitySeries {
        values,
        counts,
        source: source.into(),
    }
}

/// Max and min of `ρ_n` over a window, the finite proxies for upper and
/// lower density. Ties resolve to the smallest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowExtrema<Q = Rational> {
    pub window: Window,
    pub max: Q,
    pub argmax: usize,
    pub min: Q,
    pub argmin: usize,
}

impl<Q: ExactScalar> WindowExtrema<Q> {
    /// CSV with columns `window,max,argmax,min,argmin`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["window", "max", "argmax", "min", "argmin"])?;
        w.write_record([
            self.window.to_string(),
            self.max.to_string(),
            self.argmax.to_string(),
            self.min.to_string(),
            self.argmin.to_string(),
        ])?;
        w.flush()?;
        Ok(())
    }
}

pub fn window_extrema<Q: ExactScalar>(
    d: &DensitySeries<Q>,
    window: Window,
) -> Result<WindowExtrema<Q>> {
    let window = window.within(1, d.len())?;
    let (argmax, max) = extremum(window, |n| d.rho(n), |a, b| a > b);
    let (argmin, min) = extremum(window, |n| d.rho(n), |a, b| a < b);
    Ok(WindowExtrema {
        window,
        max,
        argmax,
        min,
        argmin,
    })
}

/// First index in the window whose value beats every other under `better`.
pub(crate) fn extremum<'a, Q: ExactScalar>(
    window: Window,
    value: impl Fn(usize) -> &'a Q,
    better: impl Fn(&Q, &Q) -> bool,
) -> (usize, Q) {
    let mut best = window.lo;
    for n in window.indices() {
        if better(value(n), value(best)) {
            best = n;
        }
    }
    (best, value(best).clone())
}
