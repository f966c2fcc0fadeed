use std::fmt;

use crate::error::{Error, Result};

/// A grid value held as an integer count of `10^-decimals` units so that
/// membership and rendering never drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridBase {
    units: u64,
    decimals: u32,
}

impl GridBase {
    pub fn new(units: u64, decimals: u32) -> Self {
        GridBase { units, decimals }
    }

    pub fn units(&self) -> u64 {
        self.units
    }

    pub fn decimals(&self) -> u32 {
        self.decimals
    }

    /// Correctly rounded `units / 10^decimals`.
    pub fn value(&self) -> f64 {
        self.units as f64 / 10u64.pow(self.decimals) as f64
    }

    pub fn is_one(&self) -> bool {
        self.units == 10u64.pow(self.decimals)
    }
}

impl fmt::Display for GridBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = 10u64.pow(self.decimals);
        write!(f, "{}.{:0width$}", self.units / scale, self.units % scale, width = self.decimals as usize)
    }
}

/// Arithmetic grid `start, start+step, ..., <= stop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseGrid {
    start: u64,
    stop: u64,
    step: u64,
    decimals: u32,
}

const MAX_DECIMALS: u32 = 6;
const MAX_POINTS: u64 = 10_000_000;

impl Default for BaseGrid {
    /// 0.1 to 100.0 in steps of 0.1.
    fn default() -> Self {
        BaseGrid { start: 1, stop: 1000, step: 1, decimals: 1 }
    }
}

impl BaseGrid {
    /// A grid holding one base.
    pub fn single(base: &str) -> Result<Self> {
        Self::parse(&format!("{base}:{base}:{base}"))
    }

    /// Parse `START:STOP:STEP` with plain decimal numbers.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        let [start, stop, step] = parts[..] else {
            return Err(Error::InvalidGrid(format!("expected START:STOP:STEP, got `{spec}`")));
        };
        let decimals = [start, stop, step].iter().map(|s| fraction_digits(s)).max().unwrap_or(0).max(1);
        if decimals > MAX_DECIMALS {
            return Err(Error::InvalidGrid(format!("at most {MAX_DECIMALS} decimal places")));
        }
        let start = to_units(start, decimals)?;
        let stop = to_units(stop, decimals)?;
        let step = to_units(step, decimals)?;
        if start == 0 {
            return Err(Error::InvalidGrid("bases must be positive".into()));
        }
        if step == 0 {
            return Err(Error::InvalidGrid("step must be positive".into()));
        }
        if stop < start {
            return Err(Error::InvalidGrid("stop is below start".into()));
        }
        if (stop - start) / step + 1 > MAX_POINTS {
            return Err(Error::InvalidGrid("too many grid points".into()));
        }
        Ok(BaseGrid { start, stop, step, decimals })
    }

    /// Every grid value, including excluded ones, ascending.
    pub fn values(&self) -> Vec<GridBase> {
        (0..=(self.stop - self.start) / self.step)
            .map(|k| GridBase::new(self.start + k * self.step, self.decimals))
            .collect()
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn fraction_digits(s: &str) -> u32 {
    s.split_once('.').map_or(0, |(_, frac)| frac.len() as u32)
}

fn to_units(s: &str, decimals: u32) -> Result<u64> {
    let bad = || Error::InvalidGrid(format!("`{s}` is not a non-negative decimal number"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let padded = format!("{frac:0<width$}", width = decimals as usize);
    let frac: u64 = if padded.is_empty() { 0 } else { padded.parse().map_err(|_| bad())? };
    int.checked_mul(10u64.pow(decimals)).and_then(|v| v.checked_add(frac)).ok_or_else(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn default_grid_is_exact() {
        let grid = BaseGrid::default();
        let rendered: Vec<String> = grid.values().iter().map(|b| b.to_string()).collect();
        assert_eq!(rendered.len(), 1000);
        let unique: BTreeSet<&String> = rendered.iter().collect();
        assert_eq!(unique.len(), 1000);
        for (k, r) in rendered.iter().enumerate() {
            assert_eq!(*r, format!("{:.1}", (k + 1) as f64 / 10.0));
        }
        assert_eq!(rendered[0], "0.1");
        assert_eq!(rendered[999], "100.0");
        assert_eq!(grid.values().iter().filter(|b| b.is_one()).count(), 1);
        // values equal the correctly rounded decimal literal
        assert_eq!(grid.values()[325].value(), 32.6);
        assert_eq!(grid.values()[2].value(), 0.3);
    }

    #[test]
    fn parse_matches_default() {
        assert_eq!(BaseGrid::parse("0.1:100.0:0.1").unwrap().values(), BaseGrid::default().values());
    }

    #[test]
    fn small_grids() {
        let g = BaseGrid::parse("9.9:10.1:0.1").unwrap();
        let labels: Vec<String> = g.values().iter().map(|b| b.to_string()).collect();
        assert_eq!(labels, ["9.9", "10.0", "10.1"]);
        let single = BaseGrid::single("10").unwrap();
        assert_eq!(single.values().len(), 1);
        assert_eq!(single.values()[0].value(), 10.0);
        let fine = BaseGrid::parse("1.5:2:0.25").unwrap();
        let labels: Vec<String> = fine.values().iter().map(|b| b.to_string()).collect();
        assert_eq!(labels, ["1.50", "1.75", "2.00"]);
    }

    #[test]
    fn invalid_grids() {
        for spec in ["0:10:1", "1:10:0", "5:1:1", "a:b:c", "1:2", "-1:2:1", "1:2:0.0000001"] {
            assert!(BaseGrid::parse(spec).is_err(), "{spec}");
        }
    }
}
