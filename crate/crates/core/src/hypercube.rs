use std::fmt;

use crate::error::{Error, Result};

/// Largest variable count for which full hypercube sweeps are allowed by default.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// A point of `{0,1}^n`, stored as a bit mask (`x_{i+1}` is bit `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypercubePoint {
    bits: u64,
    nvars: usize,
}

impl HypercubePoint {
    pub fn new(bits: u64, nvars: usize) -> Result<Self> {
        if nvars > 64 || (nvars < 64 && bits >> nvars != 0) {
            return Err(Error::invalid(format!(
                "point mask {bits:#b} does not fit in {nvars} coordinates"
            )));
        }
        Ok(HypercubePoint { bits, nvars })
    }

    pub fn origin(nvars: usize) -> Self {
        HypercubePoint { bits: 0, nvars }
    }

    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        let mut bits = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::invalid(format!("coordinate {c} is not 0 or 1"))),
            }
        }
        HypercubePoint::new(bits, coords.len())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn coord(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.nvars).map(|i| self.coord(i) as u8).collect()
    }

    pub fn is_origin(&self) -> bool {
        self.bits == 0
    }

    /// Number of coordinates equal to 1.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Debug for HypercubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.nvars {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.coord(i) as u8)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for HypercubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn check_enumeration(nvars: usize, limit: usize) -> Result<()> {
    if nvars > limit || nvars >= 64 {
        Err(Error::EnumerationLimit { nvars, limit })
    } else {
        Ok(())
    }
}

/// The nonzero points of `{0,1}^n` in binary-counter order.
pub fn nonzero_points(nvars: usize) -> impl Iterator<Item = HypercubePoint> {
    (1..1u64 << nvars).map(move |bits| HypercubePoint { bits, nvars })
}

/// All points of `{0,1}^n`: nonzero points in binary-counter order, origin last.
pub fn all_points(nvars: usize) -> impl Iterator<Item = HypercubePoint> {
    nonzero_points(nvars).chain(std::iter::once(HypercubePoint::origin(nvars)))
}
