use std::collections::BTreeMap;

use serde::Serialize;

use crate::forward::OrbitOutcome;
use crate::geom::{Grid, Point, Window};

/// Per-pixel outcome codes. Root indices use their own value (0..=251).
pub struct PixelCode;

impl PixelCode {
    pub const CYCLE: u8 = 252;
    pub const ESCAPED: u8 = 253;
    pub const SINGULAR: u8 = 254;
    pub const UNDECIDED: u8 = 255;
    pub const MAX_ROOTS: usize = 252;

    pub fn of(outcome: &OrbitOutcome) -> u8 {
        match *outcome {
            OrbitOutcome::Root { root_index, .. } if root_index < Self::MAX_ROOTS => root_index as u8,
            OrbitOutcome::Root { .. } => Self::UNDECIDED,
            OrbitOutcome::Cycle { .. } => Self::CYCLE,
            OrbitOutcome::Escaped { .. } => Self::ESCAPED,
            OrbitOutcome::SingularHit { .. } => Self::SINGULAR,
            OrbitOutcome::Undecided => Self::UNDECIDED,
        }
    }

    pub fn is_attractor(code: u8) -> bool {
        code as usize <= Self::CYCLE as usize
    }
}

/// An attracting cycle found at one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleSample {
    pub pixel: usize,
    pub period: usize,
    pub representative: Point,
    pub multiplier: f64,
}

/// Color-coded classification of every pixel center of a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasinRaster {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub codes: Vec<u8>,
    pub iterations: Vec<u32>,
    pub legend: BTreeMap<u8, String>,
    pub cycles: Vec<CycleSample>,
}

impl BasinRaster {
    /// Assembles a raster from per-pixel outcomes in row-major order.
    pub(crate) fn from_outcomes(grid: Grid, outcomes: &[OrbitOutcome], root_label: impl Fn(usize) -> String) -> Self {
        debug_assert_eq!(outcomes.len(), grid.len());
        let mut codes = Vec::with_capacity(outcomes.len());
        let mut iterations = Vec::with_capacity(outcomes.len());
        let mut legend = BTreeMap::new();
        let mut cycles = Vec::new();
        for (pixel, o) in outcomes.iter().enumerate() {
            let code = PixelCode::of(o);
            codes.push(code);
            let its = match *o {
                OrbitOutcome::Root { iterations, .. }
                | OrbitOutcome::Escaped { iterations }
                | OrbitOutcome::SingularHit { iterations } => iterations as u32,
                _ => 0,
            };
            iterations.push(its);
            if let OrbitOutcome::Cycle { period, representative, multiplier } = *o {
                cycles.push(CycleSample { pixel, period, representative, multiplier });
            }
            legend.entry(code).or_insert_with(|| match *o {
                OrbitOutcome::Root { root_index, .. } if code != PixelCode::UNDECIDED => root_label(root_index),
                OrbitOutcome::Cycle { .. } => "attracting cycle".to_string(),
                OrbitOutcome::Escaped { .. } => "escaped".to_string(),
                OrbitOutcome::SingularHit { .. } => "singular jacobian".to_string(),
                _ => "undecided".to_string(),
            });
        }
        BasinRaster { window: grid.window, width: grid.width, height: grid.height, codes, iterations, legend, cycles }
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.window, self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn code_at(&self, col: usize, row: usize) -> u8 {
        self.codes[row * self.width + col]
    }

    pub fn count(&self, code: u8) -> usize {
        self.codes.iter().filter(|&&c| c == code).count()
    }

    pub fn fraction(&self, code: u8) -> f64 {
        if self.codes.is_empty() {
            return 0.0;
        }
        self.count(code) as f64 / self.codes.len() as f64
    }

    /// Fraction of pixels carrying each code present.
    pub fn fractions(&self) -> BTreeMap<u8, f64> {
        let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
        for &c in &self.codes {
            *counts.entry(c).or_default() += 1;
        }
        let n = self.codes.len() as f64;
        counts.into_iter().map(|(c, k)| (c, k as f64 / n)).collect()
    }

    /// Codes of root basins present, ascending.
    pub fn root_codes(&self) -> Vec<u8> {
        self.legend.keys().copied().filter(|&c| (c as usize) < PixelCode::MAX_ROOTS).collect()
    }
}
