//! Points, rectangles and the pixel grid laid over them.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point of the real plane. Complex numbers are identified with `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Lexicographic order on `(x, y)`, used wherever output order must not
    /// depend on scheduling.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::new(z.re, z.im)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub const fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Window { x_min, x_max, y_min, y_max }
    }

    /// The square `[-r, r]²`.
    pub const fn square(r: f64) -> Self {
        Window::new(-r, r, -r, r)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.x_max > self.x_min && self.y_max > self.y_min)
            || !self.x_min.is_finite()
            || !self.x_max.is_finite()
            || !self.y_min.is_finite()
            || !self.y_max.is_finite()
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Grows the rectangle by `factor` about its center.
    pub fn scaled(&self, factor: f64) -> Window {
        let c = self.center();
        let hw = 0.5 * self.width() * factor;
        let hh = 0.5 * self.height() * factor;
        Window::new(c.x - hw, c.x + hw, c.y - hh, c.y + hh)
    }
}

/// A `width × height` pixel grid over a window. Row 0 is the top row
/// (largest `y`), column 0 the leftmost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub window: Window,
    pub width: usize,
    pub height: usize,
}

impl Grid {
    pub fn new(window: Window, width: usize, height: usize) -> Self {
        Grid { window, width, height }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pixel_width(&self) -> f64 {
        self.window.width() / self.width as f64
    }

    pub fn pixel_height(&self) -> f64 {
        self.window.height() / self.height as f64
    }

    /// Center of pixel `(col, row)`.
    pub fn center(&self, col: usize, row: usize) -> Point {
        Point::new(
            self.window.x_min + (col as f64 + 0.5) * self.pixel_width(),
            self.window.y_max - (row as f64 + 0.5) * self.pixel_height(),
        )
    }

    pub fn center_of_index(&self, idx: usize) -> Point {
        self.center(idx % self.width, idx / self.width)
    }

    /// Linear pixel index containing `p`, or `None` outside the window.
    pub fn index_of(&self, p: Point) -> Option<usize> {
        if !p.is_finite() {
            return None;
        }
        let fx = (p.x - self.window.x_min) / self.pixel_width();
        let fy = (self.window.y_max - p.y) / self.pixel_height();
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let (col, row) = (fx as usize, fy as usize);
        // points exactly on the far edge belong to the last pixel
        let col = if col == self.width && fx <= self.width as f64 { col - 1 } else { col };
        let row = if row == self.height && fy <= self.height as f64 { row - 1 } else { row };
        (col < self.width && row < self.height).then_some(row * self.width + col)
    }
}
