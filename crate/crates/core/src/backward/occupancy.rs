use serde::Serialize;

use crate::geom::{Grid, Point, Window};
use crate::{Error, Result};

/// A set of pixels of a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OccupancyRaster {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    #[serde(skip)]
    bits: Vec<bool>,
    count: usize,
}

impl OccupancyRaster {
    pub fn empty(grid: Grid) -> Self {
        OccupancyRaster { window: grid.window, width: grid.width, height: grid.height, bits: vec![false; grid.len()], count: 0 }
    }

    pub fn full(grid: Grid) -> Self {
        OccupancyRaster { window: grid.window, width: grid.width, height: grid.height, bits: vec![true; grid.len()], count: grid.len() }
    }

    pub fn from_bits(grid: Grid, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != grid.len() {
            return Err(Error::invalid(format!("expected {} bits, got {}", grid.len(), bits.len())));
        }
        let count = bits.iter().filter(|&&b| b).count();
        Ok(OccupancyRaster { window: grid.window, width: grid.width, height: grid.height, bits, count })
    }

    /// Raster of the pixels containing any of `points`; points outside the
    /// window are ignored.
    pub fn from_points<'a>(grid: Grid, points: impl IntoIterator<Item = &'a Point>) -> Self {
        let mut r = OccupancyRaster::empty(grid);
        for p in points {
            r.insert(*p);
        }
        r
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.window, self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Number of set pixels.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn coverage(&self) -> f64 {
        self.count as f64 / self.bits.len().max(1) as f64
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        self.bits[row * self.width + col]
    }

    pub fn set_index(&mut self, idx: usize) {
        if !self.bits[idx] {
            self.bits[idx] = true;
            self.count += 1;
        }
    }

    /// Marks the pixel containing `p`; returns false when `p` is outside.
    pub fn insert(&mut self, p: Point) -> bool {
        match self.grid().index_of(p) {
            Some(i) => {
                self.set_index(i);
                true
            }
            None => false,
        }
    }

    /// Indices of set pixels, ascending.
    pub fn set_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Centers of the set pixels in row-major order.
    pub fn centers(&self) -> Vec<Point> {
        let g = self.grid();
        self.set_indices().map(|i| g.center_of_index(i)).collect()
    }

    pub fn same_geometry(&self, other: &OccupancyRaster) -> bool {
        self.window == other.window && self.width == other.width && self.height == other.height
    }

    /// In-place union with a raster of the same geometry.
    pub fn union_with(&mut self, other: &OccupancyRaster) -> Result<()> {
        if !self.same_geometry(other) {
            return Err(Error::invalid("raster geometry mismatch"));
        }
        for i in other.set_indices() {
            self.set_index(i);
        }
        Ok(())
    }

    /// Squared Euclidean distance (in pixels) from every pixel to the
    /// nearest set pixel; `f64::INFINITY` everywhere when empty.
    pub fn squared_distance_transform(&self) -> Vec<f64> {
        let (w, h) = (self.width, self.height);
        let mut d: Vec<f64> = self.bits.iter().map(|&b| if b { 0.0 } else { f64::INFINITY }).collect();
        let n = w.max(h);
        let mut f = vec![0.0; n];
        let mut out = vec![0.0; n];
        let mut v = vec![0usize; n];
        let mut z = vec![0.0; n + 1];
        for col in 0..w {
            for row in 0..h {
                f[row] = d[row * w + col];
            }
            edt_1d(&f[..h], &mut out[..h], &mut v, &mut z);
            for row in 0..h {
                d[row * w + col] = out[row];
            }
        }
        for row in 0..h {
            f[..w].copy_from_slice(&d[row * w..(row + 1) * w]);
            edt_1d(&f[..w], &mut out[..w], &mut v, &mut z);
            d[row * w..(row + 1) * w].copy_from_slice(&out[..w]);
        }
        d
    }
}

/// One-dimensional squared distance transform of a sampled function
/// (lower envelope of parabolas).
fn edt_1d(f: &[f64], out: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let Some(first) = f.iter().position(|x| x.is_finite()) else {
        out.fill(f64::INFINITY);
        return;
    };
    let mut k = 0usize;
    v[0] = first;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in first + 1..n {
        if !f[q].is_finite() {
            continue;
        }
        let qf = q as f64;
        let mut s;
        loop {
            let p = v[k] as f64;
            s = ((f[q] + qf * qf) - (f[v[k]] + p * p)) / (2.0 * (qf - p));
            // z[0] is -inf, so this stops at k = 0
            if s <= z[k] {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        let qf = q as f64;
        while z[k + 1] < qf {
            k += 1;
        }
        let dq = qf - v[k] as f64;
        *o = dq * dq + f[v[k]];
    }
}

/// Exact symmetric Hausdorff distance between the set-pixel centers of two
/// rasters, in pixel units.
pub fn hausdorff_pixel_distance(a: &OccupancyRaster, b: &OccupancyRaster) -> Result<f64> {
    if !a.same_geometry(b) {
        return Err(Error::invalid("Hausdorff distance needs rasters of identical geometry"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("Hausdorff distance of an empty raster"));
    }
    Ok(directed(a, b).max(directed(b, a)))
}

fn directed(from: &OccupancyRaster, to: &OccupancyRaster) -> f64 {
    let dt = to.squared_distance_transform();
    from.set_indices().map(|i| dt[i]).fold(0.0, f64::max).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(w: usize, h: usize) -> Grid {
        Grid::new(Window::new(0.0, w as f64, 0.0, h as f64), w, h)
    }

    fn raster(w: usize, h: usize, set: &[(usize, usize)]) -> OccupancyRaster {
        let mut bits = vec![false; w * h];
        for &(c, r) in set {
            bits[r * w + c] = true;
        }
        OccupancyRaster::from_bits(grid(w, h), bits).unwrap()
    }

    fn brute_directed(a: &OccupancyRaster, b: &OccupancyRaster) -> f64 {
        let w = a.width;
        let pa: Vec<usize> = a.set_indices().collect();
        let pb: Vec<usize> = b.set_indices().collect();
        pa.iter()
            .map(|&i| {
                pb.iter()
                    .map(|&j| {
                        let dx = (i % w) as f64 - (j % w) as f64;
                        let dy = (i / w) as f64 - (j / w) as f64;
                        (dx * dx + dy * dy).sqrt()
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn identical_sets() {
        let a = raster(8, 6, &[(1, 1), (5, 4)]);
        assert_eq!(hausdorff_pixel_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn two_singletons() {
        let a = raster(10, 10, &[(0, 0)]);
        let b = raster(10, 10, &[(3, 4)]);
        assert_eq!(hausdorff_pixel_distance(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn dilation_by_one() {
        let a = raster(9, 9, &[(4, 4)]);
        let mut set = vec![];
        for c in 3..=5 {
            for r in 3..=5 {
                if (c as i32 - 4).abs() + (r as i32 - 4).abs() <= 1 {
                    set.push((c, r));
                }
            }
        }
        let b = raster(9, 9, &set);
        assert_eq!(hausdorff_pixel_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn errors() {
        let a = raster(4, 4, &[(0, 0)]);
        let e = raster(4, 4, &[]);
        let other = raster(5, 4, &[(0, 0)]);
        assert!(hausdorff_pixel_distance(&a, &e).is_err());
        assert!(hausdorff_pixel_distance(&a, &other).is_err());
    }

    #[test]
    fn points_outside_are_ignored() {
        let g = grid(4, 4);
        let pts = [Point::new(0.5, 0.5), Point::new(9.0, 0.5), Point::new(0.6, 0.4)];
        let r = OccupancyRaster::from_points(g, &pts);
        assert_eq!(r.count(), 1);
        assert!(r.get(0, 3));
    }

    proptest! {
        #[test]
        fn distance_transform_matches_brute_force(
            a in prop::collection::vec((0usize..13, 0usize..7), 1..6),
            b in prop::collection::vec((0usize..13, 0usize..7), 1..6),
        ) {
            let ra = raster(13, 7, &a);
            let rb = raster(13, 7, &b);
            let h = hausdorff_pixel_distance(&ra, &rb).unwrap();
            let brute = brute_directed(&ra, &rb).max(brute_directed(&rb, &ra));
            prop_assert!((h - brute).abs() < 1e-12);
            prop_assert_eq!(h, hausdorff_pixel_distance(&rb, &ra).unwrap());
        }
    }
}
