use std::io::Write;
use std::path::Path;

use crate::backward::OccupancyRaster;
use crate::forward::{BasinRaster, PixelCode};
use crate::{Error, Result};

pub const PALETTE: [[u8; 3]; 9] = [
    [230, 57, 70],
    [42, 157, 143],
    [69, 123, 157],
    [244, 162, 97],
    [38, 70, 83],
    [144, 190, 109],
    [106, 76, 147],
    [255, 202, 58],
    [25, 130, 196],
];
pub const CYCLE_RGB: [u8; 3] = [0, 255, 255];
pub const ESCAPED_RGB: [u8; 3] = [255, 255, 255];
pub const SINGULAR_RGB: [u8; 3] = [128, 128, 128];
pub const UNDECIDED_RGB: [u8; 3] = [0, 0, 0];

pub fn code_color(code: u8) -> [u8; 3] {
    match code {
        PixelCode::CYCLE => CYCLE_RGB,
        PixelCode::ESCAPED => ESCAPED_RGB,
        PixelCode::SINGULAR => SINGULAR_RGB,
        PixelCode::UNDECIDED => UNDECIDED_RGB,
        // more roots than colors: reuse the palette
        c => PALETTE[c as usize % PALETTE.len()],
    }
}

/// Anything that can be drawn as an RGB image.
pub trait RasterImage {
    fn dimensions(&self) -> (usize, usize);
    fn rgb(&self) -> Vec<u8>;
}

impl RasterImage for BasinRaster {
    fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    fn rgb(&self) -> Vec<u8> {
        self.codes.iter().flat_map(|&c| code_color(c)).collect()
    }
}

/// Set pixels black on white.
impl RasterImage for OccupancyRaster {
    fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    fn rgb(&self) -> Vec<u8> {
        self.bits().iter().flat_map(|&b| if b { [0u8; 3] } else { [255u8; 3] }).collect()
    }
}

/// Binary PPM (P6, maxval 255) bytes.
pub fn ppm_bytes<R: RasterImage + ?Sized>(raster: &R) -> Vec<u8> {
    let (w, h) = raster.dimensions();
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.extend(raster.rgb());
    out
}

pub fn write_raster<R: RasterImage + ?Sized>(raster: &R, path: &Path) -> Result<()> {
    write_file(path, &ppm_bytes(raster))
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::OrbitOutcome;
    use crate::geom::{Grid, Window};

    #[test]
    fn single_root_pixel() {
        let grid = Grid::new(Window::square(1.0), 1, 1);
        let r = BasinRaster::from_outcomes(grid, &[OrbitOutcome::Root { root_index: 0, iterations: 2 }], |_| "r".into());
        let bytes = ppm_bytes(&r);
        assert_eq!(&bytes[..11], b"P6\n1 1\n255\n");
        assert_eq!(&bytes[11..], &[230, 57, 70]);
    }

    #[test]
    fn empty_occupancy_is_white() {
        let r = OccupancyRaster::empty(Grid::new(Window::square(1.0), 3, 2));
        let bytes = ppm_bytes(&r);
        assert_eq!(bytes.len(), 11 + 18);
        assert!(bytes[11..].iter().all(|&b| b == 255));
    }

    #[test]
    fn special_codes() {
        assert_eq!(code_color(PixelCode::CYCLE), [0, 255, 255]);
        assert_eq!(code_color(PixelCode::UNDECIDED), [0, 0, 0]);
        assert_eq!(code_color(9), PALETTE[0]);
    }
}
