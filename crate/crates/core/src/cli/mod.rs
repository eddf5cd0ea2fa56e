//! Config-driven jobs: JSON configs in, PPM images, CSV orbit dumps and JSON
//! reports out.

mod config;
mod image;
mod run;

pub use config::{AlphaSource, JobConfig, MapKind, MapSpec, Mode};
pub use image::{code_color, ppm_bytes, write_raster, RasterImage, PALETTE};
pub use run::{run_job, Report, Timings, SCHEMA_VERSION};
