use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{BarnaConfig, ProbeConfig};
use crate::backward::{Disk, DEFAULT_BURN_IN, DEFAULT_TREE_CAP};
use crate::dynamics::Invertible;
use crate::forward::ScanConfig;
use crate::geom::{Point, Window};
use crate::newton::{build_newton_complex, build_newton_plane, pullback_map, NewtonComplexMap, NewtonPlaneMap, RationalMap};
use crate::poly::{PlaneMap, UniComplexPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Basins,
    AlphaTree,
    AlphaRandom,
    Ifs,
    ParamScan,
    Barna,
    Ghost,
    Compare,
}

impl Mode {
    pub const ALL: [Mode; 8] = [
        Mode::Basins,
        Mode::AlphaTree,
        Mode::AlphaRandom,
        Mode::Ifs,
        Mode::ParamScan,
        Mode::Barna,
        Mode::Ghost,
        Mode::Compare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Basins => "basins",
            Mode::AlphaTree => "alpha-tree",
            Mode::AlphaRandom => "alpha-random",
            Mode::Ifs => "ifs",
            Mode::ParamScan => "param-scan",
            Mode::Barna => "barna",
            Mode::Ghost => "ghost",
            Mode::Compare => "compare",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown mode '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Complex,
    Planar,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaSource {
    Tree,
    Random,
}

/// A job description, read from a flat JSON file. Polynomials are text in
/// the variables `z` (complex) or `x`, `y` (planar).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub mode: Option<Mode>,
    /// Prefix of every artifact file.
    #[serde(default = "default_name")]
    pub name: String,

    #[serde(default)]
    pub map_kind: Option<MapKind>,
    /// Complex polynomial `p` (complex maps, param-scan base, barna).
    #[serde(default)]
    pub polynomial: Option<String>,
    /// Components of the planar map `f`.
    #[serde(default)]
    pub f1: Option<String>,
    #[serde(default)]
    pub f2: Option<String>,
    /// Optional diffeomorphism: the planar map becomes `psi⁻¹ ∘ f ∘ psi`.
    #[serde(default)]
    pub psi: Option<[String; 2]>,
    #[serde(default)]
    pub psi_inv: Option<[String; 2]>,
    /// Rational map given directly (numerator / denominator in `z`).
    #[serde(default)]
    pub numerator: Option<String>,
    #[serde(default)]
    pub denominator: Option<String>,
    /// Param-scan family `base(z) + A·slope(z)`.
    #[serde(default)]
    pub family_slope: Option<String>,

    /// `[x_min, x_max, y_min, y_max]`.
    #[serde(default)]
    pub window: Option<[f64; 4]>,
    #[serde(default = "default_resolution")]
    pub width: usize,
    #[serde(default = "default_resolution")]
    pub height: usize,
    /// Box searched for planar roots, counterimages and ghost lines;
    /// defaults to the window.
    #[serde(default)]
    pub search_window: Option<[f64; 4]>,
    #[serde(default)]
    pub scan: ScanConfig,

    /// Starting point (`[re, im]` or `[x, y]`) of backward iteration or of a
    /// param-scan orbit.
    #[serde(default)]
    pub seed_point: Option<[f64; 2]>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default)]
    pub length: Option<usize>,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
    #[serde(default = "default_orbits")]
    pub orbits: usize,
    #[serde(default)]
    pub prng_seed: u64,

    /// Disks `[x, y, r]` removed by the IFS iteration.
    #[serde(default)]
    pub exclusion_disks: Option<Vec<[f64; 3]>>,
    /// Shortcut: disks of this radius around every root.
    #[serde(default)]
    pub exclusion_radius: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,

    #[serde(default)]
    pub barna: BarnaConfig,
    #[serde(default)]
    pub probe: ProbeConfig,

    #[serde(default)]
    pub alpha_source: Option<AlphaSource>,
    #[serde(default)]
    pub nonregular_only: bool,

    // execution settings, left out of reports so they stay comparable
    #[serde(default, skip_serializing)]
    pub out_dir: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
}

fn default_name() -> String {
    "job".to_string()
}
fn default_resolution() -> usize {
    256
}
fn default_cap() -> usize {
    DEFAULT_TREE_CAP
}
fn default_burn_in() -> usize {
    DEFAULT_BURN_IN
}
fn default_orbits() -> usize {
    1
}

fn window_of(w: [f64; 4], what: &str) -> Result<Window> {
    let win = Window::new(w[0], w[1], w[2], w[3]);
    if win.is_degenerate() {
        return Err(Error::invalid(format!("{what} {w:?} is degenerate")));
    }
    Ok(win)
}

fn with_field<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { column, message } => Error::Parse { column, message: format!("in '{field}': {message}") },
        other => other,
    })
}

fn plane_map(a: &str, b: &str, field: &str) -> Result<PlaneMap> {
    let first = with_field(field, a.parse())?;
    let second = with_field(field, b.parse())?;
    PlaneMap::new(first, second)
}

/// A parsed, evaluation-ready map.
#[derive(Debug, Clone)]
pub enum MapSpec {
    Complex(NewtonComplexMap),
    Planar(NewtonPlaneMap),
    Rational(RationalMap),
}

impl MapSpec {
    pub fn as_invertible(&self) -> &dyn Invertible {
        match self {
            MapSpec::Complex(n) => n,
            MapSpec::Planar(n) => n,
            MapSpec::Rational(r) => r,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, MapSpec::Planar(_))
    }

    /// Roots used for basin classification (none for a bare rational map).
    pub fn roots(&self, search: &Window) -> Result<Vec<Point>> {
        match self {
            MapSpec::Complex(n) => n.roots(),
            MapSpec::Planar(n) => n.roots(search),
            MapSpec::Rational(_) => Ok(Vec::new()),
        }
    }
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            column: e.column(),
            message: format!("line {}: {e}", e.line()),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        JobConfig::from_json(&text)
    }

    pub fn mode(&self) -> Result<Mode> {
        self.mode.ok_or_else(|| Error::invalid("config has no mode"))
    }

    pub fn window(&self) -> Result<Window> {
        window_of(self.window.ok_or_else(|| Error::invalid("missing 'window'"))?, "window")
    }

    pub fn search_window(&self) -> Result<Window> {
        match self.search_window {
            Some(w) => window_of(w, "search_window"),
            None => self.window(),
        }
    }

    pub fn seed_point(&self) -> Result<Point> {
        let [a, b] = self.seed_point.ok_or_else(|| Error::invalid("missing 'seed_point'"))?;
        Ok(Point::new(a, b))
    }

    fn required<'a>(&self, field: &'a Option<String>, name: &str) -> Result<&'a String> {
        field.as_ref().ok_or_else(|| Error::invalid(format!("missing '{name}'")))
    }

    pub fn complex_polynomial(&self) -> Result<UniComplexPoly> {
        with_field("polynomial", UniComplexPoly::parse(self.required(&self.polynomial, "polynomial")?))
    }

    /// The map named by `map_kind` and its polynomial fields.
    pub fn map(&self) -> Result<MapSpec> {
        match self.map_kind.ok_or_else(|| Error::invalid("missing 'map_kind'"))? {
            MapKind::Complex => Ok(MapSpec::Complex(build_newton_complex(&self.complex_polynomial()?)?)),
            MapKind::Rational => {
                let num = with_field("numerator", UniComplexPoly::parse(self.required(&self.numerator, "numerator")?))?;
                let den = with_field("denominator", UniComplexPoly::parse(self.required(&self.denominator, "denominator")?))?;
                Ok(MapSpec::Rational(RationalMap::new(num, den)?))
            }
            MapKind::Planar => {
                let f = plane_map(self.required(&self.f1, "f1")?, self.required(&self.f2, "f2")?, "f")?;
                let f = match (&self.psi, &self.psi_inv) {
                    (Some(p), Some(q)) => pullback_map(&f, &plane_map(&p[0], &p[1], "psi")?, &plane_map(&q[0], &q[1], "psi_inv")?)?,
                    (None, None) => f,
                    _ => return Err(Error::invalid("'psi' and 'psi_inv' must be given together")),
                };
                Ok(MapSpec::Planar(build_newton_plane(&f)?))
            }
        }
    }

    /// `A ↦ base + A·slope` for param-scan.
    pub fn family(&self) -> Result<(UniComplexPoly, UniComplexPoly)> {
        let base = self.complex_polynomial()?;
        let slope = with_field("family_slope", UniComplexPoly::parse(self.required(&self.family_slope, "family_slope")?))?;
        Ok((base, slope))
    }

    pub fn exclusion(&self, roots: &[Point]) -> Result<Vec<Disk>> {
        let mut disks: Vec<Disk> = self
            .exclusion_disks
            .iter()
            .flatten()
            .map(|d| Disk { center: Point::new(d[0], d[1]), radius: d[2] })
            .collect();
        if let Some(r) = self.exclusion_radius {
            disks.extend(roots.iter().map(|&c| Disk { center: c, radius: r }));
        }
        if disks.iter().any(|d| !(d.radius > 0.0) || !d.center.is_finite()) {
            return Err(Error::invalid("exclusion disks need finite centers and positive radii"));
        }
        Ok(disks)
    }

    /// Checks every mode-specific requirement without running anything.
    pub fn validate(&self) -> Result<()> {
        let mode = self.mode()?;
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::invalid(format!("bad artifact name '{}'", self.name)));
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("threads must be positive"));
        }
        self.scan.validate()?;
        let raster = |c: &JobConfig| -> Result<()> {
            c.window()?;
            if c.width == 0 || c.height == 0 {
                return Err(Error::invalid("width and height must be positive"));
            }
            Ok(())
        };
        match mode {
            Mode::Basins => {
                raster(self)?;
                self.map()?;
            }
            Mode::AlphaTree | Mode::AlphaRandom | Mode::Compare => {
                raster(self)?;
                let map = self.map()?;
                self.seed_point()?;
                self.search_window()?;
                let source = match mode {
                    Mode::AlphaTree => AlphaSource::Tree,
                    Mode::AlphaRandom => AlphaSource::Random,
                    _ => self.alpha_source.unwrap_or(AlphaSource::Tree),
                };
                match source {
                    AlphaSource::Tree => {
                        if self.depth.unwrap_or(0) == 0 {
                            return Err(Error::invalid("backward tree needs 'depth' ≥ 1"));
                        }
                    }
                    AlphaSource::Random => {
                        let length = self.length.ok_or_else(|| Error::invalid("missing 'length'"))?;
                        if length <= self.burn_in || self.orbits == 0 {
                            return Err(Error::invalid("need length > burn_in and orbits ≥ 1"));
                        }
                    }
                }
                if mode == Mode::Compare && matches!(map, MapSpec::Rational(_)) {
                    return Err(Error::invalid("compare needs a Newton map with roots"));
                }
            }
            Mode::Ifs => {
                raster(self)?;
                self.map()?;
                if self.exclusion_disks.is_none() && self.exclusion_radius.is_none() {
                    return Err(Error::invalid("ifs needs 'exclusion_disks' or 'exclusion_radius'"));
                }
                self.exclusion(&[])?;
                if self.steps.unwrap_or(0) == 0 {
                    return Err(Error::invalid("ifs needs 'steps' ≥ 1"));
                }
            }
            Mode::ParamScan => {
                raster(self)?;
                self.family()?;
                self.seed_point()?;
            }
            Mode::Barna => {
                let p = self.complex_polynomial()?;
                if p.degree() < 3 || !p.is_real(0.0) {
                    return Err(Error::invalid("barna needs a real polynomial of degree ≥ 3"));
                }
                if self.barna.max_period == 0 || !(self.barna.sample_hi > self.barna.sample_lo) {
                    return Err(Error::invalid("barna needs max_period ≥ 1 and a sample interval"));
                }
            }
            Mode::Ghost => {
                if !self.map()?.is_planar() {
                    return Err(Error::invalid("ghost lines need a planar map"));
                }
                self.search_window()?;
            }
        }
        Ok(())
    }

    pub fn param(a: Complex64, base: &UniComplexPoly, slope: &UniComplexPoly) -> UniComplexPoly {
        base + &slope.scale(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_basins_config() {
        let c = JobConfig::from_json(
            r#"{"mode":"basins","map_kind":"complex","polynomial":"z^3 - 1","window":[-2,2,-2,2],"width":4,"height":4}"#,
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.scan, ScanConfig::default());
    }

    #[test]
    fn malformed_polynomial_reports_column() {
        let c = JobConfig::from_json(
            r#"{"mode":"basins","map_kind":"complex","polynomial":"z^3 - * 1","window":[-2,2,-2,2]}"#,
        )
        .unwrap();
        match c.validate() {
            Err(Error::Parse { column, message }) => {
                assert_eq!(column, 7);
                assert!(message.contains("polynomial"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_field_is_rejected() {
        assert!(matches!(JobConfig::from_json(r#"{"mode":"basins","colour":1}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn mode_requirements() {
        let base = r#""map_kind":"complex","polynomial":"z^3 - 1","window":[-2,2,-2,2]"#;
        for (mode, ok) in [("alpha-tree", false), ("ifs", false), ("barna", true), ("param-scan", false)] {
            let c = JobConfig::from_json(&format!(r#"{{"mode":"{mode}",{base}}}"#)).unwrap();
            assert_eq!(c.validate().is_ok(), ok, "{mode}");
        }
    }
}
