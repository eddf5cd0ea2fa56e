use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{barna_check, compare_alpha_boundary, extract_boundary, probe_ghost_attractor, BarnaConfig, ProbeConfig};
use crate::backward::{backward_tree, hausdorff_pixel_distance, hutchinson_iterate, random_backward_orbits, OccupancyRaster};
use crate::cli::config::{AlphaSource, JobConfig, MapSpec, Mode};
use crate::cli::image::{write_file, RasterImage};
use crate::forward::{cycle_multiplier, parameter_scan, render_basins, BasinRaster};
use crate::geom::{Grid, Point};
use crate::newton::{build_newton_complex, ghost_lines};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
}

/// Everything a job found, with the settings that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub toolkit_version: &'static str,
    pub mode: &'static str,
    pub config: JobConfig,
    pub tolerances: Value,
    pub statistics: Value,
    /// Full paths; the serialized report lists bare file names so that it
    /// does not depend on the output directory.
    #[serde(serialize_with = "file_names")]
    pub artifacts: Vec<PathBuf>,
    pub timings: Timings,
}

fn file_names<S: serde::Serializer>(paths: &[PathBuf], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(paths.iter().map(|p| p.file_name().map_or_else(|| p.to_string_lossy(), |n| n.to_string_lossy())))
}

/// Collects artifact bytes so nothing is written unless the whole job
/// succeeds.
struct Artifacts {
    dir: PathBuf,
    prefix: String,
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Artifacts {
    fn image<R: RasterImage + ?Sized>(&mut self, suffix: &str, raster: &R) {
        self.files.push((self.dir.join(format!("{}{suffix}.ppm", self.prefix)), crate::cli::image::ppm_bytes(raster)));
    }

    fn text(&mut self, file: &str, text: String) {
        self.files.push((self.dir.join(format!("{}{file}", self.prefix)), text.into_bytes()));
    }
}

/// Runs a validated job, writing its artifacts and `<name>.report.json`
/// into `out_dir`.
pub fn run_job(cfg: &JobConfig, out_dir: &Path) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mode = cfg.mode()?;
    let mut art = Artifacts { dir: out_dir.to_path_buf(), prefix: cfg.name.clone(), files: Vec::new() };
    let statistics = match mode {
        Mode::Basins => basins_job(cfg, &mut art)?,
        Mode::AlphaTree | Mode::AlphaRandom => alpha_job(cfg, mode, &mut art)?,
        Mode::Compare => compare_job(cfg, &mut art)?,
        Mode::Ifs => ifs_job(cfg, &mut art)?,
        Mode::ParamScan => param_scan_job(cfg, &mut art)?,
        Mode::Barna => barna_job(cfg)?,
        Mode::Ghost => ghost_job(cfg)?,
    };

    std::fs::create_dir_all(out_dir).map_err(|source| Error::Io { path: out_dir.to_path_buf(), source })?;
    let mut artifacts = Vec::new();
    for (path, bytes) in &art.files {
        write_file(path, bytes)?;
        artifacts.push(path.clone());
    }
    let report_path = out_dir.join(format!("{}.report.json", cfg.name));
    artifacts.push(report_path.clone());
    let report = Report {
        schema_version: SCHEMA_VERSION,
        toolkit_version: env!("CARGO_PKG_VERSION"),
        mode: mode.name(),
        config: cfg.clone(),
        tolerances: tolerances(cfg, mode),
        statistics,
        artifacts,
        timings: Timings { total_seconds: start.elapsed().as_secs_f64() },
    };
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Runtime { op: "report", message: e.to_string() })?;
    write_file(&report_path, text.as_bytes())?;
    Ok(report)
}

fn tolerances(cfg: &JobConfig, mode: Mode) -> Value {
    let mut t = json!({ "scan": cfg.scan });
    let extra = match mode {
        Mode::AlphaTree | Mode::Compare | Mode::AlphaRandom => json!({
            "depth": cfg.depth, "cap": cfg.cap, "length": cfg.length, "burn_in": cfg.burn_in,
            "orbits": cfg.orbits, "prng_seed": cfg.prng_seed,
            "planar_branch_law": "uniform over real counterimages found in the search window",
            "nonregular_proxy": "3x3 neighborhood meets at least three attractor codes",
        }),
        Mode::Ifs => json!({ "steps": cfg.steps, "exclusion_radius": cfg.exclusion_radius }),
        Mode::Barna => json!({ "barna": barna_config(cfg) }),
        Mode::Ghost => json!({ "probe": probe_config(cfg) }),
        Mode::ParamScan => json!({ "seed_point": cfg.seed_point }),
        Mode::Basins => json!({}),
    };
    if let (Value::Object(a), Value::Object(b)) = (&mut t, extra) {
        a.extend(b);
    }
    t
}

fn barna_config(cfg: &JobConfig) -> BarnaConfig {
    BarnaConfig { prng_seed: cfg.prng_seed, ..cfg.barna }
}

fn probe_config(cfg: &JobConfig) -> ProbeConfig {
    ProbeConfig { prng_seed: cfg.prng_seed, ..cfg.probe }
}

fn basin_stats(b: &BasinRaster) -> Value {
    let fractions: serde_json::Map<String, Value> = b
        .fractions()
        .into_iter()
        .map(|(code, f)| (b.legend.get(&code).cloned().unwrap_or_else(|| code.to_string()), json!(f)))
        .collect();
    let max_multiplier = b.cycles.iter().map(|c| c.multiplier).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    json!({
        "pixels": b.len(),
        "fractions": fractions,
        "legend": b.legend,
        "cycle_pixels": b.cycles.len(),
        "max_cycle_multiplier": max_multiplier,
    })
}

fn basins_of(cfg: &JobConfig, map: &MapSpec) -> Result<BasinRaster> {
    let window = cfg.window()?;
    let roots = map.roots(&cfg.search_window()?)?;
    render_basins(map.as_invertible(), &roots, &window, cfg.width, cfg.height, &cfg.scan)
}

fn basins_job(cfg: &JobConfig, art: &mut Artifacts) -> Result<Value> {
    let map = cfg.map()?;
    let b = basins_of(cfg, &map)?;
    art.image("", &b);
    Ok(json!({ "basins": basin_stats(&b) }))
}

fn grid(cfg: &JobConfig) -> Result<Grid> {
    Ok(Grid::new(cfg.window()?, cfg.width, cfg.height))
}

/// α-limit raster plus a description of how it was made.
fn alpha_raster(cfg: &JobConfig, map: &MapSpec, source: AlphaSource, art: &mut Artifacts) -> Result<(OccupancyRaster, Value)> {
    let n = map.as_invertible();
    let z0 = cfg.seed_point()?;
    let search = cfg.search_window()?;
    let domain = map.is_planar().then_some(&search);
    let grid = grid(cfg)?;
    match source {
        AlphaSource::Tree => {
            let depth = cfg.depth.unwrap_or(1);
            let t = backward_tree(n, z0, depth, cfg.cap, domain, grid)?;
            let info = json!({
                "source": "tree",
                "requested_depth": t.requested_depth,
                "completed_depth": t.completed_depth,
                "nodes": t.nodes,
                "deepest_level_size": t.deepest_level_size,
                "partial": t.partial,
                "set_pixels": t.raster.count(),
            });
            Ok((t.raster, info))
        }
        AlphaSource::Random => {
            let length = cfg.length.unwrap_or(0);
            let orbits = random_backward_orbits(n, z0, length, cfg.burn_in, cfg.prng_seed, cfg.orbits, domain)?;
            let mut raster = OccupancyRaster::empty(grid);
            let mut csv = String::new();
            for o in &orbits {
                for p in o.recorded() {
                    raster.insert(*p);
                    csv.push_str(&format!("{},{}\n", p.x, p.y));
                }
            }
            art.text("_orbit.csv", csv);
            let info = json!({
                "source": "random",
                "orbits": orbits.len(),
                "recorded_points": orbits.iter().map(|o| o.recorded().len()).sum::<usize>(),
                "truncated_orbits": orbits.iter().filter(|o| o.truncated).count(),
                "set_pixels": raster.count(),
            });
            Ok((raster, info))
        }
    }
}

fn alpha_job(cfg: &JobConfig, mode: Mode, art: &mut Artifacts) -> Result<Value> {
    let map = cfg.map()?;
    let source = if mode == Mode::AlphaTree { AlphaSource::Tree } else { AlphaSource::Random };
    let (alpha, info) = alpha_raster(cfg, &map, source, art)?;
    art.image("", &alpha);
    // distance to the basin boundary where the map has basins to compare to
    let hausdorff = match map {
        MapSpec::Rational(_) => None,
        _ => {
            let b = basins_of(cfg, &map)?;
            match extract_boundary(&b) {
                Ok(bd) if !alpha.is_empty() => Some(hausdorff_pixel_distance(&alpha, &bd.boundary)?),
                _ => None,
            }
        }
    };
    Ok(json!({
        "alpha": info,
        "coverage": alpha.coverage(),
        "hausdorff_to_boundary_pixels": hausdorff,
    }))
}

fn compare_job(cfg: &JobConfig, art: &mut Artifacts) -> Result<Value> {
    let map = cfg.map()?;
    let b = basins_of(cfg, &map)?;
    let boundary = extract_boundary(&b)?;
    let (alpha, info) = alpha_raster(cfg, &map, cfg.alpha_source.unwrap_or(AlphaSource::Tree), art)?;
    let cmp = compare_alpha_boundary(&alpha, &boundary, cfg.nonregular_only)?;
    art.image("_basins", &b);
    art.image("_boundary", &boundary.boundary);
    art.image("_alpha", &alpha);
    Ok(json!({
        "basins": basin_stats(&b),
        "alpha": info,
        "comparison": cmp,
    }))
}

fn ifs_job(cfg: &JobConfig, art: &mut Artifacts) -> Result<Value> {
    let map = cfg.map()?;
    let roots = map.roots(&cfg.search_window()?)?;
    let disks = cfg.exclusion(&roots)?;
    let initial = OccupancyRaster::full(grid(cfg)?);
    let run = hutchinson_iterate(map.as_invertible(), &initial, &disks, cfg.steps.unwrap_or(1))?;
    let last = run.last().ok_or_else(|| Error::Runtime { op: "ifs", message: "no iterates".into() })?;
    art.image("", last);
    Ok(json!({
        "gaps_pixels": run.gaps,
        "set_pixels": run.iterates.iter().map(|r| r.count()).collect::<Vec<_>>(),
        "exclusion_disks": disks,
    }))
}

fn param_scan_job(cfg: &JobConfig, art: &mut Artifacts) -> Result<Value> {
    let (base, slope) = cfg.family()?;
    let seed = cfg.seed_point()?;
    let window = cfg.window()?;
    let family = |a| JobConfig::param(a, &base, &slope);
    let b = parameter_scan(family, seed, &window, cfg.width, cfg.height, &cfg.scan)?;
    art.image("", &b);
    // re-check every reported cycle on a freshly built map
    let grid = b.grid();
    let mut verified = 0usize;
    let mut worst: Option<f64> = None;
    for c in &b.cycles {
        let a = grid.center_of_index(c.pixel).to_complex();
        let n = build_newton_complex(&family(a))?;
        let m = cycle_multiplier(&n, c.representative, c.period, cfg.scan.multiplier_step)?;
        if m < 1.0 {
            verified += 1;
        }
        worst = Some(worst.map_or(m, |w: f64| w.max(m)));
    }
    let periods: std::collections::BTreeMap<usize, usize> = b.cycles.iter().fold(Default::default(), |mut acc, c| {
        *acc.entry(c.period).or_default() += 1;
        acc
    });
    Ok(json!({
        "scan": basin_stats(&b),
        "cycle_periods": periods,
        "cycles_reverified_attracting": verified,
        "max_reverified_multiplier": worst,
    }))
}

fn barna_job(cfg: &JobConfig) -> Result<Value> {
    let report = barna_check(&cfg.complex_polynomial()?, &barna_config(cfg))?;
    serde_json::to_value(report).map_err(|e| Error::Runtime { op: "barna", message: e.to_string() })
}

fn ghost_job(cfg: &JobConfig) -> Result<Value> {
    let MapSpec::Planar(n) = cfg.map()? else {
        return Err(Error::invalid("ghost lines need a planar map"));
    };
    let search = cfg.search_window()?;
    let lines = ghost_lines(&n.source, &search);
    let probe = probe_config(cfg);
    let probes: Vec<_> = lines.iter().map(|l| probe_ghost_attractor(&n, l, &probe)).collect();
    let roots: Vec<Point> = n.roots(&search)?;
    Ok(json!({
        "real_roots": roots,
        "ghost_lines": lines.len(),
        "probes": probes,
    }))
}
