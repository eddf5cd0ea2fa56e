use rayon::prelude::*;
use serde::Serialize;

use crate::backward::OccupancyRaster;
use crate::dynamics::Invertible;
use crate::geom::{Grid, Point, Window};
use crate::{Error, Result};

pub const DEFAULT_TREE_CAP: usize = 2_000_000;

/// Deepest completed level of a breadth-first backward expansion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardTree {
    pub raster: OccupancyRaster,
    pub requested_depth: usize,
    pub completed_depth: usize,
    /// Nodes generated over all completed levels.
    pub nodes: usize,
    pub deepest_level_size: usize,
    /// The cap stopped the expansion before `requested_depth`.
    pub partial: bool,
}

/// Expands counterimages of `z0` level by level up to `depth`, keeping the
/// total node count within `cap`, and rasterizes the deepest completed level
/// onto `grid`. The last level is streamed into the raster rather than
/// stored.
pub fn backward_tree<M: Invertible + ?Sized>(
    n: &M,
    z0: Point,
    depth: usize,
    cap: usize,
    domain: Option<&Window>,
    grid: Grid,
) -> Result<BackwardTree> {
    if depth == 0 {
        return Err(Error::invalid("backward tree depth must be at least 1"));
    }
    if grid.is_empty() || grid.window.is_degenerate() {
        return Err(Error::invalid("backward tree needs a non-empty raster grid"));
    }
    let degree = n.degree().max(1);
    let mut level = vec![z0];
    let mut nodes = 0usize;
    let mut completed = 0usize;
    for k in 1..=depth {
        // a level can hold at most degree × previous nodes
        let bound = level.len().saturating_mul(degree);
        if nodes.saturating_add(bound) > cap {
            break;
        }
        if k == depth {
            let (raster, size) = stream_level(n, &level, domain, grid)?;
            return Ok(BackwardTree {
                raster,
                requested_depth: depth,
                completed_depth: depth,
                nodes: nodes + size,
                deepest_level_size: size,
                partial: false,
            });
        }
        level = expand(n, &level, domain)?;
        nodes += level.len();
        completed = k;
    }
    let deepest_level_size = if completed == 0 { 0 } else { level.len() };
    let raster = if completed == 0 {
        OccupancyRaster::empty(grid)
    } else {
        OccupancyRaster::from_points(grid, &level)
    };
    Ok(BackwardTree { raster, requested_depth: depth, completed_depth: completed, nodes, deepest_level_size, partial: true })
}

fn expand<M: Invertible + ?Sized>(n: &M, level: &[Point], domain: Option<&Window>) -> Result<Vec<Point>> {
    let parts: Vec<Vec<Point>> = level.par_iter().map(|&z| n.counterimages(z, domain)).collect::<Result<_>>()?;
    Ok(parts.concat())
}

const STREAM_CHUNK: usize = 4096;

fn stream_level<M: Invertible + ?Sized>(
    n: &M,
    level: &[Point],
    domain: Option<&Window>,
    grid: Grid,
) -> Result<(OccupancyRaster, usize)> {
    let partial: Vec<(OccupancyRaster, usize)> = level
        .par_chunks(STREAM_CHUNK)
        .map(|chunk| {
            let mut r = OccupancyRaster::empty(grid);
            let mut size = 0;
            for &z in chunk {
                let pre = n.counterimages(z, domain)?;
                size += pre.len();
                for p in pre {
                    r.insert(p);
                }
            }
            Ok((r, size))
        })
        .collect::<Result<_>>()?;
    let mut raster = OccupancyRaster::empty(grid);
    let mut size = 0;
    for (r, s) in &partial {
        raster.union_with(r)?;
        size += s;
    }
    Ok((raster, size))
}
