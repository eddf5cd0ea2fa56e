use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::Invertible;
use crate::geom::{Point, Window};
use crate::{Error, Result};

pub const DEFAULT_BURN_IN: usize = 100;
/// Redraws allowed after a dead end (no counterimages) before truncating.
pub const MAX_RETRIES: usize = 100;

/// A sampled backward path `z0 ← z1 ← z2 ← …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardOrbit {
    pub seed_point: Point,
    /// `z1, z2, …` (including the burn-in prefix).
    pub points: Vec<Point>,
    pub prng_seed: u64,
    pub stream: u64,
    pub burn_in: usize,
    /// Fewer points than requested because dead ends exhausted the retries.
    pub truncated: bool,
}

impl BackwardOrbit {
    /// Points after the burn-in.
    pub fn recorded(&self) -> &[Point] {
        &self.points[self.burn_in.min(self.points.len())..]
    }
}

fn rng_for(prng_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(prng_seed);
    rng.set_stream(stream);
    rng
}

/// Random backward orbit using ChaCha8 stream 0 of `prng_seed`.
pub fn random_backward_orbit<M: Invertible + ?Sized>(
    n: &M,
    z0: Point,
    length: usize,
    burn_in: usize,
    prng_seed: u64,
    domain: Option<&Window>,
) -> Result<BackwardOrbit> {
    backward_orbit_stream(n, z0, length, burn_in, prng_seed, 0, domain)
}

/// `count` independent orbits, orbit `i` drawing from stream `i`.
pub fn random_backward_orbits<M: Invertible + ?Sized>(
    n: &M,
    z0: Point,
    length: usize,
    burn_in: usize,
    prng_seed: u64,
    count: usize,
    domain: Option<&Window>,
) -> Result<Vec<BackwardOrbit>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| backward_orbit_stream(n, z0, length, burn_in, prng_seed, i, domain))
        .collect()
}

fn backward_orbit_stream<M: Invertible + ?Sized>(
    n: &M,
    z0: Point,
    length: usize,
    burn_in: usize,
    prng_seed: u64,
    stream: u64,
    domain: Option<&Window>,
) -> Result<BackwardOrbit> {
    if length <= burn_in {
        return Err(Error::invalid(format!("orbit length {length} must exceed burn-in {burn_in}")));
    }
    let mut rng = rng_for(prng_seed, stream);
    let mut points: Vec<Point> = Vec::with_capacity(length);
    let mut retries = 0usize;
    let mut longest = 0usize;
    let mut truncated = false;
    while points.len() < length {
        let current = points.last().copied().unwrap_or(z0);
        let pre = n.counterimages(current, domain)?;
        if pre.is_empty() {
            retries += 1;
            if retries > MAX_RETRIES {
                truncated = true;
                break;
            }
            // back up one step; redrawing from the parent picks a new branch
            points.pop();
            continue;
        }
        points.push(pre[rng.gen_range(0..pre.len())]);
        // retries count failures since the path last reached a new length
        if points.len() > longest {
            longest = points.len();
            retries = 0;
        }
    }
    if points.len() <= burn_in {
        return Err(Error::EmptyOrbit { recorded: points.len(), burn_in });
    }
    Ok(BackwardOrbit { seed_point: z0, points, prng_seed, stream, burn_in, truncated })
}
