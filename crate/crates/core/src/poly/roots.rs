//! All complex roots of a univariate polynomial by Aberth–Ehrlich
//! simultaneous iteration, followed by Newton polishing.

use num_complex::Complex64;

use super::UniComplexPoly;
use crate::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 800;

/// Returns `deg(p)` roots counted with multiplicity (repeated roots appear
/// repeatedly), sorted by real then imaginary part.
pub fn univariate_complex_roots(p: &UniComplexPoly, tol: f64) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n < 1 {
        return Err(Error::invalid(format!(
            "root finding needs degree >= 1, got degree {n}"
        )));
    }
    let n = n as usize;
    let lead = p.leading();
    let monic = p.scale(lead.inv());
    let c = monic.coeffs();

    // exact zero roots are split off so the iteration only sees the rest
    let zeros = c.iter().take_while(|v| v.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let rest = UniComplexPoly::new(c[zeros..].to_vec());
    let m = n - zeros;
    if m == 1 {
        roots.push(-rest.coeffs()[0]);
    } else if m > 1 {
        roots.extend(aberth(&rest, m));
    }
    for r in roots.iter_mut() {
        *r = polish(&monic, *r);
    }

    let bound_scale = p.max_abs_coeff();
    for r in &roots {
        let resid = p.eval(*r).norm();
        let bound = tol * (1.0 + r.norm()).powi(n as i32) * bound_scale;
        if !(resid <= bound) {
            return Err(Error::Runtime {
                op: "univariate_complex_roots",
                message: format!("root {r} has residual {resid:e} above bound {bound:e}"),
            });
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn aberth(p: &UniComplexPoly, n: usize) -> Vec<Complex64> {
    let c = p.coeffs();
    // Fujiwara bound on root moduli
    let radius = (1..=n)
        .map(|k| {
            let a = c[n - k].norm();
            if k == n {
                (a / 2.0).powf(1.0 / k as f64)
            } else {
                a.powf(1.0 / k as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let center = -c[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();

    let mut done = vec![false; n];
    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, dv) = p.eval_with_derivative(z[i]);
            if v.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = v / dv;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() == 0.0 || !denom.is_finite() { ratio } else { ratio / denom };
            if !step.is_finite() {
                // derivative vanished: nudge off the critical point
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += nudge;
                all_done = false;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

fn polish(p: &UniComplexPoly, mut z: Complex64) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..6 {
        let (v, dv) = p.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let cand = z - v / dv;
        let r = p.eval(cand).norm();
        if !(r < best) {
            break;
        }
        best = r;
        z = cand;
    }
    z
}

/// Groups roots lying within `radius` of each other, returning the cluster
/// mean and its multiplicity.
pub fn cluster_roots(roots: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize, Complex64)> = Vec::new();
    for &r in roots {
        match out.iter_mut().find(|(c, _, _)| (*c - r).norm() <= radius) {
            Some((c, k, sum)) => {
                *sum += r;
                *k += 1;
                *c = *sum / *k as f64;
            }
            None => out.push((r, 1, r)),
        }
    }
    out.into_iter().map(|(c, k, _)| (c, k)).collect()
}
