use std::collections::BTreeMap;

use proptest::prelude::*;

use newton_dynamics::analysis::{
    compare_alpha_boundary, enumerate_cycles_1d, extract_boundary, periodic_points_1d, probe_ghost_attractors,
    ProbeConfig, RealNewton1d, Stability,
};
use newton_dynamics::forward::{BasinRaster, PixelCode};
use newton_dynamics::geom::Window;
use newton_dynamics::newton::build_newton_plane;
use newton_dynamics::poly::PlaneMap;

/// Solutions of `N^k(x) = x` from sign changes on a uniform grid, kept only
/// where bisection lands on a genuine periodic point.
fn grid_oracle(n: &RealNewton1d, k: usize, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let g = |x: f64| n.iterate(x, k) - x;
    let mut out = Vec::new();
    let h = (hi - lo) / samples as f64;
    for i in 0..samples {
        let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        let (ga, gb) = (g(a), g(b));
        if !(ga.is_finite() && gb.is_finite()) || ga * gb > 0.0 {
            continue;
        }
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            let gm = g(m);
            if !gm.is_finite() {
                break;
            }
            if (gm > 0.0) == (g(a) > 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        let x = 0.5 * (a + b);
        if (n.iterate(x, k) - x).abs() < 1e-6 * (1.0 + x.abs()) {
            out.push(x);
        }
    }
    out
}

#[test]
fn enumeration_contains_every_grid_oracle_solution() {
    let n = RealNewton1d::new(&[4.0, 0.0, -5.0, 0.0, 1.0]).unwrap();
    for k in 1..=3 {
        let found = periodic_points_1d(&n, k, -10.0, 10.0, 1e-10).unwrap();
        let oracle = grid_oracle(&n, k, -10.0, 10.0, 200_000);
        assert!(!oracle.is_empty());
        for x in &oracle {
            assert!(found.iter().any(|f| (f - x).abs() < 1e-6 * (1.0 + x.abs())), "k={k}: {x} missing");
        }
        assert!(found.len() >= oracle.len());
    }
}

#[test]
fn cycle_points_map_around_the_cycle() {
    let n = RealNewton1d::new(&[4.0, 0.0, -5.0, 0.0, 1.0]).unwrap();
    for k in 2..=4 {
        for c in enumerate_cycles_1d(&n, k, -10.0, 10.0, 1e-10).unwrap() {
            assert_eq!(c.points.len(), k);
            assert_eq!(c.stability, Stability::Repelling);
            let mut next = c.points.clone();
            next.rotate_left(1);
            for (x, y) in c.points.iter().zip(&next) {
                let fx = n.eval(*x);
                assert!((fx - y).abs() < 1e-6 * (1.0 + y.abs()) * (1.0 + c.multiplier.abs()), "{fx} vs {y}");
            }
        }
    }
}

#[test]
fn superattracting_cycle_is_attracting() {
    let n = RealNewton1d::new(&[2.0, -2.0, 0.0, 1.0]).unwrap();
    let cycles = enumerate_cycles_1d(&n, 2, -5.0, 5.0, 1e-10).unwrap();
    let zero_one = cycles.iter().find(|c| c.points[0].abs() < 1e-12).expect("cycle through 0");
    assert!((zero_one.points[1] - 1.0).abs() < 1e-12);
    assert_eq!(zero_one.stability, Stability::Attracting);
    assert!(zero_one.multiplier.abs() < 1e-6);
}

fn raster(width: usize, height: usize, codes: Vec<u8>) -> BasinRaster {
    BasinRaster {
        window: Window::new(0.0, width as f64, 0.0, height as f64),
        width,
        height,
        iterations: vec![0; codes.len()],
        codes,
        legend: BTreeMap::new(),
        cycles: Vec::new(),
    }
}

#[test]
fn boundary_of_a_straight_interface() {
    let (w, h) = (10, 6);
    let codes = (0..w * h).map(|i| if i % w < 4 { 0 } else { 1 }).collect();
    let b = extract_boundary(&raster(w, h, codes)).unwrap();
    assert_eq!(b.boundary.count(), 2 * h);
    for row in 0..h {
        assert!(b.boundary.get(3, row) && b.boundary.get(4, row));
    }
    assert_eq!(b.nonregular.count(), 0);
}

#[test]
fn triple_point_is_nonregular() {
    let (w, h) = (6, 6);
    let codes = (0..w * h)
        .map(|i| {
            let (c, r) = (i % w, i / w);
            if r < 3 {
                0
            } else if c < 3 {
                1
            } else {
                2
            }
        })
        .collect();
    let b = extract_boundary(&raster(w, h, codes)).unwrap();
    assert!(b.nonregular.get(2, 2) && b.nonregular.get(3, 3));
    assert!(!b.nonregular.get(0, 5));
    assert!(b.nonregular_fraction() > 0.0);
}

#[test]
fn special_codes_do_not_form_boundaries() {
    let (w, h) = (8, 4);
    let codes = (0..w * h).map(|i| if i % w < 4 { 0 } else if i % w < 6 { PixelCode::UNDECIDED } else { 1 }).collect();
    let b = extract_boundary(&raster(w, h, codes)).unwrap();
    // the undecided strip is two columns wide, so no window sees both basins
    assert_eq!(b.boundary.count(), 0);
    assert!(extract_boundary(&raster(2, 2, vec![0; 4])).is_err());
}

proptest! {
    #[test]
    fn boundary_compared_with_itself_is_at_distance_zero(split in 1usize..15, tilt in 0usize..3) {
        let (w, h) = (16, 12);
        let codes = (0..w * h).map(|i| u8::from(i % w + tilt * (i / w) / 4 >= split)).collect();
        let b = extract_boundary(&raster(w, h, codes)).unwrap();
        let cmp = compare_alpha_boundary(&b.boundary, &b, false).unwrap();
        prop_assert_eq!(cmp.hausdorff_pixels, 0.0);
        prop_assert_eq!(cmp.alpha_pixel_count, cmp.boundary_pixel_count);
    }
}

#[test]
fn quadratic_system_has_an_invariant_ghost_line() {
    let n = build_newton_plane(&PlaneMap::new("y - x^2".parse().unwrap(), "x + 1 - (y - 2)^2".parse().unwrap()).unwrap())
        .unwrap();
    let cfg = ProbeConfig { seeds: 100, ..ProbeConfig::default() };
    let probes = probe_ghost_attractors(&n, &Window::square(10.0), &cfg);
    assert_eq!(probes.len(), 1);
    let p = &probes[0];
    assert!(p.line_invariant && p.invariance_residual < 1e-9);
    assert!(p.staying_fraction > 0.0);
}

#[test]
fn decoupled_map_has_no_ghost_lines() {
    let n = build_newton_plane(&PlaneMap::new("x^3 - x".parse().unwrap(), "y^2 - 1".parse().unwrap()).unwrap()).unwrap();
    assert!(probe_ghost_attractors(&n, &Window::square(3.0), &ProbeConfig::default()).is_empty());
}
