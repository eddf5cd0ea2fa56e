use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::interval::Interval;
use crate::geom::Point;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponents = (u32, u32);

/// Real polynomial in `x` and `y`, kept in canonical form: terms sorted by
/// exponent pair, no repeated exponents, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MultiPoly {
    terms: Vec<(Exponents, f64)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: f64, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn x() -> Self {
        Self::monomial(1.0, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1.0, 0, 1)
    }

    /// Builds the canonical form, summing repeated exponents and dropping
    /// zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, f64)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Exponents, f64> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert(0.0) += c;
        }
        MultiPoly { terms: acc.into_iter().filter(|&(_, c)| c != 0.0).collect() }
    }

    /// Univariate polynomial in `x` from ascending coefficients.
    pub fn univariate_x(coeffs: &[f64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| ((i as u32, 0), c)))
    }

    /// Univariate polynomial in `y` from ascending coefficients.
    pub fn univariate_y(coeffs: &[f64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(j, &c)| ((0, j as u32), c)))
    }

    pub fn terms(&self) -> &[(Exponents, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^i y^j` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&(i, j)))
            .map(|k| self.terms[k].1)
            .unwrap_or(0.0)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i32 {
        self.terms.iter().map(|&((i, j), _)| (i + j) as i32).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms
            .iter()
            .map(|&((i, j), _)| if var == 0 { i as i32 } else { j as i32 })
            .max()
            .unwrap_or(-1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, &(_, c)| m.max(c.abs()))
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree() <= 0
    }

    pub fn eval(&self, p: Point) -> f64 {
        let mut xp = PowerCache::new(p.x);
        let mut yp = PowerCache::new(p.y);
        self.terms.iter().map(|&((i, j), c)| c * xp.get(i) * yp.get(j)).sum()
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|&((i, j), c)| x.powu(i) * y.powu(j) * c)
            .sum()
    }

    /// Natural interval extension over the box `x × y`.
    pub fn eval_interval(&self, x: Interval, y: Interval) -> Interval {
        self.terms
            .iter()
            .fold(Interval::point(0.0), |acc, &((i, j), c)| acc + x.powi(i) * y.powi(j) * c)
    }

    /// Partial derivative with respect to `x` (`var == 0`) or `y` (`var == 1`).
    pub fn diff(&self, var: usize) -> MultiPoly {
        assert!(var < 2, "variable index must be 0 or 1");
        Self::from_terms(self.terms.iter().filter_map(|&((i, j), c)| match var {
            0 if i > 0 => Some(((i - 1, j), c * i as f64)),
            1 if j > 0 => Some(((i, j - 1), c * j as f64)),
            _ => None,
        }))
    }

    pub fn scale(&self, s: f64) -> MultiPoly {
        Self::from_terms(self.terms.iter().map(|&(e, c)| (e, c * s)))
    }

    pub fn powu(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(1.0);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitutes `x ↦ a`, `y ↦ b`.
    pub fn compose(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let max_i = self.degree_in(0).max(0) as usize;
        let max_j = self.degree_in(1).max(0) as usize;
        let mut a_pows = vec![MultiPoly::constant(1.0)];
        for k in 1..=max_i {
            let next = &a_pows[k - 1] * a;
            a_pows.push(next);
        }
        let mut b_pows = vec![MultiPoly::constant(1.0)];
        for k in 1..=max_j {
            let next = &b_pows[k - 1] * b;
            b_pows.push(next);
        }
        self.terms.iter().fold(MultiPoly::zero(), |acc, &((i, j), c)| {
            &acc + &(&a_pows[i as usize] * &b_pows[j as usize]).scale(c)
        })
    }

    /// Largest monomial `x^i y^j` dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let i = self.terms.iter().map(|&((i, _), _)| i).min().unwrap_or(0);
        let j = self.terms.iter().map(|&((_, j), _)| j).min().unwrap_or(0);
        (i, j)
    }

    /// Divides every term by `x^i y^j`; the monomial must divide every term.
    pub fn div_monomial(&self, (di, dj): Exponents) -> MultiPoly {
        Self::from_terms(self.terms.iter().map(|&((i, j), c)| {
            assert!(i >= di && j >= dj, "monomial does not divide polynomial");
            ((i - di, j - dj), c)
        }))
    }

    /// True when every coefficient of `self - other` is within `tol` of zero,
    /// relative to the larger coefficient magnitude of the two.
    pub fn approx_eq(&self, other: &MultiPoly, tol: f64) -> bool {
        let scale = self.max_abs_coeff().max(other.max_abs_coeff()).max(1.0);
        (self - other).terms.iter().all(|&(_, c)| c.abs() <= tol * scale)
    }
}

struct PowerCache {
    base: f64,
    pows: [f64; 16],
    filled: usize,
}

impl PowerCache {
    fn new(base: f64) -> Self {
        let mut pows = [0.0; 16];
        pows[0] = 1.0;
        PowerCache { base, pows, filled: 1 }
    }

    fn get(&mut self, n: u32) -> f64 {
        let n = n as usize;
        if n >= self.pows.len() {
            return self.base.powi(n as i32);
        }
        while self.filled <= n {
            self.pows[self.filled] = self.pows[self.filled - 1] * self.base;
            self.filled += 1;
        }
        self.pows[n]
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms.iter().copied().chain(rhs.terms.iter().map(|&(e, c)| (e, -c))),
        )
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().flat_map(|&((i1, j1), c1)| {
            rhs.terms.iter().map(move |&((i2, j2), c2)| ((i1 + i2, j1 + j2), c1 * c2))
        }))
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    /// Writes the text form accepted by the parser, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| {
            let (da, db) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
            db.cmp(&da).then(b.0.cmp(&a.0))
        });
        for (k, &((i, j), c)) in terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if mag != 1.0 || (i == 0 && j == 0) {
                factors.push(format!("{mag:?}"));
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A polynomial map `f = (first, second)` of the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneMap {
    pub first: MultiPoly,
    pub second: MultiPoly,
}

impl PlaneMap {
    /// Fails when both components are zero.
    pub fn new(first: MultiPoly, second: MultiPoly) -> crate::Result<Self> {
        if first.is_zero() && second.is_zero() {
            return Err(crate::Error::invalid("plane map with both components zero"));
        }
        Ok(PlaneMap { first, second })
    }

    pub fn identity() -> Self {
        PlaneMap { first: MultiPoly::x(), second: MultiPoly::y() }
    }

    pub fn eval(&self, p: Point) -> Point {
        Point::new(self.first.eval(p), self.second.eval(p))
    }

    pub fn components(&self) -> [&MultiPoly; 2] {
        [&self.first, &self.second]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlaneMap) -> PlaneMap {
        PlaneMap {
            first: self.first.compose(&inner.first, &inner.second),
            second: self.second.compose(&inner.first, &inner.second),
        }
    }

    pub fn approx_eq(&self, other: &PlaneMap, tol: f64) -> bool {
        self.first.approx_eq(&other.first, tol) && self.second.approx_eq(&other.second, tol)
    }

    pub fn is_constant(&self) -> bool {
        self.first.is_constant() && self.second.is_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("x^2 + y^2").eval(Point::ORIGIN), 0.0);
        assert_eq!(p("y - x^2").eval(Point::new(1.0, 1.0)), 0.0);
        assert_eq!(p("x*(x^2 - 1)").eval(Point::new(2.0, 0.0)), 6.0);
    }

    #[test]
    fn diff_examples() {
        assert_eq!(p("x^3 - 1").diff(0), p("3*x^2"));
        assert_eq!(p("y - x^2").diff(1), MultiPoly::constant(1.0));
        assert_eq!(p("x^2*y + y^3").diff(0), p("2*x*y"));
    }

    #[test]
    fn degree_of_zero_is_minus_one() {
        assert_eq!(MultiPoly::zero().total_degree(), -1);
        assert_eq!(p("x - x").total_degree(), -1);
        assert_eq!(p("3*x^2*y - 1.5*y^3 + 2").total_degree(), 3);
    }

    #[test]
    fn canonical_form_has_no_zeros_or_repeats() {
        let q = MultiPoly::from_terms([((1, 0), 2.0), ((1, 0), -2.0), ((0, 2), 1.0), ((0, 2), 1.0)]);
        assert_eq!(q.terms(), &[((0, 2), 2.0)]);
    }

    #[test]
    fn display_round_trips() {
        let q = p("3*x^2*y - 1.5*y^3 + 2 - x");
        assert_eq!(q.to_string().parse::<MultiPoly>().unwrap(), q);
    }

    #[test]
    fn compose_identity() {
        let f = p("x^3 - 2*x*y + y^2 - 7");
        assert_eq!(f.compose(&MultiPoly::x(), &MultiPoly::y()), f);
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i32..=5), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(ts.into_iter().map(|(e, c)| (e, c as f64)))
        })
    }

    proptest! {
        #[test]
        fn diff_is_additive(a in small_poly(), b in small_poly(), v in 0usize..2) {
            prop_assert_eq!((&a + &b).diff(v), &a.diff(v) + &b.diff(v));
        }

        #[test]
        fn diff_satisfies_product_rule(a in small_poly(), b in small_poly(), v in 0usize..2) {
            let lhs = (&a * &b).diff(v);
            let rhs = &(&a.diff(v) * &b) + &(&a * &b.diff(v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_eval_matches_raw_terms(
            raw in prop::collection::vec(((0u32..5, 0u32..5), -3.0f64..3.0), 0..10),
            pts in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 100),
        ) {
            let q = MultiPoly::from_terms(raw.iter().copied());
            for (x, y) in pts {
                let direct: f64 = raw.iter().map(|&((i, j), c)| c * x.powi(i as i32) * y.powi(j as i32)).sum();
                let scale: f64 = raw.iter().map(|&((i, j), c)| (c * x.powi(i as i32) * y.powi(j as i32)).abs()).sum();
                prop_assert!((q.eval(Point::new(x, y)) - direct).abs() <= 1e-12 * scale.max(1e-300));
            }
        }
    }
}
