use std::fmt;

use num_complex::Complex64;

use super::{parse::parse_with_vars, MultiPoly, PlaneMap};
use crate::{Error, Result};

/// Univariate polynomial with complex coefficients in ascending order.
/// Trailing zero coefficients are trimmed, so the leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UniComplexPoly {
    coeffs: Vec<Complex64>,
}

impl UniComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        UniComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        UniComplexPoly { coeffs: Vec::new() }
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Self::from_real(&[1.0]), |acc, &r| {
            &acc * &Self::new(vec![-r, Complex64::new(1.0, 0.0)])
        })
    }

    /// Parses a real-coefficient polynomial in `z` (or `x`).
    pub fn parse(text: &str) -> Result<Self> {
        let p = parse_with_vars(text, &["z"]).or_else(|e| match e {
            Error::Parse { .. } => parse_with_vars(text, &["x"]).map_err(|_| e),
            e => Err(e),
        })?;
        Ok(Self::from_multi_x(&p))
    }

    /// Reads a polynomial in `x` alone; `y` terms must be absent.
    pub fn from_multi_x(p: &MultiPoly) -> Self {
        let deg = p.degree_in(0).max(0) as usize;
        let mut c = vec![0.0; deg + 1];
        for &((i, j), v) in p.terms() {
            debug_assert_eq!(j, 0, "univariate polynomial expected");
            c[i as usize] += v;
        }
        Self::from_real(&c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.coeffs.len() as i32 - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol * c.norm().max(1.0))
    }

    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        self.coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Real and imaginary parts of `p(x + iy)` as a map of the plane.
    pub fn real_form(&self) -> PlaneMap {
        // (x + iy)^k expanded by the binomial theorem
        let mut re = Vec::new();
        let mut im = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let k = k as u32;
            for m in 0..=k {
                let binom = binomial(k, m);
                // i^m
                let unit = match m % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                };
                let w = c * unit * binom;
                re.push(((k - m, m), w.re));
                im.push(((k - m, m), w.im));
            }
        }
        PlaneMap { first: MultiPoly::from_terms(re), second: MultiPoly::from_terms(im) }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl std::ops::Add for &UniComplexPoly {
    type Output = UniComplexPoly;
    fn add(self, rhs: &UniComplexPoly) -> UniComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniComplexPoly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_default()
                        + rhs.coeffs.get(k).copied().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl std::ops::Sub for &UniComplexPoly {
    type Output = UniComplexPoly;
    fn sub(self, rhs: &UniComplexPoly) -> UniComplexPoly {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl std::ops::Mul for &UniComplexPoly {
    type Output = UniComplexPoly;
    fn mul(self, rhs: &UniComplexPoly) -> UniComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniComplexPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniComplexPoly::new(out)
    }
}

impl fmt::Display for UniComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(k, c)| {
                let c = if c.im == 0.0 { format!("{:?}", c.re) } else { format!("({c})") };
                match k {
                    0 => c,
                    1 => format!("{c}*z"),
                    _ => format!("{c}*z^{k}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
