//! Dense bivariate polynomials with exact differentiation.

use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest degree allowed in either variable.
pub const MAX_DEGREE: usize = 32;

/// `sum_{i,j} coeffs[i][j] x^i y^j`, stored as a dense `(dx + 1) x (dy + 1)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2D {
    coeffs: Vec<Vec<f64>>,
}

impl Poly2D {
    pub fn zero() -> Self {
        Self { coeffs: vec![vec![0.0]] }
    }

    /// Rows index powers of `x`, columns powers of `y`. Ragged rows are padded.
    pub fn new(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let dx = coeffs.len().saturating_sub(1);
        let dy = coeffs.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1);
        check_degree(dx.max(dy))?;
        if coeffs.is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = coeffs
            .into_iter()
            .map(|mut r| {
                r.resize(dy + 1, 0.0);
                r
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// Polynomial from `(i, j, c)` triples meaning `c x^i y^j`.
    pub fn from_terms(terms: &[(usize, usize, f64)]) -> Result<Self> {
        let dx = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let dy = terms.iter().map(|t| t.1).max().unwrap_or(0);
        check_degree(dx.max(dy))?;
        let mut coeffs = vec![vec![0.0; dy + 1]; dx + 1];
        for &(i, j, c) in terms {
            coeffs[i][j] += c;
        }
        Ok(Self { coeffs })
    }

    /// Expansion of `P(a x + b y)` for a one-variable polynomial `P`.
    pub fn from_linear_composition(coeffs: &[f64], a: f64, b: f64) -> Result<Self> {
        let n = coeffs.len().saturating_sub(1);
        check_degree(n)?;
        let mut out = vec![vec![0.0; n + 1]; n + 1];
        for (deg, &c) in coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let mut binom = 1.0;
            for k in 0..=deg {
                out[k][deg - k] += c * binom * a.powi(k as i32) * b.powi((deg - k) as i32);
                binom = binom * (deg - k) as f64 / (k + 1) as f64;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Expansion of `Re(w P(x + lambda y))` for a complex polynomial `P` and
    /// complex weight `w`.
    pub fn from_complex_composition(coeffs: &[Complex64], lambda: Complex64, weight: Complex64) -> Result<Self> {
        let n = coeffs.len().saturating_sub(1);
        check_degree(n)?;
        let mut out = vec![vec![0.0; n + 1]; n + 1];
        for (deg, &c) in coeffs.iter().enumerate() {
            let mut binom = 1.0;
            for k in 0..=deg {
                // x^k (lambda y)^(deg - k)
                let term = weight * c * binom * lambda.powu((deg - k) as u32);
                out[k][deg - k] += term.re;
                binom = binom * (deg - k) as f64 / (k + 1) as f64;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn degree_x(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| *c == 0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, row| {
            let ry = row.iter().rev().fold(0.0, |a, c| a * y + c);
            acc * x + ry
        })
    }

    /// `d^(ox + oy) / dx^ox dy^oy`, exact.
    pub fn derivative(&self, ox: usize, oy: usize) -> Self {
        if ox > self.degree_x() || oy > self.degree_y() {
            return Self::zero();
        }
        let falling = |k: usize, o: usize| -> f64 { ((k - o + 1)..=k).map(|v| v as f64).product() };
        let coeffs = (ox..=self.degree_x())
            .map(|i| {
                (oy..=self.degree_y())
                    .map(|j| self.coeffs[i][j] * falling(i, ox) * falling(j, oy))
                    .collect()
            })
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|c| c * k).collect())
                .collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let dx = self.degree_x().max(other.degree_x());
        let dy = self.degree_y().max(other.degree_y());
        let coeffs = (0..=dx)
            .map(|i| (0..=dy).map(|j| f(self.coeff(i, j), other.coeff(i, j))).collect())
            .collect();
        Self { coeffs }
    }
}

fn check_degree(d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        Err(Error::DegreeOverflow { degree: d, cap: MAX_DEGREE })
    } else {
        Ok(())
    }
}

impl Add for &Poly2D {
    type Output = Poly2D;
    fn add(self, o: &Poly2D) -> Poly2D {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &Poly2D {
    type Output = Poly2D;
    fn sub(self, o: &Poly2D) -> Poly2D {
        self.zip_with(o, |a, b| a - b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        // 1 + 2x y^2 - x^3
        let p = Poly2D::from_terms(&[(0, 0, 1.0), (1, 2, 2.0), (3, 0, -1.0)]).unwrap();
        assert_eq!(p.eval(2.0, 3.0), 1.0 + 36.0 - 8.0);
        let d = p.derivative(1, 1); // 4y
        assert_eq!(d.eval(5.0, 3.0), 12.0);
        assert_eq!(p.derivative(4, 0), Poly2D::zero());
        assert_eq!(p.derivative(3, 0).eval(0.3, 0.1), -6.0);
    }

    #[test]
    fn linear_composition_matches_evaluation() {
        let coeffs = [0.5, -1.0, 2.0, 0.0, 3.0];
        let p = Poly2D::from_linear_composition(&coeffs, 1.5, -0.7).unwrap();
        for &(x, y) in &[(0.2, 0.3), (-1.0, 2.0), (0.7, -0.4)] {
            let t: f64 = 1.5 * x - 0.7 * y;
            let direct: f64 = coeffs.iter().enumerate().map(|(k, c)| c * t.powi(k as i32)).sum();
            assert!((p.eval(x, y) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_composition_matches_evaluation() {
        let coeffs = [Complex64::new(1.0, 0.5), Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.3)];
        let lam = Complex64::new(0.8, 0.6);
        let w = Complex64::new(0.0, -1.0);
        let p = Poly2D::from_complex_composition(&coeffs, lam, w).unwrap();
        for &(x, y) in &[(0.2, 0.3), (-1.0, 2.0)] {
            let z = x + lam * y;
            let v: Complex64 = coeffs.iter().enumerate().map(|(k, c)| c * z.powu(k as u32)).sum();
            assert!((p.eval(x, y) - (w * v).re).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            Poly2D::from_terms(&[(33, 0, 1.0)]),
            Err(Error::DegreeOverflow { degree: 33, cap: 32 })
        ));
        assert!(Poly2D::from_linear_composition(&[1.0; 33], 1.0, 1.0).is_ok());
        assert!(Poly2D::from_linear_composition(&[1.0; 34], 1.0, 1.0).is_err());
    }

    #[test]
    fn add_sub_scale() {
        let a = Poly2D::from_terms(&[(1, 0, 1.0)]).unwrap();
        let b = Poly2D::from_terms(&[(0, 2, 3.0)]).unwrap();
        let s = &a + &b;
        assert_eq!(s.eval(2.0, 1.0), 5.0);
        assert!((&s - &s).is_zero());
        assert_eq!(s.scale(2.0).eval(2.0, 1.0), 10.0);
    }
}
