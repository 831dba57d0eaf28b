//! Building-block functions and monogenic functions on `B_c`.
//!
//! A monogenic function is assembled on the idempotent basis as
//! `alpha(w1) i1 + beta(w2) i2` (hyperbolic) or `alpha(w1) I- + beta(w2) I+`
//! (elliptic). In the hyperbolic case `alpha` and `beta` are split-complex
//! analytic, parametrised here by d'Alembert pairs; in the elliptic case they
//! are ordinary complex analytic functions.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    elliptic_idempotents, hyper_idempotents, AlgebraParams, Constants, EllipticElement,
    HyperElement, SplitComplex,
};
use crate::error::{Error, Result};
use crate::grid::{Rect, ResidualGrid, ScalarGrid};

/// A real function of one variable with derivatives of every order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile1D {
    /// `sum_k coeffs[k] t^k`
    Polynomial { coeffs: Vec<f64> },
    /// `amplitude * sin(frequency * t + phase)`
    Sine {
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `amplitude * exp(rate * t)`
    Exponential { amplitude: f64, rate: f64 },
    /// `amplitude * exp(-((t - center) / width)^2 / 2)`
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
}

impl Default for Profile1D {
    fn default() -> Self {
        Self::zero()
    }
}

impl Profile1D {
    pub fn zero() -> Self {
        Profile1D::Polynomial { coeffs: Vec::new() }
    }

    pub fn polynomial(coeffs: impl Into<Vec<f64>>) -> Self {
        Profile1D::Polynomial { coeffs: coeffs.into() }
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        Profile1D::Polynomial { coeffs }
    }

    pub fn sine(amplitude: f64, frequency: f64, phase: f64) -> Self {
        Profile1D::Sine { amplitude, frequency, phase }
    }

    pub fn exponential(amplitude: f64, rate: f64) -> Self {
        Profile1D::Exponential { amplitude, rate }
    }

    pub fn gaussian(amplitude: f64, center: f64, width: f64) -> Self {
        Profile1D::Gaussian { amplitude, center, width }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |vals: &[f64]| vals.iter().all(|v| v.is_finite());
        let ok = match self {
            Profile1D::Polynomial { coeffs } => finite(coeffs),
            Profile1D::Sine { amplitude, frequency, phase } => {
                finite(&[*amplitude, *frequency, *phase])
            }
            Profile1D::Exponential { amplitude, rate } => finite(&[*amplitude, *rate]),
            Profile1D::Gaussian { amplitude, center, width } => {
                finite(&[*amplitude, *center, *width]) && *width > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "profile parameters must be finite (and gaussian width positive): {self:?}"
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Profile1D::Polynomial { coeffs } => coeffs.iter().all(|c| *c == 0.0),
            Profile1D::Sine { amplitude, .. }
            | Profile1D::Exponential { amplitude, .. }
            | Profile1D::Gaussian { amplitude, .. } => *amplitude == 0.0,
        }
    }

    pub fn as_polynomial(&self) -> Option<&[f64]> {
        match self {
            Profile1D::Polynomial { coeffs } => Some(coeffs),
            _ => None,
        }
    }

    /// Same shape, multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        match self.clone() {
            Profile1D::Polynomial { coeffs } => Profile1D::Polynomial {
                coeffs: coeffs.into_iter().map(|c| c * k).collect(),
            },
            Profile1D::Sine { amplitude, frequency, phase } => Profile1D::Sine {
                amplitude: amplitude * k,
                frequency,
                phase,
            },
            Profile1D::Exponential { amplitude, rate } => Profile1D::Exponential {
                amplitude: amplitude * k,
                rate,
            },
            Profile1D::Gaussian { amplitude, center, width } => Profile1D::Gaussian {
                amplitude: amplitude * k,
                center,
                width,
            },
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.derivative(t, 0)
    }

    /// `d^order/dt^order` at `t`; exact for every kind.
    pub fn derivative(&self, t: f64, order: u32) -> f64 {
        match self {
            Profile1D::Polynomial { coeffs } => poly_derivative(coeffs, t, order),
            Profile1D::Sine { amplitude, frequency, phase } => {
                amplitude
                    * frequency.powi(order as i32)
                    * (frequency * t + phase + order as f64 * FRAC_PI_2).sin()
            }
            Profile1D::Exponential { amplitude, rate } => {
                amplitude * rate.powi(order as i32) * (rate * t).exp()
            }
            Profile1D::Gaussian { amplitude, center, width } => {
                let s = (t - center) / width;
                let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
                amplitude * sign * hermite_he(order, s) * (-0.5 * s * s).exp()
                    / width.powi(order as i32)
            }
        }
    }
}

fn poly_derivative(coeffs: &[f64], t: f64, order: u32) -> f64 {
    let order = order as usize;
    let mut acc = 0.0;
    for k in (order..coeffs.len()).rev() {
        let falling: f64 = ((k - order + 1)..=k).map(|v| v as f64).product();
        acc = acc * t + coeffs[k] * falling;
    }
    acc
}

/// Probabilists' Hermite polynomial `He_n(s)`.
fn hermite_he(n: u32, s: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, s);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = s * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Split-complex analytic function `alpha = alpha1 + f alpha2` in the
/// variables `(x, y1)`, built from a d'Alembert pair:
/// `alpha1 = (p(x + y1) + q(x - y1)) / 2`, `alpha2 = (p(x + y1) - q(x - y1)) / 2`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitAnalytic {
    #[serde(default)]
    pub p: Profile1D,
    #[serde(default)]
    pub q: Profile1D,
}

impl SplitAnalytic {
    pub fn new(p: Profile1D, q: Profile1D) -> Self {
        Self { p, q }
    }

    pub fn eval(&self, x: f64, y1: f64) -> SplitComplex {
        let (a1, a2) = eval_split(self, x, y1);
        SplitComplex::new(a1, a2)
    }
}

/// `(alpha1, alpha2)` at `(x, y1)`.
pub fn eval_split(sa: &SplitAnalytic, x: f64, y1: f64) -> (f64, f64) {
    let p = sa.p.eval(x + y1);
    let q = sa.q.eval(x - y1);
    ((p + q) / 2.0, (p - q) / 2.0)
}

/// Complex analytic function of one complex variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexAnalytic {
    /// `sum_k coeffs[k] z^k`; each coefficient is written `[re, im]`.
    Polynomial { coeffs: Vec<Complex64> },
    /// `exp(a z)`
    ScaledExp { a: Complex64 },
    /// `sin(a z)`
    ScaledSine { a: Complex64 },
}

impl Default for ComplexAnalytic {
    fn default() -> Self {
        Self::zero()
    }
}

impl ComplexAnalytic {
    pub fn zero() -> Self {
        ComplexAnalytic::Polynomial { coeffs: Vec::new() }
    }

    pub fn polynomial(coeffs: impl Into<Vec<Complex64>>) -> Self {
        ComplexAnalytic::Polynomial { coeffs: coeffs.into() }
    }

    /// `z^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        ComplexAnalytic::Polynomial { coeffs }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        let ok = match self {
            ComplexAnalytic::Polynomial { coeffs } => coeffs.iter().all(finite),
            ComplexAnalytic::ScaledExp { a } | ComplexAnalytic::ScaledSine { a } => finite(a),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "analytic function parameters must be finite: {self:?}"
            )))
        }
    }

    pub fn as_polynomial(&self) -> Option<&[Complex64]> {
        match self {
            ComplexAnalytic::Polynomial { coeffs } => Some(coeffs),
            _ => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.derivative(z, 0)
    }

    pub fn derivative(&self, z: Complex64, order: u32) -> Complex64 {
        match self {
            ComplexAnalytic::Polynomial { coeffs } => {
                let order = order as usize;
                let mut acc = Complex64::new(0.0, 0.0);
                for k in (order..coeffs.len()).rev() {
                    let falling: f64 = ((k - order + 1)..=k).map(|v| v as f64).product();
                    acc = acc * z + coeffs[k] * falling;
                }
                acc
            }
            ComplexAnalytic::ScaledExp { a } => a.powu(order) * (a * z).exp(),
            ComplexAnalytic::ScaledSine { a } => {
                a.powu(order) * (a * z + order as f64 * FRAC_PI_2).sin()
            }
        }
    }
}

/// The four real components of a function value on `B_c`: coordinates on
/// `(u, f, e, fe)` (hyperbolic), or `f = u1 + i u2 + e u3 + i e u4` (elliptic).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComponentVector {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub u4: f64,
}

impl ComponentVector {
    pub const fn new(u1: f64, u2: f64, u3: f64, u4: f64) -> Self {
        Self { u1, u2, u3, u4 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.u1, self.u2, self.u3, self.u4]
    }

    /// Component `k` in `1..=4`.
    pub fn get(&self, k: usize) -> f64 {
        self.to_array()[k - 1]
    }
}

pub fn monogenic_components_hyper(
    alpha: &SplitAnalytic,
    beta: &SplitAnalytic,
    p: &AlgebraParams,
    x: f64,
    y: f64,
) -> Result<ComponentVector> {
    let h = p.hyperbolic()?;
    let (i1, i2) = hyper_idempotents(p)?;
    let a = alpha.eval(x, -h.k2 / SQRT_2 * y).to_element();
    let b = beta.eval(x, h.k1 / SQRT_2 * y).to_element();
    let g: HyperElement = a.mul_with(&i1, h.m) + b.mul_with(&i2, h.m);
    Ok(ComponentVector::new(g.cu, g.cf, g.ce, g.cfe))
}

pub fn monogenic_components_elliptic(
    alpha: &ComplexAnalytic,
    beta: &ComplexAnalytic,
    p: &AlgebraParams,
    x: f64,
    y: f64,
) -> Result<ComponentVector> {
    let e = p.elliptic()?;
    let (minus, plus) = elliptic_idempotents(p)?;
    let w1 = x + e.k2 / SQRT_2 * y;
    let w2 = x - e.k1 / SQRT_2 * y;
    let zero = Complex64::new(0.0, 0.0);
    let a = EllipticElement::new(alpha.eval(w1), zero);
    let b = EllipticElement::new(beta.eval(w2), zero);
    let f = a.mul_with(&minus, e.mu) + b.mul_with(&plus, e.mu);
    Ok(f.to_components())
}

/// Residuals of the four Cauchy-Riemann-type equations, each written as
/// `lhs - rhs`:
///
/// 1. `du1/dy - du3/dx`
/// 2. `du2/dy - du4/dx`
/// 3. `du3/dy - (du1/dx - s du4/dx)`
/// 4. `du4/dy - (du2/dx -+ s du3/dx)`
///
/// with `s = m` and `-` in (4) for the hyperbolic algebra, `s = mu` and `+`
/// for the elliptic one.
#[derive(Clone, Debug, PartialEq)]
pub struct CrResidual {
    pub equations: [ResidualGrid; 4],
}

impl CrResidual {
    pub fn max_abs(&self) -> f64 {
        self.equations.iter().map(|r| r.max_abs()).fold(0.0, f64::max)
    }

    pub fn max_per_equation(&self) -> [f64; 4] {
        [
            self.equations[0].max_abs(),
            self.equations[1].max_abs(),
            self.equations[2].max_abs(),
            self.equations[3].max_abs(),
        ]
    }
}

/// Central-difference evaluation of the regime's Cauchy-Riemann system over
/// `region` with spacing `h`. Boundary rows and columns are skipped.
pub fn cr_residual(
    sampler: impl Fn(f64, f64) -> ComponentVector,
    p: &AlgebraParams,
    region: &Rect,
    h: f64,
) -> Result<CrResidual> {
    let spec = region.with_spacing(h)?;
    if spec.nx < 3 || spec.ny < 3 {
        return Err(Error::GridTooSmall { nx: spec.nx, ny: spec.ny, min: 3 });
    }
    let (s, sign4) = match p.constants() {
        Constants::Hyperbolic(hc) => (hc.m, -1.0),
        Constants::Elliptic(ec) => (ec.mu, 1.0),
    };

    let comps: Vec<[f64; 4]> = {
        let mut v = Vec::with_capacity(spec.nx * spec.ny);
        for i in 0..spec.nx {
            for j in 0..spec.ny {
                v.push(sampler(spec.x(i), spec.y(j)).to_array());
            }
        }
        v
    };
    let ny = spec.ny;
    let hx = spec.hx();
    let hy = spec.hy();
    let dx = |i: usize, j: usize, k: usize| {
        (comps[(i + 1) * ny + j][k] - comps[(i - 1) * ny + j][k]) / (2.0 * hx)
    };
    let dy = |i: usize, j: usize, k: usize| {
        (comps[i * ny + j + 1][k] - comps[i * ny + j - 1][k]) / (2.0 * hy)
    };

    // geometry carrier for ResidualGrid
    let like = ScalarGrid::from_fn(&spec, |_, _| 0.0);
    let eq = |which: usize| {
        ResidualGrid::from_fn(&like, 1, |i, j| match which {
            0 => dy(i, j, 0) - dx(i, j, 2),
            1 => dy(i, j, 1) - dx(i, j, 3),
            2 => dy(i, j, 2) - (dx(i, j, 0) - s * dx(i, j, 3)),
            _ => dy(i, j, 3) - (dx(i, j, 1) + sign4 * s * dx(i, j, 2)),
        })
    };
    Ok(CrResidual {
        equations: [eq(0), eq(1), eq(2), eq(3)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_params;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_split_examples() {
        let id = Profile1D::monomial(1);
        assert_eq!(eval_split(&SplitAnalytic::new(id.clone(), id.clone()), 3.0, 1.0), (3.0, 1.0));
        let one = Profile1D::polynomial([1.0]);
        let sa = SplitAnalytic::new(one.clone(), one);
        for &(x, y) in &[(0.0, 0.0), (1.5, -2.0), (-3.0, 7.0)] {
            assert_eq!(eval_split(&sa, x, y), (1.0, 0.0));
        }
        let sq = SplitAnalytic::new(Profile1D::monomial(2), Profile1D::zero());
        assert_eq!(eval_split(&sq, 1.0, 1.0), (2.0, 2.0));
    }

    #[test]
    fn profile_derivatives_match_finite_differences() {
        let profiles = [
            Profile1D::polynomial([1.0, -2.0, 0.5, 3.0, -1.0, 0.25]),
            Profile1D::sine(1.3, 2.1, 0.4),
            Profile1D::exponential(0.7, -1.2),
            Profile1D::gaussian(2.0, 0.3, 0.8),
        ];
        let h = 1e-3;
        for pr in &profiles {
            for &t in &[-0.9, 0.0, 0.45, 1.3] {
                for order in 1..=4u32 {
                    // central difference of the next-lower exact derivative
                    let fd = (pr.derivative(t + h, order - 1) - pr.derivative(t - h, order - 1))
                        / (2.0 * h);
                    let exact = pr.derivative(t, order);
                    assert!(
                        (fd - exact).abs() < 1e-4 * exact.abs().max(1.0),
                        "{pr:?} t={t} order={order}: {fd} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn polynomial_derivatives_are_exact() {
        // p = 2 - t + 3t^3 + t^4
        let p = Profile1D::polynomial([2.0, -1.0, 0.0, 3.0, 1.0]);
        assert_eq!(p.derivative(2.0, 0), 2.0 - 2.0 + 24.0 + 16.0);
        assert_eq!(p.derivative(2.0, 1), -1.0 + 36.0 + 32.0);
        assert_eq!(p.derivative(2.0, 2), 36.0 + 48.0);
        assert_eq!(p.derivative(2.0, 3), 18.0 + 48.0);
        assert_eq!(p.derivative(2.0, 4), 24.0);
        assert_eq!(p.derivative(2.0, 5), 0.0);
    }

    #[test]
    fn complex_analytic_satisfies_cauchy_riemann() {
        let funcs = [
            ComplexAnalytic::polynomial([c(1.0, 0.5), c(0.0, -1.0), c(0.3, 0.2), c(-0.5, 1.0)]),
            ComplexAnalytic::ScaledExp { a: c(0.7, -0.4) },
            ComplexAnalytic::ScaledSine { a: c(1.1, 0.3) },
        ];
        let z = c(0.4, -0.6);
        for h in [1e-2, 5e-3] {
            for f in &funcs {
                let dfdx = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
                let dfdy = (f.eval(z + c(0.0, h)) - f.eval(z - c(0.0, h))) / (2.0 * h);
                // u_x = v_y, u_y = -v_x  <=>  df/dy = i df/dx
                let res = (dfdy - Complex64::i() * dfdx).norm();
                assert!(res < 1e-3, "{f:?}: {res}");
                assert!((dfdx - f.derivative(z, 1)).norm() < 1e-3);
            }
        }
    }

    #[test]
    fn hyper_components_examples() {
        let p = make_params(5.0).unwrap();
        let one = Profile1D::polynomial([1.0]);
        let konst = SplitAnalytic::new(one.clone(), one);
        let g = monogenic_components_hyper(&konst, &konst, &p, 0.3, -0.8).unwrap();
        assert!((g.u1 - 1.0).abs() < 1e-15 && g.u2.abs() < 1e-15);
        assert!(g.u3.abs() < 1e-15 && g.u4.abs() < 1e-15);

        let alpha = SplitAnalytic::new(Profile1D::monomial(1), Profile1D::zero());
        let g = monogenic_components_hyper(&alpha, &SplitAnalytic::default(), &p, 1.0, 0.0).unwrap();
        assert!((g.u1 - 0.0458759).abs() < 1e-7 && (g.u2 - 0.0458759).abs() < 1e-7);
        assert!((g.u3 + 0.1443376).abs() < 1e-7 && (g.u4 + 0.1443376).abs() < 1e-7);

        let q = make_params(0.5).unwrap();
        assert!(monogenic_components_hyper(&alpha, &alpha, &q, 0.0, 0.0).is_err());
    }

    #[test]
    fn elliptic_components_examples() {
        let p = make_params(0.5).unwrap();
        let one = ComplexAnalytic::polynomial([c(1.0, 0.0)]);
        let g = monogenic_components_elliptic(&one, &one, &p, -0.2, 0.9).unwrap();
        assert!((g.u1 - 1.0).abs() < 1e-15 && g.u2.abs() < 1e-15);
        assert!(g.u3.abs() < 1e-15 && g.u4.abs() < 1e-15);

        let id = ComplexAnalytic::monomial(1);
        let g = monogenic_components_elliptic(&id, &ComplexAnalytic::zero(), &p, 1.0, 0.0).unwrap();
        let expect = [0.5, -0.2886751, 0.5773503, 0.0];
        for (a, b) in g.to_array().iter().zip(expect) {
            assert!((a - b).abs() < 1e-7, "{g:?}");
        }
        let q = make_params(2.0).unwrap();
        assert!(monogenic_components_elliptic(&id, &id, &q, 0.0, 0.0).is_err());
    }

    #[test]
    fn basis_change_recovers_alpha_and_beta() {
        let p = make_params(5.0).unwrap();
        let h = *p.hyperbolic().unwrap();
        let alpha = SplitAnalytic::new(Profile1D::sine(1.0, 1.3, 0.2), Profile1D::gaussian(0.5, 0.1, 0.7));
        let beta = SplitAnalytic::new(Profile1D::exponential(0.4, 0.6), Profile1D::polynomial([0.0, 1.0, -2.0]));
        for &(x, y) in &[(0.1, 0.2), (-0.7, 0.9), (0.5, -0.4)] {
            let g = monogenic_components_hyper(&alpha, &beta, &p, x, y).unwrap();
            let (a1, a2) = eval_split(&alpha, x, -h.k2 / SQRT_2 * y);
            let (b1, b2) = eval_split(&beta, x, h.k1 / SQRT_2 * y);
            let r = |k: f64| k / SQRT_2;
            assert!((g.u1 - r(h.k2) * g.u4 - a1).abs() < 1e-10);
            assert!((g.u2 - r(h.k2) * g.u3 - a2).abs() < 1e-10);
            assert!((g.u1 + r(h.k1) * g.u4 - b1).abs() < 1e-10);
            assert!((g.u2 + r(h.k1) * g.u3 - b2).abs() < 1e-10);
        }
    }

    #[test]
    fn cr_constant_and_negative_control() {
        let p = make_params(5.0).unwrap();
        let r = cr_residual(|_, _| ComponentVector::new(1.0, 2.0, 3.0, 4.0), &p, &Rect::unit_square(), 0.1)
            .unwrap();
        assert_eq!(r.max_abs(), 0.0);
        let r = cr_residual(|_, y| ComponentVector::new(y, 0.0, 0.0, 0.0), &p, &Rect::unit_square(), 0.1)
            .unwrap();
        assert!(r.equations[0].values().iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert!(matches!(
            cr_residual(|_, _| ComponentVector::default(), &p, &Rect::new(0.0, 0.1, 0.0, 1.0), 0.1),
            Err(Error::GridTooSmall { .. })
        ));
    }

    #[test]
    fn cr_residual_converges_for_monogenic_functions() {
        let region = Rect::new(-0.5, 0.5, -0.5, 0.5);
        let p = make_params(5.0).unwrap();
        let alpha = SplitAnalytic::new(Profile1D::sine(1.0, 0.8, 0.3), Profile1D::exponential(0.3, 0.5));
        let beta = SplitAnalytic::new(Profile1D::gaussian(1.0, 0.2, 0.9), Profile1D::sine(0.5, 1.7, 0.0));
        let sampler = |x, y| monogenic_components_hyper(&alpha, &beta, &p, x, y).unwrap();
        let coarse = cr_residual(sampler, &p, &region, 0.02).unwrap().max_abs();
        let fine = cr_residual(sampler, &p, &region, 0.01).unwrap().max_abs();
        let ratio = coarse / fine;
        assert!((2.5..=6.0).contains(&ratio), "ratio {ratio}");

        let q = make_params(0.5).unwrap();
        let a = ComplexAnalytic::ScaledSine { a: c(0.9, 0.2) };
        let b = ComplexAnalytic::polynomial([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.2, -0.3)]);
        let sampler = |x, y| monogenic_components_elliptic(&a, &b, &q, x, y).unwrap();
        let coarse = cr_residual(sampler, &q, &region, 0.02).unwrap().max_abs();
        let fine = cr_residual(sampler, &q, &region, 0.01).unwrap().max_abs();
        let ratio = coarse / fine;
        assert!((2.5..=6.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn split_pair_solves_wave_equation() {
        let sa = SplitAnalytic::new(Profile1D::sine(1.0, 1.4, 0.1), Profile1D::gaussian(1.0, -0.2, 0.6));
        let (x, y1) = (0.3, -0.4);
        let wave = |h: f64| {
            let f = |a: f64, b: f64| eval_split(&sa, a, b);
            let mut out = [0.0f64; 2];
            for k in 0..2 {
                let g = |a: f64, b: f64| if k == 0 { f(a, b).0 } else { f(a, b).1 };
                let xx = (g(x + h, y1) - 2.0 * g(x, y1) + g(x - h, y1)) / (h * h);
                let yy = (g(x, y1 + h) - 2.0 * g(x, y1) + g(x, y1 - h)) / (h * h);
                out[k] = (xx - yy).abs();
            }
            out[0].max(out[1])
        };
        // Shifting x or y1 by h samples the same points of p and q, so the
        // discrete wave operator vanishes up to rounding for every h.
        for h in [0.1, 0.02, 0.01] {
            assert!(wave(h) * h * h < 1e-14, "h = {h}: {}", wave(h));
        }
    }

    #[test]
    fn profile_serde_shape() {
        let p: Profile1D = serde_json::from_str(r#"{"kind":"sine","amplitude":1,"frequency":2}"#).unwrap();
        assert_eq!(p, Profile1D::sine(1.0, 2.0, 0.0));
        let a: ComplexAnalytic =
            serde_json::from_str(r#"{"kind":"scaled_exp","a":[1.0,0.5]}"#).unwrap();
        assert_eq!(a, ComplexAnalytic::ScaledExp { a: c(1.0, 0.5) });
        assert!(serde_json::from_str::<Profile1D>(r#"{"kind":"cosine"}"#).is_err());
    }
}
