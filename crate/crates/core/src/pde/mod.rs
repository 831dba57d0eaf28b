//! The c-biwave operator `u_xxxx - 2c u_xxyy + u_yyyy`, applied exactly to
//! polynomials and by finite differences to sampled fields, plus its
//! factorisation into two rescaled wave operators.

pub mod poly;

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::algebra::AlgebraParams;
use crate::error::Result;
use crate::grid::{ResidualGrid, ScalarGrid};
pub use poly::Poly2D;

/// Minimum points per axis for the fourth-derivative stencils.
pub const MIN_BIWAVE_POINTS: usize = 5;
/// Minimum points per axis for the factored operator.
pub const MIN_FACTORED_POINTS: usize = 9;

/// Exact `u_xxxx - 2c u_xxyy + u_yyyy`.
pub fn biwave_apply_poly(u: &Poly2D, c: f64) -> Poly2D {
    let xxxx = u.derivative(4, 0);
    let xxyy = u.derivative(2, 2).scale(2.0 * c);
    let yyyy = u.derivative(0, 4);
    &(&xxxx - &xxyy) + &yyyy
}

#[inline]
fn d4x(g: &ScalarGrid, i: usize, j: usize) -> f64 {
    let h4 = g.hx.powi(4);
    (g.at(i - 2, j) - 4.0 * g.at(i - 1, j) + 6.0 * g.at(i, j) - 4.0 * g.at(i + 1, j)
        + g.at(i + 2, j))
        / h4
}

#[inline]
fn d4y(g: &ScalarGrid, i: usize, j: usize) -> f64 {
    let h4 = g.hy.powi(4);
    (g.at(i, j - 2) - 4.0 * g.at(i, j - 1) + 6.0 * g.at(i, j) - 4.0 * g.at(i, j + 1)
        + g.at(i, j + 2))
        / h4
}

#[inline]
fn d2x2y(g: &ScalarGrid, i: usize, j: usize) -> f64 {
    const W: [f64; 3] = [1.0, -2.0, 1.0];
    let mut acc = 0.0;
    for (a, wa) in W.iter().enumerate() {
        for (b, wb) in W.iter().enumerate() {
            acc += wa * wb * g.at(i + a - 1, j + b - 1);
        }
    }
    acc / (g.hx * g.hx * g.hy * g.hy)
}

#[inline]
fn d2x(g: &ScalarGrid, i: usize, j: usize) -> f64 {
    (g.at(i - 1, j) - 2.0 * g.at(i, j) + g.at(i + 1, j)) / (g.hx * g.hx)
}

#[inline]
fn d2y(g: &ScalarGrid, i: usize, j: usize) -> f64 {
    (g.at(i, j - 1) - 2.0 * g.at(i, j) + g.at(i, j + 1)) / (g.hy * g.hy)
}

/// Finite-difference biwave residual together with a magnitude scale.
#[derive(Clone, Debug, PartialEq)]
pub struct BiwaveResidual {
    /// Raw residual on the interior (margin 2).
    pub residual: ResidualGrid,
    /// Largest of `|u_xxxx|`, `|2c u_xxyy|`, `|u_yyyy|` over the interior,
    /// floored by `max|u| / L^4` with `L` the longer side of the grid.
    pub scale: f64,
}

impl BiwaveResidual {
    pub fn max_raw(&self) -> f64 {
        self.residual.max_abs()
    }

    pub fn max_scaled(&self) -> f64 {
        let raw = self.max_raw();
        if self.scale > 0.0 {
            raw / self.scale
        } else {
            raw
        }
    }
}

/// Biwave operator by 5-point fourth differences per axis and the tensor
/// product of 3-point second differences for the mixed term.
pub fn biwave_residual_fd(g: &ScalarGrid, c: f64) -> Result<BiwaveResidual> {
    g.require(MIN_BIWAVE_POINTS)?;
    let mut scale = 0.0f64;
    let residual = ResidualGrid::from_fn(g, 2, |i, j| {
        let a = d4x(g, i, j);
        let b = 2.0 * c * d2x2y(g, i, j);
        let d = d4y(g, i, j);
        scale = scale.max(a.abs()).max(b.abs()).max(d.abs());
        a - b + d
    });
    let extent = ((g.nx - 1) as f64 * g.hx).max((g.ny - 1) as f64 * g.hy);
    let floor = g.max_abs() / extent.powi(4);
    Ok(BiwaveResidual {
        residual,
        scale: scale.max(floor),
    })
}

/// Size of the rounding error the biwave stencils can produce on `g`:
/// machine epsilon times `max|u|` times the absolute stencil weights
/// (`16 + 32c + 16`) over `h^4`.
pub fn fd_noise_floor(g: &ScalarGrid, c: f64) -> f64 {
    let h = g.hx.min(g.hy);
    f64::EPSILON * g.max_abs() * (32.0 + 32.0 * c.abs()) / h.powi(4)
}

/// One of the two rescaled wave operators whose product is the biwave operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveFactor {
    /// `d2/dx2 - d2/dy1^2 = d2/dx2 - (2/k2^2) d2/dy2`, annihilates `F(x +- y1)`.
    Y1,
    /// `d2/dx2 - d2/dy2^2 = d2/dx2 - (2/k1^2) d2/dy2`, annihilates `g(x +- y2)`.
    Y2,
}

impl WaveFactor {
    /// Coefficient of `d2/dy2` (with its minus sign dropped).
    pub fn y_coefficient(self, p: &AlgebraParams) -> Result<f64> {
        let h = p.hyperbolic()?;
        Ok(match self {
            WaveFactor::Y1 => 2.0 / (h.k2 * h.k2),
            WaveFactor::Y2 => 2.0 / (h.k1 * h.k1),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    FirstThenSecond,
    SecondThenFirst,
}

fn hyperbolic_params(c: f64) -> Result<AlgebraParams> {
    let p = AlgebraParams::new(c)?;
    p.hyperbolic()?;
    Ok(p)
}

/// Applies one wave factor with 3-point stencils (margin 1).
pub fn apply_wave_factor(g: &ScalarGrid, c: f64, factor: WaveFactor) -> Result<ResidualGrid> {
    g.require(3)?;
    let a = factor.y_coefficient(&hyperbolic_params(c)?)?;
    Ok(ResidualGrid::from_fn(g, 1, |i, j| d2x(g, i, j) - a * d2y(g, i, j)))
}

/// Result of the factored operator and its difference from the direct one.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResidual {
    /// `(factor_b)(factor_a) u` on the interior (margin 2).
    pub factored: ResidualGrid,
    /// `factored - direct` on the same points.
    pub difference: ResidualGrid,
}

/// Applies `Y1` then `Y2` (or the reverse) and compares with the direct
/// five-point biwave stencil. Requires `c > 1`.
pub fn wave_factorization_residual(
    g: &ScalarGrid,
    c: f64,
    order: FactorOrder,
) -> Result<FactorizationResidual> {
    g.require(MIN_FACTORED_POINTS)?;
    let p = hyperbolic_params(c)?;
    let (first, second) = match order {
        FactorOrder::FirstThenSecond => (WaveFactor::Y1, WaveFactor::Y2),
        FactorOrder::SecondThenFirst => (WaveFactor::Y2, WaveFactor::Y1),
    };
    let inner = apply_wave_factor(g, c, first)?;
    let mut values = vec![f64::NAN; g.nx * g.ny];
    for i in 0..g.nx {
        for j in 0..g.ny {
            if let Some(v) = inner.get(i, j) {
                values[i * g.ny + j] = v;
            }
        }
    }
    let mid = ScalarGrid::new(g.x0, g.y0, g.hx, g.hy, g.nx, g.ny, values)?;
    let a = second.y_coefficient(&p)?;
    let factored = ResidualGrid::from_fn(&mid, 2, |i, j| d2x(&mid, i, j) - a * d2y(&mid, i, j));
    let direct = biwave_residual_fd(g, c)?.residual;
    let difference = factored.difference(&direct);
    Ok(FactorizationResidual { factored, difference })
}

/// The four roots of `lambda^4 - 2c lambda^2 + 1 = 0`:
/// `k1/sqrt2, -k1/sqrt2, k2/sqrt2, -k2/sqrt2`. Each gives a plane-wave
/// solution `phi(x + lambda y)`.
pub fn characteristic_roots(p: &AlgebraParams) -> [Complex64; 4] {
    let a = p.k1() / SQRT_2;
    let b = p.k2() / SQRT_2;
    [a, -a, b, -b]
}

/// `lambda^4 - 2c lambda^2 + 1`.
pub fn characteristic_polynomial(lambda: Complex64, c: f64) -> Complex64 {
    let l2 = lambda * lambda;
    l2 * l2 - 2.0 * c * l2 + 1.0
}
