//! Uniform sample grids and residual grids.
//!
//! Values are stored row-major with `y` varying fastest: the sample at
//! `(x0 + i hx, y0 + j hy)` lives at `values[i * ny + j]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub const fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    pub const fn unit_square() -> Self {
        Self::new(-1.0, 1.0, -1.0, 1.0)
    }

    /// Grid over this rectangle with spacing `h` (as close as an integer
    /// number of steps allows) on both axes.
    pub fn with_spacing(&self, h: f64) -> Result<GridSpec> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        let steps = |a: f64, b: f64| ((b - a) / h + 1e-9).floor() as usize;
        let sx = steps(self.x0, self.x1);
        let sy = steps(self.y0, self.y1);
        Ok(GridSpec {
            x0: self.x0,
            x1: self.x0 + sx as f64 * h,
            nx: sx + 1,
            y0: self.y0,
            y1: self.y0 + sy as f64 * h,
            ny: sy + 1,
        })
    }
}

/// Geometry of a uniform grid: bounds and point counts per axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x0: f64,
    pub x1: f64,
    pub nx: usize,
    pub y0: f64,
    pub y1: f64,
    pub ny: usize,
}

impl GridSpec {
    pub fn validate(&self, min_points: usize) -> Result<()> {
        for v in [self.x0, self.x1, self.y0, self.y1] {
            if !v.is_finite() {
                return Err(Error::InvalidGrid("grid bounds must be finite".into()));
            }
        }
        if !(self.x1 > self.x0) || !(self.y1 > self.y0) {
            return Err(Error::InvalidGrid(format!(
                "grid bounds must be ordered: x0 < x1 and y0 < y1 (got [{}, {}] x [{}, {}])",
                self.x0, self.x1, self.y0, self.y1
            )));
        }
        if self.nx < min_points || self.ny < min_points {
            return Err(Error::GridTooSmall {
                nx: self.nx,
                ny: self.ny,
                min: min_points,
            });
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        (self.x1 - self.x0) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y1 - self.y0) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.hy()
    }

    /// Same bounds, spacing divided by `2^levels`.
    pub fn refined(&self, levels: u32) -> Self {
        let k = 1usize << levels;
        Self {
            nx: (self.nx - 1) * k + 1,
            ny: (self.ny - 1) * k + 1,
            ..*self
        }
    }
}

/// Samples of a scalar field on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarGrid {
    pub x0: f64,
    pub y0: f64,
    pub hx: f64,
    pub hy: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl ScalarGrid {
    pub fn new(
        x0: f64,
        y0: f64,
        hx: f64,
        hy: f64,
        nx: usize,
        ny: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        if !(hx > 0.0 && hy > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "spacings must be positive, got hx={hx}, hy={hy}"
            )));
        }
        if values.len() != nx * ny {
            return Err(Error::InvalidGrid(format!(
                "expected {} values for a {nx}x{ny} grid, got {}",
                nx * ny,
                values.len()
            )));
        }
        Ok(Self { x0, y0, hx, hy, nx, ny, values })
    }

    /// Samples `f` at every point of `spec`.
    pub fn from_fn(spec: &GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let (hx, hy) = (spec.hx(), spec.hy());
        let mut values = Vec::with_capacity(spec.nx * spec.ny);
        for i in 0..spec.nx {
            let x = spec.x0 + i as f64 * hx;
            for j in 0..spec.ny {
                values.push(f(x, spec.y0 + j as f64 * hy));
            }
        }
        Self {
            x0: spec.x0,
            y0: spec.y0,
            hx,
            hy,
            nx: spec.nx,
            ny: spec.ny,
            values,
        }
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec {
            x0: self.x0,
            x1: self.x(self.nx - 1),
            nx: self.nx,
            y0: self.y0,
            y1: self.y(self.ny - 1),
            ny: self.ny,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ny + j]
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.hy
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    pub(crate) fn require(&self, min: usize) -> Result<()> {
        if self.nx < min || self.ny < min {
            return Err(Error::GridTooSmall { nx: self.nx, ny: self.ny, min });
        }
        Ok(())
    }

    /// Every other point on both axes (spacing doubled).
    pub fn coarsened(&self) -> Result<Self> {
        if self.nx.is_multiple_of(2) || self.ny.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "coarsening needs odd point counts, got {}x{}",
                self.nx, self.ny
            )));
        }
        let nx = self.nx.div_ceil(2);
        let ny = self.ny.div_ceil(2);
        let mut values = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                values.push(self.at(2 * i, 2 * j));
            }
        }
        Self::new(self.x0, self.y0, 2.0 * self.hx, 2.0 * self.hy, nx, ny, values)
    }
}

/// Stencil output on the interior of a grid. Points within `margin` of the
/// boundary have no value.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualGrid {
    pub x0: f64,
    pub y0: f64,
    pub hx: f64,
    pub hy: f64,
    pub nx: usize,
    pub ny: usize,
    pub margin: usize,
    interior: Vec<f64>,
}

impl ResidualGrid {
    pub(crate) fn from_fn(
        like: &ScalarGrid,
        margin: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Self {
        let mut interior = Vec::new();
        for i in margin..like.nx - margin {
            for j in margin..like.ny - margin {
                interior.push(f(i, j));
            }
        }
        Self {
            x0: like.x0,
            y0: like.y0,
            hx: like.hx,
            hy: like.hy,
            nx: like.nx,
            ny: like.ny,
            margin,
            interior,
        }
    }

    fn inner_ny(&self) -> usize {
        self.ny - 2 * self.margin
    }

    /// Value at grid index `(i, j)`; `None` inside the boundary margin.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let m = self.margin;
        if i < m || j < m || i + m >= self.nx || j + m >= self.ny {
            return None;
        }
        Some(self.interior[(i - m) * self.inner_ny() + (j - m)])
    }

    /// `(x, y, value)` for every interior point.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let m = self.margin;
        let iny = self.inner_ny();
        self.interior.iter().enumerate().map(move |(k, &v)| {
            let i = k / iny + m;
            let j = k % iny + m;
            (self.x0 + i as f64 * self.hx, self.y0 + j as f64 * self.hy, v)
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.interior
    }

    pub fn max_abs(&self) -> f64 {
        self.interior.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn len(&self) -> usize {
        self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }

    /// Pointwise `self - other`; both must cover the same grid and margin.
    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!((self.nx, self.ny, self.margin), (other.nx, other.ny, other.margin));
        Self {
            interior: self
                .interior
                .iter()
                .zip(&other.interior)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }

    /// Drops `extra` more rows/columns from each side.
    pub fn shrink(&self, extra: usize) -> Self {
        let margin = self.margin + extra;
        let mut interior = Vec::new();
        for i in margin..self.nx - margin {
            for j in margin..self.ny - margin {
                interior.push(self.get(i, j).expect("inside old interior"));
            }
        }
        Self { margin, interior, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_refinement() {
        let s = Rect::unit_square().with_spacing(0.25).unwrap();
        assert_eq!((s.nx, s.ny), (9, 9));
        assert!((s.hx() - 0.25).abs() < 1e-15);
        let r = s.refined(1);
        assert_eq!((r.nx, r.ny), (17, 17));
        assert!((r.hx() - 0.125).abs() < 1e-15);
        let s = Rect::unit_square().with_spacing(0.01).unwrap();
        assert_eq!(s.nx, 201);
    }

    #[test]
    fn residual_margin_access() {
        let g = ScalarGrid::from_fn(&Rect::unit_square().with_spacing(0.5).unwrap(), |x, y| x + y);
        let r = ResidualGrid::from_fn(&g, 1, |i, j| g.at(i, j));
        assert_eq!(r.len(), 9);
        assert_eq!(r.get(0, 2), None);
        assert_eq!(r.get(4, 2), None);
        assert_eq!(r.get(2, 2), Some(0.0));
        assert_eq!(r.get(1, 3), Some(-0.5 + 0.5));
        let s = r.shrink(1);
        assert_eq!(s.len(), 1);
        assert_eq!(s.get(1, 1), None);
    }

    #[test]
    fn coarsen_keeps_even_points() {
        let g = ScalarGrid::from_fn(&Rect::unit_square().with_spacing(0.25).unwrap(), |x, y| x * 10.0 + y);
        let c = g.coarsened().unwrap();
        assert_eq!((c.nx, c.ny), (5, 5));
        assert_eq!(c.at(1, 2), g.at(2, 4));
        assert!((c.hx - 0.5).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        let bad = GridSpec { x0: 1.0, x1: -1.0, nx: 9, y0: -1.0, y1: 1.0, ny: 9 };
        assert!(matches!(bad.validate(5), Err(Error::InvalidGrid(_))));
        let small = GridSpec { x0: -1.0, x1: 1.0, nx: 4, y0: -1.0, y1: 1.0, ny: 4 };
        assert!(matches!(small.validate(5), Err(Error::GridTooSmall { .. })));
    }
}
