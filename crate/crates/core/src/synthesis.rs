//! Constructive solutions of the c-biwave equation.
//!
//! Every field built here is a finite sum of plane waves `phi(x + lambda y)`
//! with `lambda` a characteristic root, so it can be evaluated pointwise and,
//! when every `phi` is a polynomial, expanded exactly into a [`Poly2D`].

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    elliptic_idempotents, hyper_idempotents, AlgebraParams, Regime,
};
use crate::analytic::{ComplexAnalytic, Profile1D, SplitAnalytic};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Rect, ResidualGrid, ScalarGrid};
use crate::pde::{apply_wave_factor, Poly2D, WaveFactor};

/// Anything that can be sampled as a real field on the plane.
pub trait ScalarField {
    fn value(&self, x: f64, y: f64) -> f64;

    fn sample(&self, spec: &GridSpec) -> ScalarGrid {
        ScalarGrid::from_fn(spec, |x, y| self.value(x, y))
    }
}

impl<F: Fn(f64, f64) -> f64> ScalarField for F {
    fn value(&self, x: f64, y: f64) -> f64 {
        self(x, y)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WaveTerm {
    /// `weight * profile(x + slope * y)`
    Real {
        weight: f64,
        slope: f64,
        profile: Profile1D,
    },
    /// `Re(weight * func(x + slope * y))`
    Complex {
        weight: Complex64,
        slope: Complex64,
        func: ComplexAnalytic,
    },
}

impl WaveTerm {
    fn value(&self, x: f64, y: f64) -> f64 {
        match self {
            WaveTerm::Real { weight, slope, profile } => weight * profile.eval(x + slope * y),
            WaveTerm::Complex { weight, slope, func } => (weight * func.eval(x + slope * y)).re,
        }
    }

    fn to_poly(&self) -> Option<Result<Poly2D>> {
        match self {
            WaveTerm::Real { weight, slope, profile } => profile.as_polynomial().map(|c| {
                let scaled: Vec<f64> = c.iter().map(|v| v * weight).collect();
                Poly2D::from_linear_composition(&scaled, 1.0, *slope)
            }),
            WaveTerm::Complex { weight, slope, func } => func
                .as_polynomial()
                .map(|c| Poly2D::from_complex_composition(c, *slope, *weight)),
        }
    }
}

/// Sum of plane waves.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlaneWaveField {
    pub terms: Vec<WaveTerm>,
}

impl PlaneWaveField {
    pub fn new(terms: Vec<WaveTerm>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|t| t.value(x, y)).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| match t {
            WaveTerm::Real { profile, .. } => profile.as_polynomial().is_some(),
            WaveTerm::Complex { func, .. } => func.as_polynomial().is_some(),
        })
    }

    /// Exact polynomial expansion; `None` if some term is transcendental.
    pub fn to_poly(&self) -> Option<Result<Poly2D>> {
        let mut acc = Poly2D::zero();
        for t in &self.terms {
            match t.to_poly()? {
                Ok(p) => acc = &acc + &p,
                Err(e) => return Some(Err(e)),
            }
        }
        Some(Ok(acc))
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }
}

impl ScalarField for PlaneWaveField {
    fn value(&self, x: f64, y: f64) -> f64 {
        self.eval(x, y)
    }
}

/// Profiles for the hyperbolic general solution
/// `g1(x + y2) + g2(x - y2) + kappa (F1(x + y1) + F2(x - y1))`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperbolicSolutionSpec {
    #[serde(default)]
    pub g1: Profile1D,
    #[serde(default)]
    pub g2: Profile1D,
    #[serde(default, rename = "F1", alias = "f1")]
    pub f1: Profile1D,
    #[serde(default, rename = "F2", alias = "f2")]
    pub f2: Profile1D,
}

impl HyperbolicSolutionSpec {
    pub fn validate(&self) -> Result<()> {
        for p in [&self.g1, &self.g2, &self.f1, &self.f2] {
            p.validate()?;
        }
        Ok(())
    }
}

fn default_selector() -> u8 {
    1
}

/// Analytic functions and component selectors for the elliptic solution
/// `component_i(alpha(w1)) + component_j(beta(w2))`; selector 1 takes the
/// real part, 2 the imaginary part.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticSolutionSpec {
    #[serde(default)]
    pub alpha: ComplexAnalytic,
    #[serde(default)]
    pub beta: ComplexAnalytic,
    #[serde(default = "default_selector")]
    pub i: u8,
    #[serde(default = "default_selector")]
    pub j: u8,
}

impl EllipticSolutionSpec {
    pub fn new(alpha: ComplexAnalytic, beta: ComplexAnalytic, i: u8, j: u8) -> Self {
        Self { alpha, beta, i, j }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, s) in [("i", self.i), ("j", self.j)] {
            if !(1..=2).contains(&s) {
                return Err(Error::InvalidParameter(format!(
                    "component selector {name} must be 1 or 2, got {s}"
                )));
            }
        }
        self.alpha.validate()?;
        self.beta.validate()
    }
}

/// Either kind of solution description, tagged by `"type"` when serialised.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SolutionSpec {
    Hyperbolic(HyperbolicSolutionSpec),
    Elliptic(EllipticSolutionSpec),
}

impl SolutionSpec {
    pub fn regime(&self) -> Regime {
        match self {
            SolutionSpec::Hyperbolic(_) => Regime::Hyperbolic,
            SolutionSpec::Elliptic(_) => Regime::Elliptic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SolutionSpec::Hyperbolic(s) => s.validate(),
            SolutionSpec::Elliptic(s) => s.validate(),
        }
    }

    pub fn synthesize(&self, c: f64) -> Result<PlaneWaveField> {
        match self {
            SolutionSpec::Hyperbolic(s) => synth_hyperbolic(s, c),
            SolutionSpec::Elliptic(s) => synth_elliptic(s, c),
        }
    }
}

/// `k1^2 / (k1^2 - k2^2)`, computed as `-k1^2 / (4 sqrt(c^2 - 1))`.
pub fn kappa(p: &AlgebraParams) -> Result<f64> {
    let h = p.hyperbolic()?;
    let c = p.c();
    Ok(-h.k1 * h.k1 / (4.0 * ((c - 1.0) * (c + 1.0)).sqrt()))
}

fn real_term(weight: f64, slope: f64, profile: &Profile1D) -> Option<WaveTerm> {
    if weight == 0.0 || profile.is_zero() {
        return None;
    }
    Some(WaveTerm::Real {
        weight,
        slope,
        profile: profile.clone(),
    })
}

pub fn synth_hyperbolic(spec: &HyperbolicSolutionSpec, c: f64) -> Result<PlaneWaveField> {
    let p = AlgebraParams::new(c)?;
    let h = *p.hyperbolic()?;
    let k = kappa(&p)?;
    // y2 = (k1/sqrt2) y, y1 = -(k2/sqrt2) y
    let s2 = h.k1 / SQRT_2;
    let s1 = -h.k2 / SQRT_2;
    let terms = [
        real_term(1.0, s2, &spec.g1),
        real_term(1.0, -s2, &spec.g2),
        real_term(k, s1, &spec.f1),
        real_term(k, -s1, &spec.f2),
    ];
    Ok(PlaneWaveField::new(terms.into_iter().flatten().collect()))
}

fn selector_weight(sel: u8) -> Complex64 {
    // Re(z) for 1, Im(z) = Re(-i z) for 2
    if sel == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, -1.0)
    }
}

pub fn synth_elliptic(spec: &EllipticSolutionSpec, c: f64) -> Result<PlaneWaveField> {
    spec.validate()?;
    let p = AlgebraParams::new(c)?;
    let e = *p.elliptic()?;
    let terms = vec![
        WaveTerm::Complex {
            weight: selector_weight(spec.i),
            slope: e.k2 / SQRT_2,
            func: spec.alpha.clone(),
        },
        WaveTerm::Complex {
            weight: selector_weight(spec.j),
            slope: -e.k1 / SQRT_2,
            func: spec.beta.clone(),
        },
    ];
    Ok(PlaneWaveField::new(terms))
}

/// Residual of `(d2/dx2 - (2/k1^2) d2/dy2) U - (f1(x + y1) + f2(x - y1))` for
/// `U = kappa (F1(x + y1) + F2(x - y1))` and `f_k = F_k''`, on a grid over
/// `region` with spacing `h` (margin 1).
pub fn partial_solution_residual(
    f1: &Profile1D,
    f2: &Profile1D,
    c: f64,
    region: &Rect,
    h: f64,
) -> Result<ResidualGrid> {
    let p = AlgebraParams::new(c)?;
    let hc = *p.hyperbolic()?;
    let k = kappa(&p)?;
    let s1 = -hc.k2 / SQRT_2;
    let spec = region.with_spacing(h)?;
    spec.validate(3)?;
    let u = ScalarGrid::from_fn(&spec, |x, y| k * (f1.eval(x + s1 * y) + f2.eval(x - s1 * y)));
    let lhs = apply_wave_factor(&u, c, WaveFactor::Y2)?;
    let target = ScalarGrid::from_fn(&spec, |x, y| {
        f1.derivative(x + s1 * y, 2) + f2.derivative(x - s1 * y, 2)
    });
    let rhs = ResidualGrid::from_fn(&target, 1, |i, j| target.at(i, j));
    Ok(lhs.difference(&rhs))
}

/// `alpha`, `beta` for a monogenic function in either regime.
#[derive(Clone, Debug, PartialEq)]
pub enum MonogenicSpec {
    Hyperbolic { alpha: SplitAnalytic, beta: SplitAnalytic },
    Elliptic { alpha: ComplexAnalytic, beta: ComplexAnalytic },
}

/// Component `k` (1..=4) of the monogenic function `alpha i1 + beta i2`
/// (or `alpha I- + beta I+`), as a plane-wave field.
pub fn solution_components_from_monogenic(
    p: &AlgebraParams,
    spec: &MonogenicSpec,
    k: usize,
) -> Result<PlaneWaveField> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "component selector must be in 1..=4, got {k}"
        )));
    }
    match spec {
        MonogenicSpec::Hyperbolic { alpha, beta } => {
            let h = *p.hyperbolic()?;
            let (i1, i2) = hyper_idempotents(p)?;
            // alpha1 = (p + q)/2, alpha2 = (p - q)/2 on (x + y1, x - y1);
            // u1 = a1 alpha1 + a2 beta1, u2 = a1 alpha2 + a2 beta2,
            // u3 = b1 alpha2 + b2 beta2, u4 = b1 alpha1 + b2 beta1.
            let (wa, wb, sign) = match k {
                1 => (i1.cu, i2.cu, 1.0),
                2 => (i1.cu, i2.cu, -1.0),
                3 => (i1.cfe, i2.cfe, -1.0),
                _ => (i1.cfe, i2.cfe, 1.0),
            };
            let s1 = -h.k2 / SQRT_2;
            let s2 = h.k1 / SQRT_2;
            let terms = [
                real_term(wa / 2.0, s1, &alpha.p),
                real_term(sign * wa / 2.0, -s1, &alpha.q),
                real_term(wb / 2.0, s2, &beta.p),
                real_term(sign * wb / 2.0, -s2, &beta.q),
            ];
            Ok(PlaneWaveField::new(terms.into_iter().flatten().collect()))
        }
        MonogenicSpec::Elliptic { alpha, beta } => {
            let e = *p.elliptic()?;
            let (minus, plus) = elliptic_idempotents(p)?;
            // u1 + i u2 = a- alpha + a+ beta, u3 + i u4 = b- alpha + b+ beta
            let (wa, wb) = if k <= 2 {
                (minus.cu, plus.cu)
            } else {
                (minus.ce, plus.ce)
            };
            let rot = if k % 2 == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, -1.0)
            };
            Ok(PlaneWaveField::new(vec![
                WaveTerm::Complex {
                    weight: rot * wa,
                    slope: e.k2 / SQRT_2,
                    func: alpha.clone(),
                },
                WaveTerm::Complex {
                    weight: rot * wb,
                    slope: -e.k1 / SQRT_2,
                    func: beta.clone(),
                },
            ]))
        }
    }
}
