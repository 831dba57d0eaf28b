//! The two commutative associative algebras attached to the c-biwave operator.
//!
//! For `c > 1` the algebra is four-dimensional over the reals with basis
//! `u, f, e, fe`; for `0 < c < 1` it is two-dimensional over the complex
//! numbers with basis `u, e`. In both cases `u` and `e` satisfy
//! `u^4 - 2c u^2 e^2 + e^4 = 0`, which is what ties the algebra to the PDE.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from `c = 1` below which parameters are rejected.
pub const DEGENERATE_THRESHOLD: f64 = 1e-9;
/// Distance from `c = 1` below which a conditioning warning is logged.
pub const CONDITIONING_WARN_THRESHOLD: f64 = 1e-3;
/// Default tolerance for coordinate-wise element comparison.
pub const ELEMENT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `c > 1`
    Hyperbolic,
    /// `0 < c < 1`
    Elliptic,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Hyperbolic => f.write_str("hyperbolic"),
            Regime::Elliptic => f.write_str("elliptic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicConstants {
    /// `sqrt(2(c - 1))`, the structure constant in `e^2 = u - m fe`.
    pub m: f64,
    pub k1: f64,
    pub k2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticConstants {
    /// `sqrt(2(1 - c))`, the structure constant in `e^2 = u + i mu e`.
    pub mu: f64,
    pub k1: Complex64,
    pub k2: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Constants {
    Hyperbolic(HyperbolicConstants),
    Elliptic(EllipticConstants),
}

/// One instance of the algebra: the parameter `c` and everything derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraParams {
    c: f64,
    constants: Constants,
}

impl AlgebraParams {
    /// Builds the algebra for `c`. Rejects `c <= 0`, non-finite `c`, and `c`
    /// within [`DEGENERATE_THRESHOLD`] of 1.
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "c must be a finite positive real, got {c}"
            )));
        }
        let gap = (c - 1.0).abs();
        if gap < DEGENERATE_THRESHOLD {
            return Err(Error::DegenerateParameter { c });
        }
        if gap < CONDITIONING_WARN_THRESHOLD {
            log::warn!(
                "c = {c} is within {CONDITIONING_WARN_THRESHOLD} of 1; \
                 the synthesis coefficient k1^2/(k1^2 - k2^2) is ill-conditioned"
            );
        }

        let sp = (c + 1.0).sqrt();
        let constants = if c > 1.0 {
            let sm = (c - 1.0).sqrt();
            let k2 = sp + sm;
            // sp - sm cancels badly for large c; k1 k2 = 2 exactly.
            let k1 = 2.0 / k2;
            Constants::Hyperbolic(HyperbolicConstants {
                m: (2.0 * (c - 1.0)).sqrt(),
                k1,
                k2,
            })
        } else {
            let sm = (1.0 - c).sqrt();
            Constants::Elliptic(EllipticConstants {
                mu: (2.0 * (1.0 - c)).sqrt(),
                k1: Complex64::new(sp, -sm),
                k2: Complex64::new(sp, sm),
            })
        };
        Ok(AlgebraParams { c, constants })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn regime(&self) -> Regime {
        match self.constants {
            Constants::Hyperbolic(_) => Regime::Hyperbolic,
            Constants::Elliptic(_) => Regime::Elliptic,
        }
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn hyperbolic(&self) -> Result<&HyperbolicConstants> {
        match &self.constants {
            Constants::Hyperbolic(h) => Ok(h),
            Constants::Elliptic(_) => Err(Error::WrongRegime {
                expected: Regime::Hyperbolic,
                found: Regime::Elliptic,
            }),
        }
    }

    pub fn elliptic(&self) -> Result<&EllipticConstants> {
        match &self.constants {
            Constants::Elliptic(e) => Ok(e),
            Constants::Hyperbolic(_) => Err(Error::WrongRegime {
                expected: Regime::Elliptic,
                found: Regime::Hyperbolic,
            }),
        }
    }

    /// `k1` as a complex number, whatever the regime.
    pub fn k1(&self) -> Complex64 {
        match self.constants {
            Constants::Hyperbolic(h) => Complex64::new(h.k1, 0.0),
            Constants::Elliptic(e) => e.k1,
        }
    }

    /// `k2` as a complex number, whatever the regime.
    pub fn k2(&self) -> Complex64 {
        match self.constants {
            Constants::Hyperbolic(h) => Complex64::new(h.k2, 0.0),
            Constants::Elliptic(e) => e.k2,
        }
    }

    /// The Cayley structure constant: `m` (hyperbolic) or `mu` (elliptic).
    pub fn structure_constant(&self) -> f64 {
        match self.constants {
            Constants::Hyperbolic(h) => h.m,
            Constants::Elliptic(e) => e.mu,
        }
    }

    /// Copy of these parameters with the Cayley structure constant scaled by
    /// `1 + rel`, leaving `c`, `k1`, `k2` untouched. Fault-injection hook for
    /// the self-test; the result is not a valid algebra for the PDE.
    #[doc(hidden)]
    pub fn with_perturbed_cayley(mut self, rel: f64) -> Self {
        match &mut self.constants {
            Constants::Hyperbolic(h) => h.m *= 1.0 + rel,
            Constants::Elliptic(e) => e.mu *= 1.0 + rel,
        }
        self
    }
}

/// `make_params` under its operational name.
pub fn make_params(c: f64) -> Result<AlgebraParams> {
    AlgebraParams::new(c)
}

fn approx_coords(a: &[f64], b: &[f64], tol: f64) -> bool {
    let scale = a
        .iter()
        .chain(b.iter())
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * scale)
}

// ---------------------------------------------------------------------------
// Hyperbolic algebra
// ---------------------------------------------------------------------------

/// Element `cu u + cf f + ce e + cfe fe` of the real four-dimensional algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HyperElement {
    pub cu: f64,
    pub cf: f64,
    pub ce: f64,
    pub cfe: f64,
}

impl HyperElement {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const U: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const F: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const E: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const FE: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(cu: f64, cf: f64, ce: f64, cfe: f64) -> Self {
        Self { cu, cf, ce, cfe }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.cu, self.cf, self.ce, self.cfe]
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        approx_coords(&self.to_array(), &other.to_array(), tol)
    }

    /// Product with structure constant `m`; see [`hyper_structure_constants`].
    pub fn mul_with(&self, other: &Self, m: f64) -> Self {
        let table = hyper_structure_constants(m);
        let a = self.to_array();
        let b = other.to_array();
        let mut out = [0.0; 4];
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0.0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let w = ai * bj;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * table[i][j][k];
                }
            }
        }
        Self::from_array(out)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.cu * k, self.cf * k, self.ce * k, self.cfe * k)
    }
}

impl Add for HyperElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.cu + o.cu, self.cf + o.cf, self.ce + o.ce, self.cfe + o.cfe)
    }
}

impl Sub for HyperElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.cu - o.cu, self.cf - o.cf, self.ce - o.ce, self.cfe - o.cfe)
    }
}

impl Neg for HyperElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<f64> for HyperElement {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

/// Structure constants `T[i][j][k]` with `b_i b_j = sum_k T[i][j][k] b_k` on
/// the basis `(u, f, e, fe)`.
///
/// Given: `f^2 = u`, `e^2 = u - m fe`, `fe = ef`. The rest follow from
/// commutativity and associativity: `f fe = e`, `e fe = f - m e`,
/// `fe fe = f^2 e^2 = u - m fe`.
pub fn hyper_structure_constants(m: f64) -> [[[f64; 4]; 4]; 4] {
    const U: [f64; 4] = [1.0, 0.0, 0.0, 0.0];
    const F: [f64; 4] = [0.0, 1.0, 0.0, 0.0];
    const E: [f64; 4] = [0.0, 0.0, 1.0, 0.0];
    const FE: [f64; 4] = [0.0, 0.0, 0.0, 1.0];
    let e_sq = [1.0, 0.0, 0.0, -m];
    let e_fe = [0.0, 1.0, -m, 0.0];
    [
        [U, F, E, FE],
        [F, U, FE, E],
        [E, FE, e_sq, e_fe],
        [FE, E, e_fe, e_sq],
    ]
}

/// Split-complex number `a + f b` with `f^2 = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SplitComplex {
    pub a: f64,
    pub b: f64,
}

impl SplitComplex {
    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn to_element(self) -> HyperElement {
        HyperElement::new(self.a, self.b, 0.0, 0.0)
    }
}

impl Add for SplitComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Mul for SplitComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

pub fn hyper_mul(a: &HyperElement, b: &HyperElement, p: &AlgebraParams) -> Result<HyperElement> {
    let h = p.hyperbolic()?;
    Ok(a.mul_with(b, h.m))
}

// ---------------------------------------------------------------------------
// Elliptic algebra
// ---------------------------------------------------------------------------

/// Element `cu u + ce e` of the complex two-dimensional algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EllipticElement {
    pub cu: Complex64,
    pub ce: Complex64,
}

impl EllipticElement {
    pub const ZERO: Self = Self::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const U: Self = Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    pub const E: Self = Self::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));

    pub const fn new(cu: Complex64, ce: Complex64) -> Self {
        Self { cu, ce }
    }

    /// `u1 + i u2 + e u3 + i e u4`.
    pub fn from_components(v: &crate::analytic::ComponentVector) -> Self {
        Self::new(Complex64::new(v.u1, v.u2), Complex64::new(v.u3, v.u4))
    }

    pub fn to_components(&self) -> crate::analytic::ComponentVector {
        crate::analytic::ComponentVector::new(self.cu.re, self.cu.im, self.ce.re, self.ce.im)
    }

    pub fn to_real_array(&self) -> [f64; 4] {
        [self.cu.re, self.cu.im, self.ce.re, self.ce.im]
    }

    pub fn max_abs(&self) -> f64 {
        self.to_real_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        approx_coords(&self.to_real_array(), &other.to_real_array(), tol)
    }

    /// `(s1 u + t1 e)(s2 u + t2 e) = (s1 s2 + t1 t2) u + (s1 t2 + s2 t1 + i mu t1 t2) e`.
    pub fn mul_with(&self, other: &Self, mu: f64) -> Self {
        let imu = Complex64::new(0.0, mu);
        let tt = self.ce * other.ce;
        Self::new(
            self.cu * other.cu + tt,
            self.cu * other.ce + other.cu * self.ce + imu * tt,
        )
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.cu * k, self.ce * k)
    }
}

impl Add for EllipticElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.cu + o.cu, self.ce + o.ce)
    }
}

impl Sub for EllipticElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.cu - o.cu, self.ce - o.ce)
    }
}

impl Neg for EllipticElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.cu, -self.ce)
    }
}

impl Mul<Complex64> for EllipticElement {
    type Output = Self;
    fn mul(self, k: Complex64) -> Self {
        self.scale(k)
    }
}

pub fn elliptic_mul(
    a: &EllipticElement,
    b: &EllipticElement,
    p: &AlgebraParams,
) -> Result<EllipticElement> {
    let e = p.elliptic()?;
    Ok(a.mul_with(b, e.mu))
}

// ---------------------------------------------------------------------------
// Regime-agnostic element
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    Hyperbolic(HyperElement),
    Elliptic(EllipticElement),
}

impl Element {
    pub fn identity(p: &AlgebraParams) -> Self {
        match p.regime() {
            Regime::Hyperbolic => Element::Hyperbolic(HyperElement::U),
            Regime::Elliptic => Element::Elliptic(EllipticElement::U),
        }
    }

    pub fn basis_e(p: &AlgebraParams) -> Self {
        match p.regime() {
            Regime::Hyperbolic => Element::Hyperbolic(HyperElement::E),
            Regime::Elliptic => Element::Elliptic(EllipticElement::E),
        }
    }

    pub fn zero(p: &AlgebraParams) -> Self {
        match p.regime() {
            Regime::Hyperbolic => Element::Hyperbolic(HyperElement::ZERO),
            Regime::Elliptic => Element::Elliptic(EllipticElement::ZERO),
        }
    }

    pub fn regime(&self) -> Regime {
        match self {
            Element::Hyperbolic(_) => Regime::Hyperbolic,
            Element::Elliptic(_) => Regime::Elliptic,
        }
    }

    /// Real coordinates: `(u, f, e, fe)` or `(Re u, Im u, Re e, Im e)`.
    pub fn real_coords(&self) -> [f64; 4] {
        match self {
            Element::Hyperbolic(h) => h.to_array(),
            Element::Elliptic(e) => e.to_real_array(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.real_coords().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.regime() == other.regime()
            && approx_coords(&self.real_coords(), &other.real_coords(), tol)
    }

    pub fn mul(&self, other: &Self, p: &AlgebraParams) -> Result<Self> {
        match (self, other) {
            (Element::Hyperbolic(a), Element::Hyperbolic(b)) => {
                hyper_mul(a, b, p).map(Element::Hyperbolic)
            }
            (Element::Elliptic(a), Element::Elliptic(b)) => {
                elliptic_mul(a, b, p).map(Element::Elliptic)
            }
            (a, _) => Err(Error::WrongRegime {
                expected: a.regime(),
                found: other.regime(),
            }),
        }
    }

    /// Sum of two elements of the same regime.
    ///
    /// # Panics
    /// If the regimes differ.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Element::Hyperbolic(a), Element::Hyperbolic(b)) => Element::Hyperbolic(*a + *b),
            (Element::Elliptic(a), Element::Elliptic(b)) => Element::Elliptic(*a + *b),
            _ => panic!("cannot add elements of different regimes"),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        match self {
            Element::Hyperbolic(a) => Element::Hyperbolic(a.scale(k)),
            Element::Elliptic(a) => Element::Elliptic(a.scale(Complex64::new(k, 0.0))),
        }
    }
}

// ---------------------------------------------------------------------------
// Idempotents and spectral decomposition
// ---------------------------------------------------------------------------

/// The hyperbolic idempotents
/// `i1 = k1/(k1+k2) u - sqrt2/(k1+k2) fe`, `i2 = k2/(k1+k2) u + sqrt2/(k1+k2) fe`.
pub fn hyper_idempotents(p: &AlgebraParams) -> Result<(HyperElement, HyperElement)> {
    let h = p.hyperbolic()?;
    let s = h.k1 + h.k2;
    let i1 = HyperElement::new(h.k1 / s, 0.0, 0.0, -SQRT_2 / s);
    let i2 = HyperElement::new(h.k2 / s, 0.0, 0.0, SQRT_2 / s);
    Ok((i1, i2))
}

/// The elliptic idempotents
/// `I- = k1/(k1+k2) u + sqrt2/(k1+k2) e`, `I+ = k2/(k1+k2) u - sqrt2/(k1+k2) e`.
pub fn elliptic_idempotents(p: &AlgebraParams) -> Result<(EllipticElement, EllipticElement)> {
    let e = p.elliptic()?;
    let s = e.k1 + e.k2;
    let r2 = Complex64::new(SQRT_2, 0.0);
    let minus = EllipticElement::new(e.k1 / s, r2 / s);
    let plus = EllipticElement::new(e.k2 / s, -r2 / s);
    Ok((minus, plus))
}

/// `(i1, i2)` or `(I-, I+)` depending on the regime.
pub fn idempotents(p: &AlgebraParams) -> (Element, Element) {
    match p.regime() {
        Regime::Hyperbolic => {
            let (a, b) = hyper_idempotents(p).expect("regime checked");
            (Element::Hyperbolic(a), Element::Hyperbolic(b))
        }
        Regime::Elliptic => {
            let (a, b) = elliptic_idempotents(p).expect("regime checked");
            (Element::Elliptic(a), Element::Elliptic(b))
        }
    }
}

/// Rebuilds the basis element `e` from the idempotents:
/// `f (k1/sqrt2) i2 - f (k2/sqrt2) i1` or `(k2/sqrt2) I- - (k1/sqrt2) I+`.
pub fn e_from_idempotents(p: &AlgebraParams) -> Element {
    match *p.constants() {
        Constants::Hyperbolic(h) => {
            let (i1, i2) = hyper_idempotents(p).expect("regime checked");
            let f = HyperElement::F;
            let lhs = f.scale(h.k1 / SQRT_2).mul_with(&i2, h.m);
            let rhs = f.scale(h.k2 / SQRT_2).mul_with(&i1, h.m);
            Element::Hyperbolic(lhs - rhs)
        }
        Constants::Elliptic(e) => {
            let (minus, plus) = elliptic_idempotents(p).expect("regime checked");
            Element::Elliptic(minus.scale(e.k2 / SQRT_2) - plus.scale(e.k1 / SQRT_2))
        }
    }
}

/// `u^4 - 2c u^2 e^2 + e^4`, evaluated with the algebra product. Zero for a
/// correctly built algebra.
pub fn generator_residual(p: &AlgebraParams) -> Element {
    let c = p.c();
    let u = Element::identity(p);
    let e = Element::basis_e(p);
    let mul = |a: &Element, b: &Element| a.mul(b, p).expect("same regime");
    let u2 = mul(&u, &u);
    let u4 = mul(&u2, &u2);
    let e2 = mul(&e, &e);
    let e4 = mul(&e2, &e2);
    let cross = mul(&u2, &e2).scale(-2.0 * c);
    u4.add(&cross).add(&e4)
}

/// Spectral coordinates of `w = x u + y e` on the idempotent basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralCoords {
    /// `w = w1 i1 + w2 i2` with `w1 = x + f y1`, `y1 = -(k2/sqrt2) y`,
    /// and `w2 = x + f y2`, `y2 = (k1/sqrt2) y`.
    Hyperbolic { w1: SplitComplex, w2: SplitComplex },
    /// `w = w1 I- + w2 I+` with `w1 = x + (k2/sqrt2) y`, `w2 = x - (k1/sqrt2) y`.
    Elliptic { w1: Complex64, w2: Complex64 },
}

impl SpectralCoords {
    /// Recombines the coordinates with the idempotents into an element of `B_c`.
    pub fn recompose(&self, p: &AlgebraParams) -> Result<Element> {
        match *self {
            SpectralCoords::Hyperbolic { w1, w2 } => {
                let m = p.hyperbolic()?.m;
                let (i1, i2) = hyper_idempotents(p)?;
                let w = w1.to_element().mul_with(&i1, m) + w2.to_element().mul_with(&i2, m);
                Ok(Element::Hyperbolic(w))
            }
            SpectralCoords::Elliptic { w1, w2 } => {
                let (minus, plus) = elliptic_idempotents(p)?;
                Ok(Element::Elliptic(minus.scale(w1) + plus.scale(w2)))
            }
        }
    }
}

pub fn decompose_w(x: f64, y: f64, p: &AlgebraParams) -> SpectralCoords {
    match *p.constants() {
        Constants::Hyperbolic(h) => SpectralCoords::Hyperbolic {
            w1: SplitComplex::new(x, -h.k2 / SQRT_2 * y),
            w2: SplitComplex::new(x, h.k1 / SQRT_2 * y),
        },
        Constants::Elliptic(e) => SpectralCoords::Elliptic {
            w1: x + e.k2 / SQRT_2 * y,
            w2: x - e.k1 / SQRT_2 * y,
        },
    }
}

// ---------------------------------------------------------------------------
// Elliptic extras: invertibility in B_c, matrix representation, trace form
// ---------------------------------------------------------------------------

/// `s^2 - t^2 + i mu t s`, the determinant of multiplication by `s u + t e`.
pub fn bc_determinant(s: f64, t: f64, p: &AlgebraParams) -> Result<Complex64> {
    let mu = p.elliptic()?.mu;
    Ok(Complex64::new(s * s - t * t, mu * t * s))
}

/// Inverse of `s u + t e` in the elliptic algebra, by Cramer's rule on
/// `s x + t y = 1`, `t x + (s + i mu t) y = 0`.
pub fn invert_in_bc(s: f64, t: f64, p: &AlgebraParams) -> Result<EllipticElement> {
    let mu = p.elliptic()?.mu;
    if s == 0.0 && t == 0.0 {
        return Err(Error::NotInvertible);
    }
    let det = bc_determinant(s, t, p)?;
    let x = Complex64::new(s, mu * t) / det;
    let y = Complex64::new(-t, 0.0) / det;
    Ok(EllipticElement::new(x, y))
}

pub type Matrix2 = [[Complex64; 2]; 2];

/// Regular representation: `u -> I`, `e -> [[0, 1], [1, i mu]]`, extended linearly.
pub fn matrix_rep(a: &EllipticElement, p: &AlgebraParams) -> Result<Matrix2> {
    let mu = p.elliptic()?.mu;
    let imu = Complex64::new(0.0, mu);
    Ok([[a.cu, a.ce], [a.ce, a.cu + imu * a.ce]])
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            *o = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn trace(a: &Matrix2) -> Complex64 {
    a[0][0] + a[1][1]
}

/// Determinant of the Gram matrix of the trace form on `(u, e)`; equals `2(1 + c)`.
pub fn trace_form_det(p: &AlgebraParams) -> Result<Complex64> {
    let tr = |a: &EllipticElement, b: &EllipticElement| -> Result<Complex64> {
        Ok(trace(&matrix_rep(&elliptic_mul(a, b, p)?, p)?))
    };
    let u = EllipticElement::U;
    let e = EllipticElement::E;
    let uu = tr(&u, &u)?;
    let ue = tr(&u, &e)?;
    let ee = tr(&e, &e)?;
    Ok(uu * ee - ue * ue)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn params_c5() {
        let p = make_params(5.0).unwrap();
        assert_eq!(p.regime(), Regime::Hyperbolic);
        let h = p.hyperbolic().unwrap();
        assert!(close(h.m, 2.8284271, 1e-7));
        assert!(close(h.k1, 0.4494897, 1e-7));
        assert!(close(h.k2, 4.4494897, 1e-7));
        assert!(close(h.k1 * h.k2, 2.0, 1e-12));
        assert!(close(h.k1 * h.k1 + h.k2 * h.k2, 20.0, 1e-12));
    }

    #[test]
    #[allow(clippy::approx_constant)] // reference values quoted to 7 digits
    fn params_c_half() {
        let p = make_params(0.5).unwrap();
        assert_eq!(p.regime(), Regime::Elliptic);
        let e = p.elliptic().unwrap();
        assert!(close(e.mu, 1.0, 1e-15));
        assert!(close(e.k1.re, 1.2247449, 1e-7) && close(e.k1.im, -0.7071068, 1e-7));
        assert!(close(e.k2.re, 1.2247449, 1e-7) && close(e.k2.im, 0.7071068, 1e-7));
        assert_eq!(e.k2, e.k1.conj());
        assert!((e.k1 * e.k2 - 2.0).norm() < 1e-12);
    }

    #[test]
    fn params_rejections() {
        assert!(matches!(make_params(1.0), Err(Error::DegenerateParameter { .. })));
        assert!(matches!(make_params(1.0 + 1e-10), Err(Error::DegenerateParameter { .. })));
        assert!(matches!(make_params(0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_params(-2.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_params(f64::NAN), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_params(f64::INFINITY), Err(Error::InvalidParameter(_))));
        assert!(make_params(1.0 + 1e-6).is_ok());
    }

    #[test]
    fn hyper_mul_examples() {
        let p = make_params(5.0).unwrap();
        let x = HyperElement::new(3.0, 2.0, -1.0, 1.0);
        assert_eq!(hyper_mul(&HyperElement::U, &x, &p).unwrap(), x);
        let ee = hyper_mul(&HyperElement::E, &HyperElement::E, &p).unwrap();
        assert!(ee.approx_eq(&HyperElement::new(1.0, 0.0, 0.0, -2.8284271247461903), 1e-12));
        let fefe = hyper_mul(&HyperElement::FE, &HyperElement::FE, &p).unwrap();
        assert!(fefe.approx_eq(&ee, 1e-15));
        let q = make_params(0.5).unwrap();
        assert!(matches!(
            hyper_mul(&x, &x, &q),
            Err(Error::WrongRegime { expected: Regime::Hyperbolic, .. })
        ));
    }

    /// Rebuilds the full table from only `f^2 = u`, `e^2 = u - m fe` and the
    /// rule that a basis product is the ordered product of its generator
    /// letters, then compares against the hard-coded constants.
    #[test]
    fn structure_constants_follow_from_generators() {
        for &m in &[0.0, 1.0, 2.8284271247461903, 4.2] {
            // basis monomial f^a e^b stored at index a + 2b, i.e. (u, f, e, fe)
            let basis = [(0u8, 0u8), (1, 0), (0, 1), (1, 1)];
            let index = |a: u8, b: u8| (a as usize) + 2 * (b as usize);
            let table = hyper_structure_constants(m);
            for (i, &(fa, ea)) in basis.iter().enumerate() {
                for (j, &(fb, eb)) in basis.iter().enumerate() {
                    let fp = fa + fb;
                    let ep = ea + eb;
                    // reduce f^fp e^ep
                    let mut acc = [0.0f64; 4];
                    let f_red = fp % 2;
                    if ep < 2 {
                        acc[index(f_red, ep)] += 1.0;
                    } else {
                        // e^2 = 1 - m f e  -> f^f_red * (1 - m f e)
                        acc[index(f_red, 0)] += 1.0;
                        acc[index((f_red + 1) % 2, 1)] -= m;
                    }
                    for k in 0..4 {
                        assert!(
                            (table[i][j][k] - acc[k]).abs() < 1e-15,
                            "m={m} i={i} j={j} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn basis_products_are_associative() {
        let p = make_params(3.7).unwrap();
        let b = [HyperElement::U, HyperElement::F, HyperElement::E, HyperElement::FE];
        for x in &b {
            for y in &b {
                assert_eq!(
                    hyper_mul(x, y, &p).unwrap(),
                    hyper_mul(y, x, &p).unwrap()
                );
                for z in &b {
                    let l = hyper_mul(&hyper_mul(x, y, &p).unwrap(), z, &p).unwrap();
                    let r = hyper_mul(x, &hyper_mul(y, z, &p).unwrap(), &p).unwrap();
                    assert!(l.approx_eq(&r, 1e-14));
                }
            }
        }
    }

    #[test]
    fn elliptic_mul_examples() {
        let p = make_params(0.5).unwrap();
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let ue = elliptic_mul(&EllipticElement::U, &EllipticElement::E, &p).unwrap();
        assert_eq!(ue, EllipticElement::E);
        let ee = elliptic_mul(&EllipticElement::E, &EllipticElement::E, &p).unwrap();
        assert!(ee.approx_eq(&EllipticElement::new(one, i), 1e-15));
        let a = EllipticElement::new(one, one);
        let b = EllipticElement::new(one - i, i);
        let prod = elliptic_mul(&a, &b, &p).unwrap();
        assert!(prod.approx_eq(&EllipticElement::U, 1e-15));
        let q = make_params(2.0).unwrap();
        assert!(elliptic_mul(&a, &b, &q).is_err());
    }

    #[test]
    fn idempotents_c5() {
        let p = make_params(5.0).unwrap();
        let (i1, i2) = hyper_idempotents(&p).unwrap();
        assert!(close(i1.cu, 0.0917517, 1e-7));
        assert!(close(i1.cfe, -0.2886751, 1e-7));
        assert!(hyper_mul(&i1, &i1, &p).unwrap().approx_eq(&i1, 1e-12));
        assert!(hyper_mul(&i2, &i2, &p).unwrap().approx_eq(&i2, 1e-12));
        assert!((i1 + i2).approx_eq(&HyperElement::U, 1e-15));
        assert!(hyper_mul(&i1, &i2, &p).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn idempotents_both_regimes() {
        for &c in &[0.1, 0.25, 0.5, 0.9, 1.5, 2.0, 5.0, 10.0, 100.0] {
            let p = make_params(c).unwrap();
            let (a, b) = idempotents(&p);
            assert!(a.mul(&a, &p).unwrap().approx_eq(&a, 1e-12), "c={c}");
            assert!(b.mul(&b, &p).unwrap().approx_eq(&b, 1e-12), "c={c}");
            assert!(a.add(&b).approx_eq(&Element::identity(&p), 1e-14), "c={c}");
            assert!(a.mul(&b, &p).unwrap().max_abs() < 1e-12, "c={c}");
        }
    }

    #[test]
    fn e_reconstruction() {
        for &c in &[5.0, 2.0, 0.5, 0.25] {
            let p = make_params(c).unwrap();
            let e = e_from_idempotents(&p);
            assert!(e.approx_eq(&Element::basis_e(&p), 1e-12), "c={c}: {e:?}");
        }
    }

    #[test]
    fn generator_identity() {
        for &c in &[5.0, 0.5, 3.0, 1.01, 0.99, 50.0] {
            let p = make_params(c).unwrap();
            assert!(generator_residual(&p).max_abs() <= 1e-12, "c={c}");
        }
        // c = 3: m = 2, e^4 = (1 + m^2) u - (2m + m^3) fe
        let p = make_params(3.0).unwrap();
        let e2 = hyper_mul(&HyperElement::E, &HyperElement::E, &p).unwrap();
        let e4 = hyper_mul(&e2, &e2, &p).unwrap();
        assert!(e4.approx_eq(&HyperElement::new(5.0, 0.0, 0.0, -12.0), 1e-14));
    }

    #[test]
    fn generator_residual_detects_corruption() {
        let p = make_params(5.0).unwrap().with_perturbed_cayley(1e-3);
        assert!(generator_residual(&p).max_abs() > 1e-4);
    }

    #[test]
    fn key_identity() {
        for &c in &[1.001, 1.5, 2.0, 5.0, 10.0, 100.0] {
            let h = *make_params(c).unwrap().hyperbolic().unwrap();
            let lhs = h.k2 / SQRT_2 * h.m + 1.0;
            let rhs = h.k2 * h.k2 / 2.0;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0), "c={c}");
        }
    }

    #[test]
    fn inverse_examples() {
        let p = make_params(0.5).unwrap();
        let inv = invert_in_bc(1.0, 0.0, &p).unwrap();
        assert!(inv.approx_eq(&EllipticElement::U, 1e-15));
        let inv = invert_in_bc(1.0, 1.0, &p).unwrap();
        let expect = EllipticElement::new(Complex64::new(1.0, -1.0), Complex64::i());
        assert!(inv.approx_eq(&expect, 1e-15));
        assert!((bc_determinant(1.0, 1.0, &p).unwrap() - Complex64::i()).norm() < 1e-15);
        assert_eq!(invert_in_bc(0.0, 0.0, &p), Err(Error::NotInvertible));
        let q = make_params(5.0).unwrap();
        assert!(matches!(invert_in_bc(1.0, 1.0, &q), Err(Error::WrongRegime { .. })));
    }

    #[test]
    fn matrix_and_trace_form() {
        let p = make_params(0.5).unwrap();
        let me = matrix_rep(&EllipticElement::E, &p).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(me, [[zero, one], [one, Complex64::i()]]);
        let ee = elliptic_mul(&EllipticElement::E, &EllipticElement::E, &p).unwrap();
        assert!((trace(&matrix_rep(&ee, &p).unwrap()) - 1.0).norm() < 1e-15);
        assert!((trace_form_det(&p).unwrap() - 3.0).norm() < 1e-12);
    }

    #[test]
    fn decompose_examples() {
        let p = make_params(5.0).unwrap();
        match decompose_w(1.0, 0.0, &p) {
            SpectralCoords::Hyperbolic { w1, w2 } => {
                assert_eq!(w1, SplitComplex::new(1.0, 0.0));
                assert_eq!(w2, SplitComplex::new(1.0, 0.0));
            }
            _ => unreachable!(),
        }
        match decompose_w(0.0, 1.0, &p) {
            SpectralCoords::Hyperbolic { w1, w2 } => {
                assert!(close(w1.b, -3.1462643, 1e-7) && w1.a == 0.0);
                assert!(close(w2.b, 0.3178372, 1e-7) && w2.a == 0.0);
            }
            _ => unreachable!(),
        }
        let q = make_params(0.5).unwrap();
        match decompose_w(0.0, 1.0, &q) {
            SpectralCoords::Elliptic { w1, w2 } => {
                assert!(close(w1.re, 0.8660254, 1e-7) && close(w1.im, 0.5, 1e-7));
                assert!(close(w2.re, -0.8660254, 1e-7) && close(w2.im, 0.5, 1e-7));
            }
            _ => unreachable!(),
        }
        for p in [p, q] {
            let w = decompose_w(0.3, -1.7, &p).recompose(&p).unwrap();
            let expect = Element::identity(&p)
                .scale(0.3)
                .add(&Element::basis_e(&p).scale(-1.7));
            assert!(w.approx_eq(&expect, 1e-13));
        }
    }
}
