//! Seeded property suites run by `biwave selftest`.

use std::f64::consts::SQRT_2;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    bc_determinant, e_from_idempotents, generator_residual, idempotents, invert_in_bc,
    mat_mul, matrix_rep, trace_form_det, AlgebraParams, Constants, Element, EllipticElement,
    HyperElement,
};
use crate::analytic::{cr_residual, ComplexAnalytic, ComponentVector, Profile1D, SplitAnalytic};
use crate::error::Result;
use crate::grid::{Rect, ScalarGrid};
use crate::pde::{
    biwave_apply_poly, biwave_residual_fd, characteristic_polynomial, characteristic_roots,
    wave_factorization_residual, FactorOrder,
};
use crate::synthesis::{
    partial_solution_residual, solution_components_from_monogenic, EllipticSolutionSpec,
    HyperbolicSolutionSpec, MonogenicSpec, ScalarField, SolutionSpec,
};

const HYPER_CS: [f64; 4] = [1.5, 2.0, 5.0, 10.0];
const ELLIPTIC_CS: [f64; 3] = [0.1, 0.5, 0.9];
const SQUARE: Rect = Rect::new(-1.0, 1.0, -1.0, 1.0);
const ORDER_RANGE: (f64, f64) = (1.3, 2.7);

/// Deliberate corruption for checking that the suites can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Scale the Cayley structure constant by `1 + 1e-3` in the algebra suite.
    Cayley,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
    pub text: String,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Tracks the worst value seen against a bound.
struct Worst {
    value: f64,
    bound: f64,
    checks: usize,
    ok: bool,
}

impl Worst {
    fn new(bound: f64) -> Self {
        Self { value: 0.0, bound, checks: 0, ok: true }
    }

    fn see(&mut self, v: f64) {
        self.checks += 1;
        if !(v <= self.bound) {
            self.ok = false;
        }
        if v.is_nan() || v > self.value {
            self.value = v;
        }
    }

    fn see_bool(&mut self, b: bool) {
        self.checks += 1;
        self.ok &= b;
    }

    fn detail(&self) -> String {
        format!("{} checks, worst {:.3e} (bound {:.1e})", self.checks, self.value, self.bound)
    }
}

type SuiteFn = fn(&mut ChaCha8Rng, Fault) -> Result<(bool, String)>;

const SUITES: [(&str, SuiteFn); 10] = [
    ("algebra", suite_algebra),
    ("characteristic_roots", suite_roots),
    ("elliptic_inverse", suite_inverse),
    ("trace_form", suite_trace_form),
    ("cauchy_riemann", suite_cauchy_riemann),
    ("factorization", suite_factorization),
    ("partial_solution", suite_partial_solution),
    ("synthesis_exact", suite_synthesis_exact),
    ("synthesis_fd", suite_synthesis_fd),
    ("negative_controls", suite_negative_controls),
];

/// Runs every suite with generators seeded from `seed`. The report text is a
/// pure function of `seed` and `fault`.
pub fn cmd_selftest(seed: u64, fault: Fault) -> SelftestReport {
    let mut suites = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "selftest seed = {seed}");
    for (k, (name, run)) in SUITES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(k as u64 + 1)));
        let (passed, detail) = match run(&mut rng, fault) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let _ = writeln!(text, "{name}: {} ({detail})", if passed { "PASS" } else { "FAIL" });
        suites.push(SuiteResult { name, passed, detail });
    }
    let n_pass = suites.iter().filter(|s| s.passed).count();
    let _ = writeln!(
        text,
        "selftest: {} ({n_pass}/{} suites passed)",
        if n_pass == suites.len() { "PASS" } else { "FAIL" },
        suites.len()
    );
    SelftestReport { suites, text }
}

fn all_cs() -> impl Iterator<Item = f64> {
    HYPER_CS.into_iter().chain(ELLIPTIC_CS)
}

fn random_element(rng: &mut ChaCha8Rng, p: &AlgebraParams) -> Element {
    let mut r = || rng.random_range(-1.0..1.0);
    match p.regime() {
        crate::algebra::Regime::Hyperbolic => Element::Hyperbolic(HyperElement::new(r(), r(), r(), r())),
        crate::algebra::Regime::Elliptic => Element::Elliptic(EllipticElement::new(
            Complex64::new(r(), r()),
            Complex64::new(r(), r()),
        )),
    }
}

fn coord_dist(a: &Element, b: &Element) -> f64 {
    let (x, y) = (a.real_coords(), b.real_coords());
    let scale = x.iter().chain(&y).fold(1.0_f64, |m, v| m.max(v.abs()));
    x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max) / scale
}

fn suite_algebra(rng: &mut ChaCha8Rng, fault: Fault) -> Result<(bool, String)> {
    let mut w = Worst::new(1e-12);
    for c in all_cs() {
        let mut p = AlgebraParams::new(c)?;
        if fault == Fault::Cayley {
            p = p.with_perturbed_cayley(1e-3);
        }
        for _ in 0..200 {
            let (a, b, d) = (random_element(rng, &p), random_element(rng, &p), random_element(rng, &p));
            w.see(coord_dist(&a.mul(&b, &p)?, &b.mul(&a, &p)?));
            let left = a.mul(&b, &p)?.mul(&d, &p)?;
            let right = a.mul(&b.mul(&d, &p)?, &p)?;
            w.see(coord_dist(&left, &right));
        }
        w.see(generator_residual(&p).max_abs() / (1.0 + 2.0 * c));
        let (i1, i2) = idempotents(&p);
        let u = Element::identity(&p);
        w.see(coord_dist(&i1.mul(&i1, &p)?, &i1));
        w.see(coord_dist(&i2.mul(&i2, &p)?, &i2));
        w.see(coord_dist(&i1.add(&i2), &u));
        w.see(i1.mul(&i2, &p)?.max_abs());
        w.see(coord_dist(&e_from_idempotents(&p), &Element::basis_e(&p)));
    }
    Ok((w.ok, w.detail()))
}

fn suite_roots(_rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut w = Worst::new(1e-10);
    for c in all_cs() {
        let p = AlgebraParams::new(c)?;
        for r in characteristic_roots(&p) {
            w.see(characteristic_polynomial(r, c).norm());
        }
        w.see((p.k1() * p.k2() - 2.0).norm());
        if let Constants::Hyperbolic(h) = p.constants() {
            w.see((h.k2 / SQRT_2 * h.m + 1.0 - h.k2 * h.k2 / 2.0).abs());
        }
    }
    Ok((w.ok, w.detail()))
}

fn suite_inverse(rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut w = Worst::new(1e-12);
    for c in ELLIPTIC_CS {
        let p = AlgebraParams::new(c)?;
        let mu = p.elliptic()?.mu;
        for _ in 0..300 {
            let (s, t) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let a = EllipticElement::new(Complex64::new(s, 0.0), Complex64::new(t, 0.0));
            let inv = invert_in_bc(s, t, &p)?;
            let prod = a.mul_with(&inv, mu);
            w.see(coord_dist(&Element::Elliptic(prod), &Element::Elliptic(EllipticElement::U)));
            let direct = Complex64::new(s, 0.0) * Complex64::new(s, mu * t) - t * t;
            w.see((bc_determinant(s, t, &p)? - direct).norm());
        }
        w.see_bool(invert_in_bc(0.0, 0.0, &p).is_err());
    }
    Ok((w.ok, w.detail()))
}

fn suite_trace_form(rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut w = Worst::new(1e-12);
    for c in ELLIPTIC_CS {
        let p = AlgebraParams::new(c)?;
        let mu = p.elliptic()?.mu;
        w.see((trace_form_det(&p)? - 2.0 * (1.0 + c)).norm());
        for _ in 0..300 {
            let (Element::Elliptic(a), Element::Elliptic(b)) = (random_element(rng, &p), random_element(rng, &p)) else {
                unreachable!("elliptic parameters");
            };
            let lhs = matrix_rep(&a.mul_with(&b, mu), &p)?;
            let rhs = mat_mul(&matrix_rep(&a, &p)?, &matrix_rep(&b, &p)?);
            for i in 0..2 {
                for j in 0..2 {
                    w.see((lhs[i][j] - rhs[i][j]).norm());
                }
            }
        }
    }
    Ok((w.ok, w.detail()))
}

fn random_smooth_profile(rng: &mut ChaCha8Rng) -> Profile1D {
    match rng.random_range(0..3) {
        0 => Profile1D::sine(rng.random_range(0.5..1.5), rng.random_range(0.5..1.5), rng.random_range(0.0..3.0)),
        1 => Profile1D::exponential(rng.random_range(0.2..1.0), rng.random_range(-0.8..0.8)),
        _ => Profile1D::gaussian(rng.random_range(0.5..1.5), rng.random_range(-0.5..0.5), rng.random_range(0.7..1.5)),
    }
}

fn random_complex_analytic(rng: &mut ChaCha8Rng) -> ComplexAnalytic {
    let a = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    if rng.random_bool(0.5) {
        ComplexAnalytic::ScaledExp { a }
    } else {
        ComplexAnalytic::ScaledSine { a }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Vec<f64> {
    let deg = rng.random_range(0..=max_deg);
    (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn random_complex_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Vec<Complex64> {
    let deg = rng.random_range(0..=max_deg);
    (0..=deg)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn monogenic_sampler(
    p: &AlgebraParams,
    spec: &MonogenicSpec,
) -> Result<impl Fn(f64, f64) -> ComponentVector> {
    let f = [1, 2, 3, 4]
        .map(|k| solution_components_from_monogenic(p, spec, k));
    let [a, b, c, d] = f;
    let (a, b, c, d) = (a?, b?, c?, d?);
    Ok(move |x, y| ComponentVector::new(a.eval(x, y), b.eval(x, y), c.eval(x, y), d.eval(x, y)))
}

fn suite_cauchy_riemann(rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut ratios = Vec::new();
    for k in 0..8 {
        let (p, spec) = if k % 2 == 0 {
            let c = HYPER_CS[rng.random_range(0..HYPER_CS.len())];
            let mut sa = || SplitAnalytic::new(random_smooth_profile(rng), random_smooth_profile(rng));
            (AlgebraParams::new(c)?, MonogenicSpec::Hyperbolic { alpha: sa(), beta: sa() })
        } else {
            let c = ELLIPTIC_CS[rng.random_range(0..ELLIPTIC_CS.len())];
            let alpha = random_complex_analytic(rng);
            let beta = random_complex_analytic(rng);
            (AlgebraParams::new(c)?, MonogenicSpec::Elliptic { alpha, beta })
        };
        let sampler = monogenic_sampler(&p, &spec)?;
        let coarse = cr_residual(&sampler, &p, &SQUARE, 0.04)?.max_abs();
        let fine = cr_residual(&sampler, &p, &SQUARE, 0.02)?.max_abs();
        ratios.push(coarse / fine);
    }
    let ok = ratios.iter().all(|r| (2.5..=6.0).contains(r));
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((ok, format!("{} specs, halving ratios in [{lo:.3}, {hi:.3}] (expected [2.5, 6])", ratios.len())))
}

fn suite_factorization(rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut worst_rel = 0.0f64;
    let mut orders = Vec::new();
    for c in [1.5, 5.0] {
        let waves: Vec<(f64, f64, f64, f64)> = (0..3)
            .map(|_| {
                (
                    rng.random_range(0.5..1.0),
                    rng.random_range(-1.5..1.5),
                    rng.random_range(-1.5..1.5),
                    rng.random_range(0.0..3.0),
                )
            })
            .collect();
        let field = |x: f64, y: f64| waves.iter().map(|(a, kx, ky, ph)| a * (kx * x + ky * y + ph).sin()).sum::<f64>();
        let exact = |x: f64, y: f64| {
            waves
                .iter()
                .map(|(a, kx, ky, ph)| {
                    let sym = kx.powi(4) - 2.0 * c * kx * kx * ky * ky + ky.powi(4);
                    a * sym * (kx * x + ky * y + ph).sin()
                })
                .sum::<f64>()
        };
        for order in [FactorOrder::FirstThenSecond, FactorOrder::SecondThenFirst] {
            let mut errs = Vec::new();
            for h in [0.04, 0.02] {
                let g = field.sample(&SQUARE.with_spacing(h)?);
                let f = wave_factorization_residual(&g, c, order)?;
                let direct = biwave_residual_fd(&g, c)?;
                worst_rel = worst_rel.max(f.difference.max_abs() / direct.residual.max_abs().max(direct.scale));
                errs.push(f.factored.iter().map(|(x, y, v)| (v - exact(x, y)).abs()).fold(0.0, f64::max));
            }
            orders.push((errs[0] / errs[1]).log2());
        }
    }
    let ok = worst_rel <= 1e-2 && orders.iter().all(|o| (ORDER_RANGE.0..=ORDER_RANGE.1).contains(o));
    let list: Vec<String> = orders.iter().map(|o| format!("{o:.3}")).collect();
    Ok((ok, format!("relative difference {worst_rel:.3e}, orders {}", list.join(", "))))
}

fn suite_partial_solution(_rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut orders = Vec::new();
    for c in [2.0, 5.0] {
        for f1 in [Profile1D::monomial(4), Profile1D::sine(1.0, 1.0, 0.0)] {
            let r: Vec<f64> = [0.04, 0.02]
                .iter()
                .map(|&h| partial_solution_residual(&f1, &Profile1D::zero(), c, &SQUARE, h).map(|g| g.max_abs()))
                .collect::<Result<_>>()?;
            orders.push((r[0] / r[1]).log2());
        }
    }
    let ok = orders.iter().all(|o| (ORDER_RANGE.0..=ORDER_RANGE.1).contains(o));
    let list: Vec<String> = orders.iter().map(|o| format!("{o:.3}")).collect();
    Ok((ok, format!("orders {}", list.join(", "))))
}

fn suite_synthesis_exact(rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut w = Worst::new(1e-9);
    for _ in 0..10 {
        let c = HYPER_CS[rng.random_range(0..HYPER_CS.len())];
        let mut prof = || Profile1D::polynomial(random_poly(rng, 6));
        let spec = HyperbolicSolutionSpec { g1: prof(), g2: prof(), f1: prof(), f2: prof() };
        let input = [&spec.g1, &spec.g2, &spec.f1, &spec.f2]
            .iter()
            .flat_map(|p| p.as_polynomial().unwrap_or(&[]).to_vec())
            .fold(0.0, |m: f64, v| m.max(v.abs()));
        let poly = SolutionSpec::Hyperbolic(spec).synthesize(c)?.to_poly().expect("polynomial")?;
        w.see(biwave_apply_poly(&poly, c).max_abs_coeff() / input.max(f64::MIN_POSITIVE));
    }
    for _ in 0..10 {
        let c = ELLIPTIC_CS[rng.random_range(0..ELLIPTIC_CS.len())];
        let (a, b) = (random_complex_poly(rng, 6), random_complex_poly(rng, 6));
        let input = a.iter().chain(&b).fold(0.0, |m: f64, v| m.max(v.re.abs()).max(v.im.abs()));
        let spec = EllipticSolutionSpec::new(
            ComplexAnalytic::polynomial(a),
            ComplexAnalytic::polynomial(b),
            rng.random_range(1..=2),
            rng.random_range(1..=2),
        );
        let poly = SolutionSpec::Elliptic(spec).synthesize(c)?.to_poly().expect("polynomial")?;
        w.see(biwave_apply_poly(&poly, c).max_abs_coeff() / input.max(f64::MIN_POSITIVE));
    }
    Ok((w.ok, w.detail()))
}

fn suite_synthesis_fd(rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let mut orders = Vec::new();
    for k in 0..4 {
        let (c, spec) = if k % 2 == 0 {
            let c = HYPER_CS[rng.random_range(0..HYPER_CS.len())];
            let mut prof = || random_smooth_profile(rng);
            (c, SolutionSpec::Hyperbolic(HyperbolicSolutionSpec { g1: prof(), g2: prof(), f1: prof(), f2: prof() }))
        } else {
            let c = ELLIPTIC_CS[rng.random_range(0..ELLIPTIC_CS.len())];
            let spec = EllipticSolutionSpec::new(
                random_complex_analytic(rng),
                random_complex_analytic(rng),
                rng.random_range(1..=2),
                rng.random_range(1..=2),
            );
            (c, SolutionSpec::Elliptic(spec))
        };
        let field = spec.synthesize(c)?;
        let r: Vec<f64> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&h| Ok(biwave_residual_fd(&field.sample(&SQUARE.with_spacing(h)?), c)?.max_raw()))
            .collect::<Result<_>>()?;
        orders.push((r[0] / r[1]).log2());
        orders.push((r[1] / r[2]).log2());
    }
    let ok = orders.iter().all(|o| (ORDER_RANGE.0..=ORDER_RANGE.1).contains(o));
    let list: Vec<String> = orders.iter().map(|o| format!("{o:.3}")).collect();
    Ok((ok, format!("orders {}", list.join(", "))))
}

fn suite_negative_controls(_rng: &mut ChaCha8Rng, _fault: Fault) -> Result<(bool, String)> {
    let g = ScalarGrid::from_fn(&SQUARE.with_spacing(0.05)?, |x, _| x.powi(4));
    let r = biwave_residual_fd(&g, 5.0)?;
    let quartic = (r.max_raw() - 24.0).abs();
    let p = AlgebraParams::new(5.0)?;
    let cr = cr_residual(|_, y| ComponentVector::new(y, 0.0, 0.0, 0.0), &p, &SQUARE, 0.05)?;
    let linear = (cr.max_abs() - 1.0).abs();
    let ok = quartic <= 1e-3 && r.max_scaled() > 1e-6 && linear <= 1e-6;
    Ok((
        ok,
        format!(
            "u = x^4 residual {:.6} (expected 24), u1 = y CR residual {:.6} (expected 1)",
            r.max_raw(),
            cr.max_abs()
        ),
    ))
}
