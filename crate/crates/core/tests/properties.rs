use biwave::analytic::Profile1D;
use biwave::grid::Rect;
use biwave::pde::{apply_wave_factor, WaveFactor};
use biwave::synthesis::{HyperbolicSolutionSpec, ScalarField, SolutionSpec};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 1..7)
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.len().max(b.len()))
        .map(|k| a.get(k).unwrap_or(&0.0) + b.get(k).unwrap_or(&0.0))
        .collect()
}

fn hyper(p: [&[f64]; 4]) -> SolutionSpec {
    let f = |c: &[f64]| Profile1D::polynomial(c.to_vec());
    SolutionSpec::Hyperbolic(HyperbolicSolutionSpec { g1: f(p[0]), g2: f(p[1]), f1: f(p[2]), f2: f(p[3]) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn synthesis_is_linear(
        a in prop::array::uniform4(poly()),
        b in prop::array::uniform4(poly()),
        c in prop::sample::select(vec![1.1, 2.0, 5.0, 10.0]),
        x in -1.0f64..1.0, y in -1.0f64..1.0,
    ) {
        let sa = hyper([&a[0], &a[1], &a[2], &a[3]]).synthesize(c).unwrap();
        let sb = hyper([&b[0], &b[1], &b[2], &b[3]]).synthesize(c).unwrap();
        let sum: Vec<Vec<f64>> = (0..4).map(|k| add(&a[k], &b[k])).collect();
        let ss = hyper([&sum[0], &sum[1], &sum[2], &sum[3]]).synthesize(c).unwrap();
        let (va, vb, vs) = (sa.eval(x, y), sb.eval(x, y), ss.eval(x, y));
        prop_assert!((vs - va - vb).abs() <= 1e-12 * (1.0 + va.abs() + vb.abs()));
    }
}

/// The g-part alone is killed by the y2 factor and the F-part by the y1 factor,
/// up to O(h^2) truncation.
#[test]
fn each_part_is_killed_by_its_factor() {
    let square = Rect::new(-1.0, 1.0, -1.0, 1.0);
    let g_part = HyperbolicSolutionSpec {
        g1: Profile1D::sine(1.0, 1.3, 0.2),
        g2: Profile1D::gaussian(0.8, 0.1, 0.9),
        ..Default::default()
    };
    let f_part = HyperbolicSolutionSpec {
        f1: Profile1D::exponential(0.5, 0.6),
        f2: Profile1D::sine(1.0, 0.7, 0.0),
        ..Default::default()
    };
    for c in [1.5, 5.0] {
        for (spec, factor) in [(&g_part, WaveFactor::Y2), (&f_part, WaveFactor::Y1)] {
            let field = SolutionSpec::Hyperbolic(spec.clone()).synthesize(c).unwrap();
            let r: Vec<f64> = [0.04, 0.02]
                .iter()
                .map(|&h| {
                    let g = field.sample(&square.with_spacing(h).unwrap());
                    apply_wave_factor(&g, c, factor).unwrap().max_abs()
                })
                .collect();
            let order = (r[0] / r[1]).log2();
            assert!((1.7..=2.3).contains(&order), "c = {c}, {factor:?}: order {order}");
            // The other factor does not vanish.
            let other = if factor == WaveFactor::Y1 { WaveFactor::Y2 } else { WaveFactor::Y1 };
            let g = field.sample(&square.with_spacing(0.02).unwrap());
            assert!(apply_wave_factor(&g, c, other).unwrap().max_abs() > 100.0 * r[1]);
        }
    }
}
