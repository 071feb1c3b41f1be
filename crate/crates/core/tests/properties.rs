//! Randomized invariants.

use hermite_equilibrium::energy::{minimize_energy, total_energy, ExternalField};
use hermite_equilibrium::equilibrium::{critical_sigma0_halfline, critical_sigma0_symmetric, solve_endpoints, CaseTag};
use hermite_equilibrium::polynomials::eval_poly;
use hermite_equilibrium::recurrence::{build_table, RecurrenceTable};
use hermite_equilibrium::weights::{integrate, QuadratureScheme, SupportKind, WeightSpec};
use hermite_equilibrium::zeros::{compute_zeros, ks_distance, EmpiricalCdf};
use proptest::prelude::*;

fn table(lambda: f64, kind: SupportKind, n: usize) -> RecurrenceTable {
    build_table(WeightSpec::new(lambda, kind).unwrap(), n, &QuadratureScheme::default()).unwrap()
}

fn support() -> impl Strategy<Value = SupportKind> {
    prop_oneof![
        (-1.0f64..1.5).prop_map(SupportKind::half_line),
        (0.0f64..1.5).prop_map(SupportKind::symmetric),
    ]
}

/// `λ = 0` whenever the truncation is negative.
fn weight() -> impl Strategy<Value = (f64, SupportKind)> {
    (0.0f64..3.0, support()).prop_map(|(l, k)| (if k.truncation() < 0.0 { 0.0 } else { l }, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zeros_interlace((lambda, kind) in weight(), n in 2usize..30) {
        let t = table(lambda, kind, n + 1);
        let lo = compute_zeros(&t, n).unwrap().zeros;
        let hi = compute_zeros(&t, n + 1).unwrap().zeros;
        for i in 0..n {
            prop_assert!(hi[i] < lo[i] && lo[i] < hi[i + 1], "i {}: {} {} {}", i, hi[i], lo[i], hi[i + 1]);
        }
    }

    #[test]
    fn symmetric_zeros_are_odd_symmetric(lambda in 0.0f64..3.0, a in 0.0f64..1.5, n in 1usize..40) {
        let t = table(lambda, SupportKind::symmetric(a), n);
        let z = compute_zeros(&t, n).unwrap().zeros;
        for i in 0..n {
            prop_assert_eq!(z[i], -z[n - 1 - i]);
        }
        if n % 2 == 0 {
            prop_assert!(z.iter().all(|x| x.abs() >= a - 1e-8));
        }
    }

    #[test]
    fn half_line_coefficient_bounds(lambda in 0.0f64..3.0, a in 0.0f64..1.5) {
        let t = table(lambda, SupportKind::half_line(a), 40);
        for n in 0..40 {
            let b = t.b(n);
            let m = t.boundary_masses()[n];
            prop_assert!(b >= 0.5 * m - 1e-10, "n {}: b {} m {}", n, b, m);
            let bound = (n as f64 + lambda + 0.5 + a * a / 4.0).sqrt() + a / 2.0;
            prop_assert!(b >= 0.0 && b <= bound, "n {}: b {} bound {}", n, b, bound);
        }
    }

    #[test]
    fn symmetric_max_coefficient_grows(lambda in 0.0f64..3.0, a in 0.0f64..1.5) {
        let t = table(lambda, SupportKind::symmetric(a), 40);
        // max(a_n², a_{n+1}²) is at least half their sum
        for n in 1..39 {
            let m = t.a(n).max(t.a(n + 1));
            prop_assert!(m * m >= (n as f64 + 0.5 + lambda) / 2.0 - 1e-10);
        }
    }

    #[test]
    fn orthonormal_spot_checks((lambda, kind) in weight(), i in 0usize..12, j in 0usize..12) {
        let t = table(lambda, kind, 12);
        // `integrate` is against the normalized weight
        let g = integrate(
            |x| eval_poly(&t, i, x).unwrap().0 * eval_poly(&t, j, x).unwrap().0,
            t.spec(),
            &QuadratureScheme::default(),
        )
        .unwrap();
        let expected = if i == j { 1.0 } else { 0.0 };
        prop_assert!((g - expected).abs() < 1e-10, "<H_{}, H_{}> = {}", i, j, g);
    }

    #[test]
    fn measures_are_probability_distributions(alpha in 0.0f64..3.0, a in 0.0f64..2.0, sym in any::<bool>()) {
        let kind = if sym { SupportKind::symmetric(a) } else { SupportKind::half_line(a) };
        let m = solve_endpoints(alpha, a, kind).unwrap();
        prop_assert!(m.mass_error() < 1e-10);
        let mut last = 0.0;
        let lo = if sym { -m.b } else { m.sigma };
        for k in 0..=40 {
            let x = lo + (m.b - lo) * k as f64 / 40.0;
            let f = m.cdf(x);
            prop_assert!(f >= last - 1e-14 && f <= 1.0 + 1e-10);
            last = f;
        }
        prop_assert!(m.min_density(100) >= 0.0);
    }

    #[test]
    fn endpoints_continuous_across_the_critical_truncation(alpha in 0.1f64..3.0, sym in any::<bool>()) {
        let (kind, (s0, b0)) = if sym {
            (SupportKind::symmetric(0.0), critical_sigma0_symmetric(alpha).unwrap())
        } else {
            (SupportKind::half_line(0.0), critical_sigma0_halfline(alpha).unwrap())
        };
        let below = solve_endpoints(alpha, s0 * (1.0 - 1e-7), kind).unwrap();
        let above = solve_endpoints(alpha, s0 * (1.0 + 1e-7), kind).unwrap();
        prop_assert!(matches!(below.case, CaseTag::HL1 | CaseTag::SYM2));
        prop_assert!(matches!(above.case, CaseTag::HL2 | CaseTag::SYM3));
        prop_assert!((below.b - b0).abs() < 1e-5 && (above.b - b0).abs() < 1e-5);
        prop_assert!((above.sigma - s0).abs() < 1e-6);
    }

    #[test]
    fn constrained_measure_tends_to_the_alpha_zero_measure(a in 0.2f64..1.5) {
        let kind = SupportKind::half_line(a);
        let limit = solve_endpoints(0.0, a, kind).unwrap();
        let near = solve_endpoints(1e-9, a, kind).unwrap();
        prop_assert_eq!(near.case, CaseTag::HL2);
        prop_assert!((near.b - limit.b).abs() < 1e-6);
        for k in 1..10 {
            let x = a + (limit.b - a) * k as f64 / 10.0;
            prop_assert!((near.density(x).unwrap() - limit.density(x).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn zeros_are_a_local_minimum(
        (lambda, kind) in weight(),
        n in 2usize..12,
        dirs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 12), 50),
    ) {
        // for odd n the centre zero is 0, in the gap or on the singularity of the field
        prop_assume!(!(kind.is_symmetric() && n % 2 == 1 && (kind.truncation() > 0.0 || lambda > 0.0)));
        let t = table(lambda, kind, n + 1);
        let field = ExternalField::new(&t, n).unwrap();
        let z = compute_zeros(&t, n).unwrap().zeros;
        let base = total_energy(&z, &field).unwrap().total;
        let gap = z.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        for d in &dirs {
            let eps = 1e-3 * gap;
            let moved: Vec<f64> = z.iter().zip(d).map(|(x, e)| x + eps * e).collect();
            if let Ok(e) = total_energy(&moved, &field) {
                prop_assert!(e.total >= base - 1e-12 * base.abs().max(1.0), "{} < {}", e.total, base);
            }
        }
    }

    #[test]
    fn ks_distance_is_a_distance(points in prop::collection::vec(-3.0f64..3.0, 1..40)) {
        let emp = EmpiricalCdf::new(points.clone());
        let phi = |x: f64| 0.5 * (1.0 + statrs::function::erf::erf(x / 2f64.sqrt()));
        let d = ks_distance(&emp, phi);
        prop_assert!((0.0..=1.0).contains(&d));
        // against itself, shifted infinitesimally, the distance is one jump
        let own = ks_distance(&emp, |x| emp.eval(x));
        prop_assert!(own <= 1.0 / points.len() as f64 + 1e-15);
    }
}

#[test]
fn gradient_descent_recovers_the_zeros() {
    for (lambda, kind) in [
        (0.0, SupportKind::half_line(0.0)),
        (1.0, SupportKind::half_line(0.5)),
        (0.0, SupportKind::symmetric(0.3)),
        (2.0, SupportKind::symmetric(0.0)),
    ] {
        for n in [2usize, 5, 8] {
            let t = table(lambda, kind, n + 1);
            let field = ExternalField::new(&t, n).unwrap();
            let z = compute_zeros(&t, n).unwrap().zeros;
            if kind.is_symmetric() && n % 2 == 1 && (kind.truncation() > 0.0 || lambda > 0.0) {
                // the centre zero is 0, in the gap or on the singularity of the field
                continue;
            }
            let gap = z.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            let start: Vec<f64> = z
                .iter()
                .enumerate()
                .map(|(i, x)| x + 0.2 * gap * if i % 2 == 0 { 1.0 } else { -0.7 })
                .filter(|x| kind.interior_contains(*x))
                .collect();
            assert_eq!(start.len(), n);
            let found = minimize_energy(&start, &field, 1e-10, 20_000)
                .unwrap_or_else(|e| panic!("{kind:?} lambda {lambda} n {n}: {e}"));
            for (x, y) in found.iter().zip(&z) {
                assert!((x - y).abs() < 1e-7, "{kind:?} lambda {lambda} n {n}: {x} vs {y}");
            }
        }
    }
}
