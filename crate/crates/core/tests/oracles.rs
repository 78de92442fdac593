//! Independent oracles: brute force, closed forms and finite differences.

use hhquasi::exprlang::{derivative_value, evaluate, RealFunction};
use hhquasi::hhbounds::{lhs_weighted, verify, ExponentParams, TheoremId};
use hhquasi::numerics::Interval;
use hhquasi::quasiconvexity::{
    certify_derivative_power, check_quasiconvex, generate, CertifyOptions, Family,
    GeneratorConfig, CATALOG,
};

fn unit() -> Interval {
    Interval::new(0.0, 1.0).unwrap()
}

/// Exhaustive check of the definition on an `m`-point grid for x, y and λ.
fn brute_force_quasiconvex(g: impl Fn(f64) -> f64, iv: Interval, m: usize, tol: f64) -> bool {
    let pts: Vec<f64> = (0..m).map(|i| iv.grid_point(i, m)).collect();
    let vals: Vec<f64> = pts.iter().map(|&u| g(u)).collect();
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate().skip(i + 1) {
            let hi = vals[i].max(vals[j]);
            for k in 1..m - 1 {
                let lambda = k as f64 / (m - 1) as f64;
                let z = lambda * x + (1.0 - lambda) * y;
                if (g(z) - hi) / (1.0 + vals[i].abs().max(vals[j].abs())) > tol {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn checker_agrees_with_brute_force() {
    let cases: Vec<(&str, Box<dyn Fn(f64) -> f64>, Interval)> = vec![
        ("sqrt|u|", Box::new(|u: f64| u.abs().sqrt()), Interval::new(-1.0, 1.0).unwrap()),
        ("-u^2", Box::new(|u: f64| -u * u), Interval::new(-1.0, 1.0).unwrap()),
        ("|u - 0.3|", Box::new(|u: f64| (u - 0.3).abs()), unit()),
        ("sin 10u", Box::new(|u: f64| (10.0 * u).sin()), unit()),
        ("e^u", Box::new(|u: f64| u.exp()), unit()),
    ];
    for (name, g, iv) in cases {
        let brute = brute_force_quasiconvex(&g, iv, 201, 1e-9);
        let verdict = check_quasiconvex(|u| Ok(g(u)), iv, 2048, 1e-9).unwrap();
        assert_eq!(verdict.holds, brute, "{name}");
        if let Some(t) = verdict.counterexample {
            let z = t.combination();
            assert!(g(z) > g(t.x).max(g(t.y)), "{name}: {t:?}");
        }
    }
}

#[test]
fn catalog_annotations_match_certification() {
    let opts = CertifyOptions::default();
    for e in &CATALOG {
        let f = e.expression();
        let c = certify_derivative_power(&f, e.interval(), 1.0, &opts).unwrap();
        assert_eq!(c.certified, e.derivative_quasiconvex, "{}", e.name);
        let own = check_quasiconvex(|u| Ok(evaluate(&f, u)?), e.interval(), 2048, 1e-9).unwrap();
        assert_eq!(own.holds, e.quasiconvex, "{}", e.name);
    }
}

#[test]
fn generated_derivatives_match_finite_differences() {
    for family in Family::ALL {
        for seed in 0..40u64 {
            let g = generate(&GeneratorConfig {
                seed,
                family,
                interval: unit(),
                scale: (0.5, 3.0),
            })
            .unwrap();
            let expr = g.expression();
            for i in 1..50 {
                let t = i as f64 / 50.0;
                if (t - g.shift).abs() < 1e-3 && family != Family::MonotoneExp {
                    continue;
                }
                let h = 1e-6;
                let fd = (g.f(t + h) - g.f(t - h)) / (2.0 * h);
                let d = g.f_prime(t);
                assert!((d - fd).abs() <= 1e-5 * d.abs().max(1.0), "{} t={t}: {d} vs {fd}", g.id());
                // The parsed source agrees with the closed forms.
                let v = evaluate(&expr, t).unwrap();
                assert!((v - g.f(t)).abs() <= 1e-12 * v.abs().max(1.0), "{}", g.id());
                let dv = derivative_value(&expr, t).unwrap();
                assert!((dv - d).abs() <= 1e-11 * d.abs().max(1.0), "{} t={t}: {dv} vs {d}", g.id());
            }
        }
    }
}

#[test]
fn generated_functions_are_certified() {
    let opts = CertifyOptions::default();
    for family in Family::ALL {
        for seed in 100..130u64 {
            let g = generate(&GeneratorConfig {
                seed,
                family,
                interval: unit(),
                scale: (0.5, 3.0),
            })
            .unwrap();
            for r in [1.0, 1.5, 2.0, 3.0, 5.0] {
                let c = certify_derivative_power(&g, unit(), r, &opts).unwrap();
                assert!(c.certified, "{} r={r}: {:?}", g.id(), c.shape);
            }
        }
    }
}

#[test]
fn lhs_matches_closed_forms() {
    // ∫₀¹ eᵘ du = e - 1, so lhs(x) = |(1-x)e + x - (e - 1)|.
    let e = std::f64::consts::E;
    let f = hhquasi::exprlang::parse("exp(x)").unwrap();
    for i in 0..=20 {
        let x = i as f64 / 20.0;
        let want = ((1.0 - x) * e + x - (e - 1.0)).abs();
        assert!((lhs_weighted(&f, unit(), x, 1e-12).unwrap() - want).abs() < 1e-12);
    }
    // u³ on [-1, 1]: mean 0, lhs(x) = |((1-x) - (x+1))/2| = |x|.
    let f = hhquasi::exprlang::parse("x^3").unwrap();
    let iv = Interval::new(-1.0, 1.0).unwrap();
    for i in 0..=20 {
        let x = -1.0 + i as f64 / 10.0;
        assert!((lhs_weighted(&f, iv, x, 1e-12).unwrap() - x.abs()).abs() < 1e-12);
    }
}

#[test]
fn negsquare_foil_keeps_bounds_but_fails_the_chain() {
    let entry = hhquasi::quasiconvexity::lookup("negsquare").unwrap();
    let f = entry.expression();
    let r = verify(&f, entry.interval(), 0.25, ExponentParams::default(), 1e-10).unwrap();
    assert!(r.hypotheses.h1.certified);
    for id in TheoremId::ALL {
        assert!(r.satisfied[&id], "{id}");
    }
    let chain = hhquasi::hhbounds::classic_hh_check(&f, entry.interval(), 1e-10).unwrap();
    assert!(!chain.holds);
    assert_eq!(f.label(), "(-(x ^ 2.0))");
}
