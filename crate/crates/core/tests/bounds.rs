use proptest::prelude::*;
use wgmres::bounds::*;
use wgmres::scmap::ExteriorMapRectangle;
use wgmres::Error;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn elman_and_disk_table_values() {
    // (mu, rho, elman k=1, disk k=1)
    for (mu, rho, elman, disk) in [(2.0, 4.0, 0.9937, 0.9701), (33.0, 4.0, 0.9999, 0.9701), (2.0, 10.0, 0.9988, 0.9950)] {
        assert!(close(elman_bound(mu, rho, 1), elman, 5e-5), "elman ({mu}, {rho})");
        assert!(close(disk_bound(mu, rho, 1).unwrap(), disk, 5e-5), "disk ({mu}, {rho})");
    }
    assert!(close(disk_bound(201.0, 10.0, 1).unwrap(), 0.9950, 5e-5));
    assert_eq!(disk_bound(34.0, 4.0, 1), None);
    assert_eq!(elman_bound(5.0, 3.0, 0), 1.0);
    let (a, r) = disk_params(2.0, 4.0).unwrap();
    assert!(close(a, 17.0, 1e-14) && close(r, 4.0 * 17f64.sqrt(), 1e-13));
}

#[test]
fn point_rectangle_is_solved_exactly() {
    assert_eq!(disk_bound(1.0, 0.0, 3), Some(0.0));
    assert_eq!(disk_segment_bound(1.0, 0.0, 1), 0.0);
    let best = best_curve(1.0, 0.0, 5, &BoundMethod::ALL).unwrap();
    assert_eq!(best.values[0], Some(1.0));
    assert!(best.values[1..].iter().all(|v| *v == Some(0.0)));
}

#[test]
fn disk_segment_parameters() {
    let (beta, gamma) = disk_segment_params(2.0, 4.0);
    let exact_beta = (1.0 / 20f64.sqrt()).acos();
    assert!(close(beta, exact_beta, 1e-15) && close(beta, 1.34528, 1e-5));
    assert!(close(gamma, 2.0 * (beta / (4.0 - 2.0 * beta / std::f64::consts::PI)).sin(), 1e-15));
    assert!(close(gamma, 0.830009, 1e-6));
    let k = 7;
    let g = gamma.powi(k as i32);
    let expect = (2.0 + gamma).min(2.0 / (1.0 - gamma.powi(k as i32 + 1))) * g;
    assert!(close(disk_segment_bound(2.0, 4.0, k), expect, 1e-14), "{} vs {expect}", disk_segment_bound(2.0, 4.0, k));
}

#[test]
fn optimal_ellipse_reproduces_the_worked_example() {
    let p = optimal_ellipse(2.0, 4.0, ELLIPSE_GRID).unwrap();
    for (k, want) in [(1, 3.7060), (2, 0.9007), (3, 1.2011), (4, 0.6960)] {
        assert!(close(ellipse_bound(&p, k), want, 1e-3), "K{k} = {}", ellipse_bound(&p, k));
    }
    assert!(ellipse_bound(&p, 3) > ellipse_bound(&p, 2));
}

#[test]
fn tall_rectangle_gets_a_vertical_ellipse() {
    let p = optimal_ellipse(3.0, 4.0, ELLIPSE_GRID).unwrap();
    assert_eq!(p.orientation, Orientation::Vertical);
    assert!(p.beta_ell > p.alpha);
}

#[test]
fn every_grid_ellipse_passes_through_the_corners() {
    for (mu, rho) in [(2.0, 4.0), (3.0, 4.0), (14.3, 233.0), (50.0, 1.0)] {
        for alpha in ellipse_grid(mu, rho, ELLIPSE_GRID) {
            let p = EllipseParams::circumscribing(mu, rho, alpha).unwrap();
            assert!(p.corner_residual(mu, rho) <= 1e-10 * (mu + rho), "({mu}, {rho}, {alpha})");
        }
    }
    assert!(matches!(optimal_ellipse(1.0, 4.0, ELLIPSE_GRID), Err(Error::DegenerateRectangle(_))));
}

#[test]
fn interval_bound_is_exact() {
    let p = optimal_ellipse(9.0, 0.0, ELLIPSE_GRID).unwrap();
    assert!(close(ellipse_bound(&p, 1), 0.8, 1e-12));
    assert!(close(minmax_oracle(9.0, 0.0, 1).unwrap(), 0.8, 1e-6));
    // Chebyshev on [1, 9]: 2 / (v^k + v^-k) with v = 5/4 + sqrt((5/4)^2 - 1) = 2
    let v: f64 = 2.0;
    for k in 2..6 {
        let want = 2.0 / (v.powi(k as i32) + v.powi(-(k as i32)));
        assert!(close(ellipse_bound(&p, k), want, 1e-12), "k = {k}: {} vs {want}", ellipse_bound(&p, k));
    }
}

#[test]
fn oracle_limits() {
    assert_eq!(minmax_oracle(2.0, 4.0, 0).unwrap(), 1.0);
    assert!(close(minmax_oracle(1.0 + 1e-6, 4.0, 1).unwrap(), 4.0 / 17f64.sqrt(), 1e-4));
    assert!(matches!(minmax_oracle(2.0, 4.0, 9), Err(Error::InvalidSpec(_))));
}

#[test]
fn bounds_are_sound_against_the_oracle() {
    for (mu, rho) in [(2.0, 4.0), (2.0, 10.0), (33.0, 4.0)] {
        let curves: Vec<BoundCurve> = BoundMethod::ALL.iter().map(|&m| bound_curve(mu, rho, 5, m).unwrap()).collect();
        let map = ExteriorMapRectangle::new(mu, rho).unwrap();
        for k in 1..=5 {
            let oracle = minmax_oracle(mu, rho, k).unwrap();
            assert!(map.gamma.powi(k as i32) <= oracle + 1e-6, "lower ({mu}, {rho}, {k})");
            for c in &curves {
                if let Some(raw) = c.raw[k] {
                    assert!(raw >= oracle - 1e-6, "{} ({mu}, {rho}, {k}): {raw} < {oracle}", c.method);
                }
            }
        }
    }
}

#[test]
fn complex_coefficients_do_not_help() {
    let real = minmax_oracle_with(2.0, 4.0, 3, &OracleOptions::default()).unwrap();
    let complex = minmax_oracle_with(2.0, 4.0, 3, &OracleOptions { complex: true, ..Default::default() }).unwrap();
    assert!((real.value - complex.value).abs() < 1e-6);
    assert!(real.coeffs.iter().all(|c| c.im == 0.0));
}

#[test]
fn faber_and_conformal_rates_agree() {
    let map = ExteriorMapRectangle::with_truncation(2.0, 4.0, 256).unwrap();
    let faber = faber_curve(&map, 61).unwrap();
    let conf: Vec<f64> = (59..=61).map(|k| conformal_bound(2.0, 4.0, k).unwrap()).collect();
    let slope_f = (faber[61].ln() - faber[59].ln()) / 2.0;
    let slope_c = (conf[2].ln() - conf[0].ln()) / 2.0;
    assert!((slope_f - slope_c).abs() <= 0.05 * slope_c.abs(), "{slope_f} vs {slope_c}");
    assert!(close(conformal_lower_bound(2.0, 4.0, 60).unwrap(), map.gamma.powi(60), 1e-15));
}

#[test]
fn thin_rectangle_stays_close_to_the_segment() {
    // the exact segment has gamma = 1/(3 + sqrt 8); widening the set can only raise it
    let seg = 1.0 / (3.0 + 8f64.sqrt());
    let thin = ExteriorMapRectangle::new(2.0, 0.01).unwrap();
    assert!(thin.gamma > seg && thin.gamma - seg < 1e-2);
    let k = 10;
    let segment_value = {
        let g = seg.powi(k);
        (2.0 + seg).min(2.0 / (1.0 - seg.powi(k + 1))) * g
    };
    let c = conformal_bound(2.0, 0.01, k as usize).unwrap();
    assert!(c > segment_value);
    assert!(close((c / segment_value).ln() / k as f64, (thin.gamma / seg).ln(), 1e-2));
}

#[test]
fn best_curve_follows_the_protocol() {
    let best = best_curve(2.0, 4.0, 40, &BoundMethod::ALL).unwrap();
    assert_eq!(best.method, BoundMethod::Best);
    assert_eq!(best.values[0], Some(1.0));
    assert!(close(best.values[3].unwrap(), 0.9007, 1e-4));
    let curves: Vec<BoundCurve> = BoundMethod::ALL.iter().map(|&m| bound_curve(2.0, 4.0, 40, m).unwrap()).collect();
    for c in &curves {
        for (k, v) in c.values.iter().enumerate() {
            if let Some(v) = v {
                assert!(best.values[k].unwrap() <= *v);
            }
        }
    }
    let absent = bound_curve(201.0, 1.0, 5, BoundMethod::Disk).unwrap();
    assert!(absent.is_absent() && absent.values.iter().all(Option::is_none));
}

#[test]
fn method_names_round_trip() {
    for m in BoundMethod::ALL.into_iter().chain([BoundMethod::Best]) {
        assert_eq!(m.name().parse::<BoundMethod>().unwrap(), m);
    }
    assert!("ellipsoid".parse::<BoundMethod>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disk_beats_elman(mu in 1.0f64..100.0, rho in 0.05f64..50.0, k in 1usize..50) {
        if let Some(d) = disk_bound(mu, rho, k) {
            prop_assert!(d < elman_bound(mu, rho, k));
        }
    }

    #[test]
    fn disk_segment_rate_is_below_sin_beta(mu in 1.01f64..200.0, rho in 0.0f64..200.0) {
        let (beta, gamma) = disk_segment_params(mu, rho);
        prop_assert!(gamma < beta.sin() && beta.sin() < 1.0);
    }

    #[test]
    fn monotone_post_processing(raw in proptest::collection::vec(proptest::option::of(0.0f64..3.0), 1..40)) {
        let out = monotone(&raw);
        let mut last = f64::INFINITY;
        for (r, o) in raw.iter().zip(&out) {
            prop_assert_eq!(r.is_some(), o.is_some());
            if let (Some(r), Some(o)) = (r, o) {
                prop_assert!(*o <= r.min(1.0));
                prop_assert!(*o <= last);
                last = *o;
            }
        }
    }
}
