use std::f64::consts::{FRAC_PI_4, PI};

use proptest::prelude::*;
use wgmres::fov::Rectangle;
use wgmres::scmap::*;
use wgmres::{Error, C64};

fn map(mu: f64, rho: f64) -> ExteriorMapRectangle {
    ExteriorMapRectangle::new(mu, rho).unwrap()
}

/// Chebyshev polynomial of the first kind by the three-term recurrence.
fn chebyshev(k: usize, x: C64) -> C64 {
    let (mut a, mut b) = (C64::new(1.0, 0.0), x);
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        (a, b) = (b, x * b * 2.0 - a);
    }
    b
}

#[test]
fn square_has_symmetric_prevertices_and_known_capacity() {
    let m = map(3.0, 1.0);
    assert!((m.alpha_pre - FRAC_PI_4).abs() < 1e-10);
    // Gamma(1/4)^2 * side / (4 pi^{3/2}) with side 2
    let gamma_quarter: f64 = 3.625_609_908_221_908;
    let cap = gamma_quarter.powi(2) * 2.0 / (4.0 * PI.powf(1.5));
    assert!((m.scale_c1 - cap).abs() < 1e-6, "{} vs {cap}", m.scale_c1);
    assert!((m.laurent.capacity() - cap).abs() < 1e-6);
}

#[test]
fn side_ratio_is_strictly_monotone() {
    let ratios: Vec<f64> = (1..100)
        .map(|j| {
            let (right, top) = side_lengths(j as f64 * PI / 200.0);
            top / right
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn prevertex_angle_tends_to_the_vertical_segment_limit() {
    // as mu -> 1 the top side vanishes and so does the top arc [alpha, pi - alpha]
    let alphas: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4].iter().map(|e| solve_parameter(1.0 + e, 1.0).unwrap()).collect();
    assert!(alphas.windows(2).all(|w| w[1] > w[0]), "{alphas:?}");
    assert!(PI / 2.0 - alphas[3] < 0.05);
}

#[test]
fn corners_are_collocated() {
    for (mu, rho) in [(2.0, 4.0), (3.0, 1.0), (14.3, 233.0), (50.0, 0.5), (1.1, 0.1)] {
        let m = map(mu, rho);
        let eps = 1e-8 * m.diameter();
        for (w, z) in m.prevertices().into_iter().zip(m.corners()) {
            let got = m.psi_eval(w).unwrap();
            assert!((got - z).norm() <= eps, "({mu}, {rho}): {got} vs {z}");
        }
    }
}

#[test]
fn map_commutes_with_conjugation() {
    let m = map(2.0, 4.0);
    for w in [C64::new(1.2, 0.7), C64::new(-0.3, 2.0), C64::from_polar(1.0, 0.4), C64::new(5.0, -3.0)] {
        let (a, b) = (m.psi_eval(w.conj()).unwrap(), m.psi_eval(w).unwrap().conj());
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn laurent_tail_is_small_far_away() {
    let m = map(2.0, 4.0);
    let l = &m.laurent;
    for t in [0.0, 1.0, 2.5] {
        let w = C64::from_polar(1e3, t);
        let diff = (m.psi_eval(w).unwrap() - (l.c1 * w + l.c0)).norm();
        assert!(diff <= l.tail[0].norm() / 1e3 * 1.1, "{diff}");
    }
}

#[test]
fn evaluation_inside_the_disk_is_an_error() {
    let m = map(2.0, 4.0);
    assert!(matches!(m.psi_eval(C64::new(0.5, 0.0)), Err(Error::InsideDisk(_))));
    assert!(matches!(ExteriorMapRectangle::new(0.5, 1.0), Err(Error::DegenerateRectangle(_))));
}

#[test]
fn gamma_of_segments() {
    let seg = 1.0 / (3.0 + 8f64.sqrt());
    let h = map(2.0, 0.0);
    assert_eq!(h.shape, MapShape::HorizontalSegment);
    assert!((h.gamma - seg).abs() < 1e-12);
    let thin = map(2.0, 0.01);
    assert!((thin.gamma - seg).abs() < 1e-2 && thin.gamma > seg, "{}", thin.gamma);
    // 1 + i[-rho, rho]: gamma = rho / (1 + sqrt(1 + rho^2))
    let v = map(1.0, 4.0);
    assert_eq!(v.shape, MapShape::VerticalSegment);
    assert!((v.gamma - 4.0 / (1.0 + 17f64.sqrt())).abs() < 1e-12);
    // zero is mapped from the negative real axis
    let r = map(2.0, 4.0);
    assert!(r.psi_eval(C64::new(-r.phi0, 0.0)).unwrap().norm() < 1e-10);
}

#[test]
fn gamma_stays_in_the_unit_interval() {
    for i in 0..10 {
        for j in 0..10 {
            let mu = 1.1 + (50.0 - 1.1) * i as f64 / 9.0;
            let rho = 0.1 + (50.0 - 0.1) * j as f64 / 9.0;
            let g = map(mu, rho).gamma;
            assert!(g > 0.0 && g < 1.0, "({mu}, {rho}): {g}");
        }
    }
}

#[test]
fn disk_faber_polynomials() {
    let (c, r) = (C64::new(3.0, 0.5), 2.0);
    let l = LaurentMap::disk(c, r);
    let vals = l.faber_values(C64::new(0.0, 0.0), 12).unwrap();
    for (k, v) in vals.iter().enumerate() {
        let expect = (c.norm() / r).powi(k as i32);
        assert!((v.norm() - expect).abs() <= 1e-10 * expect);
    }
}

#[test]
fn ellipse_faber_polynomials_are_chebyshev() {
    // psi = c + (d/2)(s w + 1/(s w)) has F_k(z) = 2 s^{-k} T_k((z - c)/d)
    let (c, d, s) = (C64::new(2.0, 0.0), 1.5, 1.7);
    let l = LaurentMap::joukowski(c, C64::new(0.5 * d * s, 0.0), C64::new(0.5 * d / s, 0.0));
    for p in 0..10 {
        let z = C64::new(-1.0 + 0.4 * p as f64, 0.3 * (p as f64 - 4.0));
        let vals = l.faber_values(z, 8).unwrap();
        for (k, v) in vals.iter().enumerate().skip(1) {
            let expect = chebyshev(k, (z - c) / d) * 2.0 / s.powi(k as i32);
            assert!((v - expect).norm() <= 1e-8 * (1.0 + expect.norm()), "k = {k}, z = {z}");
        }
    }
}

#[test]
fn truncation_must_cover_the_degree() {
    let m = ExteriorMapRectangle::with_truncation(2.0, 4.0, 20).unwrap();
    assert!(matches!(m.faber_at_zero(30), Err(Error::TruncationTooShort { .. })));
}

#[test]
fn faber_growth_matches_gamma() {
    for (mu, rho) in [(2.0, 4.0), (3.0, 1.0), (10.0, 2.0), (1.5, 20.0)] {
        let m = map(mu, rho);
        let scaled = m.faber_at_zero(60).unwrap();
        // |F_k(0)| = |scaled_k| / gamma^k
        let rate = scaled[60].norm().ln() / 60.0 - m.gamma.ln();
        let expect = -m.gamma.ln();
        assert!((rate - expect).abs() <= 0.05 * expect, "({mu}, {rho}): {rate} vs {expect}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gamma_is_dilation_invariant(mu in 1.2f64..20.0, rho in 0.2f64..20.0, a in 0.01f64..100.0) {
        let r = Rectangle::new(a, a * mu, a * rho).unwrap().normalize();
        let g1 = map(mu, rho).gamma;
        let g2 = map(r.mu, r.rho).gamma;
        prop_assert!((g1 - g2).abs() <= 1e-10);
    }
}
