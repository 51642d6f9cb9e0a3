mod common;

use common::*;
use proptest::prelude::*;
use wgmres::deflation::{build_spectral_space, GevpKind};
use wgmres::fov::*;
use wgmres::linalg::{vector, ComplexMatrix, InnerProduct};
use wgmres::problem::*;
use wgmres::{Error, C64};

fn cdr(nx: usize, eta: f64) -> AssembledProblem {
    build_cdr(&CdrProblemSpec { nx, eta, ..Default::default() }).unwrap()
}

/// Random unit-free FOV points `<B x, x>_W / <x, x>_W`.
fn weighted_quotient(b: &ComplexMatrix, w: &ComplexMatrix, x: &[C64]) -> C64 {
    let wbx = w.matvec(&b.matvec(x));
    vector::dot(x, &wbx) / vector::dot(x, &w.matvec(x))
}

#[test]
fn identity_has_a_single_point() {
    let s = fov_boundary(&ComplexMatrix::identity(4), &InnerProduct::euclidean(4), 16).unwrap();
    assert!(s.boundary_points.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-14));
}

#[test]
fn too_few_angles_are_rejected() {
    let r = fov_boundary(&ComplexMatrix::identity(2), &InnerProduct::euclidean(2), 4);
    assert!(matches!(r, Err(Error::InvalidSpec(_))));
}

#[test]
fn w_hermitian_operator_gives_a_real_segment() {
    // B = W^{-1} S with S Hermitian is self-adjoint in the W inner product
    let mut r = rng(5);
    let w = random_hpd(&mut r, 5, 1.0);
    let g = random_complex(&mut r, 5, 5);
    let s = (&g + &g.adjoint()).scale_real(0.5);
    let ip = InnerProduct::new(w.clone()).unwrap();
    let b = ip.cholesky().inverse().matmul(&s);
    let sample = fov_boundary(&b, &ip, 64).unwrap();
    let eig = wgmres::linalg::hermitian_gen_eig(&s, &w, wgmres::linalg::EigCount::All).unwrap();
    // pairs come ordered by modulus, not value
    let (lmin, lmax) = eig.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, c), z| (a.min(z.re), c.max(z.re)));
    let (lo, hi) = sample.boundary_points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, c), z| (a.min(z.re), c.max(z.re)));
    let worst = sample.boundary_points.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    assert!(worst < 1e-9, "{worst}");
    assert!((lo - lmin).abs() < 1e-9 && (hi - lmax).abs() < 1e-9, "[{lo}, {hi}] vs [{lmin}, {lmax}]");
}

#[test]
fn random_quotients_lie_in_the_sampled_hull() {
    let mut r = rng(9);
    let b = random_complex(&mut r, 6, 6);
    let w = random_hpd(&mut r, 6, 0.5);
    let ip = InnerProduct::new(w.clone()).unwrap();
    let sample = fov_boundary(&b, &ip, 180).unwrap();
    for _ in 0..500 {
        let x = random_vector(&mut r, 6);
        assert!(sample.contains(weighted_quotient(&b, &w, &x), 1e-8));
    }
    // boundary points themselves are quotients, so they satisfy every support line
    assert!(sample.boundary_points.iter().all(|&z| sample.contains(z, 1e-8)));
}

#[test]
fn exact_preconditioner_collapses_the_real_extent() {
    let p = cdr(8, 100.0);
    let s = build_preconditioner(&p, PreconditionerKind::ExactM, Placement::Left).unwrap();
    let d = EnclosureData::compute(&p, &s).unwrap();
    let (o1, o2) = (d.omega1().unwrap(), d.omega2().unwrap());
    assert!((o1.re_min - 1.0).abs() < 1e-10 && (o1.re_max - 1.0).abs() < 1e-10);
    assert!((o1.im_half - d.rho_minv_n).abs() < 1e-10 * d.rho_minv_n);
    assert!((o2.im_half - o1.im_half).abs() < 1e-9 * o1.im_half);
}

#[test]
fn no_convection_gives_flat_rectangles() {
    let p = cdr(8, 0.0);
    let s = build_preconditioner(&p, PreconditionerKind::JacobiM, Placement::Left).unwrap();
    let (o1, o2) = (enclosure_omega1(&p, &s).unwrap(), enclosure_omega2(&p, &s).unwrap());
    assert_eq!(o1.im_half, 0.0);
    assert_eq!(o2.im_half, 0.0);
    assert!(o1.re_min < o1.re_max);
}

#[test]
fn preconditioned_fov_lies_in_the_enclosures() {
    let p = cdr(16, 100.0);
    let s = build_preconditioner(&p, PreconditionerKind::JacobiM, Placement::Left).unwrap();
    let d = EnclosureData::compute(&p, &s).unwrap();
    let (o1, o2) = (d.omega1().unwrap(), d.omega2().unwrap());
    assert!(o1.im_half <= o2.im_half + 1e-10);
    assert_eq!((o1.re_min, o1.re_max), (o2.re_min, o2.re_max));
    let slack = 1e-8 * o1.re_max.max(o1.im_half);
    let mut r = rng(16);
    for _ in 0..500 {
        let x = random_vector(&mut r, p.dim());
        let q = h_rayleigh_quotient(&p.a, s.h(), &x);
        assert!(o1.contains(q, slack), "{q} outside {o1:?}");
    }
    let ah = &p.a * s.h();
    let sample = fov_boundary(&ah, &InnerProduct::new(s.h().clone()).unwrap(), 64).unwrap();
    for z in sample.boundary_points {
        assert!(o1.contains(z, slack) && o2.contains(z, slack));
    }
}

#[test]
fn imaginary_extent_matches_power_iteration() {
    // rho(N H) is the spectral norm of the skew matrix L^* N L, H = L L^*
    let p = cdr(10, 100.0);
    let s = build_preconditioner(&p, PreconditionerKind::BlockJacobiM(3), Placement::Left).unwrap();
    let o1 = enclosure_omega1(&p, &s).unwrap();
    let l = s.h_cholesky().factor();
    let k = &(&l.adjoint() * &p.n) * l;
    let kk = &k.adjoint() * &k;
    let mut x = random_vector(&mut rng(2), p.dim());
    let mut est = 0.0;
    for _ in 0..3000 {
        let y = kk.matvec(&x);
        let ny = vector::norm2(&y);
        est = ny / vector::norm2(&x);
        x = y.iter().map(|v| v / ny).collect();
    }
    assert!((est.sqrt() - o1.im_half).abs() < 1e-10 * o1.im_half, "{} vs {}", est.sqrt(), o1.im_half);
}

#[test]
fn deflated_rectangles_only_shrink_vertically() {
    let p = cdr(12, 100.0);
    let s = build_preconditioner(&p, PreconditionerKind::JacobiM, Placement::Left).unwrap();
    let d = EnclosureData::compute(&p, &s).unwrap();
    for kind in [GevpKind::Hn, GevpKind::MinvN] {
        let base = match kind {
            GevpKind::Hn => d.omega1().unwrap(),
            GevpKind::MinvN => d.omega2().unwrap(),
        };
        let mut prev = f64::INFINITY;
        for m in (0..=16).step_by(4) {
            let space = build_spectral_space(&p, &s, kind, m).unwrap();
            let rect = enclosure_tau(&p, &s, &space).unwrap();
            assert_eq!((rect.re_min, rect.re_max), (base.re_min, base.re_max));
            if m == 0 {
                assert!((rect.im_half - base.im_half).abs() <= 1e-12 * base.im_half, "{kind}");
            }
            assert!(rect.im_half <= prev);
            prev = rect.im_half;
        }
    }
}

#[test]
fn normalizing_the_reported_rectangle() {
    let r = Rectangle::new(0.21, 3.00, 48.9).unwrap().normalize();
    assert!((r.mu - 14.29).abs() < 0.01 && (r.rho - 232.9).abs() < 0.1, "{r:?}");
    let unit = Rectangle::new(1.0, 5.0, 2.0).unwrap().normalize();
    assert_eq!((unit.mu, unit.rho, unit.scale), (5.0, 2.0, 1.0));
    assert!(matches!(Rectangle::new(0.0, 1.0, 1.0), Err(Error::NonPositiveRealPart(_))));
    assert!(matches!(Rectangle::new(-1.0, 1.0, 1.0), Err(Error::NonPositiveRealPart(_))));
}

proptest! {
    #[test]
    fn normalization_is_dilation_invariant(lo in 0.01f64..10.0, width in 0.0f64..100.0, h in 0.0f64..100.0, a in 1e-3f64..1e3) {
        let r = Rectangle::new(lo, lo + width, h).unwrap().normalize();
        let s = Rectangle::new(a * lo, a * (lo + width), a * h).unwrap().normalize();
        prop_assert!((r.mu - s.mu).abs() <= 1e-13 * r.mu);
        prop_assert!((r.rho - s.rho).abs() <= 1e-13 * r.rho.max(1.0));
    }
}
