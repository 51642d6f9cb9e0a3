mod common;

use common::*;
use proptest::prelude::*;
use wgmres::deflation::{build_spectral_space, make_pairing, GevpKind, PairingVariant};
use wgmres::gmres::{gmres_solve, krylov_ls_oracle, GmresConfig};
use wgmres::linalg::{vector, ComplexMatrix};
use wgmres::problem::*;
use wgmres::Error;

fn cfg(tol: f64) -> GmresConfig {
    GmresConfig { tol, max_it: 200, x0: None }
}

#[test]
fn identity_converges_in_one_step() {
    let n = 5;
    let b = random_vector(&mut rng(1), n);
    let s = PreconditionerSetup::from_hpd(ComplexMatrix::identity(n), Placement::Right).unwrap();
    let t = gmres_solve(&ComplexMatrix::identity(n), &b, &s, None, &cfg(1e-12)).unwrap();
    assert_eq!(t.iterations_to_tol, Some(1));
    assert_eq!(t.residual_norms.len(), 2);
    assert!(t.residual_norms[1] < 1e-15);
    assert!(vec_diff(&t.solution, &b) < 1e-15);
}

#[test]
fn matches_oracle_on_small_random_system() {
    let mut r = rng(4);
    let a = random_pd(&mut r, 4, 1.0);
    let b = random_vector(&mut r, 4);
    let s = PreconditionerSetup::from_hpd(ComplexMatrix::identity(4), Placement::Right).unwrap();
    let t = gmres_solve(&a, &b, &s, None, &cfg(1e-14)).unwrap();
    for (k, &res) in t.residual_norms.iter().enumerate() {
        let o = krylov_ls_oracle(&a, &b, &s, None, k).unwrap();
        assert!((res - o).abs() <= 1e-10 * t.residual_norms[0], "k = {k}: {res} vs {o}");
    }
}

#[test]
fn oracle_endpoints() {
    let mut r = rng(6);
    let a = random_pd(&mut r, 6, 2.0);
    let b = random_vector(&mut r, 6);
    let h = random_hpd(&mut r, 6, 1.0);
    for placement in [Placement::Left, Placement::Right, Placement::Split] {
        let s = PreconditionerSetup::from_hpd(h.clone(), placement).unwrap();
        let r0 = s.weight().norm(&s.h_left().apply(&b));
        assert!((krylov_ls_oracle(&a, &b, &s, None, 0).unwrap() - r0).abs() <= 1e-15 * r0);
        assert!(krylov_ls_oracle(&a, &b, &s, None, 6).unwrap() <= 1e-9 * r0);
        let t = gmres_solve(&a, &b, &s, None, &cfg(1e-14)).unwrap();
        let o3 = krylov_ls_oracle(&a, &b, &s, None, 3).unwrap();
        assert!((t.residual_norms[3] - o3).abs() <= 1e-10 * r0, "{placement}");
    }
}

#[test]
fn right_and_split_placements_agree() {
    let p = build_cdr(&CdrProblemSpec { nx: 8, ..Default::default() }).unwrap();
    let right = build_preconditioner(&p, PreconditionerKind::JacobiM, Placement::Right).unwrap();
    let split = right.with_placement(Placement::Split).unwrap();
    let tr = gmres_solve(&p.a, &p.b, &right, None, &cfg(1e-10)).unwrap();
    let ts = gmres_solve(&p.a, &p.b, &split, None, &cfg(1e-10)).unwrap();
    assert_eq!(tr.iterations_to_tol, ts.iterations_to_tol);
    for (x, y) in tr.residual_norms.iter().zip(&ts.residual_norms) {
        assert!((x - y).abs() <= 1e-10 * tr.residual_norms[0]);
    }
    assert!(vec_diff(&tr.solution, &ts.solution) <= 1e-8 * vector::norm2(&tr.solution));
}

#[test]
fn converged_solution_solves_the_system() {
    let p = build_cdr(&CdrProblemSpec { nx: 8, ..Default::default() }).unwrap();
    let s = build_preconditioner(&p, PreconditionerKind::ExactM, Placement::Left).unwrap();
    let t = gmres_solve(&p.a, &p.b, &s, None, &cfg(1e-10)).unwrap();
    let k = t.iterations_to_tol.expect("converges");
    assert!(t.residual_norms[k] <= 1e-10 * t.reference_norm * (1.0 + 1e-13));
    let r = vector::sub(&p.b, &p.a.matvec(&t.solution));
    let hr = s.weight().norm(&s.h_left().apply(&r));
    assert!(hr <= 1e-9 * t.reference_norm);
}

#[test]
fn deflated_run_does_not_break_down() {
    let p = build_cdr(&CdrProblemSpec { nx: 10, ..Default::default() }).unwrap();
    let s = build_preconditioner(&p, PreconditionerKind::JacobiM, Placement::Left).unwrap();
    for kind in [GevpKind::Hn, GevpKind::MinvN] {
        let space = build_spectral_space(&p, &s, kind, 8).unwrap();
        let pair = make_pairing(&space, &p, &s, PairingVariant::YHaz).unwrap();
        let t = gmres_solve(&p.a, &p.b, &s, Some(&pair.operator), &cfg(1e-10)).unwrap();
        assert!(t.iterations_to_tol.is_some(), "{kind}");
        let r = vector::sub(&p.b, &p.a.matvec(&t.solution));
        let hr = s.weight().norm(&s.h_left().apply(&r));
        assert!(hr <= 1e-8 * t.reference_norm, "{kind}: {hr}");
    }
}

#[test]
fn invalid_configuration_is_rejected() {
    let n = 3;
    let s = PreconditionerSetup::from_hpd(ComplexMatrix::identity(n), Placement::Left).unwrap();
    let a = ComplexMatrix::identity(n);
    let b = random_vector(&mut rng(2), n);
    let bad_tol = GmresConfig { tol: 0.0, ..Default::default() };
    assert!(matches!(gmres_solve(&a, &b, &s, None, &bad_tol), Err(Error::InvalidSpec(_))));
    let bad_it = GmresConfig { max_it: 0, ..Default::default() };
    assert!(matches!(gmres_solve(&a, &b, &s, None, &bad_it), Err(Error::InvalidSpec(_))));
    assert!(matches!(gmres_solve(&a, &b[..2], &s, None, &cfg(1e-8)), Err(Error::DimensionMismatch(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residuals_are_monotone_and_optimal(seed in any::<u64>(), n in 2usize..20, skew in 0.0f64..5.0, p in 0usize..3) {
        let mut r = rng(seed);
        let a = random_pd(&mut r, n, skew);
        let b = random_vector(&mut r, n);
        let h = random_hpd(&mut r, n, 0.5);
        let placement = [Placement::Left, Placement::Right, Placement::Split][p];
        let s = PreconditionerSetup::from_hpd(h, placement).unwrap();
        let t = gmres_solve(&a, &b, &s, None, &GmresConfig { tol: 1e-12, max_it: n, x0: None }).unwrap();
        let r0 = t.residual_norms[0];
        for w in t.residual_norms.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-13 * r0);
        }
        for k in 0..t.residual_norms.len().min(6) {
            let o = krylov_ls_oracle(&a, &b, &s, None, k).unwrap();
            prop_assert!((t.residual_norms[k] - o).abs() <= 1e-9 * r0, "k = {}: {} vs {}", k, t.residual_norms[k], o);
        }
    }
}
