use std::f64::consts::SQRT_2;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use wgmres::bounds::{bound_curves, best_of, BoundCurve, BoundMethod};
use wgmres::deflation::{make_pairing, DeflationPairing, GevpKind, PairingVariant, SpectralDecomposition};
use wgmres::fov::{fov_boundary, EnclosureData, NormalizedRectangle, Rectangle};
use wgmres::gmres::{gmres_solve, GmresConfig, GmresTrace};
use wgmres::linalg::mmio::{read_matrix_market_file, read_vector_file, write_matrix_market_file, write_vector_file};
use wgmres::linalg::{split_hermitian_skew, InnerProduct};
use wgmres::problem::{
    build_cdr, build_preconditioner, AssembledProblem, CdrProblemSpec, Placement, PreconditionerKind, PreconditionerSetup,
};
use wgmres::Exec;

use crate::config::RunConfig;
use crate::svg::{self, Series};
use crate::CliError;

trait Ctx<T> {
    fn ctx(self, module: &'static str) -> Result<T, CliError>;
}

impl<T> Ctx<T> for wgmres::Result<T> {
    fn ctx(self, module: &'static str) -> Result<T, CliError> {
        self.map_err(|err| match err {
            wgmres::Error::Io(m) => CliError::Io(m),
            err => CliError::Numeric { module, err },
        })
    }
}

/// Scientific notation with 17 significant digits; `NA` for absent values.
fn num(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => "NA".into(),
    }
}

fn out_path(cfg: &RunConfig, name: &str) -> Result<PathBuf, CliError> {
    let dir = cfg.path("output.dir");
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    Ok(dir.join(name))
}

fn write_file(cfg: &RunConfig, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = out_path(cfg, name)?;
    std::fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn load_problem(cfg: &RunConfig) -> Result<AssembledProblem, CliError> {
    if cfg.text("problem.source") == "files" {
        return load_problem_files(&cfg.path("problem.dir"));
    }
    let spec = CdrProblemSpec {
        nx: cfg.usize("problem.nx"),
        c0: cfg.float("problem.c0"),
        nu: cfg.float("problem.nu"),
        eta: cfg.float("problem.eta"),
    };
    spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
    build_cdr(&spec).ctx("problem-gen")
}

/// `A.mtx` and `b.vec` are required; `M.mtx`/`N.mtx` default to the Hermitian/skew split of `A`.
fn load_problem_files(dir: &Path) -> Result<AssembledProblem, CliError> {
    let a = read_matrix_market_file(dir.join("A.mtx")).ctx("core-linalg")?;
    let b = read_vector_file(dir.join("b.vec")).ctx("core-linalg")?;
    let (m_path, n_path) = (dir.join("M.mtx"), dir.join("N.mtx"));
    let (m, n) = if m_path.exists() && n_path.exists() {
        (read_matrix_market_file(m_path).ctx("core-linalg")?, read_matrix_market_file(n_path).ctx("core-linalg")?)
    } else {
        split_hermitian_skew(&a).ctx("core-linalg")?
    };
    if b.len() != a.rows() || m.rows() != a.rows() || n.rows() != a.rows() {
        return Err(CliError::Numeric {
            module: "core-linalg",
            err: wgmres::Error::DimensionMismatch("input files disagree in size".into()),
        });
    }
    Ok(AssembledProblem { spec: CdrProblemSpec::default(), a, m, n, b })
}

fn preconditioner(cfg: &RunConfig, problem: &AssembledProblem) -> Result<PreconditionerSetup, CliError> {
    let kind = match cfg.text("precond.kind") {
        "exact-m" => PreconditionerKind::ExactM,
        "jacobi-m" => PreconditionerKind::JacobiM,
        "block-jacobi-m" => PreconditionerKind::BlockJacobiM(cfg.usize("precond.blocks")),
        _ => PreconditionerKind::Identity,
    };
    let placement = match cfg.text("precond.placement") {
        "left" => Placement::Left,
        "right" => Placement::Right,
        _ => Placement::Split,
    };
    build_preconditioner(problem, kind, placement).ctx("problem-gen")
}

fn gevp_kind(name: &str) -> GevpKind {
    if name == "minv-n" {
        GevpKind::MinvN
    } else {
        GevpKind::Hn
    }
}

fn variant(cfg: &RunConfig) -> PairingVariant {
    match cfg.text("deflation.variant") {
        "z-equals-y" => PairingVariant::ZEqualsY,
        "z-equals-ny" => PairingVariant::ZEqualsNy,
        _ => PairingVariant::YHaz,
    }
}

fn pairing(
    decomposition: &SpectralDecomposition,
    problem: &AssembledProblem,
    setup: &PreconditionerSetup,
    m: usize,
    variant: PairingVariant,
) -> Result<DeflationPairing, CliError> {
    let space = decomposition.space(m).ctx("deflation")?;
    make_pairing(&space, problem, setup, variant).ctx("deflation")
}

fn gmres_config(cfg: &RunConfig) -> GmresConfig {
    GmresConfig { tol: cfg.float("solver.tol"), max_it: cfg.usize("solver.max_it"), x0: None }
}

fn methods(cfg: &RunConfig) -> Vec<BoundMethod> {
    match cfg.text("bounds.methods") {
        "all" => BoundMethod::ALL.to_vec(),
        list => list.split(',').map(|s| s.trim().parse().expect("validated")).collect(),
    }
}

pub fn problem(cfg: &RunConfig) -> Result<(), CliError> {
    let p = load_problem(cfg)?;
    for (name, mat) in [("A.mtx", &p.a), ("M.mtx", &p.m), ("N.mtx", &p.n)] {
        write_matrix_market_file(mat, out_path(cfg, name)?).ctx("core-linalg")?;
    }
    write_vector_file(&p.b, out_path(cfg, "b.vec")?).ctx("core-linalg")?;
    println!("n = {}", p.dim());
    Ok(())
}

fn trace_csv(trace: &GmresTrace) -> String {
    let mut s = String::from("k,residual_norm,relative_residual\n");
    for (k, (r, rel)) in trace.residual_norms.iter().zip(trace.relative_residuals()).enumerate() {
        let _ = writeln!(s, "{k},{},{}", num(Some(*r)), num(Some(rel)));
    }
    s
}

pub fn solve(cfg: &RunConfig) -> Result<(), CliError> {
    let p = load_problem(cfg)?;
    let setup = preconditioner(cfg, &p)?;
    let defl = match cfg.text("deflation.kind") {
        "none" => None,
        kind => {
            let d = SpectralDecomposition::compute(&p, &setup, gevp_kind(kind)).ctx("deflation")?;
            Some(pairing(&d, &p, &setup, cfg.usize("deflation.m"), variant(cfg))?)
        }
    };
    let trace = gmres_solve(&p.a, &p.b, &setup, defl.as_ref().map(|d| &d.operator), &gmres_config(cfg)).ctx("gmres-engine")?;
    write_file(cfg, "trace.csv", &trace_csv(&trace))?;
    match trace.iterations_to_tol {
        Some(k) => println!("iterations_to_tol = {k}"),
        None => println!("iterations_to_tol = none (stopped after {})", trace.residual_norms.len() - 1),
    }
    Ok(())
}

fn bounds_csv(curves: &[BoundCurve]) -> String {
    let mut s = String::from("k,method,raw,clipped\n");
    for c in curves {
        for (k, (raw, clipped)) in c.raw.iter().zip(&c.values).enumerate() {
            let _ = writeln!(s, "{k},{},{},{}", c.method, num(*raw), num(*clipped));
        }
    }
    s
}

fn curves_for(rect: NormalizedRectangle, k_max: usize, methods: &[BoundMethod]) -> Result<Vec<BoundCurve>, CliError> {
    let mut curves = bound_curves(rect.mu, rect.rho, k_max, methods, Exec::default()).ctx("minmax-bounds")?;
    let best = best_of(&curves);
    curves.push(best);
    Ok(curves)
}

pub fn bounds(cfg: &RunConfig) -> Result<(), CliError> {
    let rect = match (cfg.opt_float("bounds.mu"), cfg.opt_float("bounds.rho")) {
        (Some(mu), Some(rho)) => NormalizedRectangle::new(mu, rho).ctx("fov-enclosures")?,
        (None, None) => {
            let p = load_problem(cfg)?;
            let setup = preconditioner(cfg, &p)?;
            EnclosureData::compute(&p, &setup).ctx("fov-enclosures")?.omega1().ctx("fov-enclosures")?.normalize()
        }
        _ => return Err(CliError::Config("bounds.mu and bounds.rho must be set together".into())),
    };
    let curves = curves_for(rect, cfg.usize("bounds.k_max"), &methods(cfg))?;
    write_file(cfg, "bounds.csv", &bounds_csv(&curves))?;
    let series: Vec<Series> = curves
        .iter()
        .filter(|c| !c.is_absent())
        .map(|c| Series {
            name: c.method.to_string(),
            points: c.values.iter().enumerate().filter_map(|(k, v)| v.map(|v| (k as f64, v))).collect(),
            closed: false,
            dashed: c.method == BoundMethod::Best,
        })
        .collect();
    let title = format!("Bounds for K_k on [1, {:.4}] + i[-{:.4}, {:.4}]", rect.mu, rect.rho, rect.rho);
    write_file(cfg, "bounds.svg", &svg::chart(&title, "k", "bound", &series, true, false))?;
    println!("mu = {:.16e}, rho = {:.16e}", rect.mu, rect.rho);
    Ok(())
}

fn rect_series(name: &str, r: &Rectangle) -> Series {
    let c = r.corners();
    Series { name: name.into(), points: c.iter().map(|z| (z.re, z.im)).collect(), closed: true, dashed: true }
}

pub fn fov(cfg: &RunConfig) -> Result<(), CliError> {
    let p = load_problem(cfg)?;
    let setup = preconditioner(cfg, &p)?;
    // FOV^H(A H)
    let ah = p.a.matmul(setup.h());
    let ip = InnerProduct::from_cholesky(setup.h_cholesky().clone());
    let sample = fov_boundary(&ah, &ip, cfg.usize("fov.angles")).ctx("fov-enclosures")?;
    let data = EnclosureData::compute(&p, &setup).ctx("fov-enclosures")?;
    let (o1, o2) = (data.omega1().ctx("fov-enclosures")?, data.omega2().ctx("fov-enclosures")?);
    let mut s = String::from("theta,re,im,support\n");
    for ((t, z), h) in sample.angles.iter().zip(&sample.boundary_points).zip(&sample.support) {
        let _ = writeln!(s, "{},{},{},{}", num(Some(*t)), num(Some(z.re)), num(Some(z.im)), num(Some(*h)));
    }
    write_file(cfg, "fov.csv", &s)?;
    let boundary = Series {
        name: "FOV boundary".into(),
        points: sample.boundary_points.iter().map(|z| (z.re, z.im)).collect(),
        closed: true,
        dashed: false,
    };
    let series = [boundary, rect_series("Omega1", &o1), rect_series("Omega2", &o2)];
    write_file(cfg, "fov.svg", &svg::chart("Field of values and enclosures", "Re", "Im", &series, false, false))?;
    println!(
        "omega1 = [{:.16e}, {:.16e}] + i[-{:.16e}, {:.16e}]",
        o1.re_min, o1.re_max, o1.im_half, o1.im_half
    );
    println!(
        "omega2 = [{:.16e}, {:.16e}] + i[-{:.16e}, {:.16e}]",
        o2.re_min, o2.re_max, o2.im_half, o2.im_half
    );
    Ok(())
}

pub fn spectrum(cfg: &RunConfig) -> Result<(), CliError> {
    let p = load_problem(cfg)?;
    let setup = preconditioner(cfg, &p)?;
    let d = SpectralDecomposition::compute(&p, &setup, gevp_kind(cfg.text("spectrum.kind"))).ctx("deflation")?;
    let mut s = String::from("j,re,im,modulus\n");
    for (j, v) in d.pairs.values.iter().enumerate() {
        let _ = writeln!(s, "{},{},{},{}", j + 1, num(Some(v.re)), num(Some(v.im)), num(Some(v.norm())));
    }
    write_file(cfg, "spectrum.csv", &s)?;
    let series = [Series {
        name: "|lambda_j|".into(),
        points: d.pairs.values.iter().enumerate().map(|(j, v)| ((j + 1) as f64, v.norm())).collect(),
        closed: false,
        dashed: false,
    }];
    write_file(cfg, "spectrum.svg", &svg::chart("Spectrum modulus", "j", "|lambda_j|", &series, true, false))?;
    println!("spectral radius = {:.16e}", d.radius());
    Ok(())
}

pub fn compare(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = match cfg.text("deflation.kind") {
        "none" => return Err(CliError::Config("compare needs deflation.kind = hn or minv-n".into())),
        k => gevp_kind(k),
    };
    let p = load_problem(cfg)?;
    let setup = preconditioner(cfg, &p)?;
    let data = EnclosureData::compute(&p, &setup).ctx("fov-enclosures")?;
    let decomposition = SpectralDecomposition::compute(&p, &setup, kind).ctx("deflation")?;
    let ks = cfg.usize_list("compare.k_list");
    let k_max = ks.iter().copied().max().unwrap_or(0);
    let variant = variant(cfg);
    let mut s = String::from("m,tau,k,bound,achieved,iterations_to_tol,y_equals_haz\n");
    let mut violations = 0;
    for m in cfg.usize_list("compare.m_list") {
        let space = decomposition.space(m).ctx("deflation")?;
        let pair = make_pairing(&space, &p, &setup, variant).ctx("deflation")?;
        let rect = data.deflated(&space).ctx("fov-enclosures")?;
        let best = best_of(&curves_for(rect.normalize(), k_max, &BoundMethod::ALL)?);
        let trace = gmres_solve(&p.a, &p.b, &setup, Some(&pair.operator), &gmres_config(cfg)).ctx("gmres-engine")?;
        let rel = trace.relative_residuals();
        let its = trace.iterations_to_tol.map_or("NA".to_string(), |k| k.to_string());
        for &k in &ks {
            let bound = best.values[k].map(|v| (1.0 + SQRT_2) * v);
            // past convergence the residual stays at its final value
            let achieved = rel.get(k).or(rel.last()).copied();
            if pair.hypotheses.y_equals_haz
                && matches!((achieved, bound), (Some(a), Some(b)) if a > b * (1.0 + 1e-12))
            {
                violations += 1;
            }
            let _ = writeln!(
                s,
                "{m},{},{k},{},{},{its},{}",
                num(Some(pair.tau)),
                num(bound),
                num(achieved),
                pair.hypotheses.y_equals_haz
            );
        }
    }
    write_file(cfg, "compare.csv", &s)?;
    if violations > 0 {
        eprintln!("warning: {violations} rows exceed the (1+sqrt 2) bound although Y = HAZ holds");
    }
    Ok(())
}
