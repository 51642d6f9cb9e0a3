//! Flat `section.key = value` configuration with a fixed schema.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Usize,
    Float,
    /// Float or empty (unset).
    OptFloat,
    Choice(&'static [&'static str]),
    UsizeList,
    Methods,
    Path,
}

struct Key {
    name: &'static str,
    default: &'static str,
    kind: Kind,
    help: &'static str,
}

const PRECONDS: &[&str] = &["exact-m", "jacobi-m", "block-jacobi-m", "identity"];
const METHODS: &[&str] = &["elman", "disk", "disk-segment", "ellipse", "conformal", "faber"];

const SCHEMA: &[Key] = &[
    Key { name: "problem.source", default: "cdr", kind: Kind::Choice(&["cdr", "files"]), help: "assemble the CDR problem or read A.mtx/b.vec (and optionally M.mtx, N.mtx) from problem.dir" },
    Key { name: "problem.dir", default: ".", kind: Kind::Path, help: "input directory for problem.source = files" },
    Key { name: "problem.nx", default: "16", kind: Kind::Usize, help: "interior grid points per dimension" },
    Key { name: "problem.c0", default: "1", kind: Kind::Float, help: "reaction coefficient" },
    Key { name: "problem.nu", default: "1", kind: Kind::Float, help: "viscosity" },
    Key { name: "problem.eta", default: "100", kind: Kind::Float, help: "convection strength" },
    Key { name: "precond.kind", default: "jacobi-m", kind: Kind::Choice(PRECONDS), help: "preconditioner H" },
    Key { name: "precond.blocks", default: "4", kind: Kind::Usize, help: "block count for block-jacobi-m" },
    Key { name: "precond.placement", default: "left", kind: Kind::Choice(&["left", "right", "split"]), help: "placement of H" },
    Key { name: "deflation.kind", default: "none", kind: Kind::Choice(&["none", "hn", "minv-n"]), help: "spectral deflation space" },
    Key { name: "deflation.m", default: "0", kind: Kind::Usize, help: "deflation space size (even)" },
    Key { name: "deflation.variant", default: "y-haz", kind: Kind::Choice(&["y-haz", "z-equals-y", "z-equals-ny"]), help: "pairing of Y and Z" },
    Key { name: "solver.tol", default: "1e-10", kind: Kind::Float, help: "relative stopping tolerance" },
    Key { name: "solver.max_it", default: "500", kind: Kind::Usize, help: "iteration limit" },
    Key { name: "bounds.methods", default: "all", kind: Kind::Methods, help: "comma-separated bound methods or 'all'" },
    Key { name: "bounds.k_max", default: "100", kind: Kind::Usize, help: "largest polynomial degree" },
    Key { name: "bounds.mu", default: "", kind: Kind::OptFloat, help: "normalized rectangle [1, mu] + i[-rho, rho]; empty = Omega1 of the problem" },
    Key { name: "bounds.rho", default: "", kind: Kind::OptFloat, help: "see bounds.mu" },
    Key { name: "fov.angles", default: "360", kind: Kind::Usize, help: "supporting directions sampled" },
    Key { name: "spectrum.kind", default: "hn", kind: Kind::Choice(&["hn", "minv-n"]), help: "pencil N x = l H^-1 x (hn) or N x = l M x (minv-n)" },
    Key { name: "compare.m_list", default: "0,10,30", kind: Kind::UsizeList, help: "deflation sizes compared" },
    Key { name: "compare.k_list", default: "10,20,40", kind: Kind::UsizeList, help: "iterations reported" },
    Key { name: "output.dir", default: ".", kind: Kind::Path, help: "directory receiving all outputs" },
];

#[derive(Debug, Clone)]
pub struct RunConfig {
    values: BTreeMap<&'static str, String>,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn validate(key: &Key, value: &str) -> Result<(), CliError> {
    let bad = |what: &str| config_error(format!("{} = '{value}': expected {what}", key.name));
    match key.kind {
        Kind::Usize => value.parse::<usize>().map(|_| ()).map_err(|_| bad("a non-negative integer")),
        Kind::Float => match value.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(()),
            _ => Err(bad("a finite number")),
        },
        Kind::OptFloat if value.is_empty() => Ok(()),
        Kind::OptFloat => match value.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(()),
            _ => Err(bad("a finite number or nothing")),
        },
        Kind::Choice(opts) if opts.contains(&value) => Ok(()),
        Kind::Choice(opts) => Err(bad(&format!("one of {}", opts.join(", ")))),
        Kind::UsizeList => {
            if value.split(',').all(|s| s.trim().parse::<usize>().is_ok()) {
                Ok(())
            } else {
                Err(bad("a comma-separated list of integers"))
            }
        }
        Kind::Methods if value == "all" => Ok(()),
        Kind::Methods => {
            if value.split(',').all(|s| METHODS.contains(&s.trim())) {
                Ok(())
            } else {
                Err(bad(&format!("'all' or a list from {}", METHODS.join(", "))))
            }
        }
        Kind::Path if value.is_empty() => Err(bad("a path")),
        Kind::Path => Ok(()),
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { values: SCHEMA.iter().map(|k| (k.name, k.default.to_string())).collect() }
    }
}

impl RunConfig {
    /// Defaults, then the file (if any), then `--set` overrides, in that order.
    pub fn load(file: Option<&Path>, overrides: &[String]) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
            cfg.apply_text(&text)?;
        }
        for o in overrides {
            let (k, v) = o.split_once('=').ok_or_else(|| config_error(format!("--set '{o}': expected key=value")))?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_error(format!("line {}: expected 'key = value', got '{raw}'", i + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let spec = SCHEMA.iter().find(|k| k.name == key).ok_or_else(|| config_error(format!("unknown key '{key}'")))?;
        validate(spec, value)?;
        self.values.insert(spec.name, value.to_string());
        Ok(())
    }

    fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or_else(|| panic!("key {key} missing from schema"))
    }

    // Values were validated on insertion, so the parses below cannot fail.
    pub fn usize(&self, key: &str) -> usize {
        self.raw(key).parse().expect("validated")
    }

    pub fn float(&self, key: &str) -> f64 {
        self.raw(key).parse().expect("validated")
    }

    pub fn opt_float(&self, key: &str) -> Option<f64> {
        let v = self.raw(key);
        (!v.is_empty()).then(|| v.parse().expect("validated"))
    }

    pub fn text(&self, key: &str) -> &str {
        self.raw(key)
    }

    pub fn usize_list(&self, key: &str) -> Vec<usize> {
        self.raw(key).split(',').map(|s| s.trim().parse().expect("validated")).collect()
    }

    pub fn path(&self, key: &str) -> PathBuf {
        PathBuf::from(self.raw(key))
    }

    /// `key = value` lines for every key, in schema order.
    pub fn render(&self) -> String {
        SCHEMA.iter().map(|k| format!("# {}\n{} = {}\n", k.help, k.name, self.raw(k.name))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_and_malformed() {
        let mut c = RunConfig::default();
        assert!(matches!(c.set("problem.nz", "3"), Err(CliError::Config(_))));
        assert!(matches!(c.set("problem.nx", "x"), Err(CliError::Config(_))));
        assert!(matches!(c.set("precond.kind", "ilu"), Err(CliError::Config(_))));
        c.apply_text("# comment\nproblem.nx = 8  # trailing\n\n").unwrap();
        assert_eq!(c.usize("problem.nx"), 8);
    }

    #[test]
    fn render_round_trips() {
        let mut c = RunConfig::default();
        c.set("bounds.mu", "2").unwrap();
        let mut d = RunConfig::default();
        d.apply_text(&c.render()).unwrap();
        assert_eq!(c.values, d.values);
    }
}
