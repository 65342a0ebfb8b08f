//! Named identity checks over parameter grids.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::decomp::{
    catalan_family, corollary2_series, lemma1_catalan, pointwise_identity, remark1_identity,
};
use crate::endpoint::{admissibility, catalan_via_endpoint, solve_endpoint_b, theorem1_identity};
use crate::error::Result;
use crate::report::{IdentityReport, ReportFormat};
use crate::special::catalan_reference;
use crate::ti2core::{ti2, ti2_clausen_form, Ti2Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Theorem1,
    Corollary1,
    Corollary2,
    Corollary3,
    Corollary4,
    Remark1,
    Lemma1,
    Pointwise,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Theorem1,
        Identity::Corollary1,
        Identity::Corollary2,
        Identity::Corollary3,
        Identity::Corollary4,
        Identity::Remark1,
        Identity::Lemma1,
        Identity::Pointwise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Theorem1 => "theorem1",
            Identity::Corollary1 => "corollary1",
            Identity::Corollary2 => "corollary2",
            Identity::Corollary3 => "corollary3",
            Identity::Corollary4 => "corollary4",
            Identity::Remark1 => "remark1",
            Identity::Lemma1 => "lemma1",
            Identity::Pointwise => "pointwise",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = ConfigError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ConfigError::UnknownIdentity(s.to_string()))
    }
}

/// Problems with a configuration file or override.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("line {line}: expected key=value, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    Value { key: String, value: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationConfig {
    pub theorem1_a: Vec<f64>,
    /// Drop inadmissible points from `theorem1_a` instead of failing.
    pub filter_admissible: bool,
    pub corollary2_a: Vec<f64>,
    pub corollary2_alpha: Vec<f64>,
    pub family_n: Vec<usize>,
    pub theta: Vec<f64>,
    pub pointwise_alpha: Vec<f64>,
    pub pointwise_x: Vec<f64>,
    pub k_pointwise: usize,
    pub k_series: usize,
    pub k_remark: usize,
    pub j: usize,
    pub n_hurwitz: usize,
    pub tol_quadrature: f64,
    pub tol_series: f64,
    pub format: ReportFormat,
    pub workers: usize,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        Self {
            theorem1_a: vec![0.5, 0.75, 1.0, 1.5, 2.0],
            filter_admissible: true,
            corollary2_a: vec![0.5, 1.0, 2.0],
            corollary2_alpha: vec![0.5, 1.0, PI / 2.0, 2.5],
            family_n: vec![2, 3, 4, 6],
            theta: vec![PI / 12.0, PI / 8.0, PI / 6.0, PI / 4.0, PI / 3.0],
            pointwise_alpha: vec![0.2, 0.9, 1.6, 2.3, 3.0],
            pointwise_x: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            k_pointwise: 5000,
            k_series: 2000,
            k_remark: 100,
            j: 18,
            n_hurwitz: 8,
            tol_quadrature: 1e-9,
            tol_series: 1e-10,
            format: ReportFormat::Json,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> std::result::Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(|v| v.trim().parse::<T>())
        .collect::<std::result::Result<Vec<T>, _>>()
        .ok()
        .filter(|v| !v.is_empty())
        .ok_or_else(|| ConfigError::Value {
            key: key.to_string(),
            value: value.to_string(),
        })
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::Value {
        key: key.to_string(),
        value: value.to_string(),
    })
}

impl VerificationConfig {
    /// Applies one `key=value` override. List values are comma separated.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), ConfigError> {
        let bad = || ConfigError::Value {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "a" => {
                self.theorem1_a = parse_list(key, value)?;
                self.filter_admissible = false;
            }
            "A" => self.corollary2_a = parse_list(key, value)?,
            "alpha" => {
                self.corollary2_alpha = parse_list(key, value)?;
                self.pointwise_alpha = self.corollary2_alpha.clone();
            }
            "x" => self.pointwise_x = parse_list(key, value)?,
            "theta" => self.theta = parse_list(key, value)?,
            "n" => self.family_n = parse_list(key, value)?,
            "K" => {
                let k: usize = parse_one(key, value)?;
                self.k_pointwise = k;
                self.k_series = k;
                self.k_remark = k;
            }
            "J" => self.j = parse_one(key, value)?,
            "N" => self.n_hurwitz = parse_one(key, value)?,
            "tol" => {
                let t: f64 = parse_one(key, value)?;
                self.tol_quadrature = t;
                self.tol_series = t;
            }
            "tol_quadrature" => self.tol_quadrature = parse_one(key, value)?,
            "tol_series" => self.tol_series = parse_one(key, value)?,
            "workers" => self.workers = parse_one(key, value)?,
            "format" => {
                self.format = match value.trim() {
                    "json" => ReportFormat::Json,
                    "table" => ReportFormat::Table,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        self.validate().map_err(|_| bad())
    }

    /// Applies the `key=value` lines of a configuration file. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn apply_file_contents(&mut self, text: &str) -> std::result::Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: raw.to_string(),
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    fn validate(&self) -> std::result::Result<(), ()> {
        let counts = [
            self.k_pointwise,
            self.k_series,
            self.k_remark,
            self.j,
            self.n_hurwitz,
            self.workers,
        ];
        let tols = [self.tol_quadrature, self.tol_series];
        if counts.iter().all(|&c| c >= 1) && tols.iter().all(|&t| t > 0.0 && t.is_finite()) {
            Ok(())
        } else {
            Err(())
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Theorem1(f64),
    Corollary1,
    Corollary2(f64, f64),
    Corollary3(usize),
    Corollary4(f64),
    Remark1,
    Lemma1,
    Pointwise(f64, f64),
}

fn tasks_for(id: Identity, cfg: &VerificationConfig) -> Result<Vec<Task>> {
    Ok(match id {
        Identity::Theorem1 => {
            let mut out = Vec::new();
            for &a in &cfg.theorem1_a {
                if !cfg.filter_admissible || admissibility(a)?.admissible {
                    out.push(Task::Theorem1(a));
                }
            }
            out
        }
        Identity::Corollary1 => vec![Task::Corollary1],
        Identity::Corollary2 => cfg
            .corollary2_a
            .iter()
            .flat_map(|&a| {
                cfg.corollary2_alpha
                    .iter()
                    .map(move |&al| Task::Corollary2(a, al))
            })
            .collect(),
        Identity::Corollary3 => cfg.family_n.iter().map(|&n| Task::Corollary3(n)).collect(),
        Identity::Corollary4 => cfg.theta.iter().map(|&t| Task::Corollary4(t)).collect(),
        Identity::Remark1 => vec![Task::Remark1],
        Identity::Lemma1 => vec![Task::Lemma1],
        Identity::Pointwise => cfg
            .pointwise_alpha
            .iter()
            .flat_map(|&al| cfg.pointwise_x.iter().map(move |&x| Task::Pointwise(al, x)))
            .collect(),
    })
}

fn run_task(task: Task, cfg: &VerificationConfig) -> Result<IdentityReport> {
    match task {
        Task::Theorem1(a) => theorem1_identity(a, cfg.tol_quadrature),
        Task::Corollary1 => {
            let b = solve_endpoint_b(1.0, 1e-13)?.b;
            Ok(IdentityReport::new(
                "corollary1",
                catalan_reference(1e-15)?,
                catalan_via_endpoint(1e-13)?,
                cfg.tol_series,
            )
            .param("a", 1.0)
            .param("b", b)
            .methods("catalan-reference", "endpoint-root"))
        }
        Task::Corollary2(a, alpha) => corollary2_series(a, alpha, cfg.k_series, cfg.tol_series),
        Task::Corollary3(n) => catalan_family(n, cfg.k_series, cfg.tol_series),
        Task::Corollary4(theta) => {
            let lhs = ti2(theta.tan())?;
            Ok(
                IdentityReport::new("corollary4", lhs, ti2_clausen_form(theta)?, cfg.tol_series)
                    .param("theta", theta)
                    .methods(
                        Ti2Method::for_argument(theta.tan()).tag(),
                        Ti2Method::ClausenForm.tag(),
                    ),
            )
        }
        Task::Remark1 => remark1_identity(cfg.k_remark, cfg.tol_series),
        Task::Lemma1 => lemma1_catalan(cfg.n_hurwitz, cfg.j, cfg.tol_series),
        Task::Pointwise(alpha, x) => pointwise_identity(alpha, x, cfg.k_pointwise),
    }
}

/// Runs the selected identities (all of them when `None`) and returns the
/// reports in grid order, independent of the worker count.
pub fn run(identity: Option<Identity>, cfg: &VerificationConfig) -> Result<Vec<IdentityReport>> {
    let ids: Vec<Identity> = match identity {
        Some(id) => vec![id],
        None => Identity::ALL.to_vec(),
    };
    let mut tasks = Vec::new();
    for id in ids {
        tasks.extend(tasks_for(id, cfg)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool construction");
    let results: Vec<Result<IdentityReport>> =
        pool.install(|| tasks.par_iter().map(|&t| run_task(t, cfg)).collect());
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("theorem9".parse::<Identity>().is_err());
    }

    #[test]
    fn config_overrides() {
        let mut cfg = VerificationConfig::default();
        cfg.apply_file_contents("# comment\nK = 10\ntheta=0.3,0.5\nformat=table\n")
            .unwrap();
        assert_eq!(cfg.k_remark, 10);
        assert_eq!(cfg.theta, vec![0.3, 0.5]);
        assert_eq!(cfg.format, ReportFormat::Table);
        assert!(matches!(
            cfg.apply_file_contents("nonsense"),
            Err(ConfigError::Syntax { .. })
        ));
        assert!(matches!(
            cfg.set("bogus", "1"),
            Err(ConfigError::UnknownKey(_))
        ));
        assert!(cfg.set("K", "0").is_err());
        assert!(cfg.set("tol", "-1").is_err());
    }

    #[test]
    fn default_theorem1_grid_is_filtered() {
        let cfg = VerificationConfig::default();
        let tasks = tasks_for(Identity::Theorem1, &cfg).unwrap();
        assert_eq!(tasks.len(), 5);
    }

    #[test]
    fn remark1_run() {
        let mut cfg = VerificationConfig::default();
        cfg.set("K", "10").unwrap();
        let reports = run(Some(Identity::Remark1), &cfg).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].pass && reports[0].abs_residual < 1e-11);
    }
}
