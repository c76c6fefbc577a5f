//! Batch front-end: run verification suites and report.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;
use serde::Serialize;

use crate::dpoly::{verify_hochschild, verify_prop2_hopf, verify_prop3_closure, verify_theorem2, SampleBounds};
use crate::freelie::{lambda_pi_identities, verify_dynkin, verify_pbw, verify_prop14, verify_theorem6, GenSet, LambdaPiBounds};
use crate::hkr::{
    verify_adams_eigen, verify_corollary1_local, verify_hkr_factorization, verify_theorem1_dpoly, AdamsBounds,
    AtiyahBounds, HkrBounds, Theorem1Bounds,
};
use crate::report::{CheckStatus, VerificationReport};
use crate::symgrp::{verify_star_identity, MAX_STAR_K};
use crate::theta::{verify_observation1, verify_prop16, verify_theorem5_local, Theorem5Bounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symgrp,
    Pbw,
    Theorem6,
    Theorem1,
    Theorem2,
    Hopf,
    Prop3,
    Adams,
    Hkr,
    Observation1,
    Theorem5,
    Prop16,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::Symgrp,
        Suite::Pbw,
        Suite::Theorem6,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Hopf,
        Suite::Prop3,
        Suite::Adams,
        Suite::Hkr,
        Suite::Observation1,
        Suite::Theorem5,
        Suite::Prop16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Symgrp => "symgrp",
            Suite::Pbw => "pbw",
            Suite::Theorem6 => "theorem6",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Hopf => "hopf",
            Suite::Prop3 => "prop3",
            Suite::Adams => "adams",
            Suite::Hkr => "hkr",
            Suite::Observation1 => "observation1",
            Suite::Theorem5 => "theorem5",
            Suite::Prop16 => "prop16",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::EACH.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}`; expected one of {} or all", names.join(", "))
            })
    }
}

#[derive(Parser, Clone, Debug, Serialize)]
#[command(name = "hkr-verify", about = "Run exact verification suites and report pass/fail")]
pub struct SuiteConfig {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Number of affine coordinates.
    #[arg(long = "vars", default_value_t = 2)]
    pub vars: usize,
    /// Word length of Lie factors.
    #[arg(long, default_value_t = 2)]
    pub max_deg: usize,
    /// Tensor degree for the HKR, Adams and group-ring suites.
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    #[arg(long, default_value_t = 3)]
    pub max_sym_len: usize,
    /// Degree of polynomial coefficients.
    #[arg(long, default_value_t = 2)]
    pub coeff_deg: u32,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    #[serde(skip)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub quiet: bool,
    /// Worker threads.
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::parse_from(["hkr-verify"])
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("infeasible bounds: {0}")]
    Bounds(String),
    #[error("could not write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Bounds(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |what: String| Err(CliError::Bounds(what));
        if !(1..=3).contains(&self.vars) {
            return bad(format!("--vars {} outside 1..=3", self.vars));
        }
        if !(1..=3).contains(&self.max_deg) {
            return bad(format!("--max-deg {} outside 1..=3", self.max_deg));
        }
        if !(1..=MAX_STAR_K).contains(&self.max_k) {
            return bad(format!("--max-k {} outside 1..={MAX_STAR_K}", self.max_k));
        }
        if self.max_sym_len > 4 {
            return bad(format!("--max-sym-len {} above 4", self.max_sym_len));
        }
        if self.coeff_deg > 4 {
            return bad(format!("--coeff-deg {} above 4", self.coeff_deg));
        }
        if self.samples == 0 {
            return bad("--samples must be positive".into());
        }
        if self.jobs == Some(0) {
            return bad("--jobs must be positive".into());
        }
        Ok(())
    }

    fn sample_bounds(&self) -> SampleBounds {
        SampleBounds {
            m: self.vars.min(2),
            max_arity: 3,
            max_order: self.max_k as u32 + 1,
            max_coeff_deg: self.coeff_deg,
            samples: self.samples,
            seed: self.seed,
        }
    }

    fn hkr_bounds(&self) -> HkrBounds {
        HkrBounds {
            m: self.vars,
            max_k: self.max_k,
            coeff_deg: self.coeff_deg,
        }
    }

    fn atiyah_bounds(&self) -> AtiyahBounds {
        AtiyahBounds {
            m: self.vars.min(2),
            coeff_deg: self.coeff_deg,
            samples: self.samples.clamp(1, 20),
            seed: self.seed,
        }
    }
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> VerificationReport {
    let mut r = VerificationReport::new(suite.name());
    let q = cfg.vars.min(2);
    match suite {
        Suite::Symgrp => {
            for k in 1..=cfg.max_k {
                r.merge(verify_star_identity(k));
            }
            r.merge(verify_dynkin((2 * cfg.max_k).min(6), 2));
            for n in 1..=cfg.max_k {
                r.merge(verify_prop14(&GenSet::odd(2), n));
            }
        }
        Suite::Pbw => {
            for q in 1..=2 {
                r.merge(verify_pbw(q, (cfg.max_deg + 3).min(5)));
            }
        }
        Suite::Theorem6 => {
            for q in 1..=q {
                r.merge(verify_theorem6(&GenSet::odd(q), cfg.max_sym_len, cfg.max_deg));
            }
            let lp = LambdaPiBounds {
                max_letter_len: cfg.max_deg,
                ..LambdaPiBounds::default()
            };
            r.merge(lambda_pi_identities(&GenSet::odd(q), lp));
        }
        Suite::Theorem1 => r.merge(verify_theorem1_dpoly(Theorem1Bounds {
            m: q,
            max_sym_len: cfg.max_sym_len,
            max_lie_len: cfg.max_deg,
            coeff_deg: cfg.coeff_deg.min(1),
        })),
        Suite::Theorem2 => r.merge(verify_theorem2(cfg.sample_bounds())),
        Suite::Hopf => {
            r.merge(verify_prop2_hopf(cfg.sample_bounds()));
            r.merge(verify_hochschild(cfg.sample_bounds(), 2));
        }
        Suite::Prop3 => r.merge(verify_prop3_closure(q, cfg.max_k as u32 + 1, cfg.coeff_deg)),
        Suite::Adams => r.merge(verify_adams_eigen(&AdamsBounds {
            ps: vec![2, 3],
            hkr: cfg.hkr_bounds(),
            samples: cfg.samples.min(20),
            seed: cfg.seed,
        })),
        Suite::Hkr => {
            r.merge(verify_hkr_factorization(cfg.hkr_bounds()));
            let cor = HkrBounds {
                max_k: cfg.max_k.min(2),
                coeff_deg: cfg.coeff_deg.min(1),
                ..cfg.hkr_bounds()
            };
            r.merge(verify_corollary1_local(cor, cfg.atiyah_bounds()));
        }
        Suite::Observation1 => {
            for k in 1..=(cfg.max_k + 1).min(MAX_STAR_K) {
                r.merge(verify_observation1(2, k, 3));
            }
        }
        Suite::Theorem5 => r.merge(verify_theorem5_local(Theorem5Bounds {
            q: 2,
            max_k_diagonal: (cfg.max_k + 1).min(4),
            max_k: cfg.max_k.min(3),
            m: q,
            coeff_deg: cfg.coeff_deg.min(1),
        })),
        Suite::Prop16 => r.merge(verify_prop16(q, cfg.max_sym_len, cfg.max_deg)),
        Suite::All => {
            for s in Suite::EACH {
                r.merge(run_one(s, cfg));
            }
        }
    }
    r
}

/// Run the configured suite.  The report's checks are sorted by name.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, CliError> {
    cfg.validate()?;
    let mut report = run_one(cfg.suite, cfg);
    report.config = serde_json::to_value(cfg).expect("config serializes");
    let report = report.finish();
    if let Some(path) = &cfg.json {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report)
}

fn print_report(report: &VerificationReport) {
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        let mut detail = c.detail.clone();
        if detail.chars().count() > 120 {
            detail = detail.chars().take(117).collect::<String>() + "...";
        }
        println!("{status} {} [{} ms] {detail}", c.name, c.elapsed_ms);
    }
    let failed = report.failures().count();
    println!(
        "{}: {} passed, {failed} failed, {} checks",
        if report.ok { "ok" } else { "FAILED" },
        report.passed(),
        report.checks.len()
    );
}

/// Parse arguments, run and return the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match SuiteConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(j) = cfg.jobs.filter(|&j| j > 0) {
        // a global pool can only be installed once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match run_suite(&cfg) {
        Ok(report) => {
            if !cfg.quiet {
                print_report(&report);
            }
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("hkr-verify: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("unknown".parse::<Suite>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["hkr-verify", "--suite", "unknown", "--quiet"]), 2);
        assert_eq!(main_with_args(["hkr-verify", "--max-k", "9", "--quiet"]), 2);
        assert_eq!(main_with_args(["hkr-verify", "--vars", "0", "--quiet"]), 2);
        assert_eq!(main_with_args(["hkr-verify", "--suite", "symgrp", "--max-k", "2", "--quiet"]), 0);
    }

    #[test]
    fn config_echo_and_determinism() {
        let cfg = SuiteConfig::parse_from(["hkr-verify", "--suite", "prop16", "--max-sym-len", "2", "--vars", "1"]);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert!(a.ok);
        assert_eq!(a.to_json_without_timings(), b.to_json_without_timings());
        assert_eq!(a.config["suite"], "prop16");
        assert!(a.config.get("json").is_none());
    }

    #[test]
    fn tiny_all() {
        let cfg = SuiteConfig::parse_from([
            "hkr-verify", "--vars", "1", "--max-k", "1", "--max-deg", "1", "--max-sym-len", "1", "--coeff-deg", "0",
            "--samples", "2",
        ]);
        let r = run_suite(&cfg).unwrap();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }
}
