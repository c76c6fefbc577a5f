//! Acceptance criteria 1-15.  Everything is exact rational arithmetic, so each
//! criterion is an equality check; a criterion also fails if it overruns its
//! time budget.  Runs without the test harness and prints one line per
//! criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use hkr_algebra::cli::{run_suite, SuiteConfig};
use hkr_algebra::dpoly::{
    verify_hochschild, verify_prop2_hopf, verify_prop3_closure, verify_theorem2, SampleBounds,
};
use hkr_algebra::freelie::{verify_dynkin, verify_pbw, verify_theorem6, GenSet};
use hkr_algebra::hkr::{
    verify_adams_eigen, verify_atiyah_vanishing, verify_hkr_factorization, verify_theorem1_dpoly,
    AdamsBounds, AtiyahBounds, HkrBounds, Theorem1Bounds,
};
use hkr_algebra::report::{CheckStatus, VerificationReport};
use hkr_algebra::symgrp::verify_star_identity;
use hkr_algebra::theta::{verify_observation1, verify_theorem5_local, Theorem5Bounds};

struct Verdict {
    ok: bool,
    detail: String,
}

/// Every check passed, and each required name prefix is covered by at least
/// one passing check.
fn judge(report: VerificationReport, required: &[&str]) -> Verdict {
    let report = report.finish();
    let mut problems: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.status != CheckStatus::Pass)
        .map(|c| format!("{} {:?}: {}", c.name, c.status, c.detail))
        .collect();
    for r in required {
        if !report
            .checks
            .iter()
            .any(|c| c.name.starts_with(r) && c.status == CheckStatus::Pass)
        {
            problems.push(format!("missing {r}"));
        }
    }
    Verdict {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} checks", report.checks.len())
        } else {
            problems.join("; ")
        },
    }
}

fn merged(name: &str, parts: impl IntoIterator<Item = VerificationReport>) -> VerificationReport {
    let mut r = VerificationReport::new(name);
    for p in parts {
        r.merge(p);
    }
    r
}

fn hochschild_bounds(m: usize) -> SampleBounds {
    SampleBounds {
        m,
        max_arity: 3,
        max_order: 4,
        max_coeff_deg: 2,
        samples: 50,
        seed: 0x5eed,
    }
}

fn c01_pbw() -> Verdict {
    let r = merged("pbw", (1..=2).map(|q| verify_pbw(q, 5)));
    judge(r, &["pbw/q1/n5", "pbw/q2/n5"])
}

fn c02_dexp_square() -> Verdict {
    let r = merged("theorem6", (1..=2).map(|q| verify_theorem6(&GenSet::odd(q), 3, 2)));
    judge(r, &["theorem6/q1", "theorem6/q2/sym3"])
}

fn c03_mu_omega_sum() -> Verdict {
    let r = merged("star", (1..=4).map(verify_star_identity));
    judge(r, &["star/k1", "star/k2", "star/k3", "star/k4"])
}

fn c04_dynkin() -> Verdict {
    judge(verify_dynkin(6, 2), &["dynkin/n6/quasi-idempotent", "dynkin/n6/q2"])
}

fn c05_hochschild() -> Verdict {
    let r = merged("hochschild", (1..=2).map(|m| verify_hochschild(hochschild_bounds(m), 2)));
    judge(r, &["hochschild/d-squared", "hochschild/o-linear", "hochschild/oracle"])
}

fn c06_generator_closure() -> Verdict {
    let r = merged("prop3", (1..=2).map(|m| verify_prop3_closure(m, 4, 2)));
    judge(r, &["prop3/m2/membership", "prop3/m2/constants"])
}

fn c07_hopf() -> Verdict {
    let r = merged("hopf", (1..=2).map(|m| verify_prop2_hopf(hochschild_bounds(m))));
    judge(
        r,
        &["hopf/leibniz", "hopf/coassociativity", "hopf/delta-algebra-map", "hopf/counit"],
    )
}

fn c08_connection() -> Verdict {
    let r = merged(
        "theorem2",
        (1..=2).map(|m| {
            verify_theorem2(SampleBounds {
                m,
                max_arity: 3,
                max_order: 3,
                max_coeff_deg: 2,
                samples: 30,
                seed: 0x5eed,
            })
        }),
    );
    judge(r, &["theorem2/m1/random-lie", "theorem2/m2/generators", "theorem2/m2/random-lie"])
}

fn c09_lie_square() -> Verdict {
    let r = verify_theorem1_dpoly(Theorem1Bounds {
        m: 2,
        max_sym_len: 3,
        max_lie_len: 2,
        coeff_deg: 1,
    });
    judge(r, &["theorem1/m2/sym1", "theorem1/m2/sym2", "theorem1/m2/sym3"])
}

fn c10_hkr() -> Verdict {
    let r = merged(
        "hkr",
        (1..=3).map(|m| {
            verify_hkr_factorization(HkrBounds {
                m,
                max_k: 3,
                coeff_deg: 1,
            })
        }),
    );
    judge(r, &["hkr/m3/i-sym-beta", "hkr/m3/j-p", "hkr/m3/pi-p", "hkr/m3/cocycle"])
}

fn c11_adams() -> Verdict {
    let r = verify_adams_eigen(&AdamsBounds {
        ps: vec![2, 3],
        hkr: HkrBounds {
            m: 3,
            max_k: 3,
            coeff_deg: 1,
        },
        samples: 20,
        seed: 0x5eed,
    });
    judge(r, &["adams/m3/p2/eigen", "adams/m3/p3/eigen", "adams/p2-q3/composition"])
}

fn c12_group_ring_mu_omega() -> Verdict {
    let r = merged("observation1", (1..=4).map(|k| verify_observation1(2, k, 3)));
    judge(r, &["observation1/q2/k4/j3", "observation1/q2/k3/j3"])
}

fn c13_psi_local() -> Verdict {
    let r = verify_theorem5_local(Theorem5Bounds {
        q: 2,
        max_k_diagonal: 4,
        max_k: 3,
        m: 2,
        coeff_deg: 1,
    })
    .finish();
    let witnessed = r
        .checks
        .iter()
        .filter(|c| c.name.ends_with("/coboundary"))
        .all(|c| c.witness.as_deref().is_some_and(|w| !w.is_empty()));
    let mut v = judge(
        r,
        &["theorem5/q4/k4/diagonal", "theorem5/q3/k3/diagonal", "theorem5/m2/k3/flatten", "theorem5/m2/k3/coboundary"],
    );
    if !witnessed {
        v.ok = false;
        v.detail.push_str("; coboundary check without witnesses");
    }
    v
}

fn c14_atiyah() -> Verdict {
    let r = verify_atiyah_vanishing(AtiyahBounds {
        m: 2,
        coeff_deg: 2,
        samples: 20,
        seed: 0x5eed,
    });
    judge(r, &["atiyah/m2/bracket-witness", "atiyah/m2/hkr-class-obstructed"])
}

fn c15_cli() -> Verdict {
    let in_process = |_| run_suite(&SuiteConfig::default()).map(|r| (r.ok, r.to_json_without_timings()));
    let (a, b) = match (in_process(0), in_process(1)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return Verdict {
                ok: false,
                detail: e.to_string(),
            }
        }
    };
    // the shipped binary: exit status and JSON file
    let dir = std::env::temp_dir().join(format!("hkr-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_hkr-verify"))
        .args(["--suite", "all", "--quiet", "--json"])
        .arg(&path)
        .status()
        .expect("binary runs");
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap_or_default()).unwrap_or_default();
    let _ = std::fs::remove_dir_all(&dir);
    let strip = |v: &serde_json::Value| {
        let mut v = v.clone();
        if let Some(cs) = v["checks"].as_array_mut() {
            for c in cs {
                c.as_object_mut().map(|o| o.remove("elapsed_ms"));
            }
        }
        v
    };
    let in_proc_json: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    let ok = a.0 && b.0 && a.1 == b.1 && status.code() == Some(0) && strip(&file) == strip(&in_proc_json);
    Verdict {
        ok,
        detail: format!(
            "exit {:?}, in-process runs identical: {}, binary report matches: {}",
            status.code(),
            a.1 == b.1,
            strip(&file) == strip(&in_proc_json)
        ),
    }
}

type Criterion = (u32, &'static str, u64, fn() -> Verdict);

const CRITERIA: [Criterion; 15] = [
    (1, "PBW: I invertible, dim Sym(L)_n = q^n", 5, c01_pbw),
    (2, "symmetrized Lie diagram commutes", 30, c02_dexp_square),
    (3, "group-ring identity for mu omega^j", 10, c03_mu_omega_sum),
    (4, "Dynkin quasi-idempotent and projector", 10, c04_dynkin),
    (5, "Hochschild d: square zero, O-linear, pointwise oracle", 20, c05_hochschild),
    (6, "d of generators lies in L(D1), multinomial constants", 10, c06_generator_closure),
    (7, "Hopf axioms on D_poly", 20, c07_hopf),
    (8, "connection identity for L(D1)", 20, c08_connection),
    (9, "symmetrized Lie square commutes on D_poly", 60, c09_lie_square),
    (10, "HKR factorization and cocycle", 10, c10_hkr),
    (11, "Adams eigenvalues and composition", 15, c11_adams),
    (12, "mu omega^j against group-ring expression", 15, c12_group_ring_mu_omega),
    (13, "Psi diagonal and local coboundary witnesses", 60, c13_psi_local),
    (14, "Atiyah vanishing on affine space", 20, c14_atiyah),
    (15, "CLI exit status and deterministic JSON", 180, c15_cli),
];

fn main() {
    let mut failed = Vec::new();
    for (n, what, budget, f) in CRITERIA {
        let start = Instant::now();
        let mut v = f();
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(budget) {
            v.ok = false;
            v.detail.push_str(&format!("; over budget of {budget} s"));
        }
        println!(
            "criterion {n:>2} {} {what} ({:.2} s): {}",
            if v.ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.detail
        );
        if !v.ok {
            failed.push(n);
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed.len(), CRITERIA.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
