//! Run a verification suite from code and print its JSON report.

use clap::Parser;
use hkr_algebra::cli::{run_suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig::parse_from(["hkr-verify", "--suite", "prop16", "--max-sym-len", "2"]);
    match run_suite(&cfg) {
        Ok(report) => {
            println!("{}", report.to_json_without_timings());
            println!("ok = {}", report.ok);
        }
        Err(e) => eprintln!("{e}"),
    }
}
