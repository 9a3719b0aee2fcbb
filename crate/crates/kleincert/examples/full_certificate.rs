//! Produce the complete exceptionality certificate for one of the two
//! built-in groups, plus the closing-remark checks, as JSON.
//!
//! Run with: cargo run --release --example full_certificate [j168|j504]

use kleincert::certificate::{remark_checks, run_case_analysis, GroupChoice, RunOptions};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "j168".into());
    let choice = match which.as_str() {
        "j168" => GroupChoice::J168,
        "j504" => GroupChoice::J504,
        other => {
            eprintln!("unknown group {other}; use j168 or j504");
            std::process::exit(2);
        }
    };
    let opts = RunOptions::default();
    let cert = run_case_analysis(&choice, &opts);
    eprint!("{}", cert.to_text());
    let remarks = remark_checks(&opts);
    eprintln!("remark checks: {} obligations", remarks.len());
    // the JSON certificate goes to standard output
    println!("{}", cert.to_json());
    std::process::exit(if cert.all_verified() { 0 } else { 1 });
}
