//! Acceptance criteria, one pass/fail line each.
//!
//! Every comparison is exact: dimensions, multiplicities and Cartan entries
//! are integers, field arithmetic is exact, and idempotent coefficients are
//! compared as field elements. Tolerance is zero throughout.

use modrep::analysis::Fault;
use modrep::check::{format_check, run_criterion, Check, CheckOptions};

const TITLES: [&str; 7] = [
    "Klein four group over GF(2)",
    "cyclic p-groups are uniserial",
    "A4 over GF(4): PIMs, Cartan, idempotents, two-dimensional modules",
    "A5 over GF(4): simples, PIMs, Cartan, blocks",
    "induction and restriction between A4 and A5",
    "structural properties over three seeds",
    "micro-scale oracles",
];

const PROPERTY_SEEDS: [u64; 3] = [0, 1, 2];

fn criterion_checks(n: u8) -> Vec<Check> {
    if n == 6 {
        PROPERTY_SEEDS
            .iter()
            .flat_map(|&seed| run_criterion(6, &CheckOptions { seed, fault: None }))
            .collect()
    } else {
        run_criterion(n, &CheckOptions::default())
    }
}

fn acceptance_criteria() -> Vec<u8> {
    let mut failed = Vec::new();
    for n in 1..=7u8 {
        let checks = criterion_checks(n);
        let bad: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
        let status = if bad.is_empty() && !checks.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {n} {status}: {} ({} checks, exact, tolerance 0)",
            TITLES[n as usize - 1],
            checks.len()
        );
        for c in &bad {
            println!("    {}", format_check(c));
        }
        if status == "FAIL" {
            failed.push(n);
        }
    }
    failed
}

fn property_checks_identical_across_seeds() -> bool {
    let names = |seed| -> Vec<(String, bool)> {
        run_criterion(6, &CheckOptions { seed, fault: None })
            .into_iter()
            .map(|c| (c.name, c.pass))
            .collect()
    };
    let first = names(PROPERTY_SEEDS[0]);
    PROPERTY_SEEDS[1..].iter().all(|&seed| names(seed) == first)
}

fn injected_cartan_fault_is_reported() -> bool {
    let opts = CheckOptions {
        seed: 0,
        fault: Some(Fault::Cartan),
    };
    let checks = run_criterion(3, &opts);
    let named = |name: &str| checks.iter().find(|c| c.name == name);
    let table = named("A4 Cartan").is_some_and(|c| {
        !c.pass
            && c.detail
                .contains("expected [[2, 1, 1], [1, 2, 1], [1, 1, 2]]")
    });
    let certs = named("A4 certificates")
        .is_some_and(|c| !c.pass && c.detail.contains("cartan_methods_agree"));
    table && certs
}

fn main() {
    let mut failed = acceptance_criteria();
    let seeds = property_checks_identical_across_seeds();
    println!(
        "same property pass set for seeds {PROPERTY_SEEDS:?}: {}",
        if seeds { "PASS" } else { "FAIL" }
    );
    let fault = injected_cartan_fault_is_reported();
    println!(
        "injected Cartan fault reported by name: {}",
        if fault { "PASS" } else { "FAIL" }
    );
    if !seeds {
        failed.push(6);
    }
    if !fault {
        failed.push(3);
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
