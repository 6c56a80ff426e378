//! Plain-text renderings.

use std::fmt::Write;

use loggf::{CompositaeTable, LogSuperposition, ScanResult, WitnessReport};

use crate::TheoremResult;

pub fn compositae(table: &CompositaeTable) -> String {
    let mut out = String::new();
    for (i, row) in table.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "n={}: {}", i + 1, cells.join(" ")).unwrap();
    }
    out
}

pub fn log_superposition(ls: &LogSuperposition) -> String {
    let mut out = String::new();
    writeln!(out, "n\tn*g(n)\tg(n)\th(n)").unwrap();
    for n in 1..=ls.order {
        writeln!(out, "{n}\t{}\t{}\t{}", ls.ng(n), ls.g.coeff(n), ls.h(n)).unwrap();
    }
    out
}

fn integrality(integral: bool) -> &'static str {
    if integral {
        "integral"
    } else {
        "not integral"
    }
}

pub fn theorem(r: &TheoremResult) -> String {
    format!(
        "n = {} ({})\nsum_k (n/k) F(n,k) = {} ({})\nsum_{{k<n}} F(n,k)/k = {} ({})\n",
        r.n,
        if r.n_is_prime { "prime" } else { "not prime" },
        r.theorem_sum,
        integrality(r.integral),
        r.corollary_sum,
        integrality(r.corollary_integral),
    )
}

pub fn witness(r: &WitnessReport) -> String {
    let mut out = format!(
        "{} n={}: residue {}, {}, n is {}",
        r.test,
        r.n,
        r.residue,
        r.verdict,
        if r.is_prime_actual {
            "prime"
        } else {
            "composite"
        }
    );
    if r.is_pseudoprime() {
        out.push_str(" (PSEUDOPRIME)");
    }
    if r.is_unsound() {
        out.push_str(" (UNSOUND: prime rejected)");
    }
    if r.weak {
        out.push_str(" [weak: f(1) = 0]");
    }
    out.push('\n');
    out
}

pub fn scan(r: &ScanResult) -> String {
    let list: Vec<String> = r.pseudoprimes.iter().map(|n| n.to_string()).collect();
    let mut out = format!(
        "{} on [{}, {}]: {} primes, {} composites checked\npseudoprimes ({}): [{}]\n",
        r.test,
        r.lo,
        r.hi,
        r.primes_checked,
        r.composites_checked,
        r.pseudoprimes.len(),
        list.join(", ")
    );
    if !r.soundness_violations.is_empty() {
        writeln!(out, "soundness violations: {:?}", r.soundness_violations).unwrap();
    }
    out
}
