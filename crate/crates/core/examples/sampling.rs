//! Seeded sampling and empirical outcome frequencies.

use std::collections::BTreeMap;

use qudstab::circuit::{parse, run, RunMode, RunOptions};

fn main() {
    let program =
        parse("dim 6\nqudits 2\nF 0\nCX 0 1\nCX 0 1\nmeasure z 1 -> a\nmeasure z 0 -> b\n")
            .unwrap();
    let shots = 6000;
    let out = run(
        &program,
        &RunOptions::new(RunMode::Sample { shots, seed: 2024 }),
    )
    .unwrap();
    let mut counts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for t in &out {
        *counts
            .entry((t.outcome("a").unwrap(), t.outcome("b").unwrap()))
            .or_default() += 1;
    }
    for ((a, b), c) in counts {
        println!("a={a} b={b}: {c:5} ({:.4})", c as f64 / shots as f64);
    }
}
