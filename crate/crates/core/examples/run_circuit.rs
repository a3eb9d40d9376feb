//! Parsing a circuit, enumerating its trajectories and printing JSON.

use qudstab::circuit::{emit_json, parse, run, JsonOptions, RunMode, RunOptions};

const SOURCE: &str = "\
dim 4
qudits 2
F 0
CX 0 1
CX 0 1
measure z 1 -> m
X 0 if m=2
measure w z=2,0 x=0,0 -> zz
";

fn main() {
    let program = match parse(SOURCE) {
        Ok(p) => p,
        Err(diags) => {
            for d in diags {
                eprintln!("{d}");
            }
            std::process::exit(1);
        }
    };
    print!("{program}");
    let all = run(
        &program,
        &RunOptions {
            oracle: true,
            ..RunOptions::default()
        },
    )
    .expect("runs");
    println!(
        "{}",
        emit_json(Some(&program), &all, JsonOptions::default())
    );

    let mut fixed = std::collections::BTreeMap::new();
    fixed.insert("m".to_string(), 2);
    let one =
        run(&program, &RunOptions::new(RunMode::Fixed(fixed))).expect("2 is a supported outcome");
    println!(
        "fixed m=2: outcomes {:?}, probability {}",
        one[0].outcomes, one[0].probability
    );

    let bad = parse("dim 4\nqudits 1\nM 0 2\nmeasure z 3 -> m\n").unwrap_err();
    for d in bad {
        println!("diagnostic {d}");
    }
}
