use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CircuitProgram, Instruction};
use crate::clifford::ConjugationTableau;
use crate::error::{Error, Result};
use crate::measurement::{measure_pauli, measure_pauli_all, OutcomeChoice, OutcomeCoset};
use crate::oracle::{self, DenseMode};
use crate::tableau::StabilizerTableau;
use crate::weyl::PauliVector;

pub const DEFAULT_BRANCH_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunMode {
    /// Every branch, with exact probabilities.
    Enumerate,
    /// Independent trajectories; shot `i` draws from stream `i` of a
    /// generator seeded with `seed`.
    Sample { shots: usize, seed: u64 },
    /// One trajectory. Records missing from the map take the smallest
    /// outcome in their support.
    Fixed(BTreeMap<String, i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: RunMode,
    pub branch_cap: usize,
    /// Compare each trajectory against the dense simulator.
    pub oracle: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            mode: RunMode::Enumerate,
            branch_cap: DEFAULT_BRANCH_CAP,
            oracle: false,
        }
    }
}

impl RunOptions {
    pub fn new(mode: RunMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Outcomes in the order the records were measured.
    pub outcomes: Vec<(String, i64)>,
    pub probability: Ratio<BigUint>,
    pub cosets: Vec<(String, OutcomeCoset)>,
    pub tableau: StabilizerTableau,
    /// Index of the shot in sample mode.
    pub shot: Option<usize>,
    /// `|<tableau state | dense state>|` when the oracle was requested and
    /// the register is small enough.
    pub oracle_overlap: Option<f64>,
}

impl Trajectory {
    pub fn outcome(&self, name: &str) -> Option<i64> {
        self.outcomes.iter().find(|(k, _)| k == name).map(|x| x.1)
    }

    fn key(&self) -> (Vec<i64>, Option<usize>) {
        (self.outcomes.iter().map(|x| x.1).collect(), self.shot)
    }
}

fn initial(program: &CircuitProgram) -> Result<StabilizerTableau> {
    let t = StabilizerTableau::standard_basis(program.ring(), &vec![0; program.n()])?;
    if program.ring().is_even() {
        t.to_extended()
    } else {
        Ok(t)
    }
}

fn observable(
    program: &CircuitProgram,
    ins: &Instruction,
) -> Result<Option<(PauliVector, String)>> {
    Ok(match ins {
        Instruction::MeasureZ { qudit, name } => Some((
            PauliVector::z_on(program.ring(), program.n(), *qudit)?,
            name.clone(),
        )),
        Instruction::MeasureW { observable, name } => Some((observable.clone(), name.clone())),
        _ => None,
    })
}

/// Applies a non-measurement instruction.
fn step(program: &CircuitProgram, tr: &mut Trajectory, ins: &Instruction) -> Result<()> {
    let gate = match ins {
        Instruction::Gate(g) => g,
        Instruction::Conditional { name, value, gate } => {
            if tr.outcome(name) != Some(*value) {
                return Ok(());
            }
            gate
        }
        _ => unreachable!("measurements are handled by the caller"),
    };
    tr.tableau = ConjugationTableau::gate(gate, program.ring(), program.n())?.apply(&tr.tableau)?;
    Ok(())
}

fn record(tr: &mut Trajectory, name: &str, h: i64, coset: OutcomeCoset) {
    tr.outcomes.push((name.to_string(), h));
    tr.cosets.push((name.to_string(), coset));
    tr.probability = &tr.probability * coset.probability();
}

fn enumerate(program: &CircuitProgram, cap: usize) -> Result<Vec<Trajectory>> {
    let start = Trajectory {
        outcomes: Vec::new(),
        probability: Ratio::one(),
        cosets: Vec::new(),
        tableau: initial(program)?,
        shot: None,
        oracle_overlap: None,
    };
    let mut live = vec![start];
    for ins in program.instructions() {
        if let Some((p, name)) = observable(program, ins)? {
            let mut next = Vec::new();
            for tr in &live {
                for (tab, rec) in measure_pauli_all(&tr.tableau, &p)? {
                    let mut child = Trajectory {
                        tableau: tab,
                        ..tr.clone()
                    };
                    record(&mut child, &name, rec.chosen, rec.coset);
                    next.push(child);
                }
                if next.len() > cap {
                    return Err(Error::BranchCap {
                        branches: next.len(),
                        cap,
                    });
                }
            }
            live = next;
        } else {
            for tr in &mut live {
                step(program, tr, ins)?;
            }
        }
    }
    Ok(live)
}

fn single(
    program: &CircuitProgram,
    mut choose: impl FnMut(&str) -> Option<i64>,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<Trajectory> {
    let mut tr = Trajectory {
        outcomes: Vec::new(),
        probability: Ratio::one(),
        cosets: Vec::new(),
        tableau: initial(program)?,
        shot: None,
        oracle_overlap: None,
    };
    let mut rng = rng;
    for ins in program.instructions() {
        if let Some((p, name)) = observable(program, ins)? {
            let (tab, rec) = match (choose(&name), rng.as_deref_mut()) {
                (Some(h), _) => measure_pauli(&tr.tableau, &p, OutcomeChoice::Fixed(h))?,
                (None, Some(r)) => measure_pauli(&tr.tableau, &p, OutcomeChoice::Sample(r))?,
                (None, None) => measure_pauli(&tr.tableau, &p, OutcomeChoice::Smallest)?,
            };
            tr.tableau = tab;
            record(&mut tr, &name, rec.chosen, rec.coset);
        } else {
            step(program, &mut tr, ins)?;
        }
    }
    Ok(tr)
}

fn attach_oracle(program: &CircuitProgram, tr: &mut Trajectory) -> Result<()> {
    let fixed: BTreeMap<String, i64> = tr.outcomes.iter().cloned().collect();
    let dense =
        match oracle::simulate_circuit(program, &vec![0; program.n()], &DenseMode::Fixed(fixed)) {
            Ok(d) => d,
            Err(Error::TooLarge(_)) => return Ok(()),
            Err(e) => return Err(e),
        };
    let mine = oracle::tableau_state(&tr.tableau)?;
    tr.oracle_overlap = Some(mine.overlap(&dense[0].state));
    Ok(())
}

/// Runs a program from `|0...0>`. Results are sorted by outcome tuple.
pub fn run(program: &CircuitProgram, options: &RunOptions) -> Result<Vec<Trajectory>> {
    let mut out = match &options.mode {
        RunMode::Enumerate => enumerate(program, options.branch_cap)?,
        RunMode::Fixed(map) => {
            for name in map.keys() {
                if !program.records().contains(name) {
                    return Err(Error::Contract(format!("unknown record {name}")));
                }
            }
            vec![single(program, |name| map.get(name).copied(), None)?]
        }
        RunMode::Sample { shots, seed } => {
            let mut out = Vec::with_capacity(*shots);
            for shot in 0..*shots {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(shot as u64);
                let mut tr = single(program, |_| None, Some(&mut rng))?;
                tr.shot = Some(shot);
                out.push(tr);
            }
            out
        }
    };
    if options.oracle {
        for tr in &mut out {
            attach_oracle(program, tr)?;
        }
    }
    out.sort_by_key(Trajectory::key);
    Ok(out)
}
