//! Circuit programs: text format, trajectory runner and JSON output.
//!
//! ```text
//! dim 4
//! qudits 2
//! F 0
//! CX 0 1
//! CX 0 1
//! measure z 1 -> m
//! X 0 if m=2
//! ```
//!
//! Gates: `S q`, `F q`, `Finv q`, `M q a`, `CZ q1 q2`, `CX ctrl tgt`,
//! `SWAP q1 q2`, `W q.. z=a,.. x=b,.. [t=k]`, and the shorthands `X q`, `Z q`.
//! Measurements: `measure z q -> name` and
//! `measure w z=.. x=.. [delta=k] -> name`, the latter measuring
//! `tau^{-2k} W_{z,x}` over the whole register. Any gate may carry a
//! trailing `if name=k`. Qudits are numbered from 0; `#` starts a comment.

mod json;
mod parse;
mod run;

use std::collections::BTreeSet;
use std::fmt;

pub use json::{emit_json, tableau_json, JsonOptions};
pub use parse::{parse, Diagnostic, DiagnosticCode};
pub use run::{run, RunMode, RunOptions, Trajectory, DEFAULT_BRANCH_CAP};

use crate::clifford::{GateKind, GateSpec};
use crate::error::{Error, Result};
use crate::modmath::{gcd, RingParams};
use crate::weyl::PauliVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    Gate(GateSpec),
    MeasureZ {
        qudit: usize,
        name: String,
    },
    MeasureW {
        observable: PauliVector,
        name: String,
    },
    /// Applies `gate` when record `name` holds `value`.
    Conditional {
        name: String,
        value: i64,
        gate: GateSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitProgram {
    ring: RingParams,
    n: usize,
    instructions: Vec<Instruction>,
    records: Vec<String>,
}

impl CircuitProgram {
    pub fn new(d: i64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Contract("a program needs at least one qudit".into()));
        }
        Ok(Self {
            ring: RingParams::new(d)?,
            n,
            instructions: Vec::new(),
            records: Vec::new(),
        })
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn d(&self) -> i64 {
        self.ring.d()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    /// Record names in the order they are measured.
    pub fn records(&self) -> &[String] {
        &self.records
    }

    fn check_gate(&self, g: &GateSpec) -> Result<()> {
        g.check_targets(self.n)?;
        match &g.kind {
            GateKind::M(a) if gcd(*a, self.d()) != 1 => Err(Error::NotUnit {
                value: a.rem_euclid(self.d()),
                modulus: self.d(),
            }),
            GateKind::Pauli(p) => self.ring.same_as(&p.ring()),
            _ => Ok(()),
        }
    }

    fn check_new_record(&self, name: &str) -> Result<()> {
        if self.records.iter().any(|r| r == name) {
            return Err(Error::Contract(format!("record {name} is already defined")));
        }
        Ok(())
    }

    /// Appends an instruction after checking it against the program so far.
    pub fn push(&mut self, ins: Instruction) -> Result<()> {
        match &ins {
            Instruction::Gate(g) => self.check_gate(g)?,
            Instruction::MeasureZ { qudit, name } => {
                if *qudit >= self.n {
                    return Err(Error::IndexOutOfRange {
                        index: *qudit,
                        len: self.n,
                    });
                }
                self.check_new_record(name)?;
            }
            Instruction::MeasureW { observable, name } => {
                self.ring.same_as(&observable.ring())?;
                crate::error::check_len(self.n, observable.n())?;
                self.check_new_record(name)?;
            }
            Instruction::Conditional { name, value, gate } => {
                self.check_gate(gate)?;
                if !self.records.contains(name) {
                    return Err(Error::Contract(format!(
                        "record {name} is used before it is measured"
                    )));
                }
                if !(0..self.d()).contains(value) {
                    return Err(Error::OutOfRange {
                        value: *value,
                        bound: self.d(),
                    });
                }
            }
        }
        if let Instruction::MeasureZ { name, .. } | Instruction::MeasureW { name, .. } = &ins {
            self.records.push(name.clone());
        }
        self.instructions.push(ins);
        Ok(())
    }

    pub fn gate(mut self, g: GateSpec) -> Result<Self> {
        self.push(Instruction::Gate(g))?;
        Ok(self)
    }

    pub fn measure_z(mut self, qudit: usize, name: &str) -> Result<Self> {
        self.push(Instruction::MeasureZ {
            qudit,
            name: name.into(),
        })?;
        Ok(self)
    }

    pub fn measure_w(mut self, observable: PauliVector, name: &str) -> Result<Self> {
        self.push(Instruction::MeasureW {
            observable,
            name: name.into(),
        })?;
        Ok(self)
    }

    pub fn conditional(mut self, name: &str, value: i64, gate: GateSpec) -> Result<Self> {
        self.push(Instruction::Conditional {
            name: name.into(),
            value,
            gate,
        })?;
        Ok(self)
    }

    /// Number of measurement instructions.
    pub fn measurement_count(&self) -> usize {
        self.records.len()
    }

    /// Qudits touched by any instruction.
    pub fn used_qudits(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for ins in &self.instructions {
            match ins {
                Instruction::Gate(g) | Instruction::Conditional { gate: g, .. } => {
                    out.extend(&g.targets)
                }
                Instruction::MeasureZ { qudit, .. } => {
                    out.insert(*qudit);
                }
                Instruction::MeasureW { observable, .. } => {
                    let n = self.n;
                    out.extend(
                        (0..n).filter(|&q| observable.v()[q] != 0 || observable.v()[n + q] != 0),
                    );
                }
            }
        }
        out
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Gate(g) => write!(f, "{g}"),
            Instruction::MeasureZ { qudit, name } => write!(f, "measure z {qudit} -> {name}"),
            Instruction::MeasureW { observable, name } => {
                let n = observable.n();
                let v = observable.v();
                write!(f, "measure w z={} x={}", join(&v[..n]), join(&v[n..]))?;
                if observable.phi() != 0 {
                    write!(f, " delta={}", observable.phi())?;
                }
                write!(f, " -> {name}")
            }
            Instruction::Conditional { name, value, gate } => write!(f, "{gate} if {name}={value}"),
        }
    }
}

impl fmt::Display for CircuitProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.d())?;
        writeln!(f, "qudits {}", self.n)?;
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}
