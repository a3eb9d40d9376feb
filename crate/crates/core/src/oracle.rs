//! Dense state-vector reference simulator.
//!
//! Everything here works on explicit complex amplitudes and matrices and
//! shares no code with the tableau engine beyond the plain data types, so
//! it can serve as an independent check. Basis index `sum_j q_j d^{n-1-j}`
//! puts qudit 0 in the most significant position.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{CircuitProgram, Instruction};
use crate::clifford::{GateKind, GateSpec};
use crate::error::{check_len, Error, Result};
use crate::modmath::{gcd, sympl, RingParams};
use crate::tableau::StabilizerTableau;
use crate::weyl::{PauliVector, PhasedWeyl};

/// Largest Hilbert space dimension handled here.
pub const MAX_DENSE_DIM: usize = 4096;

/// Comparison tolerance for derived quantities.
pub const TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `tau^k` with `tau = exp(i pi (d^2 + 1) / d)`. Quarter turns are exact.
pub fn tau_pow(k: i64, d: i64) -> Complex64 {
    let modulus = if d % 2 == 0 { 2 * d } else { d };
    // tau^k = exp(i pi num / d) with num taken mod 2d
    let num = (k.rem_euclid(modulus) as i128 * ((d as i128) * (d as i128) + 1))
        .rem_euclid(2 * d as i128) as i64;
    if (2 * num) % d == 0 {
        return match (2 * num / d) % 4 {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, PI * num as f64 / d as f64)
}

pub fn tau_value(d: i64) -> Complex64 {
    tau_pow(1, d)
}

fn dimension(d: i64, n: usize) -> Result<usize> {
    let dim = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if dim > MAX_DENSE_DIM as u128 {
        return Err(Error::TooLarge(dim));
    }
    Ok(dim as usize)
}

fn digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut q = vec![0; n];
    for j in (0..n).rev() {
        q[j] = idx % d;
        idx /= d;
    }
    q
}

fn index_of(q: &[usize], d: usize) -> usize {
    q.iter().fold(0, |acc, &x| acc * d + x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    d: i64,
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// `|q_1 ... q_n>`.
    pub fn basis(d: i64, q: &[i64]) -> Result<Self> {
        let n = q.len();
        let dim = dimension(d, n)?;
        let mut digits = Vec::with_capacity(n);
        for &x in q {
            if !(0..d).contains(&x) {
                return Err(Error::OutOfRange { value: x, bound: d });
            }
            digits.push(x as usize);
        }
        let mut amps = vec![ZERO; dim];
        amps[index_of(&digits, d as usize)] = ONE;
        Ok(Self { d, n, amps })
    }

    pub fn from_amplitudes(d: i64, n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_len(dimension(d, n)?, amps.len())?;
        Ok(Self { d, n, amps })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Rescales to unit norm; fails for the zero vector.
    pub fn normalized(mut self) -> Result<Self> {
        let nrm = self.norm();
        if nrm < 1e-12 {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amps {
            *a /= nrm;
        }
        Ok(self)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|`, which is 1 for equal states up to global phase.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    /// Applies `tau^t W_v` directly:
    /// `W_{a,b} |q> = tau^{-a.b + 2 a.(q+b)} |q + b>`.
    pub fn apply_weyl(&self, p: &PhasedWeyl) -> Result<Self> {
        check_len(self.n, p.n())?;
        let du = self.d as usize;
        let (a, b) = (p.z_part(), p.x_part());
        let ab: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let mut out = vec![ZERO; self.amps.len()];
        for (idx, &amp) in self.amps.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let q = digits(idx, du, self.n);
            let shifted: Vec<usize> = q
                .iter()
                .zip(b)
                .map(|(&x, &y)| (x + y as usize) % du)
                .collect();
            let aq: i64 = a.iter().zip(&shifted).map(|(&x, &y)| x * y as i64).sum();
            let phase = tau_pow(p.t() - ab + 2 * aq, self.d);
            out[index_of(&shifted, du)] += phase * amp;
        }
        Ok(Self { amps: out, ..*self })
    }

    fn apply_local(&self, targets: &[usize], u: &DMatrix<Complex64>) -> Self {
        let du = self.d as usize;
        let k = targets.len();
        let strides: Vec<usize> = targets
            .iter()
            .map(|&t| du.pow((self.n - 1 - t) as u32))
            .collect();
        let local_dim = du.pow(k as u32);
        let offsets: Vec<usize> = (0..local_dim)
            .map(|l| {
                digits(l, du, k)
                    .iter()
                    .zip(&strides)
                    .map(|(x, s)| x * s)
                    .sum()
            })
            .collect();
        let mut out = self.amps.clone();
        let mut sub = vec![ZERO; local_dim];
        for base in 0..self.amps.len() {
            if strides.iter().any(|&s| (base / s) % du != 0) {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                sub[l] = self.amps[base + off];
            }
            for (r, off) in offsets.iter().enumerate() {
                out[base + off] = (0..local_dim).map(|c| u[(r, c)] * sub[c]).sum();
            }
        }
        Self { amps: out, ..*self }
    }

    pub fn apply_gate(&self, g: &GateSpec) -> Result<Self> {
        g.check_targets(self.n)?;
        if let GateKind::Pauli(p) = &g.kind {
            return self.apply_weyl(&p.embed(&g.targets, self.n)?);
        }
        Ok(self.apply_local(&g.targets, &local_gate(&g.kind, self.d)?))
    }

    /// Applies `g^k`; negative `k` applies the adjoint.
    pub fn apply_gate_power(&self, g: &GateSpec, k: i64) -> Result<Self> {
        g.check_targets(self.n)?;
        let mut u = match &g.kind {
            GateKind::Pauli(p) => weyl_dense(p, self.d, p.n())?.matrix,
            kind => local_gate(kind, self.d)?,
        };
        if k < 0 {
            u = u.adjoint();
        }
        let mut out = self.clone();
        for _ in 0..k.unsigned_abs() {
            out = out.apply_local(&g.targets, &u);
        }
        Ok(out)
    }

    pub fn apply_operator(&self, op: &DenseOperator) -> Result<Self> {
        check_len(self.amps.len(), op.matrix.ncols())?;
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        Ok(Self {
            amps: (&op.matrix * v).as_slice().to_vec(),
            ..*self
        })
    }
}

/// Unitary on `targets.len()` qudits, as a literal matrix.
fn local_gate(kind: &GateKind, d: i64) -> Result<DMatrix<Complex64>> {
    let du = d as usize;
    let scale = 1.0 / (d as f64).sqrt();
    Ok(match kind {
        GateKind::S => DMatrix::from_fn(du, du, |p, q| {
            if p == q {
                tau_pow((q * q) as i64, d)
            } else {
                ZERO
            }
        }),
        GateKind::F => DMatrix::from_fn(du, du, |p, q| tau_pow(2 * (p * q) as i64, d) * scale),
        GateKind::Finv => DMatrix::from_fn(du, du, |p, q| tau_pow(-2 * (p * q) as i64, d) * scale),
        GateKind::M(a) => {
            if gcd(*a, d) != 1 {
                return Err(Error::NotUnit {
                    value: a.rem_euclid(d),
                    modulus: d,
                });
            }
            let a = a.rem_euclid(d) as usize;
            DMatrix::from_fn(du, du, |p, q| if p == (a * q) % du { ONE } else { ZERO })
        }
        GateKind::CZ => DMatrix::from_fn(du * du, du * du, |r, c| {
            if r == c {
                tau_pow(2 * ((c / du) * (c % du)) as i64, d)
            } else {
                ZERO
            }
        }),
        GateKind::CX => DMatrix::from_fn(du * du, du * du, |r, c| {
            let (q1, q2) = (c / du, c % du);
            if r == q1 * du + (q2 + q1) % du {
                ONE
            } else {
                ZERO
            }
        }),
        GateKind::Swap => DMatrix::from_fn(du * du, du * du, |r, c| {
            if r == (c % du) * du + c / du {
                ONE
            } else {
                ZERO
            }
        }),
        GateKind::Pauli(p) => weyl_dense(p, d, p.n())?.matrix,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    d: i64,
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn identity(d: i64, n: usize) -> Result<Self> {
        let dim = dimension(d, n)?;
        Ok(Self {
            d,
            n,
            matrix: DMatrix::identity(dim, dim),
        })
    }

    /// Builds an operator column by column from its action on basis states.
    fn from_action(
        d: i64,
        n: usize,
        f: impl Fn(&DenseState) -> Result<DenseState>,
    ) -> Result<Self> {
        let dim = dimension(d, n)?;
        let du = d as usize;
        let mut matrix = DMatrix::zeros(dim, dim);
        for c in 0..dim {
            let q: Vec<i64> = digits(c, du, n).into_iter().map(|x| x as i64).collect();
            let img = f(&DenseState::basis(d, &q)?)?;
            for (r, &a) in img.amps.iter().enumerate() {
                matrix[(r, c)] = a;
            }
        }
        Ok(Self { d, n, matrix })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix,
            ..*self
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            ..*self
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            matrix: &self.matrix * c,
            ..*self
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest entrywise distance.
    pub fn max_distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let id = DMatrix::<Complex64>::identity(self.matrix.nrows(), self.matrix.ncols());
        (self.matrix.adjoint() * &self.matrix - id)
            .iter()
            .all(|z| z.norm() < tol)
    }

    /// `Tr(A^dagger B) / d^n`.
    pub fn hilbert_schmidt(&self, other: &Self) -> Complex64 {
        (self.matrix.adjoint() * &other.matrix).trace() / self.matrix.nrows() as f64
    }
}

/// Dense matrix of `tau^t W_v` on `n` qudits.
pub fn weyl_dense(p: &PhasedWeyl, d: i64, n: usize) -> Result<DenseOperator> {
    check_len(n, p.n())?;
    DenseOperator::from_action(d, n, |s| s.apply_weyl(p))
}

/// Dense matrix of a gate acting inside an `n`-qudit register.
pub fn gate_dense(g: &GateSpec, d: i64, n: usize) -> Result<DenseOperator> {
    DenseOperator::from_action(d, n, |s| s.apply_gate(g))
}

/// Dense unitary of a list of powered gates in time order.
pub fn circuit_dense(gates: &[(GateSpec, i64)], d: i64, n: usize) -> Result<DenseOperator> {
    DenseOperator::from_action(d, n, |s| {
        let mut s = s.clone();
        for (g, k) in gates {
            s = s.apply_gate_power(g, *k)?;
        }
        Ok(s)
    })
}

fn check_commuting(gens: &[PhasedWeyl], d: i64) -> Result<()> {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if sympl(a.v(), b.v(), d) != 0 {
                return Err(Error::Contract("generators do not commute".into()));
            }
        }
    }
    Ok(())
}

/// `prod_S (1/d) sum_j S^j` applied to `psi`.
fn project(psi: &DenseState, gens: &[PhasedWeyl]) -> Result<DenseState> {
    let mut cur = psi.clone();
    for g in gens {
        let mut acc = vec![ZERO; cur.amps.len()];
        let mut term = cur.clone();
        for _ in 0..cur.d {
            for (a, b) in acc.iter_mut().zip(&term.amps) {
                *a += b;
            }
            term = term.apply_weyl(g)?;
        }
        let inv = 1.0 / cur.d as f64;
        cur = DenseState {
            amps: acc.into_iter().map(|a| a * inv).collect(),
            ..cur
        };
    }
    Ok(cur)
}

/// Orthonormal basis of the joint `+1` eigenspace.
pub fn stabilized_subspace(gens: &[PhasedWeyl], d: i64, n: usize) -> Result<Vec<DenseState>> {
    check_commuting(gens, d)?;
    let dim = dimension(d, n)?;
    let du = d as usize;
    let mut trace = 0.0;
    let mut basis: Vec<DenseState> = Vec::new();
    for k in 0..dim {
        let q: Vec<i64> = digits(k, du, n).into_iter().map(|x| x as i64).collect();
        let mut w = project(&DenseState::basis(d, &q)?, gens)?;
        trace += w.amps[k].re;
        for b in &basis {
            let c = b.inner(&w);
            for (x, y) in w.amps.iter_mut().zip(&b.amps) {
                *x -= c * y;
            }
        }
        if w.norm() > 1e-6 {
            basis.push(w.normalized()?);
        }
    }
    let rank = trace.round() as usize;
    if rank != basis.len() {
        return Err(Error::Internal(format!(
            "projector trace {trace} disagrees with rank {}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// The projector trace, `d^n / |G|` for a legal group.
pub fn projector_trace(gens: &[PhasedWeyl], d: i64, n: usize) -> Result<f64> {
    check_commuting(gens, d)?;
    let dim = dimension(d, n)?;
    let du = d as usize;
    let mut trace = 0.0;
    for k in 0..dim {
        let q: Vec<i64> = digits(k, du, n).into_iter().map(|x| x as i64).collect();
        trace += project(&DenseState::basis(d, &q)?, gens)?.amps[k].re;
    }
    Ok(trace)
}

/// A state stabilized by `gens`, obtained by projecting a fixed generic
/// vector. Unique up to phase when the group has order `d^n`.
pub fn stabilizer_state(gens: &[PhasedWeyl], d: i64, n: usize) -> Result<DenseState> {
    check_commuting(gens, d)?;
    let dim = dimension(d, n)?;
    let amps = (0..dim)
        .map(|k| {
            Complex64::from_polar(
                1.0 + (k % 7) as f64 / 7.0,
                0.7548776662 * (k * k + 1) as f64,
            )
        })
        .collect();
    let generic = DenseState { d, n, amps };
    let w = project(&generic, gens)?;
    if w.norm() < 1e-8 {
        return Err(Error::Degenerate("no state is stabilized".into()));
    }
    w.normalized()
}

pub fn tableau_state(t: &StabilizerTableau) -> Result<DenseState> {
    stabilizer_state(&t.generators(), t.ring().d(), t.n())
}

/// Eigenvalue multiplicities of `W_v`, keyed by `k` for `exp(2 pi i k / d)`.
///
/// `W_v` is unitary and therefore diagonalizable, so the multiplicity of
/// `lambda` is the nullity of `W - lambda I`, read off its singular values.
/// Fails if the multiplicities over the `d`-th roots do not add up to the
/// full dimension.
pub fn eigenvalue_spectrum(v: &[i64], d: i64, n: usize) -> Result<BTreeMap<i64, usize>> {
    let ring = RingParams::new(d)?;
    let w = weyl_dense(&PhasedWeyl::new(ring, 0, v.to_vec())?, d, n)?.matrix;
    let dim = w.nrows();
    let mut out = BTreeMap::new();
    for k in 0..d {
        let lambda = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64);
        let shifted = &w - DMatrix::<Complex64>::identity(dim, dim) * lambda;
        let nullity = shifted
            .singular_values()
            .iter()
            .filter(|&&x| x < 1e-8)
            .count();
        if nullity > 0 {
            out.insert(k, nullity);
        }
    }
    let total: usize = out.values().sum();
    if total != dim {
        return Err(Error::Internal(format!(
            "spectrum of W_{v:?} covers {total} of {dim} dimensions"
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct DenseBranch {
    pub outcome: i64,
    pub probability: f64,
    pub state: DenseState,
}

/// Splits `state` along the eigenspaces of `P = tau^{-2 phi} W_v`; outcome
/// `h` selects the `tau^{2h}` eigenspace. Zero-probability branches are
/// omitted.
pub fn measure_dense(state: &DenseState, p: &PauliVector) -> Result<Vec<DenseBranch>> {
    check_len(state.n, p.n())?;
    let d = state.d;
    let op = p.to_phased();
    let mut powers = vec![state.clone()];
    for j in 1..d as usize {
        powers.push(powers[j - 1].apply_weyl(&op)?);
    }
    let mut out = Vec::new();
    for h in 0..d {
        let mut acc = vec![ZERO; state.amps.len()];
        for (j, pj) in powers.iter().enumerate() {
            let c = tau_pow(-2 * h * j as i64, d) / d as f64;
            for (a, b) in acc.iter_mut().zip(&pj.amps) {
                *a += c * b;
            }
        }
        let branch = DenseState {
            amps: acc,
            ..state.clone()
        };
        let prob = branch.norm().powi(2);
        if prob > 1e-10 {
            out.push(DenseBranch {
                outcome: h,
                probability: prob,
                state: branch.normalized()?,
            });
        }
    }
    Ok(out)
}

/// How [`simulate_circuit`] resolves measurements.
#[derive(Debug, Clone)]
pub enum DenseMode {
    Enumerate,
    /// Outcomes by record name; unlisted records take the smallest
    /// outcome with nonzero probability.
    Fixed(BTreeMap<String, i64>),
}

#[derive(Debug, Clone)]
pub struct DenseTrajectory {
    /// Outcomes in record order.
    pub outcomes: Vec<(String, i64)>,
    pub probability: f64,
    pub state: DenseState,
}

/// Runs a program on `|q>`, branching on every measurement.
pub fn simulate_circuit(
    program: &CircuitProgram,
    q: &[i64],
    mode: &DenseMode,
) -> Result<Vec<DenseTrajectory>> {
    check_len(program.n(), q.len())?;
    let d = program.d();
    let ring = program.ring();
    let mut live = vec![DenseTrajectory {
        outcomes: Vec::new(),
        probability: 1.0,
        state: DenseState::basis(d, q)?,
    }];
    for ins in program.instructions() {
        let mut next = Vec::with_capacity(live.len());
        for tr in live {
            match ins {
                Instruction::Gate(g) => next.push(DenseTrajectory {
                    state: tr.state.apply_gate(g)?,
                    ..tr
                }),
                Instruction::Conditional { name, value, gate } => {
                    let hit = tr.outcomes.iter().any(|(k, v)| k == name && v == value);
                    let state = if hit {
                        tr.state.apply_gate(gate)?
                    } else {
                        tr.state.clone()
                    };
                    next.push(DenseTrajectory { state, ..tr });
                }
                Instruction::MeasureZ { .. } | Instruction::MeasureW { .. } => {
                    let (obs, name) = match ins {
                        Instruction::MeasureZ { qudit, name } => {
                            (PauliVector::z_on(ring, program.n(), *qudit)?, name)
                        }
                        Instruction::MeasureW { observable, name } => (observable.clone(), name),
                        _ => unreachable!(),
                    };
                    let branches = measure_dense(&tr.state, &obs)?;
                    let wanted = match mode {
                        DenseMode::Enumerate => None,
                        DenseMode::Fixed(map) => {
                            Some(map.get(name).copied().unwrap_or(branches[0].outcome))
                        }
                    };
                    if let Some(h) = wanted {
                        if !branches.iter().any(|b| b.outcome == h) {
                            return Err(Error::Contract(format!(
                                "outcome {h} for {name} has probability zero"
                            )));
                        }
                    }
                    for b in branches {
                        if wanted.is_some_and(|h| h != b.outcome) {
                            continue;
                        }
                        let mut outcomes = tr.outcomes.clone();
                        outcomes.push((name.clone(), b.outcome));
                        next.push(DenseTrajectory {
                            outcomes,
                            probability: tr.probability * b.probability,
                            state: b.state,
                        });
                    }
                }
            }
        }
        if next.len() > MAX_DENSE_DIM {
            return Err(Error::TooLarge(next.len() as u128));
        }
        live = next;
    }
    live.sort_by(|a, b| {
        a.outcomes
            .iter()
            .map(|x| x.1)
            .cmp(b.outcomes.iter().map(|x| x.1))
    });
    Ok(live)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(d: i64) -> RingParams {
        RingParams::new(d).unwrap()
    }

    fn pw(d: i64, t: i64, v: &[i64]) -> PhasedWeyl {
        PhasedWeyl::new(ring(d), t, v.to_vec()).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_value(2), Complex64::new(0.0, 1.0));
        for d in 2..=7 {
            let m = if d % 2 == 0 { 2 * d } else { d };
            assert!((tau_pow(m, d) - ONE).norm() < 1e-12);
            let want = if d % 2 == 0 { -1.0 } else { 1.0 };
            assert!((tau_pow(d, d) - Complex64::new(want, 0.0)).norm() < 1e-12);
            let w = Complex64::from_polar(1.0, 2.0 * PI / d as f64);
            assert!((tau_pow(2, d) - w).norm() < 1e-12);
        }
    }

    #[test]
    fn weyl_identity_and_xyz() {
        for d in 2..=6 {
            let id = weyl_dense(&pw(d, 0, &[0, 0]), d, 1).unwrap();
            assert!(id.max_distance(&DenseOperator::identity(d, 1).unwrap()) < 1e-12);
            let x = weyl_dense(&pw(d, 0, &[0, 1]), d, 1).unwrap();
            let y = weyl_dense(&pw(d, 0, &[-1, -1]), d, 1).unwrap();
            let z = weyl_dense(&pw(d, 0, &[1, 0]), d, 1).unwrap();
            let xyz = x.mul(&y).mul(&z);
            let want = DenseOperator::identity(d, 1).unwrap().scaled(tau_value(d));
            assert!(xyz.max_distance(&want) < 1e-12, "d={d}");
        }
    }

    #[test]
    fn qubit_w11_is_y() {
        let w = weyl_dense(&pw(2, 0, &[1, 1]), 2, 1).unwrap();
        let m = w.matrix();
        assert!((m[(0, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((m[(1, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn fourier_order_four() {
        for d in 2..=6 {
            let f = gate_dense(&GateSpec::f(0), d, 1).unwrap();
            assert!(f.is_unitary(1e-10));
            let f4 = f.mul(&f).mul(&f).mul(&f);
            assert!(f4.max_distance(&DenseOperator::identity(d, 1).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn cx_adds_control() {
        let d = 3;
        let s = DenseState::basis(d, &[2, 1])
            .unwrap()
            .apply_gate(&GateSpec::cx(0, 1))
            .unwrap();
        assert_eq!(s, DenseState::basis(d, &[2, 0]).unwrap());
        let s = DenseState::basis(d, &[1, 2])
            .unwrap()
            .apply_gate(&GateSpec::cx(1, 0))
            .unwrap();
        assert_eq!(s, DenseState::basis(d, &[0, 2]).unwrap());
    }

    #[test]
    fn stabilized_examples() {
        let basis = stabilized_subspace(&[pw(3, 0, &[1, 0])], 3, 1).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].overlap(&DenseState::basis(3, &[0]).unwrap()) > 1.0 - 1e-12);

        let basis = stabilized_subspace(&[pw(4, 0, &[2, 0]), pw(4, 0, &[0, 2])], 4, 1).unwrap();
        assert_eq!(basis.len(), 1);
        let s = 0.5f64.sqrt();
        let want = DenseState::from_amplitudes(4, 1, vec![s.into(), ZERO, s.into(), ZERO]).unwrap();
        assert!(basis[0].overlap(&want) > 1.0 - 1e-12);

        assert!(stabilized_subspace(&[pw(2, 0, &[1, 0]), pw(2, 0, &[0, 1])], 2, 1).is_err());
        let tr = projector_trace(&[pw(2, 0, &[1, 0, 0, 0])], 2, 2).unwrap();
        assert!((tr - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_examples() {
        let z5 = eigenvalue_spectrum(&[1, 0], 5, 1).unwrap();
        assert_eq!(z5, (0..5).map(|k| (k, 1)).collect());
        let z2 = eigenvalue_spectrum(&[2, 0], 4, 1).unwrap();
        assert_eq!(z2, BTreeMap::from([(0, 2), (2, 2)]));
    }

    #[test]
    fn measure_examples() {
        let r = ring(2);
        let z = PauliVector::new(r, 0, vec![1, 0]).unwrap();
        let zero = DenseState::basis(2, &[0]).unwrap();
        let b = measure_dense(&zero, &z).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].outcome, 0);
        let plus = zero.apply_gate(&GateSpec::f(0)).unwrap();
        let b = measure_dense(&plus, &z).unwrap();
        assert_eq!(b.iter().map(|x| x.outcome).collect::<Vec<_>>(), vec![0, 1]);
        assert!(b.iter().all(|x| (x.probability - 0.5).abs() < 1e-12));
    }

    #[test]
    fn dense_size_limit() {
        assert!(matches!(
            DenseState::basis(2, &[0; 13]),
            Err(Error::TooLarge(_))
        ));
    }
}
