//! Clifford gates as conjugation tableaus.
//!
//! A tableau `[[1, h], [0, C]]` acting on Pauli vectors means
//! `U W_v U^dagger = tau^{-2 h.v} W_{Cv}`. Composition is plain block
//! matrix multiplication mod `D`.

use std::fmt;

use crate::error::{check_len, Error, Result};
use crate::modmath::{
    gcd, lift_unit, mod_inverse, solve_mod2_lex_least, sympl, unit_normalizer, ModMatrix,
    RingParams, SymplecticForm,
};
use crate::tableau::{sigma_row_mod2, StabilizerTableau};
use crate::weyl::{harmonic_number, PauliVector, PhasedWeyl};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GateKind {
    S,
    F,
    Finv,
    /// Multiplication `|q> -> |aq>`; `a` must be a unit mod `d`.
    M(i64),
    CZ,
    /// Targets are `[control, target]`.
    CX,
    Swap,
    /// `tau^t W_u` on the listed targets.
    Pauli(PhasedWeyl),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateSpec {
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl GateSpec {
    pub fn s(q: usize) -> Self {
        Self {
            kind: GateKind::S,
            targets: vec![q],
        }
    }
    pub fn f(q: usize) -> Self {
        Self {
            kind: GateKind::F,
            targets: vec![q],
        }
    }
    pub fn finv(q: usize) -> Self {
        Self {
            kind: GateKind::Finv,
            targets: vec![q],
        }
    }
    pub fn m(q: usize, a: i64) -> Self {
        Self {
            kind: GateKind::M(a),
            targets: vec![q],
        }
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self {
            kind: GateKind::CZ,
            targets: vec![a, b],
        }
    }
    pub fn cx(control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::CX,
            targets: vec![control, target],
        }
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self {
            kind: GateKind::Swap,
            targets: vec![a, b],
        }
    }
    pub fn pauli(targets: Vec<usize>, p: PhasedWeyl) -> Self {
        Self {
            kind: GateKind::Pauli(p),
            targets,
        }
    }

    /// Arity expected by the gate kind.
    pub fn arity(&self) -> usize {
        match &self.kind {
            GateKind::S | GateKind::F | GateKind::Finv | GateKind::M(_) => 1,
            GateKind::CZ | GateKind::CX | GateKind::Swap => 2,
            GateKind::Pauli(p) => p.n(),
        }
    }

    /// Checks arity, range and distinctness of the targets.
    pub fn check_targets(&self, n: usize) -> Result<()> {
        check_len(self.arity(), self.targets.len())?;
        for (i, &q) in self.targets.iter().enumerate() {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, len: n });
            }
            if self.targets[..i].contains(&q) {
                return Err(Error::Contract(format!("qudit {q} listed twice")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.targets;
        match &self.kind {
            GateKind::S => write!(f, "S {}", t[0]),
            GateKind::F => write!(f, "F {}", t[0]),
            GateKind::Finv => write!(f, "Finv {}", t[0]),
            GateKind::M(a) => write!(f, "M {} {}", t[0], a),
            GateKind::CZ => write!(f, "CZ {} {}", t[0], t[1]),
            GateKind::CX => write!(f, "CX {} {}", t[0], t[1]),
            GateKind::Swap => write!(f, "SWAP {} {}", t[0], t[1]),
            GateKind::Pauli(p) => {
                let join = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                write!(f, "W")?;
                for q in t {
                    write!(f, " {q}")?;
                }
                write!(f, " z={} x={}", join(p.z_part()), join(p.x_part()))?;
                if p.t() != 0 {
                    write!(f, " t={}", p.t())?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationTableau {
    n: usize,
    ring: RingParams,
    h: Vec<i64>,
    c: ModMatrix,
}

impl ConjugationTableau {
    pub fn identity(ring: RingParams, n: usize) -> Self {
        Self {
            n,
            ring,
            h: vec![0; 2 * n],
            c: ModMatrix::identity(2 * n, ring.modulus()),
        }
    }

    pub fn new(ring: RingParams, h: Vec<i64>, c: ModMatrix) -> Result<Self> {
        check_len(c.rows(), c.cols())?;
        check_len(c.rows(), h.len())?;
        if !c.rows().is_multiple_of(2) {
            return Err(Error::Contract(
                "conjugation tableau needs even size".into(),
            ));
        }
        let c = c.reduced(ring.modulus());
        if !is_symplectic(&c) {
            return Err(Error::Contract("matrix is not symplectic mod D".into()));
        }
        Ok(Self {
            n: c.rows() / 2,
            ring,
            h: h.into_iter().map(|x| ring.reduce(x)).collect(),
            c,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn h(&self) -> &[i64] {
        &self.h
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.c
    }

    /// Conjugation by `tau^t W_u`.
    pub fn pauli(u: &PhasedWeyl) -> Self {
        let ring = u.ring();
        let n = u.n();
        let m = ring.modulus();
        let h = (0..2 * n)
            .map(|j| {
                let mut e = vec![0; 2 * n];
                e[j] = 1;
                ring.reduce(-sympl(u.v(), &e, m))
            })
            .collect();
        Self {
            n,
            ring,
            h,
            c: ModMatrix::identity(2 * n, m),
        }
    }

    /// Tableau of `gate` acting inside an `n`-qudit register.
    pub fn gate(g: &GateSpec, ring: RingParams, n: usize) -> Result<Self> {
        g.check_targets(n)?;
        if let GateKind::Pauli(p) = &g.kind {
            ring.same_as(&p.ring())?;
            return Ok(Self::pauli(&p.embed(&g.targets, n)?));
        }
        let local = local_matrix(&g.kind, ring)?;
        let k = g.targets.len();
        let m = ring.modulus();
        let mut c = ModMatrix::identity(2 * n, m);
        let global = |i: usize| {
            if i < k {
                g.targets[i]
            } else {
                n + g.targets[i - k]
            }
        };
        for i in 0..2 * k {
            for j in 0..2 * k {
                c.set(global(i), global(j), local[i][j]);
            }
        }
        Ok(Self {
            n,
            ring,
            h: vec![0; 2 * n],
            c,
        })
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.ring.same_as(&other.ring)?;
        check_len(self.n, other.n)
    }

    /// Tableau of `outer * inner` (inner acts first).
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.compatible(inner)?;
        let r = outer.ring;
        let c = outer.c.mul(&inner.c)?;
        // h = h_inner + h_outer C_inner
        let ho = inner.c.transpose().mul_vec(&outer.h)?;
        let h = inner
            .h
            .iter()
            .zip(&ho)
            .map(|(a, b)| r.reduce(a + b))
            .collect();
        Ok(Self {
            n: outer.n,
            ring: r,
            h,
            c,
        })
    }

    pub fn inverse(&self) -> Self {
        let m = self.ring.modulus();
        let sigma = SymplecticForm::new(self.n).matrix(m);
        let mut cinv = sigma
            .mul(&self.c.transpose())
            .and_then(|x| x.mul(&sigma))
            .expect("square");
        for i in 0..2 * self.n {
            for j in 0..2 * self.n {
                let x = cinv.get(i, j);
                cinv.set(i, j, -x);
            }
        }
        let hc = cinv.transpose().mul_vec(&self.h).expect("square");
        let h = hc.into_iter().map(|x| self.ring.reduce(-x)).collect();
        Self {
            n: self.n,
            ring: self.ring,
            h,
            c: cinv,
        }
    }

    /// `self^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::identity(self.ring, self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = Self::compose(&acc, &base).expect("same shape");
            }
            base = Self::compose(&base, &base).expect("same shape");
            k >>= 1;
        }
        acc
    }

    /// Image of a single operator under conjugation.
    pub fn apply_to(&self, p: &PhasedWeyl) -> Result<PhasedWeyl> {
        self.ring.same_as(&p.ring())?;
        check_len(2 * self.n, p.v().len())?;
        let hv: i64 = self.h.iter().zip(p.v()).map(|(a, b)| a * b).sum();
        PhasedWeyl::new(self.ring, p.t() - 2 * hv, self.c.mul_vec(p.v())?)
    }

    pub fn apply_to_pauli(&self, p: &PauliVector) -> Result<PauliVector> {
        self.ring.same_as(&p.ring())?;
        check_len(2 * self.n, p.v().len())?;
        let hv: i64 = self.h.iter().zip(p.v()).map(|(a, b)| a * b).sum();
        PauliVector::new(self.ring, p.phi() + hv, self.c.mul_vec(p.v())?)
    }

    /// Conjugates every generator of `t`; `xi` is left untouched.
    pub fn apply(&self, t: &StabilizerTableau) -> Result<StabilizerTableau> {
        self.ring.same_as(&t.ring())?;
        check_len(self.n, t.n())?;
        let mut phases = Vec::with_capacity(t.len());
        let mut columns = Vec::with_capacity(t.len());
        for (phi, v) in t.phases().iter().zip(t.weyl_columns()) {
            let hv: i64 = self.h.iter().zip(v).map(|(a, b)| a * b).sum();
            phases.push(phi + hv);
            columns.push(self.c.mul_vec(v)?);
        }
        StabilizerTableau::new(
            self.ring,
            self.n,
            phases,
            columns,
            t.xi().map(<[Vec<i64>]>::to_vec),
        )
    }
}

/// `2k x 2k` symplectic block of a non-Pauli gate, local order
/// `(z_1 .. z_k, x_1 .. x_k)`.
fn local_matrix(kind: &GateKind, ring: RingParams) -> Result<Vec<Vec<i64>>> {
    Ok(match kind {
        GateKind::S => vec![vec![1, 1], vec![0, 1]],
        GateKind::F => vec![vec![0, 1], vec![-1, 0]],
        GateKind::Finv => vec![vec![0, -1], vec![1, 0]],
        GateKind::M(a) => {
            let alpha = multiplier_lift(*a, ring)?;
            let inv = mod_inverse(alpha, ring.modulus()).expect("lift is a unit");
            vec![vec![inv, 0], vec![0, alpha]]
        }
        GateKind::CZ => vec![
            vec![1, 0, 0, 1],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ],
        GateKind::CX => vec![
            vec![1, -1, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 1],
        ],
        GateKind::Swap => vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ],
        GateKind::Pauli(_) => unreachable!("Pauli gates have no symplectic block"),
    })
}

/// Smallest representative mod `D` of `a mod d` that is a unit mod `D`.
pub fn multiplier_lift(a: i64, ring: RingParams) -> Result<i64> {
    let d = ring.d();
    if gcd(a, d) != 1 {
        return Err(Error::NotUnit {
            value: a.rem_euclid(d),
            modulus: d,
        });
    }
    lift_unit(a, d, ring.modulus()).ok_or(Error::NotUnit {
        value: a,
        modulus: ring.modulus(),
    })
}

pub fn gate_tableau(g: &GateSpec, ring: RingParams, n: usize) -> Result<ConjugationTableau> {
    ConjugationTableau::gate(g, ring, n)
}

/// `C^T sigma C == sigma` modulo the matrix's own modulus.
pub fn is_symplectic(c: &ModMatrix) -> bool {
    if c.rows() != c.cols() || !c.rows().is_multiple_of(2) {
        return false;
    }
    let m = c.modulus();
    let sigma = SymplecticForm::new(c.rows() / 2).matrix(m);
    c.transpose()
        .mul(&sigma)
        .and_then(|x| x.mul(c))
        .is_ok_and(|x| x == sigma)
}

/// Lifts a matrix symplectic mod `d` (even) to one symplectic mod `2d` that
/// agrees with it mod `d`.
pub fn lift_symplectic(c: &ModMatrix, d: i64) -> Result<ModMatrix> {
    if d % 2 != 0 {
        return Err(Error::Contract("lifting applies to even d".into()));
    }
    let base = c.reduced(d);
    if !is_symplectic(&base) {
        return Err(Error::NotLiftable);
    }
    let nn = base.rows();
    let n = nn / 2;
    let m = 2 * d;
    let cols: Vec<Vec<i64>> = (0..nn).map(|j| base.column(j)).collect();
    let mut lifted: Vec<Vec<i64>> = Vec::with_capacity(nn);
    for j in 0..nn {
        let mut rows = Vec::with_capacity(j + 1);
        let mut rhs = Vec::with_capacity(j + 1);
        for h in 0..=j {
            rows.push(sigma_row_mod2(&cols[h]));
            if h < j {
                let target = if j == h + n && h < n { 1 } else { 0 };
                let c = (sympl(&lifted[h], &cols[j], m) - target).rem_euclid(m);
                if c % d != 0 {
                    return Err(Error::NotLiftable);
                }
                rhs.push((c / d) as u8);
            } else {
                rhs.push(0);
            }
        }
        let x = solve_mod2_lex_least(&rows, &rhs, nn).ok_or(Error::NotLiftable)?;
        lifted.push(
            cols[j]
                .iter()
                .zip(&x)
                .map(|(&a, &b)| (a + d * b as i64).rem_euclid(m))
                .collect(),
        );
    }
    let out = ModMatrix::from_columns(&lifted, nn, m)?;
    if !is_symplectic(&out) {
        return Err(Error::NotLiftable);
    }
    Ok(out)
}

/// A Clifford `U` with `U W_v U^dagger = Z_qudit^{eta(v)}`.
#[derive(Debug, Clone)]
pub struct WeylReduction {
    pub conj: ConjugationTableau,
    pub qudit: usize,
    pub eta: i64,
    /// Gates in time order, each raised to the given power.
    pub steps: Vec<(GateSpec, i64)>,
}

/// Finds a generator product conjugating `W_v` to `Z_j^{eta(v)}`.
pub fn reduce_weyl_to_z(v: &[i64], ring: RingParams) -> Result<WeylReduction> {
    let d = ring.d();
    if !v.len().is_multiple_of(2) || v.is_empty() {
        return Err(Error::Contract(
            "Weyl vector must have positive even length".into(),
        ));
    }
    let n = v.len() / 2;
    if v.iter().all(|x| x % d == 0) {
        return Err(Error::Degenerate("v is zero mod d".into()));
    }
    let mut red = Reducer {
        ring,
        n,
        w: v.iter().map(|&x| ring.reduce(x)).collect(),
        acc: ConjugationTableau::identity(ring, n),
        steps: Vec::new(),
    };

    for k in 0..n {
        loop {
            let (a, b) = (red.w[k], red.w[n + k]);
            if b == 0 {
                break;
            }
            if a == 0 {
                red.push(GateSpec::f(k), 1);
                continue;
            }
            let q = a / b;
            if q != 0 {
                red.push(GateSpec::s(k), -q);
            }
            let (a, b) = (red.w[k], red.w[n + k]);
            if a == 0 {
                continue;
            }
            let q = b / a;
            if q != 0 {
                // F S^{q} F^dagger adds -q a to the X-part
                red.push(GateSpec::finv(k), 1);
                red.push(GateSpec::s(k), q);
                red.push(GateSpec::f(k), 1);
            }
        }
    }

    let j = (0..n).find(|&k| red.w[k] != 0).expect("v nonzero mod d");
    for k in j + 1..n {
        loop {
            if red.w[k] == 0 {
                break;
            }
            let q = red.w[j] / red.w[k];
            if q != 0 {
                red.push(GateSpec::cx(j, k), q);
            }
            if red.w[j] == 0 {
                red.push(GateSpec::swap(j, k), 1);
                continue;
            }
            let q = red.w[k] / red.w[j];
            if q != 0 {
                red.push(GateSpec::cx(k, j), q);
            }
        }
    }

    let eta = harmonic_number(v, d);
    let u = unit_normalizer(red.w[j] % d, d);
    if u != 1 {
        let a = mod_inverse(u, d).expect("unit");
        red.push(GateSpec::m(j, a), 1);
    }
    debug_assert_eq!(red.w[j] % d, eta % d);
    debug_assert!(red.w.iter().enumerate().all(|(i, &x)| i == j || x == 0));
    Ok(WeylReduction {
        conj: red.acc,
        qudit: j,
        eta,
        steps: red.steps,
    })
}

struct Reducer {
    ring: RingParams,
    n: usize,
    w: Vec<i64>,
    acc: ConjugationTableau,
    steps: Vec<(GateSpec, i64)>,
}

impl Reducer {
    fn push(&mut self, g: GateSpec, power: i64) {
        let t = ConjugationTableau::gate(&g, self.ring, self.n)
            .expect("valid gate")
            .power(power);
        self.w = t.c.mul_vec(&self.w).expect("length 2n");
        self.acc = ConjugationTableau::compose(&t, &self.acc).expect("same shape");
        self.steps.push((g, self.ring.reduce(power)));
    }
}
