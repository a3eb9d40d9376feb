//! Stabilizer tableaus.
//!
//! Column `j` is the Pauli vector `(phi_j | v_j)` of a generator
//! `S_j = tau^{-2 phi_j} W_{v_j}`. Phases only matter mod `d`, since
//! `tau^{2d} = 1`, but are stored mod `D`.
//!
//! An extended tableau also carries the antisymmetric block `xi` with
//! `2 xi[h][j] == [v_h, v_j] (mod D)`. It allows generators to be recombined
//! linearly even when no proper tableau (`[v_h, v_j] == 0 mod D`) exists for
//! the group, which can only happen for even `d`.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::error::{check_len, Error, Result};
use crate::modmath::{
    gcd, mod_inverse, smith_normal_form, solve_linear, solve_mod2_lex_least, sympl, sympl_int,
    unit_normalizer, ModMatrix, RingParams,
};
use crate::weyl::{PauliVector, PhasedWeyl};

/// First invariant violated by a tableau.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("xi is not antisymmetric at ({0}, {1})")]
    XiNotAntisymmetric(usize, usize),
    #[error("2 xi[{0}][{1}] differs from the symplectic product of the columns")]
    XiInconsistent(usize, usize),
    #[error("the generated group contains tau^(-2*{0}) times the identity")]
    ScalarInGroup(i64),
}

/// Outcome of [`StabilizerTableau::membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// The target equals `prod_k S_k^{witness[k]}`.
    Member {
        witness: Vec<i64>,
    },
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    n: usize,
    ring: RingParams,
    phases: Vec<i64>,
    columns: Vec<Vec<i64>>,
    xi: Option<Vec<Vec<i64>>>,
}

/// Solves `2x == c (mod D)`, picking the smaller root for even `D`.
fn half(c: i64, ring: RingParams) -> Option<i64> {
    let m = ring.modulus();
    let c = c.rem_euclid(m);
    if m % 2 == 1 {
        Some((c * ((m + 1) / 2)) % m)
    } else if c % 2 == 0 {
        Some(c / 2)
    } else {
        None
    }
}

impl StabilizerTableau {
    /// Builds a tableau from columns. Invariants are checked by
    /// [`validate`](Self::validate), not here.
    pub fn new(
        ring: RingParams,
        n: usize,
        phases: Vec<i64>,
        columns: Vec<Vec<i64>>,
        xi: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        check_len(columns.len(), phases.len())?;
        for c in &columns {
            check_len(2 * n, c.len())?;
        }
        if let Some(x) = &xi {
            check_len(columns.len(), x.len())?;
            for row in x {
                check_len(columns.len(), row.len())?;
            }
        }
        let phases = phases.into_iter().map(|p| ring.reduce(p)).collect();
        let columns = columns
            .into_iter()
            .map(|c| c.into_iter().map(|x| ring.reduce(x)).collect())
            .collect();
        let xi = xi.map(|x| {
            x.into_iter()
                .map(|r| r.into_iter().map(|e| ring.reduce(e)).collect())
                .collect()
        });
        Ok(Self {
            n,
            ring,
            phases,
            columns,
            xi,
        })
    }

    pub fn from_pauli_vectors(ring: RingParams, n: usize, gens: &[PauliVector]) -> Result<Self> {
        for g in gens {
            ring.same_as(&g.ring())?;
            check_len(2 * n, g.v().len())?;
        }
        Self::new(
            ring,
            n,
            gens.iter().map(PauliVector::phi).collect(),
            gens.iter().map(|g| g.v().to_vec()).collect(),
            None,
        )
    }

    /// Tableau of `|q_1 ... q_n>`: qudit `j` is stabilized by
    /// `tau^{-2 q_j} Z_j`.
    pub fn standard_basis(ring: RingParams, q: &[i64]) -> Result<Self> {
        let n = q.len();
        for &x in q {
            if !(0..ring.d()).contains(&x) {
                return Err(Error::OutOfRange {
                    value: x,
                    bound: ring.d(),
                });
            }
        }
        let columns = (0..n)
            .map(|j| {
                let mut c = vec![0; 2 * n];
                c[j] = 1;
                c
            })
            .collect();
        Self::new(ring, n, q.to_vec(), columns, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn phases(&self) -> &[i64] {
        &self.phases
    }

    pub fn weyl_columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    /// The `2n x l` Weyl block.
    pub fn weyl_block(&self) -> ModMatrix {
        ModMatrix::from_columns(&self.columns, 2 * self.n, self.ring.modulus())
            .expect("columns have length 2n")
    }

    pub fn xi(&self) -> Option<&[Vec<i64>]> {
        self.xi.as_deref()
    }

    pub fn is_extended(&self) -> bool {
        self.xi.is_some()
    }

    pub fn column(&self, j: usize) -> PauliVector {
        PauliVector::new(self.ring, self.phases[j], self.columns[j].clone()).expect("even length")
    }

    pub fn generators(&self) -> Vec<PhasedWeyl> {
        (0..self.len())
            .map(|j| self.column(j).to_phased())
            .collect()
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: j,
                len: self.len(),
            })
        }
    }

    fn sym(&self, h: usize, j: usize) -> i64 {
        sympl(&self.columns[h], &self.columns[j], self.ring.modulus())
    }

    /// `W^T sigma W == 0 (mod D)`.
    pub fn is_proper(&self) -> bool {
        (0..self.len()).all(|h| (h + 1..self.len()).all(|j| self.sym(h, j) == 0))
    }

    /// Copy with `xi` filled in from the Weyl block (all zero for odd `d`).
    pub fn to_extended(&self) -> Result<Self> {
        if self.xi.is_some() {
            return Ok(self.clone());
        }
        let l = self.len();
        let mut xi = vec![vec![0; l]; l];
        for h in 0..l {
            for j in h + 1..l {
                let c = self.sym(h, j);
                let x = half(c, self.ring).ok_or(Error::Contract(format!(
                    "generators {h} and {j} do not commute"
                )))?;
                xi[h][j] = x;
                xi[j][h] = self.ring.reduce(-x);
            }
        }
        Ok(Self {
            xi: Some(xi),
            ..self.clone()
        })
    }

    /// Copy without `xi`; only allowed for proper tableaus.
    pub fn to_proper_form(&self) -> Result<Self> {
        if !self.is_proper() {
            return Err(Error::Contract("tableau is not proper".into()));
        }
        Ok(Self {
            xi: None,
            ..self.clone()
        })
    }

    /// Checks commutation, `xi` consistency and group legality.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let (d, m) = (self.ring.d(), self.ring.modulus());
        for h in 0..self.len() {
            for j in h + 1..self.len() {
                if self.sym(h, j) % d != 0 {
                    return Err(Violation::NonCommuting(h, j));
                }
            }
        }
        if let Some(xi) = &self.xi {
            for h in 0..self.len() {
                for j in 0..self.len() {
                    if (xi[h][j] + xi[j][h]) % m != 0 {
                        return Err(Violation::XiNotAntisymmetric(h, j));
                    }
                    if (2 * xi[h][j] - self.sym(h, j)).rem_euclid(m) != 0 {
                        return Err(Violation::XiInconsistent(h, j));
                    }
                }
            }
        }
        let mut work = Working::new(self, true).expect("commuting columns extend");
        let pivots = work.howell(0..work.tab.len());
        for c in 0..work.tab.len() {
            if pivots.iter().any(|&(_, p)| p == c) {
                continue;
            }
            debug_assert!(work.tab.columns[c].iter().all(|&x| x == 0));
            let t = self.ring.reduce_d(work.tab.phases[c]);
            if t != 0 {
                return Err(Violation::ScalarInGroup(t));
            }
        }
        Ok(())
    }

    // ----- column operations -------------------------------------------------

    /// Replaces `S_j` by `S_h^m S_j`.
    pub fn column_combine(&self, h: usize, j: usize, m: i64) -> Result<Self> {
        self.check_index(h)?;
        self.check_index(j)?;
        if h == j {
            return Err(Error::Contract(
                "column_combine needs distinct columns".into(),
            ));
        }
        if self.xi.is_none() && self.sym(h, j) != 0 {
            return Err(Error::Contract(format!(
                "columns {h} and {j} are not orthogonal mod D and xi is absent"
            )));
        }
        let mut out = self.clone();
        out.combine_in_place(h, j, m);
        Ok(out)
    }

    pub(crate) fn combine_in_place(&mut self, h: usize, j: usize, m: i64) {
        let r = self.ring;
        let m = r.reduce(m);
        if m == 0 {
            return;
        }
        let corr = self.xi.as_ref().map_or(0, |xi| xi[h][j]);
        self.phases[j] = r.reduce(self.phases[j] + m * self.phases[h] + m * corr);
        for i in 0..2 * self.n {
            self.columns[j][i] = r.reduce(self.columns[j][i] + m * self.columns[h][i]);
        }
        if let Some(xi) = &mut self.xi {
            let l = xi.len();
            for k in 0..l {
                xi[k][j] = r.reduce(xi[k][j] + m * xi[k][h]);
            }
            for k in 0..l {
                xi[j][k] = r.reduce(xi[j][k] + m * xi[h][k]);
            }
        }
    }

    /// Replaces `S_j` by `S_j^alpha` for a unit `alpha` mod `D`.
    pub fn column_scale(&self, j: usize, alpha: i64) -> Result<Self> {
        self.check_index(j)?;
        if mod_inverse(alpha, self.ring.modulus()).is_none() {
            return Err(Error::NotUnit {
                value: alpha,
                modulus: self.ring.modulus(),
            });
        }
        let mut out = self.clone();
        out.power_in_place(j, alpha);
        Ok(out)
    }

    /// `S_j <- S_j^m` for any integer `m`.
    pub(crate) fn power_in_place(&mut self, j: usize, m: i64) {
        let r = self.ring;
        self.phases[j] = r.reduce(self.phases[j] * m);
        for x in &mut self.columns[j] {
            *x = r.reduce(*x * m);
        }
        if let Some(xi) = &mut self.xi {
            for k in 0..xi.len() {
                xi[k][j] = r.reduce(xi[k][j] * m);
                xi[j][k] = r.reduce(xi[j][k] * m);
            }
        }
    }

    pub(crate) fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.phases.swap(a, b);
        self.columns.swap(a, b);
        if let Some(xi) = &mut self.xi {
            xi.swap(a, b);
            for row in xi.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    /// Keeps the listed columns, in the given order.
    pub(crate) fn select_columns(&self, keep: &[usize]) -> Self {
        Self {
            n: self.n,
            ring: self.ring,
            phases: keep.iter().map(|&j| self.phases[j]).collect(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
            xi: self.xi.as_ref().map(|xi| {
                keep.iter()
                    .map(|&a| keep.iter().map(|&b| xi[a][b]).collect())
                    .collect()
            }),
        }
    }

    /// Appends a generator; its `xi` row is computed from the Weyl block.
    pub fn push_column(&mut self, g: &PauliVector) -> Result<()> {
        self.ring.same_as(&g.ring())?;
        check_len(2 * self.n, g.v().len())?;
        let v = g.v().to_vec();
        if let Some(xi) = &mut self.xi {
            let mut row = Vec::with_capacity(self.columns.len() + 1);
            for (k, c) in self.columns.iter().enumerate() {
                let x = half(sympl(&v, c, self.ring.modulus()), self.ring).ok_or(
                    Error::Contract(format!("new generator does not commute with column {k}")),
                )?;
                row.push(x);
            }
            for (k, r) in xi.iter_mut().enumerate() {
                r.push(self.ring.reduce(-row[k]));
            }
            row.push(0);
            xi.push(row);
        } else if self
            .columns
            .iter()
            .any(|c| sympl(&v, c, self.ring.modulus()) != 0)
        {
            return Err(Error::Contract(
                "new generator breaks properness and xi is absent".into(),
            ));
        }
        self.phases.push(g.phi());
        self.columns.push(v);
        Ok(())
    }

    /// Subtracts `d` from Weyl entry `(h, j)` while keeping the denoted
    /// operator and every `xi` relation unchanged.
    pub fn reduce_coefficient_mod_d(&self, h: usize, j: usize) -> Result<Self> {
        self.check_index(j)?;
        if h >= 2 * self.n {
            return Err(Error::IndexOutOfRange {
                index: h,
                len: 2 * self.n,
            });
        }
        if !self.ring.is_even() {
            return Err(Error::Contract(
                "mod-d reduction only applies for even d".into(),
            ));
        }
        if self.xi.is_none() {
            return Err(Error::Contract(
                "mod-d reduction needs an extended tableau".into(),
            ));
        }
        let mut out = self.clone();
        out.reduce_entry_in_place(h, j);
        Ok(out)
    }

    fn reduce_entry_in_place(&mut self, h: usize, j: usize) {
        let r = self.ring;
        let (d, m) = (r.d(), r.modulus());
        if self.columns[j][h] < d {
            return;
        }
        let mut e = vec![0; 2 * self.n];
        e[h] = 1;
        let half_d = d / 2;
        let c = sympl(&self.columns[j], &e, m);
        self.phases[j] = r.reduce(self.phases[j] - half_d * c);
        let corr: Vec<i64> = self
            .columns
            .iter()
            .map(|v| half_d * sympl(v, &e, m))
            .collect();
        self.columns[j][h] -= d;
        if let Some(xi) = &mut self.xi {
            for k in 0..xi.len() {
                if k == j {
                    continue;
                }
                let x = r.reduce(xi[k][j] - corr[k]);
                xi[k][j] = x;
                xi[j][k] = r.reduce(-x);
            }
        }
    }

    /// Brings every Weyl entry below `d` (even `d`, extended tableaus).
    pub fn reduce_mod_d(&self) -> Result<Self> {
        let mut out = self.clone();
        if !self.ring.is_even() {
            return Ok(out);
        }
        if out.xi.is_none() {
            out = out.to_extended()?;
        }
        for j in 0..out.len() {
            for h in 0..2 * out.n {
                out.reduce_entry_in_place(h, j);
            }
        }
        Ok(out)
    }

    // ----- group structure ---------------------------------------------------

    /// Drops identity generators and, when there are more than `2n`,
    /// recombines down to at most `2n` generators of the same group.
    pub fn normalize_generators(&self) -> Result<Self> {
        let d = self.ring.d();
        let mut keep = Vec::new();
        for j in 0..self.len() {
            if self.columns[j].iter().all(|x| x % d == 0) {
                let g = self.column(j).to_phased();
                if !g.is_identity() {
                    let t = PauliVector::from_phased(&g).map_or(0, |p| self.ring.reduce_d(p.phi()));
                    return Err(Error::IllegalGroup { phase: t });
                }
            } else {
                keep.push(j);
            }
        }
        let trimmed = self.select_columns(&keep);
        if trimmed.len() <= 2 * self.n {
            return Ok(trimmed);
        }
        let mut work = Working::new(&trimmed, false)?;
        let mut pivots: Vec<usize> = work
            .howell(0..work.tab.len())
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        for c in 0..work.tab.len() {
            if !pivots.contains(&c) {
                let t = self.ring.reduce_d(work.tab.phases[c]);
                if t != 0 {
                    return Err(Error::IllegalGroup { phase: t });
                }
            }
        }
        pivots.sort_unstable();
        let out = work.tab.select_columns(&pivots);
        if self.xi.is_none() && out.is_proper() {
            return out.to_proper_form();
        }
        Ok(out)
    }

    /// Pads with `(0 | 0)` columns up to `2n` generators.
    pub fn padded(&self) -> Self {
        let mut out = self.clone();
        let zero = PauliVector::new(self.ring, 0, vec![0; 2 * self.n]).expect("even length");
        while out.len() < 2 * self.n {
            out.push_column(&zero)
                .expect("identity commutes with everything");
        }
        out
    }

    /// Finds `t` with `tau^{-2t} W_v` in the group, together with exponents
    /// `x` such that this element is `prod_k S_k^{x_k}`.
    ///
    /// Returns `None` when no group element is proportional to `W_v`. For
    /// legal groups `t` is unique mod `d`.
    pub fn find_proportional(&self, v: &[i64]) -> Result<Option<(i64, Vec<i64>)>> {
        check_len(2 * self.n, v.len())?;
        if self.columns.iter().any(|c| sympl(v, c, self.ring.d()) != 0) {
            return Ok(None);
        }
        if self.xi.is_none() {
            self.find_proportional_linear(v)
        } else {
            self.find_proportional_elimination(v)
        }
    }

    /// Proper tableaus: one linear solve over the columns, a phase column
    /// and (even `d`) the auxiliary columns `((d/2)[e_j, v] | d e_j)`.
    fn find_proportional_linear(&self, v: &[i64]) -> Result<Option<(i64, Vec<i64>)>> {
        let r = self.ring;
        let (d, m) = (r.d(), r.modulus());
        let rows = 2 * self.n + 1;
        let mut cols: Vec<Vec<i64>> = Vec::new();
        let mut unit = vec![0; rows];
        unit[0] = 1;
        cols.push(unit);
        for j in 0..self.len() {
            let mut c = vec![self.phases[j]];
            c.extend_from_slice(&self.columns[j]);
            cols.push(c);
        }
        if r.is_even() {
            let mut u0 = vec![0; rows];
            u0[0] = d;
            cols.push(u0);
            for i in 0..2 * self.n {
                let mut e = vec![0; 2 * self.n];
                e[i] = 1;
                let mut u = vec![0; rows];
                u[0] = (d / 2) * sympl(&e, v, m);
                u[1 + i] = d;
                cols.push(u);
            }
        }
        let a = ModMatrix::from_columns(&cols, rows, m)?;
        let mut b = vec![0];
        b.extend_from_slice(v);
        Ok(solve_linear(&a, &b)?.map(|y| {
            let t = r.reduce_d(-y[0]);
            let witness = y[1..=self.len()].iter().map(|&x| r.reduce_d(x)).collect();
            (t, witness)
        }))
    }

    /// Extended tableaus: column elimination with phase corrections.
    fn find_proportional_elimination(&self, v: &[i64]) -> Result<Option<(i64, Vec<i64>)>> {
        let r = self.ring;
        let mut work = Working::new(self, true)?;
        let gens = work.tab.len();
        let neg: Vec<i64> = v.iter().map(|&x| r.reduce(-x)).collect();
        work.push(&PauliVector::new(r, 0, neg)?)?;
        let target = work.tab.len() - 1;
        let pivots = work.howell(0..gens);
        for &(row, p) in &pivots {
            let e = work.tab.columns[target][row];
            if e == 0 {
                continue;
            }
            let g = work.tab.columns[p][row];
            if e % g != 0 {
                return Ok(None);
            }
            work.combine(p, target, -(e / g));
        }
        if work.tab.columns[target].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let t = r.reduce_d(work.tab.phases[target]);
        let witness = work.coef[target].iter().map(|&x| r.reduce_d(x)).collect();
        Ok(Some((t, witness)))
    }

    /// Decides whether `tau^{-2 phi} W_v` lies in the generated group.
    pub fn membership(&self, target: &PauliVector) -> Result<Membership> {
        self.ring.same_as(&target.ring())?;
        Ok(match self.find_proportional(target.v())? {
            Some((t, witness)) if t == self.ring.reduce_d(target.phi()) => {
                Membership::Member { witness }
            }
            _ => Membership::NotMember,
        })
    }

    /// Whether both tableaus generate the same group.
    pub fn same_group(&self, other: &StabilizerTableau) -> Result<bool> {
        for j in 0..other.len() {
            if !self.membership(&other.column(j))?.is_member() {
                return Ok(false);
            }
        }
        for j in 0..self.len() {
            if !other.membership(&self.column(j))?.is_member() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of distinct operators in the generated group.
    pub fn group_order(&self) -> Result<BigUint> {
        if let Err(v) = self.validate() {
            return Err(match v {
                Violation::ScalarInGroup(t) => Error::IllegalGroup { phase: t },
                other => Error::Contract(other.to_string()),
            });
        }
        Ok(self.group_order_unchecked())
    }

    fn group_order_unchecked(&self) -> BigUint {
        let d = self.ring.d();
        if self.is_empty() {
            return BigUint::one();
        }
        let w = self.weyl_block().reduced(d);
        smith_normal_form(&w)
            .diagonal
            .iter()
            .fold(BigUint::one(), |acc, &s| {
                acc * BigUint::from((d / gcd(s, d)) as u64)
            })
    }

    /// Whether exactly one state is stabilized, i.e. `|G| = d^n`.
    pub fn stabilizes_unique_state(&self) -> Result<bool> {
        Ok(self.group_order()? == BigUint::from(self.ring.d() as u64).pow(self.n as u32))
    }

    /// Lifts the Weyl block so that it is orthogonal mod `D`, leaving every
    /// generator unchanged as an operator.
    ///
    /// Odd `d` is returned as is. For even `d` this succeeds whenever the
    /// columns are independent mod 2 and fails otherwise.
    pub fn make_proper(&self) -> Result<Self> {
        if !self.ring.is_even() {
            return Ok(self.clone());
        }
        let r = self.ring;
        let (d, m) = (r.d(), r.modulus());
        let nn = 2 * self.n;
        let mut lifted: Vec<Vec<i64>> = Vec::with_capacity(self.len());
        let mut phases = Vec::with_capacity(self.len());
        for j in 0..self.len() {
            let vj = &self.columns[j];
            let mut rows = Vec::with_capacity(j + 1);
            let mut rhs = Vec::with_capacity(j + 1);
            for h in 0..=j {
                let vh = &self.columns[h];
                rows.push(sigma_row_mod2(vh));
                if h < j {
                    let c = sympl(&lifted[h], vj, m);
                    if c % d != 0 {
                        return Err(Error::Contract(format!(
                            "generators {h} and {j} do not commute"
                        )));
                    }
                    rhs.push((c / d) as u8);
                } else {
                    rhs.push(0);
                }
            }
            let x = solve_mod2_lex_least(&rows, &rhs, nn).ok_or(Error::CannotMakeProper)?;
            let x: Vec<i64> = x.into_iter().map(i64::from).collect();
            phases.push(r.reduce(self.phases[j] + (d / 2) * sympl_int(vj, &x)));
            lifted.push(
                vj.iter()
                    .zip(&x)
                    .map(|(&a, &b)| r.reduce(a + d * b))
                    .collect(),
            );
        }
        let out = Self::new(r, self.n, phases, lifted, None)?;
        debug_assert!(out.is_proper());
        Ok(out)
    }
}

/// Coefficients of `x -> [v, x] mod 2`.
pub(crate) fn sigma_row_mod2(v: &[i64]) -> Vec<u8> {
    let n = v.len() / 2;
    let mut row = vec![0u8; 2 * n];
    for i in 0..n {
        row[i] = (v[n + i] & 1) as u8;
        row[n + i] = (v[i] & 1) as u8;
    }
    row
}

/// An extended working copy that also records, for each column, its
/// exponents over the original generators.
struct Working {
    tab: StabilizerTableau,
    coef: Vec<Vec<i64>>,
    gens: usize,
}

impl Working {
    /// With `aux`, even `d` also gets the identities `W_{d e_i}` so that
    /// elimination may work mod `d` instead of mod `D`.
    fn new(t: &StabilizerTableau, aux: bool) -> Result<Self> {
        let tab = t.to_extended()?;
        let gens = tab.len();
        let coef = (0..gens)
            .map(|j| {
                let mut c = vec![0; gens];
                c[j] = 1;
                c
            })
            .collect();
        let mut w = Self { tab, coef, gens };
        if aux && t.ring.is_even() {
            for i in 0..2 * t.n {
                let mut v = vec![0; 2 * t.n];
                v[i] = t.ring.d();
                w.push(&PauliVector::new(t.ring, 0, v)?)?;
            }
        }
        Ok(w)
    }

    fn push(&mut self, g: &PauliVector) -> Result<()> {
        self.tab.push_column(g)?;
        self.coef.push(vec![0; self.gens]);
        Ok(())
    }

    fn combine(&mut self, h: usize, j: usize, m: i64) {
        self.tab.combine_in_place(h, j, m);
        let r = self.tab.ring;
        for k in 0..self.gens {
            self.coef[j][k] = r.reduce(self.coef[j][k] + m * self.coef[h][k]);
        }
    }

    fn power(&mut self, j: usize, m: i64) {
        self.tab.power_in_place(j, m);
        let r = self.tab.ring;
        for x in &mut self.coef[j] {
            *x = r.reduce(*x * m);
        }
    }

    fn push_power(&mut self, j: usize, m: i64) {
        let pv = self.tab.column(j);
        let zero = PauliVector::new(self.tab.ring, 0, vec![0; pv.v().len()]).expect("even length");
        self.push(&zero).expect("identity commutes");
        let k = self.tab.len() - 1;
        self.combine(j, k, m);
    }

    /// Euclid on row `row` between columns `a` and `b`; returns the column
    /// left holding the gcd, the other ends with a zero entry.
    fn euclid(&mut self, row: usize, mut a: usize, mut b: usize) -> usize {
        loop {
            let eb = self.tab.columns[b][row];
            if eb == 0 {
                return a;
            }
            let q = self.tab.columns[a][row] / eb;
            if q != 0 {
                self.combine(b, a, -q);
            }
            std::mem::swap(&mut a, &mut b);
        }
    }

    /// Howell-style column echelon over the Weyl rows, restricted to the
    /// given candidate columns (plus any powers it appends).
    ///
    /// Returns `(row, column)` pivots. Pivot entries divide `D`; each pivot
    /// column vanishes above its row; every other candidate ends up zero.
    fn howell(&mut self, candidates: std::ops::Range<usize>) -> Vec<(usize, usize)> {
        let m = self.tab.ring.modulus();
        let mut remaining: Vec<usize> = candidates.collect();
        let mut pivots = Vec::new();
        for row in 0..2 * self.tab.n {
            let nz: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&c| self.tab.columns[c][row] != 0)
                .collect();
            let Some(&first) = nz.first() else { continue };
            let mut p = first;
            for &c in &nz[1..] {
                p = self.euclid(row, p, c);
            }
            let u = unit_normalizer(self.tab.columns[p][row], m);
            if u != 1 {
                self.power(p, u);
            }
            let g = self.tab.columns[p][row];
            remaining.retain(|&c| c != p);
            pivots.push((row, p));
            if g != 1 {
                self.push_power(p, m / g);
                remaining.push(self.tab.len() - 1);
            }
        }
        pivots
    }
}
