//! Arithmetic over `Z_M`: residues, the symplectic form, Smith normal form
//! and linear systems.
//!
//! Every stored residue is canonical, i.e. in `0..M`.

use crate::error::{check_len, Error, Result};

/// Largest supported qudit dimension. Keeps every product of two residues
/// mod `2d` comfortably inside `i64`.
pub const MAX_DIMENSION: i64 = 1 << 15;

/// The qudit dimension `d` together with the working modulus `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingParams {
    d: i64,
    modulus: i64,
}

impl RingParams {
    pub fn new(d: i64) -> Result<Self> {
        if !(2..=MAX_DIMENSION).contains(&d) {
            return Err(Error::InvalidDimension(d));
        }
        let modulus = if d % 2 == 0 { 2 * d } else { d };
        Ok(Self { d, modulus })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `D`, the order of `tau`.
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn is_even(&self) -> bool {
        self.d % 2 == 0
    }

    /// Canonical residue mod `D`.
    pub fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.modulus)
    }

    pub fn reduce_d(&self, x: i64) -> i64 {
        x.rem_euclid(self.d)
    }

    pub(crate) fn same_as(&self, other: &RingParams) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }
}

pub fn ring_params(d: i64) -> Result<RingParams> {
    RingParams::new(d)
}

/// The standard symplectic form on `Z^{2n}`, Z-part first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `v^T sigma w mod m`.
    pub fn product(&self, v: &[i64], w: &[i64], m: i64) -> Result<i64> {
        check_len(2 * self.n, v.len())?;
        check_len(2 * self.n, w.len())?;
        Ok(sympl(v, w, m))
    }

    /// The matrix `sigma` itself, reduced mod `m`.
    pub fn matrix(&self, m: i64) -> ModMatrix {
        let n = self.n;
        let mut s = ModMatrix::zeros(2 * n, 2 * n, m);
        for i in 0..n {
            s.set(i, n + i, 1);
            s.set(n + i, i, -1);
        }
        s
    }
}

/// `[v, w] = v_z . w_x - v_x . w_z (mod m)`; lengths must agree and be even.
pub fn symplectic_product(v: &[i64], w: &[i64], m: i64) -> Result<i64> {
    check_len(v.len(), w.len())?;
    if !v.len().is_multiple_of(2) {
        return Err(Error::Contract(format!("odd vector length {}", v.len())));
    }
    Ok(sympl(v, w, m))
}

/// Unchecked symplectic product over the integers.
pub(crate) fn sympl_int(v: &[i64], w: &[i64]) -> i64 {
    let n = v.len() / 2;
    let mut acc: i64 = 0;
    for i in 0..n {
        acc += v[i] * w[n + i] - v[n + i] * w[i];
    }
    acc
}

pub(crate) fn sympl(v: &[i64], w: &[i64], m: i64) -> i64 {
    let n = v.len() / 2;
    let mut acc: i64 = 0;
    for i in 0..n {
        acc = (acc + v[i] * w[n + i] - v[n + i] * w[i]).rem_euclid(m);
    }
    acc
}

/// Non-negative gcd.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Returns `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `gcd(d, values...)`; equals `d` when every value is a multiple of `d`.
pub fn gcd_with(d: i64, values: &[i64]) -> i64 {
    values.iter().fold(d.abs(), |g, &x| gcd(g, x))
}

/// Inverse of `a` mod `m` in `1..m`, or `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m < 2 {
        return None;
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// A unit `u` mod `m` with `u x == gcd(x, m) (mod m)`.
///
/// For `x == 0` this is 1.
pub fn unit_normalizer(x: i64, m: i64) -> i64 {
    let x = x.rem_euclid(m);
    if x == 0 || m == 1 {
        return 1;
    }
    let g = gcd(x, m);
    let m1 = m / g;
    let base = if m1 == 1 {
        1
    } else {
        mod_inverse(x / g, m1).expect("coprime after dividing out gcd")
    };
    let mut u = base;
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}

/// Lifts a unit mod `d` to a unit mod `modulus` (a multiple of `d`) with the
/// same residue mod `d`, choosing the smallest such lift.
pub fn lift_unit(u: i64, d: i64, modulus: i64) -> Option<i64> {
    let mut x = u.rem_euclid(d);
    while x < modulus {
        if gcd(x, modulus) == 1 {
            return Some(x);
        }
        x += d;
    }
    None
}

/// Dense integer matrix with entries reduced mod `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: i64,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: i64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: i64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: i64) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, modulus);
        for (i, row) in rows.iter().enumerate() {
            check_len(c, row.len())?;
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize, modulus: i64) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            check_len(rows, col.len())?;
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x.rem_euclid(self.modulus);
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Same entries reinterpreted mod `m`.
    pub fn reduced(&self, m: i64) -> Self {
        let mut out = Self::zeros(self.rows, self.cols, m);
        for (o, &x) in out.data.iter_mut().zip(&self.data) {
            *o = x.rem_euclid(m);
        }
        out
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        check_len(self.cols, other.rows)?;
        let m = self.modulus;
        let mut out = Self::zeros(self.rows, other.cols, m);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % m;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        check_len(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0i64, |acc, j| {
                    (acc + self.get(i, j) * v[j]).rem_euclid(self.modulus)
                })
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, r: usize, u: i64) {
        for j in 0..self.cols {
            let x = self.get(r, j);
            self.set(r, j, x * u);
        }
    }

    /// rows (a, b) <- (x a + y b, z a + w b)
    fn mix_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [i64; 4]) {
        for j in 0..self.cols {
            let (ra, rb) = (self.get(a, j), self.get(b, j));
            self.set(a, j, x * ra + y * rb);
            self.set(b, j, z * ra + w * rb);
        }
    }

    /// columns (a, b) <- (x a + y b, z a + w b)
    fn mix_cols(&mut self, a: usize, b: usize, [x, y, z, w]: [i64; 4]) {
        for i in 0..self.rows {
            let (ca, cb) = (self.get(i, a), self.get(i, b));
            self.set(i, a, x * ca + y * cb);
            self.set(i, b, z * ca + w * cb);
        }
    }
}

/// Result of [`smith_normal_form`]: `left * A * right == normal (mod M)`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub left: ModMatrix,
    pub normal: ModMatrix,
    pub right: ModMatrix,
    /// Diagonal of `normal`; each nonzero entry divides `M`, and each entry
    /// divides the next.
    pub diagonal: Vec<i64>,
}

impl Smith {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&s| s != 0).count()
    }
}

/// Smith normal form over `Z_M`.
///
/// Elementary operations are unimodular over the integers and every entry is
/// reduced after each step. Pivots are normalized to divisors of `M`, so the
/// divisibility chain holds on the canonical representatives.
pub fn smith_normal_form(a: &ModMatrix) -> Smith {
    let m = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut left = ModMatrix::identity(rows, m);
    let mut right = ModMatrix::identity(cols, m);
    let steps = rows.min(cols);

    for t in 0..steps {
        // Leftmost-topmost entry of minimal gcd with M.
        let mut best: Option<(i64, usize, usize)> = None;
        for j in t..cols {
            for i in t..rows {
                let x = s.get(i, j);
                if x != 0 {
                    let g = gcd(x, m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        left.swap_rows(t, pi);
        s.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let u = unit_normalizer(s.get(t, t), m);
            if u != 1 {
                s.scale_row(t, u);
                left.scale_row(t, u);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                let x = s.get(i, t);
                if x == 0 {
                    continue;
                }
                let p = s.get(t, t);
                if x % p == 0 {
                    let f = [1, 0, -(x / p), 1];
                    s.mix_rows(t, i, f);
                    left.mix_rows(t, i, f);
                } else {
                    let (g, cx, cy) = ext_gcd(p, x);
                    let f = [cx, cy, -(x / g), p / g];
                    s.mix_rows(t, i, f);
                    left.mix_rows(t, i, f);
                }
            }
            for j in t + 1..cols {
                let x = s.get(t, j);
                if x == 0 {
                    continue;
                }
                let p = s.get(t, t);
                if x % p == 0 {
                    let f = [1, 0, -(x / p), 1];
                    s.mix_cols(t, j, f);
                    right.mix_cols(t, j, f);
                } else {
                    let (g, cx, cy) = ext_gcd(p, x);
                    let f = [cx, cy, -(x / g), p / g];
                    s.mix_cols(t, j, f);
                    right.mix_cols(t, j, f);
                    dirty = true;
                }
            }
            if dirty || (t + 1..rows).any(|i| s.get(i, t) != 0) {
                continue;
            }
            let p = s.get(t, t);
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| s.get(i, j) % p != 0);
            match offender {
                Some((i, _)) => {
                    s.mix_rows(t, i, [1, 1, 0, 1]);
                    left.mix_rows(t, i, [1, 1, 0, 1]);
                }
                None => break,
            }
        }
    }

    let diagonal = (0..steps).map(|i| s.get(i, i)).collect();
    Smith {
        left,
        normal: s,
        right,
        diagonal,
    }
}

/// Finds some `x` with `A x == b (mod M)`, or `None` when infeasible.
///
/// The solution is deterministic: free coordinates of the diagonalized
/// system are set to zero.
pub fn solve_linear(a: &ModMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    check_len(a.rows(), b.len())?;
    let m = a.modulus();
    let snf = smith_normal_form(a);
    let c = snf.left.mul_vec(b)?;
    let mut y = vec![0i64; a.cols()];
    for (i, &ci) in c.iter().enumerate() {
        let si = snf.diagonal.get(i).copied().unwrap_or(0);
        if si == 0 {
            if ci != 0 {
                return Ok(None);
            }
        } else if ci % si != 0 {
            return Ok(None);
        } else {
            y[i] = ci / si;
        }
    }
    let x = snf.right.mul_vec(&y)?;
    debug_assert_eq!(
        a.mul_vec(&x)?,
        b.iter().map(|v| v.rem_euclid(m)).collect::<Vec<_>>()
    );
    Ok(Some(x))
}

/// Lexicographically least solution of `rows . x == rhs (mod 2)`, where
/// `x[0]` is the most significant coordinate.
pub fn solve_mod2_lex_least(rows: &[Vec<u8>], rhs: &[u8], nvars: usize) -> Option<Vec<u8>> {
    let mut a: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x & 1).collect())
        .collect();
    let mut b: Vec<u8> = rhs.iter().map(|x| x & 1).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    // Pivots are taken from the highest-index variables first, so every
    // pivot variable depends only on free variables of lower index.
    for var in (0..nvars).rev() {
        let Some(p) = (r..a.len()).find(|&i| a[i][var] == 1) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][var] == 1 {
                for k in 0..nvars {
                    a[i][k] ^= a[r][k];
                }
                b[i] ^= b[r];
            }
        }
        pivots.push((r, var));
        r += 1;
    }
    if b[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u8; nvars];
    for (row, var) in pivots {
        x[var] = b[row];
    }
    Some(x)
}
