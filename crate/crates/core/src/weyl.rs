//! Weyl operators with explicit phases.
//!
//! `W_{a,b} = tau^{-a.b} Z^a X^b` for `v = a ⊕ b`. A [`PhasedWeyl`] is
//! `tau^t W_v`; a [`PauliVector`] `(phi | v)` is `tau^{-2 phi} W_v`, which is
//! the form stored in tableau columns. Only exponents of `tau` are tracked
//! here, never complex numbers.

use std::fmt;

use crate::error::{check_len, Error, Result};
use crate::modmath::{gcd_with, sympl, sympl_int, RingParams};

/// `tau^t W_v` with `t` and `v` reduced mod `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasedWeyl {
    ring: RingParams,
    t: i64,
    v: Vec<i64>,
}

impl PhasedWeyl {
    pub fn new(ring: RingParams, t: i64, v: Vec<i64>) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::Contract(format!(
                "Weyl index vector has odd length {}",
                v.len()
            )));
        }
        let v = v.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(Self {
            ring,
            t: ring.reduce(t),
            v,
        })
    }

    pub fn identity(ring: RingParams, n: usize) -> Self {
        Self {
            ring,
            t: 0,
            v: vec![0; 2 * n],
        }
    }

    /// Builds `tau^t W_{a ⊕ b}`.
    pub fn from_parts(ring: RingParams, t: i64, a: &[i64], b: &[i64]) -> Result<Self> {
        check_len(a.len(), b.len())?;
        Self::new(ring, t, a.iter().chain(b).copied().collect())
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.v.len() / 2
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn v(&self) -> &[i64] {
        &self.v
    }

    /// The Z-part `a`.
    pub fn z_part(&self) -> &[i64] {
        &self.v[..self.n()]
    }

    /// The X-part `b`.
    pub fn x_part(&self) -> &[i64] {
        &self.v[self.n()..]
    }

    fn compatible(&self, other: &PhasedWeyl) -> Result<()> {
        self.ring.same_as(&other.ring)?;
        check_len(self.v.len(), other.v.len())
    }

    /// `tau^{t_p + t_q + [v_p, v_q]} W_{v_p + v_q}`.
    pub fn multiply(&self, q: &PhasedWeyl) -> Result<PhasedWeyl> {
        self.compatible(q)?;
        let m = self.ring.modulus();
        let t = self.t + q.t + sympl(&self.v, &q.v, m);
        let v = self.v.iter().zip(&q.v).map(|(a, b)| a + b).collect();
        PhasedWeyl::new(self.ring, t, v)
    }

    /// `(tau^t W_v)^m = tau^{mt} W_{mv}`; negative `m` is allowed.
    pub fn power(&self, m: i64) -> PhasedWeyl {
        let r = self.ring;
        let m = r.reduce(m);
        PhasedWeyl {
            ring: r,
            t: r.reduce(self.t * m),
            v: self.v.iter().map(|&x| r.reduce(x * m)).collect(),
        }
    }

    pub fn inverse(&self) -> PhasedWeyl {
        self.power(-1)
    }

    /// `W_u p W_u^dagger = tau^{t + 2[u, v]} W_v`.
    pub fn conjugate_by_weyl(&self, u: &[i64]) -> Result<PhasedWeyl> {
        check_len(self.v.len(), u.len())?;
        let m = self.ring.modulus();
        Ok(PhasedWeyl {
            ring: self.ring,
            t: (self.t + 2 * sympl(u, &self.v, m)).rem_euclid(m),
            v: self.v.clone(),
        })
    }

    /// Whether both values denote the same matrix.
    pub fn operator_eq(&self, q: &PhasedWeyl) -> Result<bool> {
        self.compatible(q)?;
        let (d, m) = (self.ring.d(), self.ring.modulus());
        let mut x = Vec::with_capacity(self.v.len());
        for (&vp, &vq) in self.v.iter().zip(&q.v) {
            let diff = vq - vp;
            if diff % d != 0 {
                return Ok(false);
            }
            x.push(diff / d);
        }
        let sign = if self.ring.is_even() {
            d * sympl_int(&self.v, &x)
        } else {
            0
        };
        Ok((self.t - q.t - sign).rem_euclid(m) == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.operator_eq(&PhasedWeyl::identity(self.ring, self.n()))
            .expect("same shape")
    }

    /// Places this operator, defined on `targets.len()` qudits, onto
    /// `targets` inside an `n`-qudit register.
    pub fn embed(&self, targets: &[usize], n: usize) -> Result<PhasedWeyl> {
        check_len(self.n(), targets.len())?;
        let k = self.n();
        let mut v = vec![0; 2 * n];
        for (i, &q) in targets.iter().enumerate() {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, len: n });
            }
            v[q] = self.v[i];
            v[n + q] = self.v[k + i];
        }
        PhasedWeyl::new(self.ring, self.t, v)
    }
}

/// `(phi | v)`, denoting `tau^{-2 phi} W_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    ring: RingParams,
    phi: i64,
    v: Vec<i64>,
}

impl PauliVector {
    pub fn new(ring: RingParams, phi: i64, v: Vec<i64>) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::Contract(format!(
                "Weyl index vector has odd length {}",
                v.len()
            )));
        }
        let v = v.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(Self {
            ring,
            phi: ring.reduce(phi),
            v,
        })
    }

    pub fn from_parts(ring: RingParams, phi: i64, a: &[i64], b: &[i64]) -> Result<Self> {
        check_len(a.len(), b.len())?;
        Self::new(ring, phi, a.iter().chain(b).copied().collect())
    }

    /// `Z` on qudit `r` of `n`.
    pub fn z_on(ring: RingParams, n: usize, r: usize) -> Result<Self> {
        if r >= n {
            return Err(Error::IndexOutOfRange { index: r, len: n });
        }
        let mut v = vec![0; 2 * n];
        v[r] = 1;
        Ok(Self { ring, phi: 0, v })
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.v.len() / 2
    }

    pub fn phi(&self) -> i64 {
        self.phi
    }

    pub fn v(&self) -> &[i64] {
        &self.v
    }

    pub fn to_phased(&self) -> PhasedWeyl {
        PhasedWeyl {
            ring: self.ring,
            t: self.ring.reduce(-2 * self.phi),
            v: self.v.clone(),
        }
    }

    /// Inverse of [`to_phased`](Self::to_phased); `None` when `tau^t` is not
    /// a power of `tau^2` (odd `t` for even `d`).
    pub fn from_phased(p: &PhasedWeyl) -> Option<Self> {
        let r = p.ring;
        let phi = if r.is_even() {
            if p.t % 2 != 0 {
                return None;
            }
            r.reduce(-(p.t / 2))
        } else {
            // 2 is invertible mod odd D
            r.reduce(-p.t * ((r.modulus() + 1) / 2))
        };
        Some(Self {
            ring: r,
            phi,
            v: p.v.clone(),
        })
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// `tau^t W[z|x]`.
impl fmt::Display for PhasedWeyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tau^{} W[{}|{}]",
            self.t,
            join(self.z_part()),
            join(self.x_part())
        )
    }
}

/// `(phi | z | x)`.
impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        write!(
            f,
            "({} | {} | {})",
            self.phi,
            join(&self.v[..n]),
            join(&self.v[n..])
        )
    }
}

/// Whether `W_v` and `W_w` commute, i.e. `[v, w] == 0 (mod d)`.
pub fn commutes(v: &[i64], w: &[i64], ring: RingParams) -> Result<bool> {
    check_len(v.len(), w.len())?;
    Ok(sympl(v, w, ring.d()) == 0)
}

/// `gcd(v_1, ..., v_2n, d)`; equals `d` for `v == 0 (mod d)`.
pub fn harmonic_number(v: &[i64], d: i64) -> i64 {
    gcd_with(d, v)
}

/// Multiplicative order of `W_v`, which is `d / eta(v)`.
pub fn operator_order(v: &[i64], d: i64) -> i64 {
    d / harmonic_number(v, d)
}
