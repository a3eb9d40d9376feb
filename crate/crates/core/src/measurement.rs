//! Pauli measurements on stabilizer tableaus.
//!
//! Measuring `P = tau^{-2 delta} W_p` (the Pauli vector `(delta | p)`) on a
//! stabilizer state gives an outcome `h`, meaning the post-measurement
//! state is a `tau^{2h}` eigenvector of `P`. For composite `d` the outcome
//! is uniform over a coset `kappa + eta Z_d` where `eta` is any divisor of
//! `d`, so both the distribution and the post-measurement group depend on
//! `eta`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::{Rng, RngCore};

use crate::clifford::{ConjugationTableau, GateSpec};
use crate::error::{check_len, Error, Result};
use crate::modmath::{gcd, gcd_with, lift_unit, sympl, unit_normalizer};
use crate::tableau::StabilizerTableau;
use crate::weyl::{PauliVector, PhasedWeyl};

/// Uniform distribution over `{h in Z_d : h = kappa (mod eta)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeCoset {
    kappa: i64,
    eta: i64,
    d: i64,
}

impl OutcomeCoset {
    /// `eta` must divide `d`; `kappa` is reduced mod `eta`.
    pub fn new(kappa: i64, eta: i64, d: i64) -> Result<Self> {
        if eta <= 0 || d % eta != 0 {
            return Err(Error::Contract(format!(
                "eta = {eta} does not divide d = {d}"
            )));
        }
        Ok(Self {
            kappa: kappa.rem_euclid(eta),
            eta,
            d,
        })
    }

    /// Smallest outcome in the support.
    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn eta(&self) -> i64 {
        self.eta
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn support(&self) -> Vec<i64> {
        (0..self.d / self.eta)
            .map(|j| self.kappa + j * self.eta)
            .collect()
    }

    pub fn support_size(&self) -> i64 {
        self.d / self.eta
    }

    pub fn contains(&self, h: i64) -> bool {
        (0..self.d).contains(&h) && h % self.eta == self.kappa
    }

    pub fn is_deterministic(&self) -> bool {
        self.eta == self.d
    }

    /// `eta / d` for every outcome in the support.
    pub fn probability(&self) -> Ratio<BigUint> {
        Ratio::new(BigUint::from(self.eta as u64), BigUint::from(self.d as u64))
    }
}

impl fmt::Display for OutcomeCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}Z_{}", self.kappa, self.eta, self.d)
    }
}

/// Outcome distribution together with the quantities it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeAnalysis {
    pub coset: OutcomeCoset,
    /// `d / eta`, the smallest power of `W_p` in the commutant of the group.
    pub s: i64,
    /// `tau^{-2t} W_p^s` lies in the group.
    pub t: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub coset: OutcomeCoset,
    pub s: i64,
    pub t: i64,
    pub chosen: i64,
    /// Generator removed by the measurement; its powers map between the
    /// post-measurement states of different outcomes. Identity when the
    /// observable commuted with the group.
    pub byproduct: PhasedWeyl,
    pub observable: PauliVector,
}

/// How a measurement picks its outcome.
pub enum OutcomeChoice<'a> {
    /// The outcome must lie in the support.
    Fixed(i64),
    /// Uniform over the support.
    Sample(&'a mut dyn RngCore),
    /// `kappa`, the smallest outcome in the support.
    Smallest,
}

impl fmt::Debug for OutcomeChoice<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeChoice::Fixed(h) => write!(f, "Fixed({h})"),
            OutcomeChoice::Sample(_) => write!(f, "Sample(..)"),
            OutcomeChoice::Smallest => write!(f, "Smallest"),
        }
    }
}

fn check_observable(t: &StabilizerTableau, p: &PauliVector) -> Result<()> {
    t.ring().same_as(&p.ring())?;
    check_len(2 * t.n(), p.v().len())
}

fn require_unique(t: &StabilizerTableau) -> Result<()> {
    if !t.stabilizes_unique_state()? {
        return Err(Error::Contract(
            "tableau does not stabilize a unique state".into(),
        ));
    }
    Ok(())
}

/// `[p, v_k] mod d` for every column.
fn commutation_row(t: &StabilizerTableau, p: &[i64]) -> Vec<i64> {
    let d = t.ring().d();
    t.weyl_columns().iter().map(|c| sympl(p, c, d)).collect()
}

/// Finds `t` for `W_p^s` and turns it into the coset.
fn analyse(t: &StabilizerTableau, p: &PauliVector, eta: i64) -> Result<OutcomeAnalysis> {
    let r = t.ring();
    let d = r.d();
    let s = d / eta;
    let sp: Vec<i64> = p.v().iter().map(|&x| r.reduce(s * x)).collect();
    let (tt, _) = t
        .find_proportional(&sp)?
        .ok_or_else(|| Error::Internal("no group element is proportional to W_p^s".into()))?;
    if tt % s != 0 {
        return Err(Error::Internal(format!(
            "phase {tt} is not a multiple of s = {s}"
        )));
    }
    // h s = t - delta s (mod d)
    let coset = OutcomeCoset::new(tt / s - p.phi(), eta, d)?;
    Ok(OutcomeAnalysis { coset, s, t: tt })
}

/// Distribution of the outcome of measuring `p` on the state stabilized by
/// `t`, without changing the state.
pub fn terminal_distribution(t: &StabilizerTableau, p: &PauliVector) -> Result<OutcomeAnalysis> {
    check_observable(t, p)?;
    require_unique(t)?;
    let eta = gcd_with(t.ring().d(), &commutation_row(t, p.v()));
    analyse(t, p, eta)
}

/// The tableau after step (2)-(3) of the measurement: at most the last
/// column fails to commute with `p`, and its commutation value is `eta`.
struct Prepared {
    tab: StabilizerTableau,
    analysis: OutcomeAnalysis,
    byproduct: PhasedWeyl,
    commuting: bool,
}

fn prepare(t: &StabilizerTableau, p: &PauliVector) -> Result<Prepared> {
    check_observable(t, p)?;
    require_unique(t)?;
    let r = t.ring();
    let d = r.d();
    let mut tab = t.to_extended()?;
    let phi = commutation_row(&tab, p.v());
    if phi.iter().all(|&x| x == 0) {
        let analysis = analyse(&tab, p, d)?;
        return Ok(Prepared {
            tab,
            analysis,
            byproduct: PhasedWeyl::identity(r, t.n()),
            commuting: true,
        });
    }

    let value = |tab: &StabilizerTableau, k: usize| sympl(p.v(), &tab.weyl_columns()[k], d);
    let mut acc = (0..tab.len())
        .rev()
        .find(|&k| phi[k] != 0)
        .expect("some entry is nonzero");
    for j in 0..tab.len() {
        if j == acc || value(&tab, j) == 0 {
            continue;
        }
        let (mut a, mut b) = (acc, j);
        loop {
            let vb = value(&tab, b);
            if vb == 0 {
                break;
            }
            let q = value(&tab, a) / vb;
            if q != 0 {
                tab.combine_in_place(b, a, -q);
            }
            std::mem::swap(&mut a, &mut b);
        }
        acc = a;
    }
    let last = tab.len() - 1;
    tab.swap_columns(acc, last);

    let g = value(&tab, last);
    let eta = gcd(g, d);
    let u = unit_normalizer(g, d);
    if u != 1 {
        let alpha = lift_unit(u, d, r.modulus()).expect("unit mod d lifts");
        tab.power_in_place(last, alpha);
    }
    debug_assert_eq!(value(&tab, last), eta);
    debug_assert!((0..last).all(|k| value(&tab, k) == 0));
    let byproduct = tab.column(last).to_phased();
    let analysis = analyse(&tab, p, eta)?;
    Ok(Prepared {
        tab,
        analysis,
        byproduct,
        commuting: false,
    })
}

/// Builds the post-measurement tableau for outcome `h`.
fn collapse(
    prep: &Prepared,
    p: &PauliVector,
    h: i64,
    keep_proper: bool,
) -> Result<StabilizerTableau> {
    let r = prep.tab.ring();
    let mut tab = prep.tab.clone();
    let last = tab.len() - 1;
    tab.power_in_place(last, prep.analysis.s);
    tab.push_column(&PauliVector::new(r, h + p.phi(), p.v().to_vec())?)?;
    let rest: Vec<usize> = (0..tab.len()).filter(|&k| k != last).collect();
    let without = tab.select_columns(&rest);
    if without.membership(&tab.column(last))?.is_member() {
        tab = without;
    }
    let mut out = tab.normalize_generators()?;
    if keep_proper && out.is_proper() {
        out = out.to_proper_form()?;
    }
    debug_assert_eq!(out.stabilizes_unique_state().ok(), Some(true));
    Ok(out)
}

fn record(prep: &Prepared, p: &PauliVector, chosen: i64) -> MeasurementRecord {
    MeasurementRecord {
        coset: prep.analysis.coset,
        s: prep.analysis.s,
        t: prep.analysis.t,
        chosen,
        byproduct: prep.byproduct.clone(),
        observable: p.clone(),
    }
}

fn choose(coset: &OutcomeCoset, choice: OutcomeChoice<'_>) -> Result<i64> {
    match choice {
        OutcomeChoice::Fixed(h) => {
            if coset.contains(h) {
                Ok(h)
            } else {
                Err(Error::InvalidOutcome {
                    outcome: h,
                    kappa: coset.kappa(),
                    eta: coset.eta(),
                    d: coset.d(),
                })
            }
        }
        OutcomeChoice::Sample(rng) => {
            Ok(coset.kappa() + coset.eta() * rng.gen_range(0..coset.support_size()))
        }
        OutcomeChoice::Smallest => Ok(coset.kappa()),
    }
}

/// Measures `tau^{-2 delta} W_p` given as the Pauli vector `(delta | p)`.
///
/// Returns the post-measurement tableau, in proper form when the input was
/// proper form and the result allows it, plus the record of what happened.
pub fn measure_pauli(
    t: &StabilizerTableau,
    p: &PauliVector,
    choice: OutcomeChoice<'_>,
) -> Result<(StabilizerTableau, MeasurementRecord)> {
    let prep = prepare(t, p)?;
    let h = choose(&prep.analysis.coset, choice)?;
    if prep.commuting {
        return Ok((t.clone(), record(&prep, p, h)));
    }
    Ok((
        collapse(&prep, p, h, !t.is_extended())?,
        record(&prep, p, h),
    ))
}

/// Measures `Z` on qudit `r`.
pub fn measure_z(
    t: &StabilizerTableau,
    r: usize,
    choice: OutcomeChoice<'_>,
) -> Result<(StabilizerTableau, MeasurementRecord)> {
    measure_pauli(t, &PauliVector::z_on(t.ring(), t.n(), r)?, choice)
}

/// Every outcome in the support with its post-measurement tableau.
pub fn measure_pauli_all(
    t: &StabilizerTableau,
    p: &PauliVector,
) -> Result<Vec<(StabilizerTableau, MeasurementRecord)>> {
    let prep = prepare(t, p)?;
    prep.analysis
        .coset
        .support()
        .into_iter()
        .map(|h| {
            let tab = if prep.commuting {
                t.clone()
            } else {
                collapse(&prep, p, h, !t.is_extended())?
            };
            Ok((tab, record(&prep, p, h)))
        })
        .collect()
}

pub fn measure_z_all(
    t: &StabilizerTableau,
    r: usize,
) -> Result<Vec<(StabilizerTableau, MeasurementRecord)>> {
    measure_pauli_all(t, &PauliVector::z_on(t.ring(), t.n(), r)?)
}

/// Conjugates every generator by `byproduct^z`, moving the post-measurement
/// state from outcome `h` to outcome `h + z eta`.
pub fn byproduct_shift(
    t: &StabilizerTableau,
    rec: &MeasurementRecord,
    z: i64,
) -> Result<StabilizerTableau> {
    let conj = ConjugationTableau::pauli(&rec.byproduct.power(z));
    conj.apply(t)
}

/// Controlled-`P` for `P = tau^{-2 delta} W_p` on `targets` with a common
/// control, as gates in time order with exponents.
///
/// Each factor `W_{a,b}` on target `q` becomes `CX^b`, `CZ^a`, then
/// `S^{-ab}` on the control; the phase is `Z^{-delta}` on the control.
pub fn build_controlled_pauli_circuit(
    p: &PauliVector,
    control: usize,
    targets: &[usize],
) -> Result<Vec<(GateSpec, i64)>> {
    check_len(p.n(), targets.len())?;
    if targets.contains(&control) {
        return Err(Error::Contract(format!(
            "control {control} is also a target"
        )));
    }
    for (i, q) in targets.iter().enumerate() {
        if targets[..i].contains(q) {
            return Err(Error::Contract(format!("qudit {q} listed twice")));
        }
    }
    let r = p.ring();
    let d = r.d();
    let k = p.n();
    let mut out = Vec::new();
    let delta = p.phi().rem_euclid(d);
    if delta != 0 {
        let z = PhasedWeyl::new(r, 0, vec![r.reduce(-delta), 0])?;
        out.push((GateSpec::pauli(vec![control], z), 1));
    }
    for (i, &q) in targets.iter().enumerate() {
        let (a, b) = (p.v()[i], p.v()[k + i]);
        if b % d != 0 {
            out.push((GateSpec::cx(control, q), b.rem_euclid(d)));
        }
        if a % d != 0 {
            out.push((GateSpec::cz(control, q), a.rem_euclid(d)));
        }
        let ab = r.reduce(-a * b);
        if ab != 0 {
            out.push((GateSpec::s(control), ab));
        }
    }
    Ok(out)
}

/// A measurement of `P` performed through an ancilla: after `gates`, a `Z`
/// measurement of `ancilla` yields the outcome of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeferredMeasurement {
    pub gates: Vec<(GateSpec, i64)>,
    pub ancilla: usize,
}

pub fn build_deferred_measurement_circuit(
    p: &PauliVector,
    ancilla: usize,
    targets: &[usize],
) -> Result<DeferredMeasurement> {
    let mut gates = vec![(GateSpec::f(ancilla), 1)];
    gates.extend(build_controlled_pauli_circuit(p, ancilla, targets)?);
    gates.push((GateSpec::finv(ancilla), 1));
    Ok(DeferredMeasurement { gates, ancilla })
}

/// Applies powered gates to a tableau in time order.
pub fn apply_gates(t: &StabilizerTableau, gates: &[(GateSpec, i64)]) -> Result<StabilizerTableau> {
    let mut out = t.clone();
    for (g, k) in gates {
        out = ConjugationTableau::gate(g, t.ring(), t.n())?
            .power(*k)
            .apply(&out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::RingParams;
    use crate::oracle::{measure_dense, tableau_state, DenseState};

    fn ring(d: i64) -> RingParams {
        RingParams::new(d).unwrap()
    }

    fn prepare_state(d: i64, n: usize, gates: &[GateSpec]) -> StabilizerTableau {
        let g: Vec<(GateSpec, i64)> = gates.iter().map(|g| (g.clone(), 1)).collect();
        apply_gates(
            &StabilizerTableau::standard_basis(ring(d), &vec![0; n]).unwrap(),
            &g,
        )
        .unwrap()
    }

    #[test]
    fn coset_basics() {
        let c = OutcomeCoset::new(5, 2, 4).unwrap();
        assert_eq!(c.kappa(), 1);
        assert_eq!(c.support(), vec![1, 3]);
        assert!(c.contains(3) && !c.contains(2));
        assert!(OutcomeCoset::new(0, 3, 4).is_err());
        assert!(OutcomeCoset::new(2, 4, 4).unwrap().is_deterministic());
    }

    #[test]
    fn zero_state_z() {
        let t = StabilizerTableau::standard_basis(ring(2), &[0]).unwrap();
        let a = terminal_distribution(&t, &PauliVector::z_on(ring(2), 1, 0).unwrap()).unwrap();
        assert_eq!((a.coset.kappa(), a.coset.eta()), (0, 2));
        let t3 = StabilizerTableau::standard_basis(ring(3), &[2]).unwrap();
        let (post, rec) = measure_z(&t3, 0, OutcomeChoice::Fixed(2)).unwrap();
        assert_eq!(post, t3);
        assert!(rec.byproduct.is_identity());
        assert_eq!(rec.coset.eta(), 3);
    }

    #[test]
    fn plus_state_qubit() {
        let t = prepare_state(2, 1, &[GateSpec::f(0)]);
        let a = terminal_distribution(&t, &PauliVector::z_on(ring(2), 1, 0).unwrap()).unwrap();
        assert_eq!(a.coset.eta(), 1);
        let (post, rec) = measure_z(&t, 0, OutcomeChoice::Fixed(1)).unwrap();
        assert_eq!(post.len(), 1);
        assert_eq!(
            post.column(0),
            PauliVector::new(ring(2), 1, vec![1, 0]).unwrap()
        );
        let (post0, _) = measure_z(&t, 0, OutcomeChoice::Fixed(0)).unwrap();
        let shifted = byproduct_shift(&post0, &rec, 1).unwrap();
        assert!(shifted.same_group(&post).unwrap());
    }

    #[test]
    fn composite_example_d4() {
        let t = prepare_state(
            4,
            2,
            &[GateSpec::f(0), GateSpec::cx(0, 1), GateSpec::cx(0, 1)],
        );
        let zb = PauliVector::z_on(ring(4), 2, 1).unwrap();
        let a = terminal_distribution(&t, &zb).unwrap();
        assert_eq!((a.coset.kappa(), a.coset.eta()), (0, 2));
        let all = measure_z_all(&t, 1).unwrap();
        assert_eq!(all.len(), 2);
        let before = tableau_state(&t).unwrap();
        let dense = measure_dense(&before, &zb).unwrap();
        for ((tab, rec), br) in all.iter().zip(&dense) {
            assert_eq!(rec.chosen, br.outcome);
            let st = tableau_state(tab).unwrap();
            assert!(st.overlap(&br.state) > 1.0 - 1e-9);
        }
        let (post0, rec) = &all[0];
        let shifted = tableau_state(&byproduct_shift(post0, rec, 1).unwrap()).unwrap();
        assert!(shifted.overlap(&tableau_state(&all[1].0).unwrap()) > 1.0 - 1e-9);
        assert!(matches!(
            measure_z(&t, 1, OutcomeChoice::Fixed(1)),
            Err(Error::InvalidOutcome { .. })
        ));
    }

    #[test]
    fn bell_xx_deterministic() {
        let t = prepare_state(2, 2, &[GateSpec::f(0), GateSpec::cx(0, 1)]);
        let xx = PauliVector::new(ring(2), 0, vec![0, 0, 1, 1]).unwrap();
        let (post, rec) = measure_pauli(&t, &xx, OutcomeChoice::Fixed(0)).unwrap();
        assert!(rec.coset.is_deterministic());
        assert_eq!(post, t);
    }

    #[test]
    fn controlled_pauli_shapes() {
        let r = ring(2);
        let x = PauliVector::new(r, 0, vec![0, 1]).unwrap();
        assert_eq!(
            build_controlled_pauli_circuit(&x, 0, &[1]).unwrap(),
            vec![(GateSpec::cx(0, 1), 1)]
        );
        let y = PauliVector::new(r, 0, vec![1, 1]).unwrap();
        let c = build_controlled_pauli_circuit(&y, 0, &[1]).unwrap();
        assert_eq!(
            c,
            vec![
                (GateSpec::cx(0, 1), 1),
                (GateSpec::cz(0, 1), 1),
                (GateSpec::s(0), 3)
            ]
        );
        let zz = PauliVector::new(r, 0, vec![1, 1, 0, 0]).unwrap();
        let c = build_controlled_pauli_circuit(&zz, 0, &[1, 2]).unwrap();
        assert_eq!(c, vec![(GateSpec::cz(0, 1), 1), (GateSpec::cz(0, 2), 1)]);
        assert!(build_controlled_pauli_circuit(&x, 1, &[1]).is_err());
    }

    #[test]
    fn deferred_z_reads_basis_value() {
        for d in 2..=5 {
            let r = ring(d);
            for q in 0..d {
                let z = PauliVector::new(r, 0, vec![1, 0]).unwrap();
                let m = build_deferred_measurement_circuit(&z, 1, &[0]).unwrap();
                let mut s = DenseState::basis(d, &[q, 0]).unwrap();
                for (g, k) in &m.gates {
                    s = s.apply_gate_power(g, *k).unwrap();
                }
                let br = measure_dense(&s, &PauliVector::z_on(r, 2, 1).unwrap()).unwrap();
                assert_eq!(br.len(), 1);
                assert_eq!(br[0].outcome, q);
            }
        }
    }
}
