#![allow(dead_code)]

use qudstab::circuit::CircuitProgram;
use qudstab::clifford::{ConjugationTableau, GateSpec};
use qudstab::measurement::apply_gates;
use qudstab::weyl::{PauliVector, PhasedWeyl};
use qudstab::{RingParams, StabilizerTableau};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn ring(d: i64) -> RingParams {
    RingParams::new(d).unwrap()
}

pub fn units(d: i64) -> Vec<i64> {
    (1..d)
        .filter(|&a| qudstab::modmath::gcd(a, d) == 1)
        .collect()
}

/// A random gate on an `n`-qudit register, any kind.
pub fn random_gate<R: Rng>(rng: &mut R, d: i64, n: usize) -> GateSpec {
    let q = rng.gen_range(0..n);
    let other = |rng: &mut R| loop {
        let p = rng.gen_range(0..n);
        if p != q {
            return p;
        }
    };
    let choices: &[u8] = if n > 1 {
        &[0, 1, 2, 3, 4, 5, 6, 7]
    } else {
        &[0, 1, 2, 3, 7]
    };
    match choices.choose(rng).unwrap() {
        0 => GateSpec::s(q),
        1 => GateSpec::f(q),
        2 => GateSpec::finv(q),
        3 => GateSpec::m(q, *units(d).choose(rng).unwrap()),
        4 => GateSpec::cz(q, other(rng)),
        5 => GateSpec::cx(q, other(rng)),
        6 => GateSpec::swap(q, other(rng)),
        _ => {
            let m = ring(d).modulus();
            let p = PhasedWeyl::new(
                ring(d),
                rng.gen_range(0..m),
                vec![rng.gen_range(0..d), rng.gen_range(0..d)],
            )
            .unwrap();
            GateSpec::pauli(vec![q], p)
        }
    }
}

pub fn random_gates<R: Rng>(rng: &mut R, d: i64, n: usize, count: usize) -> Vec<GateSpec> {
    (0..count).map(|_| random_gate(rng, d, n)).collect()
}

pub fn powered(gates: &[GateSpec]) -> Vec<(GateSpec, i64)> {
    gates.iter().map(|g| (g.clone(), 1)).collect()
}

/// Tableau of `gates |q>`, extended for even `d`.
pub fn state_after(d: i64, q: &[i64], gates: &[GateSpec]) -> StabilizerTableau {
    let mut t = StabilizerTableau::standard_basis(ring(d), q).unwrap();
    if d % 2 == 0 {
        t = t.to_extended().unwrap();
    }
    apply_gates(&t, &powered(gates)).unwrap()
}

pub fn random_weyl_vector<R: Rng>(rng: &mut R, d: i64, n: usize) -> Vec<i64> {
    (0..2 * n).map(|_| rng.gen_range(0..d)).collect()
}

pub fn random_observable<R: Rng>(rng: &mut R, d: i64, n: usize) -> PauliVector {
    loop {
        let v = random_weyl_vector(rng, d, n);
        if v.iter().any(|&x| x != 0) {
            return PauliVector::new(ring(d), rng.gen_range(0..d), v).unwrap();
        }
    }
}

pub fn compose_all(gates: &[GateSpec], d: i64, n: usize) -> ConjugationTableau {
    gates
        .iter()
        .fold(ConjugationTableau::identity(ring(d), n), |acc, g| {
            ConjugationTableau::compose(&ConjugationTableau::gate(g, ring(d), n).unwrap(), &acc)
                .unwrap()
        })
}

/// A random program with gates, measurements and conditionals.
pub fn random_program<R: Rng>(
    rng: &mut R,
    d: i64,
    n: usize,
    max_gates: usize,
    max_meas: usize,
) -> CircuitProgram {
    let mut p = CircuitProgram::new(d, n).unwrap();
    let gates = rng.gen_range(0..=max_gates);
    let meas = rng.gen_range(0..=max_meas);
    let mut slots: Vec<u8> = std::iter::repeat_n(0, gates)
        .chain(std::iter::repeat_n(1, meas))
        .collect();
    slots.shuffle(rng);
    let mut k = 0;
    for s in slots {
        if s == 1 {
            let name = format!("m{k}");
            k += 1;
            if rng.gen_bool(0.5) {
                p = p.measure_z(rng.gen_range(0..n), &name).unwrap();
            } else {
                p = p.measure_w(random_observable(rng, d, n), &name).unwrap();
            }
        } else {
            let g = random_gate(rng, d, n);
            if !p.records().is_empty() && rng.gen_bool(0.3) {
                let name = p.records().choose(rng).unwrap().clone();
                p = p.conditional(&name, rng.gen_range(0..d), g).unwrap();
            } else {
                p = p.gate(g).unwrap();
            }
        }
    }
    p
}
