//! Acceptance criteria 1 to 10. Runs without the libtest harness so that
//! every criterion prints one PASS or FAIL line.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use qudstab::circuit::{parse, run, RunOptions};
use qudstab::clifford::{
    is_symplectic, lift_symplectic, multiplier_lift, reduce_weyl_to_z, ConjugationTableau, GateSpec,
};
use qudstab::measurement::{
    apply_gates, build_deferred_measurement_circuit, byproduct_shift, measure_z_all,
    terminal_distribution,
};
use qudstab::modmath::{symplectic_product, ModMatrix};
use qudstab::oracle::{
    self, circuit_dense, gate_dense, measure_dense, stabilized_subspace, tableau_state, tau_pow,
    tau_value, weyl_dense, DenseMode, DenseOperator, DenseState,
};
use qudstab::weyl::{harmonic_number, PauliVector, PhasedWeyl};
use qudstab::{Error, GateKind, StabilizerTableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIMS: [i64; 5] = [2, 3, 4, 5, 6];

fn pw(d: i64, t: i64, v: &[i64]) -> PhasedWeyl {
    PhasedWeyl::new(ring(d), t, v.to_vec()).unwrap()
}

fn dense(p: &PhasedWeyl) -> DenseOperator {
    weyl_dense(p, p.ring().d(), p.n()).unwrap()
}

fn all_vectors(d: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn rows(m: &ModMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
}

fn reduce_rows(r: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    r.iter()
        .map(|row| row.iter().map(|x| x.rem_euclid(m)).collect())
        .collect()
}

// ----- 1 -------------------------------------------------------------------

fn weyl_calculus() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in DIMS {
        let m = ring(d).modulus();
        for n in 1..=2usize {
            for _ in 0..40 {
                let v: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(0..m)).collect();
                let w: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(0..m)).collect();
                // product law
                let c = symplectic_product(&v, &w, m).unwrap();
                let sum: Vec<i64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
                let prod = pw(d, 0, &v).multiply(&pw(d, 0, &w)).unwrap();
                assert!(prod.operator_eq(&pw(d, c, &sum)).unwrap());
                let lhs = dense(&pw(d, 0, &v)).mul(&dense(&pw(d, 0, &w)));
                let rhs = dense(&pw(d, 0, &sum)).scaled(tau_pow(c, d));
                assert!(
                    lhs.max_distance(&rhs) < 1e-10,
                    "product law d={d} v={v:?} w={w:?}"
                );
                // proportionality under v -> v + d x
                let x: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(0..2)).collect();
                let shifted: Vec<i64> = v.iter().zip(&x).map(|(a, b)| a + d * b).collect();
                let sign = symplectic_product(&v, &x, 2).unwrap() * (d + 1) % 2;
                let t = sign * d; // (-1)^k = tau^{k d}
                assert!(pw(d, t, &shifted).operator_eq(&pw(d, 0, &v)).unwrap());
                let diff = dense(&pw(d, t, &shifted)).max_distance(&dense(&pw(d, 0, &v)));
                assert!(diff < 1e-10, "proportionality d={d} v={v:?} x={x:?}");
            }
        }
    }
    // W_{0,1} = -W_{4,1} at d = 4
    let a = pw(4, 0, &[0, 1]);
    let b = pw(4, 0, &[4, 1]);
    assert!(!a.operator_eq(&b).unwrap());
    assert!(a.operator_eq(&pw(4, 4, &[4, 1])).unwrap());
    assert!(dense(&a).max_distance(&dense(&b).scaled(Complex64::new(-1.0, 0.0))) < 1e-12);

    // orthogonality and the Gram matrix of {W_v : v in Z_d^{2n}}
    for d in DIMS {
        for n in 1..=2usize {
            let vs = all_vectors(d, 2 * n);
            let ops: Vec<Vec<(usize, Complex64)>> =
                vs.iter().map(|v| monomial(&dense(&pw(d, 0, v)))).collect();
            let dim = ops[0].len() as f64;
            for (i, v) in vs.iter().enumerate() {
                for (j, w) in vs.iter().enumerate() {
                    let g: Complex64 = ops[i]
                        .iter()
                        .zip(&ops[j])
                        .filter(|(a, b)| a.0 == b.0)
                        .map(|(a, b)| a.1.conj() * b.1)
                        .sum::<Complex64>()
                        / dim;
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (g - Complex64::new(want, 0.0)).norm() < 1e-10,
                        "gram d={d} v={v:?} w={w:?}"
                    );
                }
            }
            // exact side: distinct classes mod d are never proportional
            let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
            for _ in 0..400 {
                let v = &vs[rng.gen_range(0..vs.len())];
                let w = &vs[rng.gen_range(0..vs.len())];
                let proportional =
                    (0..m_of(d)).any(|t| pw(d, t, v).operator_eq(&pw(d, 0, w)).unwrap());
                assert_eq!(proportional, v == w, "d={d} v={v:?} w={w:?}");
            }
        }
    }
    // inner products of W_v, W_w with entries below d lie in {0, 1, -1} at d = 4
    for v in all_vectors(4, 2) {
        for w in all_vectors(4, 2) {
            let shifted: Vec<i64> = w.iter().map(|x| x + 4).collect();
            let g = dense(&pw(4, 0, &v)).hilbert_schmidt(&dense(&pw(4, 0, &shifted)));
            assert!(
                [0.0, 1.0, -1.0]
                    .iter()
                    .any(|&c| (g - Complex64::new(c, 0.0)).norm() < 1e-10),
                "{v:?} {w:?} {g}"
            );
        }
    }
}

/// Row-wise `(column, entry)` of a matrix with one nonzero per row.
fn monomial(op: &DenseOperator) -> Vec<(usize, Complex64)> {
    let m = op.matrix();
    (0..m.nrows())
        .map(|r| {
            let nz: Vec<usize> = (0..m.ncols())
                .filter(|&c| m[(r, c)].norm() > 1e-12)
                .collect();
            assert_eq!(nz.len(), 1, "Weyl operators are monomial");
            (nz[0], m[(r, nz[0])])
        })
        .collect()
}

fn m_of(d: i64) -> i64 {
    ring(d).modulus()
}

// ----- 2 -------------------------------------------------------------------

fn tau_convention() {
    assert_eq!(tau_value(2), Complex64::new(0.0, 1.0));
    for d in 2..=6i64 {
        let big_d = m_of(d);
        assert_eq!(tau_pow(big_d, d), Complex64::new(1.0, 0.0));
        let want = if d % 2 == 0 { -1.0 } else { 1.0 };
        assert!((tau_pow(d, d) - Complex64::new(want, 0.0)).norm() < 1e-12);
        let expect =
            Complex64::from_polar(1.0, std::f64::consts::PI * (d * d + 1) as f64 / d as f64);
        assert!((tau_value(d) - expect).norm() < 1e-12);
        // X Y Z = tau I with Y = W_{-1,-1}
        let x = pw(d, 0, &[0, 1]);
        let y = pw(d, 0, &[-1, -1]);
        let z = pw(d, 0, &[1, 0]);
        let xyz = x.multiply(&y).unwrap().multiply(&z).unwrap();
        assert!(xyz.operator_eq(&pw(d, 1, &[0, 0])).unwrap(), "d={d}");
        let lhs = dense(&x).mul(&dense(&y)).mul(&dense(&z));
        let rhs = DenseOperator::identity(d, 1).unwrap().scaled(tau_value(d));
        assert!(lhs.max_distance(&rhs) < 1e-12, "d={d}");
    }
}

// ----- 3 -------------------------------------------------------------------

fn tab(g: &GateSpec, d: i64, n: usize) -> ConjugationTableau {
    ConjugationTableau::gate(g, ring(d), n).unwrap()
}

/// Checks `U W_v U^dagger = expected` on the tableau and against dense matrices.
fn maps(g: &GateSpec, d: i64, n: usize, from: &[i64], to: &PhasedWeyl) {
    let src = pw(d, 0, from);
    let img = tab(g, d, n).apply_to(&src).unwrap();
    assert!(
        img.operator_eq(to).unwrap(),
        "{g} d={d}: {from:?} -> {img:?}, want {to:?}"
    );
    let u = gate_dense(g, d, n).unwrap();
    let lhs = u.mul(&dense(&src)).mul(&u.adjoint());
    assert!(
        lhs.max_distance(&dense(to)) < 1e-10,
        "{g} d={d}: dense mismatch for {from:?}"
    );
}

fn conjugation_relations() {
    for d in DIMS {
        let m = m_of(d);
        let (z, x) = ([1, 0], [0, 1]);
        maps(&GateSpec::s(0), d, 1, &z, &pw(d, 0, &z));
        maps(&GateSpec::s(0), d, 1, &x, &pw(d, 0, &[1, 1]));
        maps(&GateSpec::f(0), d, 1, &z, &pw(d, 0, &[0, -1]));
        maps(&GateSpec::f(0), d, 1, &x, &pw(d, 0, &z));
        for a in units(d) {
            let alpha = multiplier_lift(a, ring(d)).unwrap();
            let inv = (1..m).find(|k| (k * alpha) % m == 1).unwrap();
            maps(&GateSpec::m(0, a), d, 1, &z, &pw(d, 0, &[inv, 0]));
            maps(&GateSpec::m(0, a), d, 1, &x, &pw(d, 0, &[0, alpha]));
            assert_eq!(
                rows(tab(&GateSpec::m(0, a), d, 1).matrix()),
                vec![vec![inv, 0], vec![0, alpha]]
            );
        }
        // (z1, z2, x1, x2)
        let cz = GateSpec::cz(0, 1);
        maps(&cz, d, 2, &[1, 0, 0, 0], &pw(d, 0, &[1, 0, 0, 0]));
        maps(&cz, d, 2, &[0, 1, 0, 0], &pw(d, 0, &[0, 1, 0, 0]));
        maps(&cz, d, 2, &[0, 0, 1, 0], &pw(d, 0, &[0, 1, 1, 0]));
        maps(&cz, d, 2, &[0, 0, 0, 1], &pw(d, 0, &[1, 0, 0, 1]));
        let cx = GateSpec::cx(0, 1);
        maps(&cx, d, 2, &[1, 0, 0, 0], &pw(d, 0, &[1, 0, 0, 0]));
        maps(&cx, d, 2, &[0, 1, 0, 0], &pw(d, 0, &[-1, 1, 0, 0]));
        maps(&cx, d, 2, &[0, 0, 1, 0], &pw(d, 0, &[0, 0, 1, 1]));
        maps(&cx, d, 2, &[0, 0, 0, 1], &pw(d, 0, &[0, 0, 0, 1]));

        // generator matrices, all with zero phase column
        let expect: [(GateSpec, usize, Vec<Vec<i64>>); 5] = [
            (GateSpec::s(0), 1, vec![vec![1, 1], vec![0, 1]]),
            (GateSpec::f(0), 1, vec![vec![0, 1], vec![-1, 0]]),
            (
                cz.clone(),
                2,
                vec![
                    vec![1, 0, 0, 1],
                    vec![0, 1, 1, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                ],
            ),
            (
                cx.clone(),
                2,
                vec![
                    vec![1, -1, 0, 0],
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 1, 1],
                ],
            ),
            (
                GateSpec::swap(0, 1),
                2,
                vec![
                    vec![0, 1, 0, 0],
                    vec![1, 0, 0, 0],
                    vec![0, 0, 0, 1],
                    vec![0, 0, 1, 0],
                ],
            ),
        ];
        for (g, n, want) in expect {
            let t = tab(&g, d, n);
            assert_eq!(rows(t.matrix()), reduce_rows(&want, m), "{g} d={d}");
            assert!(t.h().iter().all(|&h| h == 0));
            assert!(is_symplectic(t.matrix()));
        }

        // CX = (I (x) F^dagger) CZ (I (x) F)
        let f1 = tab(&GateSpec::f(1), d, 2);
        let built = ConjugationTableau::compose(
            &f1.inverse(),
            &ConjugationTableau::compose(&tab(&cz, d, 2), &f1).unwrap(),
        )
        .unwrap();
        assert_eq!(built, tab(&cx, d, 2), "d={d}");
        // SWAP = (F^2 (x) I) CX_{1,2} CX_{2,1}^dagger CX_{1,2}, rightmost first
        let cx12 = tab(&cx, d, 2);
        let cx21 = tab(&GateSpec::cx(1, 0), d, 2);
        let f0sq = tab(&GateSpec::f(0), d, 2).power(2);
        let swap = [&cx12, &cx21.inverse(), &cx12, &f0sq]
            .into_iter()
            .fold(ConjugationTableau::identity(ring(d), 2), |acc, g| {
                ConjugationTableau::compose(g, &acc).unwrap()
            });
        assert_eq!(swap, tab(&GateSpec::swap(0, 1), d, 2), "d={d}");

        for g in 0..=3i64 {
            // CX_{2,1}^{-g}: control on the second qudit
            let t = tab(&GateSpec::cx(1, 0), d, 2).power(-g);
            let want = vec![
                vec![1, 0, 0, 0],
                vec![g, 1, 0, 0],
                vec![0, 0, 1, -g],
                vec![0, 0, 0, 1],
            ];
            assert_eq!(rows(t.matrix()), reduce_rows(&want, m), "d={d} g={g}");
            // F S^{-g} F^dagger
            let f = tab(&GateSpec::f(0), d, 1);
            let t = ConjugationTableau::compose(
                &f,
                &ConjugationTableau::compose(&tab(&GateSpec::s(0), d, 1).power(-g), &f.inverse())
                    .unwrap(),
            )
            .unwrap();
            assert_eq!(
                rows(t.matrix()),
                reduce_rows(&[vec![1, 0], vec![g, 1]], m),
                "d={d} g={g}"
            );
        }
        let c4 = tab(&GateSpec::f(0), d, 1).power(4);
        assert_eq!(c4, ConjugationTableau::identity(ring(d), 1));
    }
}

// ----- 4 -------------------------------------------------------------------

fn improper_gallery() {
    let r = ring(4);
    let target = DenseState::from_amplitudes(
        4,
        1,
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap()
    .normalized()
    .unwrap();
    let mut seen = 0;
    for a in [2, 6] {
        for b in [2, 6] {
            for p in [0, 4] {
                for q in [0, 4] {
                    let t = StabilizerTableau::new(
                        r,
                        1,
                        vec![p, q],
                        vec![vec![a, 0], vec![0, b]],
                        None,
                    )
                    .unwrap();
                    assert!(!t.is_proper(), "a={a} b={b}");
                    assert_eq!(t.make_proper(), Err(Error::CannotMakeProper));
                    let line = stabilized_subspace(&t.generators(), 4, 1).unwrap();
                    assert_eq!(line.len(), 1);
                    assert!(line[0].overlap(&target) > 1.0 - 1e-12);
                    assert!(t.stabilizes_unique_state().unwrap());
                    seen += 1;
                }
            }
        }
    }
    assert_eq!(seen, 16);
}

// ----- 5 -------------------------------------------------------------------

fn worked_example() {
    let p = parse("dim 4\nqudits 2\nF 0\nCX 0 1\nCX 0 1\nmeasure z 1 -> m").unwrap();
    let out = run(
        &p,
        &RunOptions {
            oracle: true,
            ..RunOptions::default()
        },
    )
    .unwrap();
    let half = Ratio::new(BigUint::from(1u32), BigUint::from(2u32));
    assert_eq!(out.len(), 2);
    for (tr, h) in out.iter().zip([0, 2]) {
        assert_eq!(tr.outcome("m"), Some(h));
        assert_eq!(tr.probability, half);
        let c = tr.cosets[0].1;
        assert_eq!((c.kappa(), c.eta()), (0, 2));
        assert!(tr.oracle_overlap.unwrap() >= 1.0 - 1e-9);
    }
    // against the dense branches directly
    let gates = [GateSpec::f(0), GateSpec::cx(0, 1), GateSpec::cx(0, 1)];
    let t = state_after(4, &[0, 0], &gates);
    let mut psi = DenseState::basis(4, &[0, 0]).unwrap();
    for g in &gates {
        psi = psi.apply_gate(g).unwrap();
    }
    let zb = PauliVector::z_on(ring(4), 2, 1).unwrap();
    let branches = measure_dense(&psi, &zb).unwrap();
    assert_eq!(
        branches.iter().map(|b| b.outcome).collect::<Vec<_>>(),
        vec![0, 2]
    );
    for (b, tr) in branches.iter().zip(&out) {
        assert!((b.probability - 0.5).abs() < 1e-12);
        assert!(tableau_state(&tr.tableau).unwrap().overlap(&b.state) >= 1.0 - 1e-9);
    }
    let post = measure_z_all(&t, 1).unwrap();
    let (t0, rec) = &post[0];
    assert_eq!(rec.chosen, 0);
    let moved = byproduct_shift(t0, rec, 1).unwrap();
    assert!(moved.same_group(&post[1].0).unwrap());
    assert_eq!(post[1].1.chosen, 2);
}

// ----- 6 -------------------------------------------------------------------

fn randomized_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..500 {
        let d = DIMS[case % DIMS.len()];
        let n = rng.gen_range(1..=2);
        let p = random_program(&mut rng, d, n, 8, 3);
        let ours = run(&p, &RunOptions::default()).unwrap();
        let theirs = oracle::simulate_circuit(&p, &vec![0; n], &DenseMode::Enumerate).unwrap();
        let key = |o: &[(String, i64)]| o.iter().map(|x| x.1).collect::<Vec<_>>();
        let ref_map: BTreeMap<Vec<i64>, &oracle::DenseTrajectory> =
            theirs.iter().map(|t| (key(&t.outcomes), t)).collect();
        let our_keys: Vec<Vec<i64>> = ours.iter().map(|t| key(&t.outcomes)).collect();
        assert_eq!(
            our_keys,
            ref_map.keys().cloned().collect::<Vec<_>>(),
            "support differs for\n{p}"
        );
        for tr in &ours {
            let o = ref_map[&key(&tr.outcomes)];
            let exact =
                tr.probability.numer().to_f64().unwrap() / tr.probability.denom().to_f64().unwrap();
            assert!(
                (exact - o.probability).abs() < 1e-9,
                "probability differs for\n{p}"
            );
            // the rational is a product of eta/d factors
            let from_cosets = tr
                .cosets
                .iter()
                .fold(Ratio::from_integer(BigUint::from(1u32)), |acc, (_, c)| {
                    acc * c.probability()
                });
            assert_eq!(from_cosets, tr.probability);
            let st = tableau_state(&tr.tableau).unwrap();
            assert!(st.overlap(&o.state) > 1.0 - 1e-9, "state differs for\n{p}");
        }
    }
}

// ----- 7 -------------------------------------------------------------------

fn proper_and_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = ring(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let q: Vec<i64> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let plain = StabilizerTableau::standard_basis(r, &q).unwrap();
        let t = random_gates(&mut rng, 2, n, 8)
            .iter()
            .fold(plain, |acc, g| tab(g, 2, n).apply(&acc).unwrap());
        let k = rng.gen_range(1..=n);
        let cols: Vec<PauliVector> = (0..k)
            .map(|j| {
                let c = t.column(j);
                let v: Vec<i64> = c.v().iter().map(|&x| x + 2 * rng.gen_range(0..2)).collect();
                (0..4)
                    .map(|phi| PauliVector::new(r, phi, v.clone()).unwrap())
                    .find(|p| p.to_phased().operator_eq(&c.to_phased()).unwrap())
                    .unwrap()
            })
            .collect();
        let input = StabilizerTableau::from_pauli_vectors(r, n, &cols).unwrap();
        let out = input.make_proper().unwrap();
        assert!(out.is_proper());
        for j in 0..k {
            assert!(out
                .column(j)
                .to_phased()
                .operator_eq(&input.column(j).to_phased())
                .unwrap());
        }
    }
    for _ in 0..200 {
        let d = [2i64, 4, 6][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let gates: Vec<GateSpec> = random_gates(&mut rng, d, n, 12)
            .into_iter()
            .filter(|g| !matches!(g.kind, GateKind::Pauli(_)))
            .collect();
        let c = compose_all(&gates, d, n).matrix().reduced(d);
        let lifted = lift_symplectic(&c, d).unwrap();
        assert_eq!(lifted.modulus(), 2 * d);
        assert!(is_symplectic(&lifted));
        assert_eq!(lifted.reduced(d), c);
    }
}

// ----- 8 -------------------------------------------------------------------

fn spectra_and_group_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in [2i64, 3, 4, 6] {
        for n in 1..=2usize {
            for _ in 0..100 {
                let v = random_weyl_vector(&mut rng, d, n);
                let eta = harmonic_number(&v, d);
                let spectrum = oracle::eigenvalue_spectrum(&v, d, n).unwrap();
                let mult = eta as usize * (d as usize).pow(n as u32 - 1);
                let want: BTreeMap<i64, usize> =
                    (0..d).step_by(eta as usize).map(|k| (k, mult)).collect();
                assert_eq!(spectrum, want, "d={d} v={v:?}");
                if v.iter().all(|x| x % d == 0) {
                    continue;
                }
                let red = reduce_weyl_to_z(&v, ring(d)).unwrap();
                let img = red.conj.apply_to(&pw(d, 0, &v)).unwrap();
                let mut ez = vec![0; 2 * n];
                ez[red.qudit] = red.eta;
                assert!(
                    img.v().iter().zip(&ez).all(|(a, b)| a.rem_euclid(d) == *b),
                    "d={d} v={v:?}"
                );
                assert_eq!(oracle::eigenvalue_spectrum(&ez, d, n).unwrap(), spectrum);
                let u = circuit_dense(&red.steps, d, n).unwrap();
                let conj = u.mul(&dense(&pw(d, 0, &v))).mul(&u.adjoint());
                assert!(conj.max_distance(&dense(&img)) < 1e-9, "d={d} v={v:?}");
            }
        }
    }
    for case in 0..100 {
        let d = DIMS[case % DIMS.len()];
        let n = rng.gen_range(1..=4);
        let q: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d)).collect();
        let t = state_after(d, &q, &random_gates(&mut rng, d, n, 12));
        assert_eq!(
            t.group_order().unwrap(),
            BigUint::from(d as u64).pow(n as u32)
        );
    }
}

// ----- 9 -------------------------------------------------------------------

fn generator_count_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..200 {
        let d = DIMS[case % DIMS.len()];
        let n = rng.gen_range(1..=3);
        let t = state_after(d, &vec![0; n], &random_gates(&mut rng, d, n, 8));
        let gens = t.generators();
        let mut cols: Vec<PauliVector> = (0..t.len()).map(|j| t.column(j)).collect();
        for _ in 0..rng.gen_range(1..=5) {
            let mut acc = PhasedWeyl::identity(ring(d), n);
            for g in &gens {
                acc = acc.multiply(&g.power(rng.gen_range(0..2 * d))).unwrap();
            }
            cols.insert(
                rng.gen_range(0..=cols.len()),
                PauliVector::from_phased(&acc).unwrap(),
            );
        }
        let mut big = StabilizerTableau::from_pauli_vectors(ring(d), n, &cols).unwrap();
        if d % 2 == 0 {
            big = big.to_extended().unwrap();
        }
        let norm = big.normalize_generators().unwrap();
        assert!(norm.len() <= 2 * n);
        assert!(norm.same_group(&t).unwrap());
    }
    let r = ring(4);
    let both = StabilizerTableau::new(r, 1, vec![0, 0], vec![vec![2, 0], vec![0, 2]], None)
        .unwrap()
        .to_extended()
        .unwrap();
    assert_eq!(both.group_order().unwrap(), BigUint::from(4u32));
    assert_eq!(both.normalize_generators().unwrap().len(), 2);
    for keep in [0usize, 1] {
        let one = StabilizerTableau::from_pauli_vectors(r, 1, &[both.column(keep)]).unwrap();
        assert_eq!(one.group_order().unwrap(), BigUint::from(2u32));
    }
}

// ----- 10 ------------------------------------------------------------------

fn deferred_measurement() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..50 {
        let d = DIMS[case % DIMS.len()];
        let n = rng.gen_range(1..=2);
        let gates = random_gates(&mut rng, d, n, 8);
        let p = random_observable(&mut rng, d, n);
        let t = state_after(d, &vec![0; n], &gates);
        let want = terminal_distribution(&t, &p).unwrap().coset;

        let wide = state_after(d, &vec![0; n + 1], &gates);
        let targets: Vec<usize> = (0..n).collect();
        let def = build_deferred_measurement_circuit(&p, n, &targets).unwrap();
        let after = apply_gates(&wide, &def.gates).unwrap();
        let got = terminal_distribution(
            &after,
            &PauliVector::z_on(ring(d), n + 1, def.ancilla).unwrap(),
        )
        .unwrap()
        .coset;
        assert_eq!(got, want, "d={d} gates={gates:?} p={p:?}");
    }
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("Weyl calculus", weyl_calculus),
        ("tau convention", tau_convention),
        ("conjugation relations", conjugation_relations),
        ("improper-state gallery", improper_gallery),
        ("worked d=4 measurement example", worked_example),
        (
            "randomized equivalence with the dense simulator",
            randomized_equivalence,
        ),
        ("make_proper and lift_symplectic", proper_and_lift),
        (
            "spectra, Weyl reduction and group order",
            spectra_and_group_order,
        ),
        ("generator-count boundary", generator_count_boundary),
        ("deferred-measurement equivalence", deferred_measurement),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status}  {name} ({:.2?})",
            i + 1,
            start.elapsed()
        );
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
