//! Cross-checking a tableau against the dense state-vector simulator.

use qudstab::clifford::GateSpec;
use qudstab::measurement::{apply_gates, measure_pauli_all};
use qudstab::oracle::{measure_dense, tableau_state, DenseState};
use qudstab::{PauliVector, RingParams, StabilizerTableau};

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(6)?;
    let gates = [
        GateSpec::f(0),
        GateSpec::s(0),
        GateSpec::cx(0, 1),
        GateSpec::m(1, 5),
        GateSpec::cz(1, 0),
    ];
    let powered: Vec<_> = gates.iter().map(|g| (g.clone(), 1)).collect();
    let t = apply_gates(
        &StabilizerTableau::standard_basis(r, &[1, 0])?.to_extended()?,
        &powered,
    )?;

    let mut psi = DenseState::basis(6, &[1, 0])?;
    for g in &gates {
        psi = psi.apply_gate(g)?;
    }
    println!(
        "|<tableau state|dense state>| = {:.12}",
        tableau_state(&t)?.overlap(&psi)
    );

    let p = PauliVector::new(r, 0, vec![2, 0, 0, 2])?;
    let ours = measure_pauli_all(&t, &p)?;
    let dense = measure_dense(&psi, &p)?;
    for ((tab, rec), b) in ours.iter().zip(&dense) {
        println!(
            "outcome {} (dense {}): probability {} vs {:.6}, overlap {:.12}",
            rec.chosen,
            b.outcome,
            rec.coset.probability(),
            b.probability,
            tableau_state(tab)?.overlap(&b.state)
        );
    }
    Ok(())
}
