//! Measuring a Pauli through an ancilla and a controlled-Pauli circuit.

use qudstab::clifford::GateSpec;
use qudstab::measurement::{
    apply_gates, build_deferred_measurement_circuit, terminal_distribution,
};
use qudstab::{PauliVector, RingParams, StabilizerTableau};

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(6)?;
    let prep = [(GateSpec::f(0), 1), (GateSpec::cx(0, 1), 3)];
    let p = PauliVector::new(r, 1, vec![2, 2, 0, 0])?;

    let direct = apply_gates(
        &StabilizerTableau::standard_basis(r, &[0, 0])?.to_extended()?,
        &prep,
    )?;
    println!(
        "direct measurement: {}",
        terminal_distribution(&direct, &p)?.coset
    );

    let def = build_deferred_measurement_circuit(&p, 2, &[0, 1])?;
    for (g, k) in &def.gates {
        println!("    {g} ^ {k}");
    }
    let wide = apply_gates(
        &StabilizerTableau::standard_basis(r, &[0, 0, 0])?.to_extended()?,
        &prep,
    )?;
    let after = apply_gates(&wide, &def.gates)?;
    let anc = PauliVector::z_on(r, 3, def.ancilla)?;
    println!(
        "ancilla measurement: {}",
        terminal_distribution(&after, &anc)?.coset
    );
    Ok(())
}
