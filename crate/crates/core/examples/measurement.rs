//! Outcome cosets for composite d, post-measurement tableaus and byproducts.

use qudstab::clifford::GateSpec;
use qudstab::measurement::{apply_gates, byproduct_shift, measure_z_all, terminal_distribution};
use qudstab::{PauliVector, RingParams, StabilizerTableau};

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(4)?;
    let t = StabilizerTableau::standard_basis(r, &[0, 0])?.to_extended()?;
    let t = apply_gates(&t, &[(GateSpec::f(0), 1), (GateSpec::cx(0, 1), 2)])?;

    let zb = PauliVector::z_on(r, 2, 1)?;
    let dist = terminal_distribution(&t, &zb)?;
    println!(
        "Z_1 outcomes: {} (support {:?}, each with probability {})",
        dist.coset,
        dist.coset.support(),
        dist.coset.probability()
    );

    let branches = measure_z_all(&t, 1)?;
    for (tab, rec) in &branches {
        let cols: Vec<String> = (0..tab.len()).map(|j| tab.column(j).to_string()).collect();
        println!("outcome {}: {}", rec.chosen, cols.join("  "));
    }
    let (t0, rec) = &branches[0];
    let moved = byproduct_shift(t0, rec, 1)?;
    println!(
        "byproduct {} maps branch 0 to branch 2: {}",
        rec.byproduct,
        moved.same_group(&branches[1].0)?
    );

    // Measuring Z_0^2 afterwards is deterministic on either branch.
    let z0sq = PauliVector::new(r, 0, vec![2, 0, 0, 0])?;
    println!(
        "Z_0^2 afterwards: {}",
        terminal_distribution(t0, &z0sq)?.coset
    );
    Ok(())
}
