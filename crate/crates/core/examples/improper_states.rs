//! A d = 4 state whose every tableau is improper, and the d = 2 lifting that
//! turns improper tableaus proper when that is possible.

use qudstab::oracle::stabilized_subspace;
use qudstab::{Error, PauliVector, RingParams, StabilizerTableau};

fn main() -> qudstab::Result<()> {
    let r4 = RingParams::new(4)?;
    let t = StabilizerTableau::new(r4, 1, vec![0, 0], vec![vec![2, 0], vec![0, 2]], None)?;
    println!("{{Z^2, X^2}} proper: {}", t.is_proper());
    println!("make_proper: {:?}", t.make_proper().err());
    assert_eq!(t.make_proper(), Err(Error::CannotMakeProper));
    let ext = t.to_extended()?;
    println!(
        "extended xi = {:?}, group order = {}",
        ext.xi().unwrap(),
        ext.group_order()?
    );
    let line = stabilized_subspace(&t.generators(), 4, 1)?;
    let amps: Vec<String> = line[0]
        .amplitudes()
        .iter()
        .map(|a| format!("{:.3}", a.re))
        .collect();
    println!("stabilized state amplitudes: {amps:?}");

    // Qubits: Z (x) Z and X (x) X written with an X-part shifted by 2.
    let r2 = RingParams::new(2)?;
    let zz = PauliVector::new(r2, 0, vec![1, 1, 0, 0])?;
    let xx = PauliVector::new(r2, 0, vec![0, 0, 1, 1])?;
    let shifted = StabilizerTableau::from_pauli_vectors(r2, 2, &[zz, xx])?;
    println!("ZZ, XX proper: {}", shifted.is_proper());
    let fixed = shifted.make_proper()?;
    println!(
        "after make_proper: {} {}, proper = {}",
        fixed.column(0),
        fixed.column(1),
        fixed.is_proper()
    );
    Ok(())
}
