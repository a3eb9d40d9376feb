//! Lifting a symplectic matrix mod d to one that is symplectic mod 2d.

use qudstab::clifford::{is_symplectic, lift_symplectic, ConjugationTableau, GateSpec};
use qudstab::modmath::ModMatrix;
use qudstab::RingParams;

fn main() -> qudstab::Result<()> {
    // C_S with an extra 2 below the diagonal: symplectic mod 2 only.
    let c = ModMatrix::from_rows(&[vec![1, 1], vec![2, 1]], 4)?;
    println!("input symplectic mod 4: {}", is_symplectic(&c));
    let lifted = lift_symplectic(&c.reduced(2), 2)?;
    println!(
        "lifted: {:?}, symplectic mod 4: {}",
        lifted.to_rows(),
        is_symplectic(&lifted)
    );

    // A product of gate tableaus for d = 6, forgotten down to mod 6.
    let r = RingParams::new(6)?;
    let mut acc = ConjugationTableau::identity(r, 2);
    for g in [
        GateSpec::s(1),
        GateSpec::cz(0, 1),
        GateSpec::f(0),
        GateSpec::cx(1, 0),
        GateSpec::s(0),
    ] {
        acc = ConjugationTableau::compose(&ConjugationTableau::gate(&g, r, 2)?, &acc)?;
    }
    let mod_d = acc.matrix().reduced(6);
    let l6 = lift_symplectic(&mod_d, 6)?;
    println!("mod 6:  {:?}", mod_d.to_rows());
    println!(
        "lifted: {:?}, symplectic mod 12: {}",
        l6.to_rows(),
        is_symplectic(&l6)
    );
    Ok(())
}
