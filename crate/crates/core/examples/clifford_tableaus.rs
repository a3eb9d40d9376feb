//! Conjugation tableaus of the generating gates and their products.

use qudstab::clifford::{is_symplectic, ConjugationTableau, GateSpec};
use qudstab::{PhasedWeyl, RingParams};

fn show(name: &str, t: &ConjugationTableau) {
    println!("{name}: h = {:?}", t.h());
    for row in t.matrix().to_rows() {
        println!("    {row:?}");
    }
}

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(3)?;
    for g in [GateSpec::s(0), GateSpec::f(0), GateSpec::m(0, 2)] {
        show(&g.to_string(), &ConjugationTableau::gate(&g, r, 1)?);
    }
    let cz = ConjugationTableau::gate(&GateSpec::cz(0, 1), r, 2)?;
    let cx = ConjugationTableau::gate(&GateSpec::cx(0, 1), r, 2)?;
    show("CZ 0 1", &cz);
    show("CX 0 1", &cx);

    // CX from CZ by conjugating the target with F.
    let f1 = ConjugationTableau::gate(&GateSpec::f(1), r, 2)?;
    let built =
        ConjugationTableau::compose(&f1.inverse(), &ConjugationTableau::compose(&cz, &f1)?)?;
    println!("Finv_1 CZ F_1 == CX: {}", built == cx);
    println!("CX symplectic: {}", is_symplectic(cx.matrix()));

    // A Pauli gate only changes phases.
    let x = PhasedWeyl::new(r, 0, vec![0, 1])?;
    let px = ConjugationTableau::pauli(&x);
    let z = PhasedWeyl::new(r, 0, vec![1, 0])?;
    let img = px.apply_to(&z)?;
    println!("X Z X^dagger = {img}");

    let s = ConjugationTableau::gate(&GateSpec::s(0), r, 1)?;
    println!(
        "S^3 is the identity tableau: {}",
        s.power(3) == ConjugationTableau::identity(r, 1)
    );
    Ok(())
}
