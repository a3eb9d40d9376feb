//! Building a stabilizer tableau by applying gates, then querying its group.

use qudstab::clifford::{ConjugationTableau, GateSpec};
use qudstab::tableau::Membership;
use qudstab::{PauliVector, RingParams, StabilizerTableau};

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(5)?;
    let mut t = StabilizerTableau::standard_basis(r, &[0, 0, 0])?;
    for g in [
        GateSpec::f(0),
        GateSpec::cx(0, 1),
        GateSpec::cx(1, 2),
        GateSpec::s(2),
    ] {
        t = ConjugationTableau::gate(&g, r, 3)?.apply(&t)?;
    }
    println!("generators (phi | z.. x..):");
    for j in 0..t.len() {
        println!("    {}", t.column(j));
    }
    println!("group order = {}", t.group_order()?);
    println!("unique state: {}", t.stabilizes_unique_state()?);

    // Z_0 Z_1^-1 stabilizes the GHZ-like state before the final S.
    let zz = PauliVector::new(r, 0, vec![1, -1, 0, 0, 0, 0])?;
    match t.membership(&zz)? {
        Membership::Member { witness } => {
            println!("Z_0 Z_1^-1 is a member with witness {witness:?}")
        }
        Membership::NotMember => println!("Z_0 Z_1^-1 is not a member"),
    }
    let z0 = PauliVector::z_on(r, 3, 0)?;
    println!("Z_0 is a member: {}", t.membership(&z0)?.is_member());
    Ok(())
}
