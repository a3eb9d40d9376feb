//! Reducing a Weyl operator to a power of Z and comparing spectra.

use qudstab::clifford::reduce_weyl_to_z;
use qudstab::oracle::eigenvalue_spectrum;
use qudstab::{PhasedWeyl, RingParams};

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(6)?;
    for v in [vec![2, 3, 0, 4], vec![4, 0, 2, 2], vec![3, 3, 3, 0]] {
        let red = reduce_weyl_to_z(&v, r)?;
        let img = red.conj.apply_to(&PhasedWeyl::new(r, 0, v.clone())?)?;
        println!(
            "v = {v:?}: eta = {}, lands on qudit {} as {img} after {} gates",
            red.eta,
            red.qudit,
            red.steps.len()
        );
        println!("    spectrum {:?}", eigenvalue_spectrum(&v, 6, 2)?);
    }
    Ok(())
}
