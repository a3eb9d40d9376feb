//! Products, powers and proportionality of phased Weyl operators.

use qudstab::weyl::{commutes, harmonic_number, operator_order, PhasedWeyl};
use qudstab::RingParams;

fn main() -> qudstab::Result<()> {
    let r = RingParams::new(4)?;
    println!("d = {}, phases live mod D = {}", r.d(), r.modulus());

    let z = PhasedWeyl::new(r, 0, vec![1, 0])?;
    let x = PhasedWeyl::new(r, 0, vec![0, 1])?;
    let zx = z.multiply(&x)?;
    let xz = x.multiply(&z)?;
    println!("Z X = {zx}");
    println!("X Z = {xz}");
    println!("Z and X commute: {}", commutes(z.v(), x.v(), r)?);

    // W_{0,1} and W_{4,1} differ by a sign when d = 4.
    let shifted = PhasedWeyl::new(r, 0, vec![4, 1])?;
    println!("W_(0,1) == W_(4,1): {}", x.operator_eq(&shifted)?);
    println!(
        "W_(0,1) == tau^4 W_(4,1): {}",
        x.operator_eq(&PhasedWeyl::new(r, 4, vec![4, 1])?)?
    );

    for v in [vec![1, 0], vec![2, 0], vec![2, 2], vec![0, 0]] {
        println!(
            "v = {v:?}: eta = {}, order = {}",
            harmonic_number(&v, 4),
            operator_order(&v, 4)
        );
    }

    let y = PhasedWeyl::new(r, 0, vec![-1, -1])?;
    let xyz = x.multiply(&y)?.multiply(&z)?;
    println!("X Y Z = {xyz}");
    Ok(())
}
