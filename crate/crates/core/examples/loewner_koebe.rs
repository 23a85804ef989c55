// A constant Loewner driving phase reproduces the Koebe rotation with that angle.

use zalcman::koebe_rotation;
use zalcman::loewner::{evolve_with, random_driving, DrivingFunction, EvolveOptions};

pub fn run_example() -> zalcman::Result<()> {
    let theta = 0.9;
    let driving = DrivingFunction::constant(theta, 1.0)?;
    let evo = evolve_with(&driving, 8, &EvolveOptions::default())?;
    let koebe = koebe_rotation(theta, 8)?;
    let err = evo
        .coeffs
        .as_slice()
        .iter()
        .zip(koebe.as_slice())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!(
        "constant phase {theta}: max |a_n - n e^(i(n-1)theta)| = {err:.2e} (stopped at t = {}, last delta {:.1e})",
        evo.horizon_used, evo.last_delta
    );

    let random = random_driving(4, 2.0, 7)?;
    let evo = evolve_with(&random, 4, &EvolveOptions::default())?;
    println!("random phases {:?}", random.angles());
    for k in 2..=4 {
        println!("  |a_{k}| = {:.6}", evo.coeffs.a(k).norm());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
