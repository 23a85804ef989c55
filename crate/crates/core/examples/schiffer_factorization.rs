// Schaeffer–Spencer right-hand side for the Koebe function and its
// double-zero factorization.

use std::f64::consts::FRAC_PI_3;

use zalcman::functionals::gradient;
use zalcman::koebe_rotation;
use zalcman::schiffer::{
    center_imaginary, check_reciprocal_symmetry, double_root_fit, matching_residuals,
    relation_check, rhs_polynomial, schaeffer_spencer,
};

pub fn run_example() -> zalcman::Result<()> {
    let f = koebe_rotation(0.0, 4)?;
    let data = schaeffer_spencer(&gradient(3.0, &f)?.to_vec(), &f, 4)?;
    println!("A_v = {:?}", data.a);
    println!("B   = {}", data.b);

    for theta in [0.0, FRAC_PI_3] {
        let f = koebe_rotation(theta, 4)?;
        let g = rhs_polynomial(3.0, &f)?;
        println!("theta = {theta:.4}");
        println!(
            "  numerator      {:?}",
            g.numerator()
                .iter()
                .map(|c| format!("{c:.3}"))
                .collect::<Vec<_>>()
        );
        println!("  symmetry       {:.2e}", check_reciprocal_symmetry(&g)?);
        println!("  Im R           {:.2e}", center_imaginary(&g));
        let fac = double_root_fit(&g)?;
        println!("  E              {:.12}", fac.e);
        println!(
            "  [A, B, C, D]   {:?}",
            fac.q.iter().map(|c| format!("{c:.6}")).collect::<Vec<_>>()
        );
        println!("  matching       {:?}", matching_residuals(&fac, &f, 3.0)?);
        println!("  relations      {:?}", relation_check(&fac));
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
