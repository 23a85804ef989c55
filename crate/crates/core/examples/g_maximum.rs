// Maximizing the trigonometric reduction G, on and off the critical manifold.

use zalcman::extremal_algebra::{
    g_critical_points, manifold_grid_max, maximize_g, unconstrained_grid_max,
};

pub fn run_example() -> zalcman::Result<()> {
    for c in g_critical_points() {
        println!(
            "critical manifold: R = {}, theta + phi = {}",
            c.big_r, c.phase_sum
        );
    }
    let g = maximize_g();
    println!(
        "max G = {} at R = {}, phi = {:.6}; bound = {}; interior value = {}",
        g.g_max, g.argmax_r, g.argmax_phi, g.bound, g.interior_value
    );
    let (grid, r, phi) = manifold_grid_max(400, 400);
    println!("400 x 400 manifold grid: {grid:.12} at R = {r}, phi = {phi:.6}");
    let off = unconstrained_grid_max(60, 60);
    println!(
        "off-manifold grid reaches {:.4} at (R, theta, phi) = ({}, {:.3}, {:.3}); not a bound",
        off.value, off.big_r, off.theta, off.phi
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
