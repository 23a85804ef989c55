// Zalcman functionals of Koebe rotations, the λ thresholds and the
// monotonicity chain.

use zalcman::functionals::{
    extend_bound_by_monotonicity, lambda_thresholds, zalcman_bound, zalcman_value, ChainBound,
};
use zalcman::{koebe_rotation, ZalcmanSpec};

pub fn run_example() -> zalcman::Result<()> {
    let spec = ZalcmanSpec::new(3.0, 2, 3)?;
    for k in 0..4 {
        let theta = k as f64 * 0.7;
        let f = koebe_rotation(theta, spec.top_index())?;
        let v = zalcman_value(&f, &spec)?;
        println!(
            "theta = {theta:.1}: |3a2a3 - a4| = {:.12} (bound {})",
            v.norm(),
            zalcman_bound(&spec)
        );
    }

    let t = lambda_thresholds(2, 3);
    println!("(n, m) = (2, 3): low = {:.6}, mono = {:.6}", t.low, t.mono);

    match extend_bound_by_monotonicity(4.0, 3.0, true, 2, 3) {
        ChainBound::Certified(b) => println!("bound carried from lambda = 3 to 4: {b}"),
        ChainBound::Refused(r) => println!("chain refused: {r:?}"),
    }
    if let ChainBound::Refused(r) = extend_bound_by_monotonicity(1.0, 1.2, true, 2, 3) {
        println!("lambda = 1.2 -> 1.0 refused: {r:?}");
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
