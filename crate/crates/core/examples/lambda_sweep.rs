// Empirical maxima of |λa₂a₃ − a₄| against λ·6 − 4 over a λ grid.

use zalcman::search::{lambda_sweep_with, SearchOptions};

pub fn run_example() -> zalcman::Result<()> {
    let opts = SearchOptions {
        dt: 1e-2,
        max_iters: 60,
        restarts: 0,
        ..SearchOptions::default()
    };
    let rows = lambda_sweep_with(2, 3, &[1.5, 2.0, 2.5, 3.0], 2, 1, 5, &opts)?;
    println!(
        "{:>6} {:>14} {:>10} {:>12}",
        "lambda", "empirical max", "bound", "gap"
    );
    for r in rows {
        println!(
            "{:>6} {:>14.9} {:>10} {:>12.3e}",
            r.lambda, r.empirical_max, r.conjectured_bound, r.gap
        );
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
