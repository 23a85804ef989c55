// Multistart search for the maximum of |3a₂a₃ − a₄| over Loewner drivings.
// Runs a small configuration; `cargo run --release --example extremal_search -- 16`
// uses 16 random starts.

use zalcman::search::{optimize_with, SearchOptions};
use zalcman::ZalcmanSpec;

pub fn run_example() -> zalcman::Result<()> {
    let starts = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let spec = ZalcmanSpec::new(3.0, 2, 3)?;
    let opts = SearchOptions {
        dt: 1e-2,
        ..SearchOptions::default()
    };
    let res = optimize_with(spec, 4, starts, 2024, &opts)?;
    println!(
        "best |3a2a3 - a4| = {:.9} after {} evaluations",
        res.best_value, res.evals
    );
    println!("phases {:?}", res.best_driving.angles());
    if let Some(flag) = &res.red_flag {
        println!("RED FLAG: exceeds {} by {}", flag.bound, flag.excess);
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
