//! Builds and verifies every point of the small parameter grid.
//!
//! cargo run --release --example parameter_sweep

use slrc::sweep::{default_grid, run_point};

fn main() -> slrc::Result<()> {
    println!(
        "{:<15} {:>2} {:>2} {:>3} {:>3} {:>4} {:>3} {:>2} {:>9} {:>8}  ok",
        "family", "r", "δ", "t_i", "q", "n", "k", "t", "patterns", "ms"
    );
    let mut all = true;
    for point in default_grid() {
        let res = run_point(point)?;
        all &= res.passed();
        println!(
            "{:<15} {:>2} {:>2} {:>3} {:>3} {:>4} {:>3} {:>2} {:>9} {:>8}  {}",
            format!("{:?}", point.family),
            point.r,
            point.delta,
            point.t_i,
            point.q,
            res.n,
            res.k,
            res.t,
            res.patterns,
            res.elapsed.as_millis(),
            if res.passed() { "yes" } else { "NO" }
        );
    }
    println!("all points pass: {all}");
    Ok(())
}
