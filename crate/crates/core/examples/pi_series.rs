//! Convergence of the (π/3)^m series.

use std::f64::consts::PI;

use series_forge::logsine::pi_power_partial_sums;

fn main() -> series_forge::Result<()> {
    for m in 1..=4 {
        let target = (PI / 3.0).powi(m as i32);
        let sums = pi_power_partial_sums(m, 16)?;
        println!("m = {m}");
        for (i, s) in sums.iter().enumerate().step_by(3) {
            println!("  {:>2} terms: {s:.15}  error {:.1e}", i + 1, (s - target).abs());
        }
    }
    Ok(())
}
