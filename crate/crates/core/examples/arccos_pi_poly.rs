//! (arccos t)^m with coefficients in Q[π].

use series_forge::expansions::arccos_power_coeffs;

fn main() -> series_forge::Result<()> {
    for m in 1..=3 {
        let s = arccos_power_coeffs(m, 5)?;
        println!("(arccos t)^{m}:");
        for (i, c) in s.coeffs().iter().enumerate() {
            println!("  t^{i}: {c}  (≈ {:.6})", c.eval_f64(std::f64::consts::PI));
        }
    }
    Ok(())
}
