//! (arctan t)^n and (arctanh t)^n from nested harmonic-type sums.

use series_forge::expansions::{arctan_power_coeffs, arctanh_power_coeffs, nested_harmonic};

fn main() -> series_forge::Result<()> {
    for n in 1..=3 {
        println!("(arctan t)^{n}  = {}", arctan_power_coeffs(n, 9)?);
        println!("(arctanh t)^{n} = {}", arctanh_power_coeffs(n, 9)?);
    }
    let sums: Vec<String> = nested_harmonic(3, 4).iter().map(|r| r.to_string()).collect();
    println!("N_3(0..=4) = [{}]", sums.join(", "));
    Ok(())
}
