//! exp(arcsinh t), Γ(m, arcsinh t) and the arcsinh series identities.

use series_forge::expansions::{arcsinh_identity_check, exp_arcsinh_coeffs, gamma_arcsinh_coeffs, ArcsinhIdentity};

fn main() -> series_forge::Result<()> {
    println!("exp(arcsinh t) = {}", exp_arcsinh_coeffs(10)?);
    for m in 2..=4 {
        println!("Γ({m}, arcsinh t) = {}", gamma_arcsinh_coeffs(m, 8)?);
    }
    for id in [ArcsinhIdentity::First, ArcsinhIdentity::Second, ArcsinhIdentity::General(4)] {
        let check = arcsinh_identity_check(id, 16)?;
        println!("{id:?}: holds to order 16 = {}", check.holds);
    }
    Ok(())
}
