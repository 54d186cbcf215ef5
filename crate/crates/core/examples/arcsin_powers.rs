//! Closed-form coefficients of (arcsin t / t)^m next to the power oracle.

use series_forge::expansions::{ExpansionFamily, ExpansionSpec};

fn main() -> series_forge::Result<()> {
    for m in 1..=4 {
        let spec = ExpansionSpec::new(ExpansionFamily::ArcsinPow, m, 12)?;
        let report = spec.verify()?;
        println!("m = {m}: {}", spec.theorem_series()?);
        println!("        oracle agrees: {}", report.pass);
    }
    Ok(())
}
