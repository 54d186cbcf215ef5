//! Truncated power series: products, powers, composition.

use series_forge::series::{arcsin_series, exp_series, ln_one_plus_series};
use series_forge::{Rational, Series};

fn main() -> series_forge::Result<()> {
    let n = 8;
    let asin = arcsin_series(n);
    println!("arcsin t     = {asin}");
    println!("(arcsin t)^2 = {}", asin.pow(2));

    // exp(ln(1 + t)) = 1 + t
    let back = exp_series::<Rational>(n).compose(&ln_one_plus_series(n))?;
    println!("exp(ln(1+t)) = {back}");

    let t = Series::<Rational>::variable(n);
    println!("d/dt t^2 / 2 = {}", t.mul(&t).scale(&Rational::frac(1, 2)).differentiate());
    Ok(())
}
