//! Rationals, polynomials in π and the factorial family.

use series_forge::exact::{double_factorial, extended_binomial, factorial, falling_factorial, integer_binomial};
use series_forge::{PiPoly, Rational};

fn main() -> series_forge::Result<()> {
    let x = Rational::frac(3, 4) + Rational::frac(5, 6);
    println!("3/4 + 5/6 = {x}");
    println!("20! = {}", factorial(20));
    println!("15!! = {}, (-1)!! = {}", double_factorial(15)?, double_factorial(-1)?);
    println!("<7>_3 = {}", falling_factorial(&Rational::from(7), 3));
    println!("binom(1/2, 3) = {}", extended_binomial(&Rational::frac(1, 2), 3));
    println!("binom(-3, 2) = {}", integer_binomial(-3, 2));

    let p = PiPoly::half_pi();
    let sq = series_forge::Coeff::mul(&p, &p);
    println!("(π/2)² = {sq} ≈ {}", sq.eval_f64(std::f64::consts::PI));
    Ok(())
}
