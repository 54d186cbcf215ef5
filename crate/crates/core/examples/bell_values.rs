//! Stirling numbers, Q(m,k;α) and the closed form for 𝕓_{2n,k}.

use series_forge::combinatorics::{bell_args, bell_partial, bell_special_value, q_value, stirling_first, stirling_second};
use series_forge::Rational;

fn main() -> series_forge::Result<()> {
    println!("s(6,3) = {}, S(6,3) = {}", stirling_first(6, 3)?, stirling_second(6, 3)?);
    for k in 1..=5 {
        println!("Q(2,{}; 2) = {}", 2 * k, q_value(2, 2 * k, &Rational::from(2))?);
    }
    for n in 1..=3 {
        for k in 1..=2 * n {
            let closed = bell_special_value(n, k)?;
            let direct = bell_partial(2 * n, k, &bell_args(n, k)?.args)?;
            println!("b_({},{k}) = {closed}  (partition sum agrees: {})", 2 * n, closed == direct);
        }
    }
    Ok(())
}
