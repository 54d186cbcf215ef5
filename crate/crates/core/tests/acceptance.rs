//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use series_forge::combinatorics::{bell_args, bell_partial, bell_special_value};
use series_forge::expansions::{
    arccos_power_coeffs, arcsin_power_coeffs, arcsin_power_over_sqrt_coeffs, arcsinh_identity_check,
    arcsinh_power_coeffs, arctan_power_coeffs, arctanh_power_coeffs, exp_arcsinh_coeffs, gamma_arcsinh_coeffs,
    ArcsinhIdentity,
};
use series_forge::identities::{run_all, SweepContext, SweepPlan};
use series_forge::logsine::{logsine_arcsin_form, logsine_quadrature, logsine_series, pi_power_partial_sums, LogsineRequest};
use series_forge::series::{
    arcsin_series, arcsinh_series, arctan_series, arctanh_series, exp_series, inv_sqrt_one_minus_t2,
    sqrt_one_plus_t2,
};
use series_forge::{Coeff, PiPoly, Rational, Series};

type Outcome = Result<String, String>;

/// π to 30 decimal places. Test fixture.
const PI_30: &str = "3141592653589793238462643383279/1000000000000000000000000000000";

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same<C: Coeff>(what: &str, a: &Series<C>, b: &Series<C>, order: usize) -> Result<(), String> {
    match a.first_mismatch(b, order) {
        None => Ok(()),
        Some(i) => Err(format!("{what}: differs at t^{i}: {} vs {}", a.coeff(i), b.coeff(i))),
    }
}

fn err(e: series_forge::Error) -> String {
    e.to_string()
}

fn arcsin_powers() -> Outcome {
    let n = 40;
    for m in 1..=10u32 {
        let oracle = arcsin_series(n + m as usize).pow(m).shift_down(m as usize).map_err(err)?;
        same(&format!("m={m}"), &arcsin_power_coeffs(m, n).map_err(err)?, &oracle, n)?;
    }
    Ok("m = 1..10, order 40".into())
}

fn arcsin_over_sqrt() -> Outcome {
    let n = 40;
    for m in 0..=8u32 {
        let oracle = arcsin_series(n).pow(m).mul(&inv_sqrt_one_minus_t2(n));
        same(&format!("m={m}"), &arcsin_power_over_sqrt_coeffs(m, n).map_err(err)?, &oracle, n)?;
    }
    Ok("m = 0..8, order 40".into())
}

fn bell_closed_form() -> Outcome {
    let mut cases = 0;
    for n in 1..=8usize {
        for k in 1..=2 * n {
            let closed = bell_special_value(n, k).map_err(err)?;
            let sum = bell_partial(2 * n, k, &bell_args(n, k).map_err(err)?.args).map_err(err)?;
            ensure(closed == sum, || format!("n={n}, k={k}: closed form {closed}, partition sum {sum}"))?;
            cases += 1;
        }
    }
    let b21 = bell_special_value(1, 1).map_err(err)?;
    let b41 = bell_special_value(2, 1).map_err(err)?;
    ensure(b21 == Rational::frac(1, 3), || format!("b_(2,1) = {b21}"))?;
    ensure(b41 == Rational::frac(9, 5), || format!("b_(4,1) = {b41}"))?;
    Ok(format!("{cases} cases with 2n ≤ 16; b_(2,1) = 1/3, b_(4,1) = 9/5"))
}

fn logsine_agreement() -> Outcome {
    let mut worst_series: f64 = 0.0;
    let mut worst_routes: f64 = 0.0;
    for (j, k) in [(2, 1), (3, 1), (3, 2), (4, 1)] {
        for theta in [PI / 6.0, PI / 3.0, PI / 2.0] {
            let req = LogsineRequest::new(j, k, theta).map_err(err)?.with_terms(40);
            let q = logsine_quadrature(&req).map_err(err)?.value;
            let a = logsine_arcsin_form(&req).map_err(err)?.value;
            let s = logsine_series(&req).map_err(err)?.value;
            let ds = (s - q).abs().max((s - a).abs());
            worst_series = worst_series.max(ds);
            worst_routes = worst_routes.max((q - a).abs());
            ensure(ds <= 1e-7, || format!("(j,k,θ)=({j},{k},{theta}): series {s}, quad {q}, arcsin {a}"))?;
            ensure((q - a).abs() <= 2e-10, || format!("(j,k,θ)=({j},{k},{theta}): quad {q}, arcsin {a}"))?;
        }
    }
    let ls2 = logsine_quadrature(&LogsineRequest::new(2, 0, PI).map_err(err)?).map_err(err)?.value;
    ensure(ls2.abs() <= 1e-9, || format!("Ls_2(π) = {ls2}"))?;
    Ok(format!("series vs quadrature ≤ {worst_series:.1e}, routes ≤ {worst_routes:.1e}, Ls_2(π) = {ls2:.1e}"))
}

fn arcsinh_suite() -> Outcome {
    let n = 40;
    for m in 1..=10u32 {
        let oracle = arcsinh_series(n + m as usize).pow(m).shift_down(m as usize).map_err(err)?;
        same(&format!("arcsinh m={m}"), &arcsinh_power_coeffs(m, n).map_err(err)?, &oracle, n)?;
    }
    let mut ids = vec![ArcsinhIdentity::First, ArcsinhIdentity::Second];
    ids.extend((3..=8).map(ArcsinhIdentity::General));
    for id in ids {
        let c = arcsinh_identity_check(id, 24).map_err(err)?;
        ensure(c.holds, || format!("{id:?} fails at t^{:?}", c.first_mismatch))?;
    }
    let exp_oracle = Series::variable(n).add(&sqrt_one_plus_t2(n));
    same("exp(arcsinh t)", &exp_arcsinh_coeffs(n).map_err(err)?, &exp_oracle, n)?;
    // Γ(m, x) = (m−1)! e^{−x} Σ_{j<m} x^j/j!, composed with arcsinh t
    let order = 30;
    for m in 2..=6u32 {
        let fact = |j: usize| (1..=j).fold(Rational::one(), |acc, i| acc * Rational::from(i as i64));
        let exp_neg = exp_series::<Rational>(order).compose(&Series::variable(order).neg()).map_err(err)?;
        let head = Series::from_fn(order, |j| if j < m as usize { Rational::one() / fact(j) } else { Rational::zero() });
        let oracle = exp_neg
            .mul(&head)
            .scale(&fact(m as usize - 1))
            .compose(&arcsinh_series(order))
            .map_err(err)?;
        same(&format!("Γ({m}, arcsinh t)"), &gamma_arcsinh_coeffs(m, order).map_err(err)?, &oracle, order)?;
    }
    Ok("powers m ≤ 10 to order 40; identities 1, 2, general m = 3..8 to order 24; exp and Γ(2..6) oracles".into())
}

fn arctan_powers() -> Outcome {
    let n = 33;
    for p in 1..=8u32 {
        same(&format!("arctan n={p}"), &arctan_power_coeffs(p, n).map_err(err)?, &arctan_series(n).pow(p), n)?;
        same(&format!("arctanh n={p}"), &arctanh_power_coeffs(p, n).map_err(err)?, &arctanh_series(n).pow(p), n)?;
    }
    let sq = arctan_power_coeffs(2, n).map_err(err)?.coeff(4) / Rational::from(2);
    let cube = arctan_power_coeffs(3, n).map_err(err)?.coeff(5) / Rational::from(6);
    ensure(sq == Rational::frac(-1, 3), || format!("(arctan t)²/2! at t⁴ is {sq}"))?;
    ensure(cube == Rational::frac(-1, 6), || format!("(arctan t)³/3! at t⁵ is {cube}"))?;
    Ok("n = 1..8 to order 33; leading terms −1/3 t⁴ and −1/6 t⁵".into())
}

fn identity_sweeps() -> Outcome {
    let reports = run_all(&SweepPlan::all(), &SweepContext::default()).map_err(err)?;
    let total: usize = reports.iter().map(|r| r.cases_checked).sum();
    if let Some(r) = reports.iter().find(|r| !r.passed()) {
        return Err(format!("{} failed: {:?}", r.identity_id, r.first_counterexample));
    }
    ensure(reports.iter().all(|r| r.cases_checked > 0), || "a sweep checked no cases".into())?;
    Ok(format!("{} identities, {total} cases", reports.len()))
}

fn arccos_powers() -> Outcome {
    let n = 20;
    let half_pi = Series::constant(PiPoly::half_pi(), n);
    let asin = Series::new(arcsin_series(n).into_coeffs().into_iter().map(PiPoly::constant).collect());
    let base = half_pi.sub(&asin);
    for m in 1..=6u32 {
        same(&format!("m={m}"), &arccos_power_coeffs(m, n).map_err(err)?, &base.pow(m), n)?;
    }
    Ok("m = 1..6 in Q[π][[t]] to order 20".into())
}

fn pi_series() -> Outcome {
    let pi: Rational = PI_30.parse().map_err(err)?;
    let mut detail = Vec::new();
    for m in 1..=4u32 {
        let target = (pi.clone() / Rational::from(3)).powu(m).to_f64();
        let sums = pi_power_partial_sums(m, 40).map_err(err)?;
        let hit = sums.iter().position(|s| (s - target).abs() < 1e-8);
        let last = (sums[39] - target).abs();
        ensure(hit.is_some() && last < 1e-8, || format!("m={m}: error after 40 terms {last:.2e}"))?;
        detail.push(format!("m={m} at {} terms", hit.unwrap() + 1));
    }
    Ok(detail.join(", "))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "arcsin power coefficients", limit: Some(Duration::from_secs(10)), run: arcsin_powers },
        Criterion { id: 2, name: "arcsin power over sqrt", limit: None, run: arcsin_over_sqrt },
        Criterion { id: 3, name: "Bell closed form", limit: None, run: bell_closed_form },
        Criterion { id: 4, name: "logsine series and quadrature", limit: Some(Duration::from_secs(30)), run: logsine_agreement },
        Criterion { id: 5, name: "arcsinh expansions and identities", limit: None, run: arcsinh_suite },
        Criterion { id: 6, name: "arctan and arctanh powers", limit: None, run: arctan_powers },
        Criterion { id: 7, name: "identity sweeps", limit: Some(Duration::from_secs(60)), run: identity_sweeps },
        Criterion { id: 8, name: "arccos powers", limit: None, run: arccos_powers },
        Criterion { id: 9, name: "pi power series", limit: None, run: pi_series },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {} ({detail}; {elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {}: {why} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
