//! A reduced run of the identity suite.

use series_forge::identities::{run_all, SweepContext, SweepPlan};

fn main() -> series_forge::Result<()> {
    let mut plan = SweepPlan::all();
    plan.bounds.q_max = 12;
    plan.bounds.bell_closed_max = 10;
    for r in run_all(&plan, &SweepContext::default())? {
        let status = if r.passed() { "pass" } else { "FAIL" };
        println!("{status:4}  {:<24} {:>5} cases  {}", r.identity_id, r.cases_checked, r.swept_range);
    }
    Ok(())
}
