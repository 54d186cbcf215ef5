//! Generalized logsine by quadrature, by the arcsin form and by its series.

use std::f64::consts::PI;

use series_forge::logsine::{logsine_arcsin_form, logsine_quadrature, logsine_series, LogsineRequest};

fn main() -> series_forge::Result<()> {
    for (j, k, theta) in [(2, 0, PI / 3.0), (3, 1, PI / 3.0), (4, 1, PI / 2.0), (3, 1, PI)] {
        let req = LogsineRequest::new(j, k, theta)?;
        let q = logsine_quadrature(&req)?;
        let a = logsine_arcsin_form(&req)?;
        print!("Ls_{j}^({k})({theta:.4}): quad {:.14}, arcsin {:.14}", q.value, a.value);
        if k >= 1 {
            let s = logsine_series(&req)?;
            print!(", series {:.14}{}", s.value, if s.slow { " (slow)" } else { "" });
        }
        println!();
    }
    Ok(())
}
