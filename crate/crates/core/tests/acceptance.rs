//! One PASS/FAIL line per acceptance criterion. Criteria run concurrently
//! and are printed in order; the process fails if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use alpert::filterbank::{d1_matrix, method_agreement, recurrence_in_n_agreement, validate_filterbank, Method};
use alpert::fourier::{h_hat, moment_coefficients, verify_fourier, verify_fourier_ode};
use alpert::verify::{hypergeom_suite, transform_suite};
use alpert::wavelets::{diffop_residual, jacobi_constant, verify_conditions};
use alpert::{Report, SurdSum};
use num_complex::Complex64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_reports(reports: impl IntoIterator<Item = Report>) -> Outcome {
    let mut checks = 0;
    let mut failed = Vec::new();
    for r in reports {
        checks += r.checks.len();
        failed.extend(r.failures().map(|c| format!("{} {}", c.name, c.detail)));
    }
    Outcome {
        passed: failed.is_empty() && checks > 0,
        detail: if failed.is_empty() {
            format!("{checks} checks")
        } else {
            format!("{} of {checks} checks failed: {}", failed.len(), failed.join("; "))
        },
    }
}

fn wavelet_conditions() -> Outcome {
    let start = Instant::now();
    let mut o = from_reports((0..=12).map(verify_conditions));
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        o.passed = false;
    }
    o.detail = format!("n <= 12, {}, {elapsed:.2?}", o.detail);
    o
}

fn d1_diagonal() -> Outcome {
    let mut bad = Vec::new();
    for n in 0..=12 {
        match d1_matrix(n, Method::Closed) {
            Ok(f) => {
                let d = &f.d_plus1;
                let corner = d.get(n, n) == &SurdSum::sqrt(2);
                let positive = (0..=n).all(|k| d.get(k, k).signum() == 1);
                if !(corner && positive && d.is_upper_triangular()) {
                    bad.push(n.to_string());
                }
            }
            Err(e) => bad.push(format!("{n}: {e}")),
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "n <= 12".into() } else { format!("failing n: {}", bad.join(", ")) },
    }
}

fn four_way_agreement() -> Outcome {
    let reports = (0..=10).flat_map(|n| [method_agreement(n), recurrence_in_n_agreement(n)]);
    let mut o = from_reports(reports);
    o.detail = format!("n <= 10, {}", o.detail);
    o
}

fn filterbank_identities() -> Outcome {
    let mut o = from_reports((0..=12).map(validate_filterbank));
    o.detail = format!("n <= 12, {}", o.detail);
    o
}

fn ode_residuals() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 1..=10 {
        for i in (1..=n).step_by(2) {
            count += 1;
            match diffop_residual(n, i) {
                Ok(r) if r.residual.is_zero() && r.jacobi_ratio == Some(jacobi_constant(n, i)) => {}
                Ok(_) => bad.push(format!("n={n} i={i}")),
                Err(e) => bad.push(format!("n={n} i={i}: {e}")),
            }
        }
    }
    let fourier = from_reports((0..=6).map(|n| verify_fourier_ode(n, 36)));
    Outcome {
        passed: bad.is_empty() && fourier.passed,
        detail: format!(
            "{count} polynomial residuals, {} failing; Fourier series through order 36: {}",
            bad.len(),
            fourier.detail
        ),
    }
}

fn fourier_agreement() -> Outcome {
    let closed = from_reports((0..=8).map(|n| verify_fourier(n, &[0.5, 1.0, PI, 10.0], 1e-10)));
    let mut nonzero_at_origin = Vec::new();
    for n in 0..=8 {
        for m in 0..=n {
            let exact = moment_coefficients(n, m, 1)[0].is_zero();
            let float = h_hat(n, m, 0.0, 1e-15).map(|v| v == Complex64::new(0.0, 0.0)).unwrap_or(false);
            if !(exact && float) {
                nonzero_at_origin.push(format!("({n},{m})"));
            }
        }
    }
    let spot = h_hat(0, 0, PI, 1e-17).map(|v| (v - Complex64::new(0.0, -4.0 / PI)).norm());
    let spot_ok = matches!(spot, Ok(e) if e <= 1e-14);
    let spot = match spot {
        Ok(e) => format!("{e:.1e}"),
        Err(e) => e.to_string(),
    };
    Outcome {
        passed: closed.passed && nonzero_at_origin.is_empty() && spot_ok,
        detail: format!(
            "n <= 8: {}; h_hat(0) = 0 failures: {}; |h_hat(0,0,pi) + 4i/pi| = {spot}",
            closed.detail,
            nonzero_at_origin.len()
        ),
    }
}

fn transform() -> Outcome {
    from_reports([transform_suite(6)])
}

fn hypergeometric() -> Outcome {
    from_reports([hypergeom_suite(12)])
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("wavelet conditions (i)-(v) exact", wavelet_conditions),
        ("D_1 corner sqrt(2), upper triangular, positive diagonal", d1_diagonal),
        ("four-way D_1 agreement and recurrence in n", four_way_agreement),
        ("filter-bank orthogonality identities", filterbank_identities),
        ("second-order equation and Fourier ODE residuals", ode_residuals),
        ("Fourier closed form against oracle", fourier_agreement),
        ("transform reconstruction, Parseval, polynomial details, Haar", transform),
        ("Lagrange identity, vanishing sums, Whipple", hypergeometric),
    ];
    let start = Instant::now();
    let outcomes: Vec<(Outcome, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                scope.spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut all = true;
    for (k, ((name, _), (o, t))) in criteria.iter().zip(&outcomes).enumerate() {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} [{}] {name}: {} ({t:.2?})", k + 1, o.detail);
        all &= o.passed;
    }
    println!("acceptance finished in {:.2?}", start.elapsed());
    if !all {
        std::process::exit(1);
    }
}
