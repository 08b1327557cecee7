//! `simpcert sweep`: one CSV row per value of a single parameter.

use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use simpcert::bounds::alpha_moments;
use simpcert::certify::BoundReport;

use crate::output::{csv_writer, exact_float, finish_csv};
use crate::{
    open_sink, report_errors, CommonArgs, RunConfig, SweepArgs, EXIT_NOT_CERTIFIED, EXIT_OK,
};

/// Upper limit on the number of rows a range may expand to.
const MAX_ROWS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    S,
    Q,
    Alpha,
    M,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::S => "s",
            Axis::Q => "q",
            Axis::Alpha => "alpha",
            Axis::M => "m",
        }
    }

    fn set(self, args: &mut CommonArgs, v: f64) {
        let slot = match self {
            Axis::S => &mut args.s,
            Axis::Q => &mut args.q,
            Axis::Alpha => &mut args.alpha,
            Axis::M => &mut args.m,
        };
        *slot = Some(v);
    }
}

/// Axis values from `--values` or an inclusive `--from/--to/--step` range.
pub fn axis_values(args: &SweepArgs) -> Result<Vec<f64>, String> {
    if let Some(values) = &args.values {
        if values.is_empty() {
            return Err("--values: empty list".to_string());
        }
        return Ok(values.clone());
    }
    let (Some(from), Some(to), Some(step)) = (args.from, args.to, args.step) else {
        return Err("sweep needs --values or all of --from, --to, --step".to_string());
    };
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err("--from/--to/--step must be finite".to_string());
    }
    if step <= 0.0 {
        return Err(format!("--step = {step} must be positive"));
    }
    if to < from {
        return Err(format!("empty range: --from {from} is above --to {to}"));
    }
    // a little slack so that e.g. 0.1..1.0 step 0.1 includes 1.0
    let count = ((to - from) / step + 1e-9).floor() + 1.0;
    if count > MAX_ROWS as f64 {
        return Err(format!("range expands to more than {MAX_ROWS} rows"));
    }
    Ok((0..count as usize)
        .map(|i| {
            let v = from + i as f64 * step;
            // strip accumulated binary noise such as 0.30000000000000004
            let cleaned = (v * 1e12).round() / 1e12;
            if (cleaned - v).abs() <= 1e-12 * v.abs().max(1.0) {
                cleaned
            } else {
                v
            }
        })
        .collect())
}

fn tightest(reports: &[BoundReport]) -> Option<&BoundReport> {
    reports
        .iter()
        .filter(|r| r.hypothesis.passed && r.bound.is_finite())
        .min_by(|x, y| x.bound.total_cmp(&y.bound))
}

fn render(axis: Axis, values: &[f64], rows: &[Vec<BoundReport>]) -> String {
    let theorems: Vec<_> = rows[0].iter().map(|r| r.theorem).collect();
    let on_ab = theorems.iter().any(|t| !t.uses_scaled_interval());
    let on_mb = theorems.iter().any(|t| t.uses_scaled_interval());

    let mut header = vec![axis.name().to_string()];
    for t in &theorems {
        header.push(format!("bound_{t}"));
        header.push(format!("hypothesis_{t}"));
    }
    if on_ab {
        header.push("actual_error".into());
    }
    if on_mb {
        header.push("actual_error_mb".into());
    }
    header.push("tightest".into());
    if axis == Axis::Alpha {
        header.push("left_moment_sum".into());
        header.push("right_moment_sum".into());
    }

    let mut w = csv_writer();
    w.write_record(&header).expect("in-memory write");
    for (&v, reports) in values.iter().zip(rows) {
        let mut rec = vec![exact_float(v)];
        for r in reports {
            rec.push(if r.bound.is_infinite() {
                "inf".into()
            } else {
                exact_float(r.bound)
            });
            rec.push(
                if r.hypothesis.passed {
                    "passed"
                } else {
                    "failed"
                }
                .into(),
            );
        }
        let actual = |scaled: bool| {
            reports
                .iter()
                .find(|r| r.theorem.uses_scaled_interval() == scaled)
                .map(|r| exact_float(r.actual_error))
                .unwrap_or_default()
        };
        if on_ab {
            rec.push(actual(false));
        }
        if on_mb {
            rec.push(actual(true));
        }
        rec.push(
            tightest(reports)
                .map(|r| r.theorem.to_string())
                .unwrap_or_default(),
        );
        if axis == Axis::Alpha {
            match alpha_moments(v) {
                Ok(mo) => {
                    rec.push(exact_float(mo.left_sum()));
                    rec.push(exact_float(mo.right_sum()));
                }
                Err(_) => rec.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&rec).expect("in-memory write");
    }
    finish_csv(w)
}

pub(crate) fn run_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let values = match axis_values(args) {
        Ok(v) => v,
        Err(e) => return report_errors(stderr, &[e]),
    };
    let mut configs = Vec::with_capacity(values.len());
    let mut errors: Vec<String> = Vec::new();
    for &v in &values {
        let mut row_args = args.common.clone();
        args.axis.set(&mut row_args, v);
        match RunConfig::from_args(&row_args) {
            Ok(c) => configs.push(c),
            Err(es) => {
                for e in es {
                    let e = format!("{} = {}: {e}", args.axis.name(), v);
                    if !errors.contains(&e) {
                        errors.push(e);
                    }
                }
            }
        }
    }
    if !errors.is_empty() {
        return report_errors(stderr, &errors);
    }

    let rows: Result<Vec<Vec<BoundReport>>, String> =
        configs.par_iter().map(|c| c.evaluate(&c.params)).collect();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return report_errors(stderr, &[e]),
    };
    let text = render(args.axis, &values, &rows);
    let written =
        open_sink(&args.common.out, stdout).and_then(|mut w| w.write_all(text.as_bytes()));
    if let Err(e) = written {
        return report_errors(stderr, &[format!("cannot write report: {e}")]);
    }
    if rows.iter().flatten().all(|r| r.status.is_success()) {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn sweep_args(extra: &[&str]) -> SweepArgs {
        let mut argv = vec![
            "simpcert",
            "sweep",
            "--f",
            "x^4",
            "--a",
            "0",
            "--b",
            "1",
            "--theorem",
            "A",
        ];
        argv.extend_from_slice(extra);
        match crate::Cli::parse_from(argv).command {
            crate::Command::Sweep(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn inclusive_ranges() {
        let a = sweep_args(&["--axis", "s", "--from", "0.1", "--to", "1", "--step", "0.1"]);
        let v = axis_values(&a).unwrap();
        assert_eq!(v.len(), 10);
        assert_eq!(v[2], 0.3);
        assert_eq!(v[9], 1.0);
    }

    #[test]
    fn bad_ranges() {
        let a = sweep_args(&["--axis", "s", "--from", "1", "--to", "0.5", "--step", "0.1"]);
        assert!(axis_values(&a).unwrap_err().contains("empty range"));
        let a = sweep_args(&["--axis", "s", "--from", "0", "--to", "1", "--step", "0"]);
        assert!(axis_values(&a).is_err());
        let a = sweep_args(&["--axis", "s"]);
        assert!(axis_values(&a).is_err());
        let a = sweep_args(&["--axis", "q", "--values", "1,2,4,8"]);
        assert_eq!(axis_values(&a).unwrap(), vec![1.0, 2.0, 4.0, 8.0]);
    }
}
