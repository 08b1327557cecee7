//! Report rendering: aligned table, JSON and CSV.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use simpcert::certify::{BoundReport, CertifyParams};
use simpcert::convexity::Counterexample;

use crate::RunConfig;

/// 17 significant digits; parses back to the same bits.
pub fn exact_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Six significant digits for humans.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.5e}")
    }
}

/// A float that serializes as a bare JSON number with 17 significant digits,
/// or `null` when not finite.
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(exact_float(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// A bound: a number, or the string `"inf"`.
struct BoundValue(f64);

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            Num(self.0).serialize(s)
        }
    }
}

#[derive(Serialize)]
struct JsonInterval {
    a: Num,
    b: Num,
}

#[derive(Serialize)]
struct JsonParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_star: Option<Num>,
    grid_n: usize,
    tol: Num,
}

#[derive(Serialize)]
struct JsonCounterexample {
    x: Num,
    y: Num,
    t: Num,
    lhs: Num,
    rhs: Num,
    slack: Num,
}

#[derive(Serialize)]
struct JsonHypothesis {
    kind: Option<String>,
    passed: bool,
    grid_density: usize,
    slack_min: Option<Num>,
    counterexample: Option<JsonCounterexample>,
}

#[derive(Serialize)]
struct JsonReport {
    theorem: &'static str,
    function: String,
    interval: JsonInterval,
    governed_interval: JsonInterval,
    params: JsonParams,
    bound: BoundValue,
    actual_error: Num,
    simpson_value: Num,
    reference_value: Num,
    reference_abs_error: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_f3_a: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_f3_b: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sup_f4: Option<Num>,
    hypothesis: JsonHypothesis,
    dominates: Option<bool>,
    ratio: Option<Num>,
    status: &'static str,
}

fn json_params(r: &BoundReport) -> JsonParams {
    let used = r.theorem.required();
    let pick = |p, v: Option<f64>| used.contains(&p).then_some(v).flatten().map(Num);
    use simpcert::certify::Param;
    let q = pick(Param::Q, r.params.q);
    let p = r
        .params
        .q
        .filter(|q| *q > 1.0 && used.contains(&Param::Q))
        .map(|q| Num(q / (q - 1.0)));
    let CertifyParams { grid_n, tol, .. } = r.params;
    JsonParams {
        h: used
            .contains(&Param::H)
            .then(|| r.params.h.as_ref().map(ToString::to_string))
            .flatten(),
        s: pick(Param::S, r.params.s),
        q,
        p,
        m: pick(Param::M, r.params.m),
        alpha: pick(Param::Alpha, r.params.alpha),
        b_star: r
            .params
            .b_star
            .filter(|_| r.theorem.uses_scaled_interval())
            .map(Num),
        grid_n,
        tol: Num(tol),
    }
}

fn counterexample(c: &Counterexample) -> JsonCounterexample {
    JsonCounterexample {
        x: Num(c.x),
        y: Num(c.y),
        t: Num(c.t),
        lhs: Num(c.lhs),
        rhs: Num(c.rhs),
        slack: Num(c.slack()),
    }
}

fn json_report(config: &RunConfig, r: &BoundReport) -> JsonReport {
    let classical = r.sup_f4.is_some();
    JsonReport {
        theorem: r.theorem.as_str(),
        function: config.f.to_source(),
        interval: JsonInterval {
            a: Num(r.interval.a()),
            b: Num(r.interval.b()),
        },
        governed_interval: JsonInterval {
            a: Num(r.governed.a()),
            b: Num(r.governed.b()),
        },
        params: json_params(r),
        bound: BoundValue(r.bound),
        actual_error: Num(r.actual_error),
        simpson_value: Num(r.simpson_value),
        reference_value: Num(r.reference_value),
        reference_abs_error: Num(r.reference_abs_error),
        abs_f3_a: (!classical).then_some(Num(r.fa3)),
        abs_f3_b: (!classical).then_some(Num(r.fb3)),
        sup_f4: r.sup_f4.map(Num),
        hypothesis: JsonHypothesis {
            kind: r.hypothesis_kind.as_ref().map(|k| k.name()),
            passed: r.hypothesis.passed,
            grid_density: r.hypothesis.grid_density,
            slack_min: r
                .hypothesis
                .slack_min
                .is_finite()
                .then_some(Num(r.hypothesis.slack_min)),
            counterexample: r.hypothesis.counterexample.as_ref().map(counterexample),
        },
        dominates: r.dominates,
        ratio: r.ratio.map(Num),
        status: r.status.as_str(),
    }
}

pub fn json(config: &RunConfig, reports: &[BoundReport]) -> String {
    let rows: Vec<JsonReport> = reports.iter().map(|r| json_report(config, r)).collect();
    let mut text = serde_json::to_string_pretty(&rows).expect("report serializes");
    text.push('\n');
    text
}

fn csv_float(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        exact_float(v)
    }
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii output")
}

pub fn csv(reports: &[BoundReport]) -> String {
    let mut w = csv_writer();
    w.write_record([
        "theorem",
        "bound",
        "actual_error",
        "ratio",
        "dominates",
        "hypothesis_passed",
        "status",
    ])
    .expect("in-memory write");
    for r in reports {
        w.write_record([
            r.theorem.as_str().to_string(),
            csv_float(r.bound),
            csv_float(r.actual_error),
            r.ratio.map(exact_float).unwrap_or_default(),
            r.dominates.map(|d| d.to_string()).unwrap_or_default(),
            r.hypothesis.passed.to_string(),
            r.status.as_str().to_string(),
        ])
        .expect("in-memory write");
    }
    finish_csv(w)
}

pub fn table(config: &RunConfig, reports: &[BoundReport]) -> String {
    let header = [
        "theorem",
        "hypothesis",
        "bound",
        "actual error",
        "ratio",
        "status",
    ];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let hyp = match (&r.hypothesis_kind, r.hypothesis.passed) {
                (None, _) => "none".to_string(),
                (Some(_), true) => "passed".to_string(),
                (Some(_), false) => "FAILED".to_string(),
            };
            [
                r.theorem.as_str().to_string(),
                hyp,
                sig6(r.bound),
                sig6(r.actual_error),
                r.ratio.map(sig6).unwrap_or_else(|| "-".into()),
                r.status.as_str().to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(&format!("{cell:<w$}"));
        }
        s.trim_end().to_string() + "\n"
    };

    let mut out = format!(
        "f(x) = {}  on [{}, {}]\n\n",
        config.f.to_source(),
        config.iv.a(),
        config.iv.b()
    );
    out += &line(&header.map(String::from));
    out += &line(&widths.map(|w| "-".repeat(w)));
    for row in &rows {
        out += &line(row);
    }
    for r in reports {
        if let Some(c) = &r.hypothesis.counterexample {
            out += &format!(
                "\n{}: {} violated at x = {}, y = {}, t = {} (lhs {} > rhs {})\n",
                r.theorem,
                r.hypothesis_kind
                    .as_ref()
                    .map(|k| k.name())
                    .unwrap_or_default(),
                sig6(c.x),
                sig6(c.y),
                sig6(c.t),
                sig6(c.lhs),
                sig6(c.rhs)
            );
        }
    }
    out
}
