//! Row rendering for text tables, CSV and JSON.

use carpet_ext::anchors;
use carpet_ext::extendability::{AlphaBound, CarpetAssessment};
use carpet_ext::interval::Interval;
use carpet_ext::scan::{Bundle, BundleDims, GridRow, Quantity, RowValue};
use carpet_ext::Error;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub fn num(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integers are valid JSON numbers"))
}

pub fn interval_json(v: &Interval) -> Value {
    match v.exact() {
        Some(x) => num(x),
        None => json!({"min": num(v.lo()), "max": num(v.hi())}),
    }
}

/// `4` or `0..4`.
pub fn interval_cell(v: &Interval) -> String {
    match v.exact() {
        Some(x) => x.to_string(),
        None => format!("{}..{}", v.lo(), v.hi()),
    }
}

pub fn bundle_anchors(bundle: Bundle) -> Vec<&'static str> {
    if bundle.is_tangent() {
        vec![anchors::LEMMA_TANGENT]
    } else {
        vec![anchors::LINE_COHOMOLOGY]
    }
}

pub fn headers(q: &Quantity) -> Vec<&'static str> {
    let mut h = vec!["e", "a", "b"];
    h.extend_from_slice(match q {
        Quantity::Cohomology(_) => &["bundle", "h0", "h1", "h2", "exact", "anchors"][..],
        Quantity::Beta | Quantity::Gamma => &["r", "g", "M", "estimator", "value", "exact", "correction", "anchors"],
        Quantity::Alpha => &["r", "g", "M", "estimator", "alpha", "h0_N_minus2", "extendable", "k_ceiling", "prime_family", "anchors"],
        Quantity::NormalBound { .. } => &["k", "bound", "exact", "anchors"],
        Quantity::Classify => &["r", "g", "class", "alpha", "dim_T", "reason", "anchors"],
    });
    h.push("error");
    h
}

fn estimate_cells(b: &AlphaBound) -> Vec<String> {
    let p = &b.params;
    vec![
        p.r.to_string(),
        p.g.to_string(),
        p.m.to_string(),
        b.estimator.to_string(),
        interval_cell(&b.value),
        b.is_exact().to_string(),
        b.special_correction.to_string(),
        b.anchors.join("; "),
    ]
}

fn assessment_cells(a: &CarpetAssessment) -> Vec<String> {
    let p = a.params();
    let v = &a.verdict;
    vec![
        p.r.to_string(),
        p.g.to_string(),
        p.m.to_string(),
        a.bound.estimator.to_string(),
        interval_cell(&a.bound.value),
        interval_cell(&v.h0_n_minus2_bound),
        v.extendable.to_string(),
        v.k_extendability_ceiling.as_ref().map(|k| k.to_string()).unwrap_or_default(),
        a.prime_family.as_ref().map(|f| format!("{} (k={})", f.form, f.k)).unwrap_or_default(),
        verdict_anchors(a).join("; "),
    ]
}

/// Anchors of the bound followed by the bracketed anchors in the reasons.
pub fn verdict_anchors(a: &CarpetAssessment) -> Vec<String> {
    let mut out: Vec<String> = a.bound.anchors.iter().map(|s| s.to_string()).collect();
    for r in &a.verdict.reasons {
        if let Some(tag) = r.rsplit_once('[').and_then(|(_, t)| t.strip_suffix(']')) {
            if !out.iter().any(|o| o == tag) {
                out.push(tag.to_string());
            }
        }
    }
    out
}

fn error_kind(e: &Error) -> &'static str {
    if e.is_indeterminate() {
        "indeterminate"
    } else {
        "invalid"
    }
}

pub fn cells(q: &Quantity, row: &GridRow) -> Vec<String> {
    let mut out = vec![row.e.to_string(), row.a.to_string(), row.b.to_string()];
    let width = headers(q).len() - 4;
    match &row.result {
        Ok(value) => {
            out.extend(match value {
                RowValue::Dims(d) => {
                    let bundle = match q {
                        Quantity::Cohomology(b) => *b,
                        _ => Bundle::Line,
                    };
                    let mut c = vec![bundle.to_string()];
                    c.extend(d.h.iter().map(interval_cell));
                    c.push(d.exact.to_string());
                    c.push(bundle_anchors(bundle).join("; "));
                    c
                }
                RowValue::Estimate(b) => estimate_cells(b),
                RowValue::Assessment(a) => assessment_cells(a),
                RowValue::NormalBound(v) => {
                    let k = match q {
                        Quantity::NormalBound { k } => *k,
                        _ => 2,
                    };
                    vec![k.to_string(), interval_cell(v), v.is_point().to_string(), anchors::MINUS_TWO_TWIST.to_string()]
                }
                RowValue::Classification(c) => vec![
                    c.r.to_string(),
                    c.g.to_string(),
                    c.status.to_string(),
                    c.alpha.as_ref().map(|a| a.to_string()).unwrap_or_default(),
                    c.tangent_dim_at_cone.as_ref().map(|d| d.to_string()).unwrap_or_default(),
                    c.reason.clone(),
                    c.anchors.join("; "),
                ],
            });
            out.push(String::new());
        }
        Err(e) => {
            out.extend(std::iter::repeat_n(String::new(), width));
            out.push(format!("{}: {e}", error_kind(e)));
        }
    }
    out
}

pub fn dims_json(e: i64, a: &BigInt, b: &BigInt, bundle: Bundle, d: &BundleDims) -> Value {
    json!({
        "surface": {"e": e},
        "divisor": {"a": num(a), "b": num(b)},
        "bundle": bundle.to_string(),
        "h": d.h.iter().map(interval_json).collect::<Vec<_>>(),
        "exact": d.exact,
        "anchors": bundle_anchors(bundle),
    })
}

fn estimate_json(b: &AlphaBound) -> Map<String, Value> {
    let p = &b.params;
    let mut m = Map::new();
    m.insert("r".into(), num(&p.r));
    m.insert("g".into(), num(&p.g));
    m.insert("M".into(), num(&p.m));
    m.insert("N".into(), num(&p.n));
    m.insert("estimator".into(), json!(b.estimator.to_string()));
    m.insert("value".into(), interval_json(&b.value));
    m.insert("exact".into(), json!(b.is_exact()));
    m.insert("special_correction".into(), json!(b.special_correction));
    m.insert("terms".into(), Value::Array(b.terms.iter().map(|t| json!({"term": t.label, "value": interval_json(&t.value)})).collect()));
    m.insert("anchors".into(), json!(b.anchors));
    m
}

pub fn row_json(q: &Quantity, row: &GridRow) -> Value {
    let mut m = Map::new();
    m.insert("surface".into(), json!({"e": row.e}));
    m.insert("divisor".into(), json!({"a": row.a, "b": row.b}));
    match &row.result {
        Ok(RowValue::Dims(d)) => {
            let bundle = match q {
                Quantity::Cohomology(b) => *b,
                _ => Bundle::Line,
            };
            return dims_json(row.e, &BigInt::from(row.a), &BigInt::from(row.b), bundle, d);
        }
        Ok(RowValue::Estimate(b)) => m.extend(estimate_json(b)),
        Ok(RowValue::Assessment(a)) => m.extend(assessment_json(a)),
        Ok(RowValue::NormalBound(v)) => {
            let k = match q {
                Quantity::NormalBound { k } => *k,
                _ => 2,
            };
            m.insert("k".into(), json!(k));
            m.insert("bound".into(), interval_json(v));
            m.insert("exact".into(), json!(v.is_point()));
            m.insert("anchors".into(), json!([anchors::MINUS_TWO_TWIST]));
        }
        Ok(RowValue::Classification(c)) => {
            m.insert("r".into(), num(&c.r));
            m.insert("g".into(), num(&c.g));
            m.insert("status".into(), json!(c.status.to_string()));
            m.insert("reason".into(), json!(c.reason));
            m.insert("alpha".into(), c.alpha.as_ref().map_or(Value::Null, |a| num(&a.value)));
            m.insert("alpha_bound_only".into(), json!(c.alpha.as_ref().is_some_and(|a| a.bound_only)));
            m.insert("tangent_dim_at_cone".into(), c.tangent_dim_at_cone.as_ref().map_or(Value::Null, num));
            m.insert("unique_fano".into(), json!(c.unique_fano));
            m.insert("anchors".into(), json!(c.anchors));
        }
        Err(e) => {
            m.insert("error".into(), json!({"kind": error_kind(e), "message": e.to_string()}));
        }
    }
    Value::Object(m)
}

pub fn assessment_json(a: &CarpetAssessment) -> Map<String, Value> {
    let mut m = estimate_json(&a.bound);
    let value = m.remove("value").unwrap_or(Value::Null);
    m.insert("alpha".into(), value);
    let v = &a.verdict;
    m.insert("h0_N_minus2".into(), interval_json(&v.h0_n_minus2_bound));
    m.insert("extendable".into(), json!(v.extendable.to_string()));
    m.insert("k_ceiling".into(), v.k_extendability_ceiling.as_ref().map_or(Value::Null, num));
    m.insert("prime_family".into(), a.prime_family.as_ref().map_or(Value::Null, |f| json!({"form": f.form, "k": num(&f.k)})));
    m.insert("reasons".into(), json!(v.reasons));
    m.insert("anchors".into(), json!(verdict_anchors(a)));
    m
}

pub fn csv_string(headers: &[&str], rows: &[Vec<String>]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}
