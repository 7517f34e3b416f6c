use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use qdt_core::dtinv::{dt_formula, dt_from_class_list, dt_from_series, dtq_from_class_list, dtq_from_series, DTRecord};
use qdt_core::exactmath::gcd_u64;
use qdt_core::higgs::{enumerate_higgs, higgs_json};
use qdt_core::hilbert::{series_f, series_h, FMode};
use qdt_core::necklaces::{enumerate_classes, has_plus_classes};
use qdt_core::plethystic::pleth_log;
use qdt_core::verify::{self, Scale};
use qdt_core::{LaurentPoly, TruncSeries};

use crate::output::{csv, flag, json, sparse, table};
use crate::{CommandError, CommandResult, Format, SeriesName};

fn emit(text: String) {
    print!("{text}");
}

const ROUTES: [&str; 3] = ["formula", "series", "classes"];

struct MTables {
    series: Vec<BigInt>,
    series_q: Option<Vec<LaurentPoly>>,
}

fn dt_cell(m: u64, n: u64, tables: &MTables, full: bool) -> Result<DTRecord, CommandError> {
    let dt = dt_formula(m, n)?;
    let idx = n as usize - 1;
    let dt_poly = tables.series_q.as_ref().map(|v| v[idx].clone());
    let one = dt_poly.as_ref().map(LaurentPoly::eval_at_one);
    let poly_ok = one.map_or(true, |v| v.is_integer() && v.to_integer() == dt);
    let mut routes = BTreeMap::new();
    routes.insert("formula".to_string(), true);
    if full {
        routes.insert("series".to_string(), tables.series[idx] == dt && poly_ok);
        let classes = enumerate_classes(m, n as usize, true);
        let count_ok = dt_from_class_list(&classes, n).is_ok_and(|c| c == dt);
        let poly_classes_ok = match &dt_poly {
            Some(p) => dtq_from_class_list(&classes, n).is_ok_and(|c| &c == p),
            None => true,
        };
        routes.insert("classes".to_string(), count_ok && poly_classes_ok);
    } else if dt_poly.is_some() {
        routes.insert("series".to_string(), poly_ok);
    }
    Ok(DTRecord { m, n, dt, dt_poly, routes })
}

pub fn dt(
    ms: RangeInclusive<u64>,
    ns: RangeInclusive<u64>,
    quantized: bool,
    full: bool,
    format: Format,
) -> CommandResult {
    let order = *ns.end() as usize + 1;
    let tables: Vec<(u64, MTables)> = ms
        .clone()
        .into_par_iter()
        .map(|m| {
            let series = if full { dt_from_series(m, order)? } else { Vec::new() };
            let series_q = if quantized { Some(dtq_from_series(m, order)?) } else { None };
            Ok((m, MTables { series, series_q }))
        })
        .collect::<Result<_, qdt_core::Error>>()?;
    let cells: Vec<(u64, u64, &MTables)> = tables
        .iter()
        .flat_map(|(m, t)| ns.clone().map(move |n| (*m, n, t)))
        .collect();
    let records: Vec<DTRecord> = cells
        .into_par_iter()
        .map(|(m, n, t)| dt_cell(m, n, t, full))
        .collect::<Result<_, _>>()?;

    let route_names: Vec<&str> =
        ROUTES.iter().copied().filter(|r| records[0].routes.contains_key(*r)).collect();
    let mut header = vec!["m", "n", "dt"];
    if quantized {
        header.push("dt_poly");
    }
    header.extend(&route_names);
    let rows = |poly: fn(&LaurentPoly) -> String, yes_no: fn(bool) -> String| -> Vec<Vec<String>> {
        records
            .iter()
            .map(|r| {
                let mut row = vec![r.m.to_string(), r.n.to_string(), r.dt.to_string()];
                if let Some(p) = &r.dt_poly {
                    row.push(poly(p));
                }
                row.extend(route_names.iter().map(|k| yes_no(r.routes[*k])));
                row
            })
            .collect()
    };
    match format {
        Format::Text => emit(table(&header, &rows(LaurentPoly::to_compact_string, flag))),
        Format::Csv => emit(csv(&header, &rows(sparse, |b| b.to_string()))?),
        Format::Json => emit(json(&records.iter().map(DTRecord::to_json).collect())),
    }

    let mut ok = true;
    for r in records.iter().filter(|r| !r.all_agree() || !r.is_consistent()) {
        ok = false;
        let failed: Vec<&str> = r.routes.iter().filter(|(_, &v)| !v).map(|(k, _)| k.as_str()).collect();
        eprintln!("disagreement at m = {}, n = {}: {}", r.m, r.n, failed.join(", "));
    }
    Ok(ok)
}

pub fn series(name: SeriesName, m: u64, order: usize, numeric: bool, format: Format) -> CommandResult {
    let (label, s): (&str, TruncSeries) = match name {
        SeriesName::F if numeric => ("F(t)", series_f(m, order, FMode::Numeric)),
        SeriesName::F => ("F(q,t)", series_f(m, order, FMode::Q)),
        SeriesName::H => ("H(q,t)", series_h(m, order)),
        SeriesName::LogH => ("Log H(q,t)", pleth_log(&series_h(m, order))?),
    };
    match format {
        Format::Text => emit(format!("{label} = {}\n", s.to_text())),
        Format::Csv => {
            let rows: Vec<Vec<String>> = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(d, c)| vec![d.to_string(), c.to_compact_string()])
                .collect();
            emit(csv(&["degree", "coefficient"], &rows)?)
        }
        Format::Json => emit(json(&json!({
            "series": label,
            "m": m,
            "order": order,
            "coefficients": s.to_json(),
        }))),
    }
    Ok(true)
}

pub fn necklaces(m: u64, n: u64, plus: bool, format: Format) -> CommandResult {
    let classes = enumerate_classes(m, n as usize, plus);
    let count = classes.len() as u64;
    let complete = plus || !has_plus_classes(m, n as usize);
    let dt = complete.then(|| count / n);
    let ok = match dt {
        Some(v) => count % n == 0 && dt_formula(m, n)? == v.into(),
        None => true,
    };
    match format {
        Format::Text => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| vec![c.rep().to_string(), c.period().to_string(), c.weight().to_string()])
                .collect();
            let mut out = table(&["rep", "period", "weight"], &rows);
            out.push_str(&format!("classes: {count}\n"));
            if let Some(v) = dt {
                out.push_str(&format!("dt: {v}\n"));
            }
            emit(out);
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| vec![c.rep().to_string(), c.period().to_string(), c.weight().to_string()])
                .collect();
            emit(csv(&["rep", "period", "weight"], &rows)?);
        }
        Format::Json => {
            let mut v = json!({
                "m": m,
                "n": n,
                "plus": plus,
                "count": count.to_string(),
                "classes": classes.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            });
            if let Some(d) = dt {
                v["dt"] = d.to_string().into();
            }
            emit(json(&v));
        }
    }
    if !ok {
        eprintln!("class count {count} does not give DT_{n} for m = {m}");
    }
    Ok(ok)
}

pub fn higgs(m: u64, n: u64, d: i64, format: Format) -> CommandResult {
    let seqs = enumerate_higgs(n as usize, d, m);
    let count = BigInt::from(seqs.len());
    let dt = if gcd_u64(n, d.unsigned_abs()) == 1 { Some(dt_formula(m, n)?) } else { None };
    let ok = dt.as_ref().map_or(true, |v| *v == count);
    match format {
        Format::Text => {
            let mut out: String = seqs.iter().map(|s| format!("{s}\n")).collect();
            out.push_str(&format!("sequences: {count}\n"));
            if let Some(v) = &dt {
                out.push_str(&format!("dt: {v}\n"));
            }
            emit(out);
        }
        Format::Csv => {
            let header: Vec<String> = (1..=n).map(|i| format!("l{i}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> =
                seqs.iter().map(|s| s.entries().iter().map(i64::to_string).collect()).collect();
            emit(csv(&header, &rows)?);
        }
        Format::Json => {
            let mut v = higgs_json(n as usize, d, m, &seqs);
            v["count"] = count.to_string().into();
            if let Some(x) = &dt {
                v["dt"] = x.to_string().into();
            }
            emit(json(&v));
        }
    }
    if !ok {
        eprintln!("|H_{{{n},{d}}}| = {count} but DT_{n} = {}", dt.unwrap_or_default());
    }
    Ok(ok)
}

pub fn verify(
    check: Option<&str>,
    ms: Option<RangeInclusive<u64>>,
    ns: Option<RangeInclusive<u64>>,
    full: bool,
    format: Format,
) -> CommandResult {
    let checks = match check {
        Some(name) => vec![verify::find(name).ok_or_else(|| {
            let names: Vec<&str> = verify::registry().iter().map(|c| c.name).collect();
            CommandError::Usage(format!("unknown check {name:?}; known checks: {}", names.join(", ")))
        })?],
        None => verify::registry(),
    };
    let base = if full { Scale::full() } else { Scale::fast() };
    let scale = if ms.is_some() || ns.is_some() {
        Scale::new(ms.unwrap_or(base.ms), ns.unwrap_or(base.ns))
    } else {
        base
    };
    let reports: Vec<_> = checks.par_iter().map(|c| c.run(&scale)).collect();
    for r in &reports {
        eprintln!("{:<18} {:>8.3}s", r.name, r.elapsed.as_secs_f64());
    }
    match format {
        Format::Text => {
            let mut out: String = reports
                .iter()
                .map(|r| format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
                .collect();
            let passed = reports.iter().filter(|r| r.passed).count();
            out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
            emit(out);
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| vec![r.name.to_string(), r.passed.to_string(), r.detail.clone()])
                .collect();
            emit(csv(&["check", "passed", "detail"], &rows)?);
        }
        Format::Json => {
            let items: Vec<_> = reports
                .iter()
                .map(|r| json!({"name": r.name, "description": r.description, "passed": r.passed, "detail": r.detail}))
                .collect();
            emit(json(&items.into()));
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}
