use std::fs;

use koopman_forge::decimal::format_decimal;
use koopman_forge::koopman::{koopman_matrix, op_metric, range_distance_sq, MetricBasis};
use koopman_forge::realize::{approximation_sequence, realize_iet_with_limits};
use koopman_forge::{AnyMap, Limits, PiecewiseAffineMap, Rat, StepFunction};
use serde::Serialize;
use serde_json::json;

use crate::inputs::{indicator_label, load_function, load_map, load_matrix, FunctionArg};
use crate::{CliError, Format, Output};

/// Where results go:
/// - with `--out`, JSON goes to the file and the report to stdout;
/// - otherwise `json` prints JSON on stdout and the report on stderr;
/// - `table` prints the report on stdout.
fn emit(output: &Output, default: Format, json: &impl Serialize, report: &str) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(json).expect("serializable") + "\n";
    let format = output.format.unwrap_or(default);
    if let Some(path) = &output.out {
        fs::write(path, &text).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
        print!("{report}");
    } else if format == Format::Json {
        print!("{text}");
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    Ok(())
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

pub fn realize(matrix: &str, limits: &Limits, output: &Output) -> Result<(), CliError> {
    let m = load_matrix(matrix)?;
    let level = limits.level(m.level())?;
    let t = realize_iet_with_limits(&m, limits)?;
    let verdict = if koopman_matrix(&t, level) == m { "exact" } else { "MISMATCH" };

    let mut report = String::new();
    if output.format == Some(Format::Table) {
        let rows: Vec<Vec<String>> = t
            .pieces()
            .iter()
            .map(|p| vec![p.source.lo().to_string(), p.source.hi().to_string(), p.offset.to_string()])
            .collect();
        report.push_str(&aligned(&["lo", "hi", "offset"], &rows));
    }
    report.push_str(&format!("pieces: {}\nround-trip: {verdict}\n", t.piece_count()));
    emit(output, Format::Json, &t, &report)?;
    if verdict != "exact" {
        return Err(CliError { code: 1, message: "realized map does not reproduce the matrix".into() });
    }
    Ok(())
}

pub fn koopman(map: &str, level: u32, limits: &Limits, output: &Output) -> Result<(), CliError> {
    let map = load_map(map)?;
    let level = limits.level(level)?;
    let m = koopman_matrix(&map, level);
    let rows_ok = m.row_sums().iter().all(|s| s == &Rat::one());
    let cols_ok = m.column_sums().iter().all(|s| s == &Rat::one());
    let mut report = String::new();
    if output.format == Some(Format::Table) {
        report.push_str(&m.to_table());
    }
    let verdict = |ok: bool| if ok { "all 1" } else { "NOT all 1" };
    report.push_str(&format!(
        "level: {level}\nrow sums: {}\ncolumn sums: {}\n",
        verdict(rows_ok),
        verdict(cols_ok)
    ));
    emit(output, Format::Json, &m, &report)
}

pub fn approx(
    builtin: &str,
    n_max: u32,
    basis_level: u32,
    plot: Option<&str>,
    limits: &Limits,
    output: &Output,
) -> Result<(), CliError> {
    let target = match builtin {
        "doubling" => PiecewiseAffineMap::doubling(),
        "tent" => PiecewiseAffineMap::tent(),
        other => return Err(CliError::invalid(format!("unknown builtin {other:?}; expected doubling or tent"))),
    };
    let n_max = limits.level(n_max)?;
    let basis = MetricBasis::dyadic(limits.level(basis_level)?.get());
    let rows = approximation_sequence(&target, n_max, &basis)?;

    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let defects: Vec<String> = r.weak_defects.iter().map(Rat::to_string).collect();
            vec![
                r.n.to_string(),
                r.map.piece_count().to_string(),
                defects.join(" "),
                format_decimal(r.metric.total),
            ]
        })
        .collect();
    let mut report = format!(
        "target: {builtin}\nbasis: dyadic indicators of levels 0..{basis_level} ({} functions)\n",
        basis.len()
    );
    report.push_str(&aligned(&["n", "pieces", "weak_defect(m=1..n)", "d(T_n, target)"], &table));
    report.push_str(&format!(
        "tail bound: {} ({})\n",
        basis.tail_bound(),
        format_decimal(basis.tail_bound().to_f64())
    ));

    if let Some(path) = plot {
        let points: Vec<(u32, f64)> = rows.iter().map(|r| (r.n, r.metric.total)).collect();
        let svg = crate::plot::metric_svg(&format!("d(T_n, {builtin})"), &points);
        fs::write(path, svg).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
    }

    let json = json!({
        "target": builtin,
        "basis_level": basis_level,
        "basis_size": basis.len(),
        "tail_bound": basis.tail_bound(),
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "pieces": r.map.piece_count(),
            "weak_defects": r.weak_defects,
            "metric": format_decimal(r.metric.total),
        })).collect::<Vec<_>>(),
    });
    emit(output, Format::Table, &json, &report)
}

pub fn rangedist(map: &str, function: &str, output: &Output) -> Result<(), CliError> {
    let map: AnyMap = load_map(map)?;
    let entry = |label: &str, f: &StepFunction| {
        let d2 = range_distance_sq(&map, f);
        let d = format_decimal(d2.to_f64().sqrt());
        (label.to_string(), d2, d)
    };
    match load_function(function)? {
        FunctionArg::Single(label, f) => {
            let (label, d2, d) = entry(&label, &f);
            let report = format!("function: {label}\ndist^2: {d2}\ndist: {d}\n");
            let json = json!({ "function": label, "dist_sq": d2, "dist": d });
            emit(output, Format::Table, &json, &report)
        }
        FunctionArg::Family(family) => {
            let entries: Vec<_> = family.iter().map(|(l, f)| entry(l, f)).collect();
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|(l, d2, d)| vec![l.clone(), d2.to_string(), d.clone()])
                .collect();
            let report = aligned(&["function", "dist^2", "dist"], &rows);
            let json: Vec<_> = entries
                .iter()
                .map(|(l, d2, d)| json!({ "function": l, "dist_sq": d2, "dist": d }))
                .collect();
            emit(output, Format::Table, &json, &report)
        }
    }
}

pub fn metric(a: &str, b: &str, basis_level: u32, limits: &Limits, output: &Output) -> Result<(), CliError> {
    let (ma, mb) = (load_map(a)?, load_map(b)?);
    let level = limits.level(basis_level)?.get();
    let basis = MetricBasis::dyadic(level);
    let report = op_metric(&ma, &mb, &basis);
    let labels: Vec<String> = (0..=level)
        .flat_map(|n| (1..=1u64 << n).map(move |j| indicator_label(n, j)))
        .collect();

    let rows: Vec<Vec<String>> = report
        .terms
        .iter()
        .zip(&labels)
        .map(|(t, l)| {
            vec![
                t.index.to_string(),
                l.clone(),
                t.dist_sq.to_string(),
                t.value_sq().to_string(),
                format_decimal(t.value),
            ]
        })
        .collect();
    let mut text = aligned(&["j", "f_j", "|Tf_j - Sf_j|^2", "term^2", "term"], &rows);
    text.push_str(&format!(
        "metric: {}\ntail bound: {} ({})\n",
        format_decimal(report.total),
        report.tail_bound,
        format_decimal(report.tail_bound.to_f64())
    ));
    let json = json!({
        "basis_level": level,
        "terms": report.terms.iter().zip(&labels).map(|(t, l)| json!({
            "j": t.index,
            "function": l,
            "dist_sq": t.dist_sq,
            "term_sq": t.value_sq(),
            "term": format_decimal(t.value),
        })).collect::<Vec<_>>(),
        "metric": format_decimal(report.total),
        "tail_bound": report.tail_bound,
    });
    emit(output, Format::Table, &json, &text)
}
