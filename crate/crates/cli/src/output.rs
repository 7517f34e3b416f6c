use qdt_core::LaurentPoly;

use crate::CommandError;

/// Left-aligned columns separated by two spaces; the last column is not padded.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    for row in std::iter::once(&header).chain(rows) {
        let last = row.len() - 1;
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| if i == last { cell.clone() } else { format!("{cell:<w$}", w = widths[i]) })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, CommandError> {
    let failed = |e: csv::Error| CommandError::Failed(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(failed)?;
    for row in rows {
        w.write_record(row).map_err(failed)?;
    }
    let bytes = w.into_inner().map_err(|e| CommandError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CommandError::Failed(e.to_string()))
}

pub fn json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Sparse `exp:coeff;...` form, e.g. `4:1;6:1`.
pub fn sparse(p: &LaurentPoly) -> String {
    p.terms().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(";")
}

pub fn flag(b: bool) -> String {
    if b { "yes" } else { "NO" }.to_string()
}
