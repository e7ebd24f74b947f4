//! Report renderers: JSON (machine), CSV (tabular), and aligned text
//! (human). Output is deterministic byte-for-byte for fixed inputs.
//!
//! Text and CSV print every float with 17 significant digits, enough to
//! reconstruct the exact binary value. JSON floats go through the
//! serializer's shortest-round-trip encoding, which preserves the value
//! with fewer digits.

use distcalc_core::report::{ErrorRecord, Fields, Report, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// 17 significant digits: scientific form, one digit before the point.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        // avoid the `-0` spelling wobbling table alignment
        return "0.0000000000000000e0".into();
    }
    format!("{x:.16e}")
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Real(x) => fmt17(*x),
        Value::Complex(z) => {
            if z.im < 0.0 {
                format!("{} - {}i", fmt17(z.re), fmt17(-z.im))
            } else {
                format!("{} + {}i", fmt17(z.re), fmt17(z.im))
            }
        }
        Value::Text(t) => t.clone(),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("report cells are serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Text => render_text(report),
    }
}

pub fn render_error(record: &ErrorRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(record).expect("error records are serializable");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "op,kind,message\n{},{},{}\n",
            csv_escape(&record.op),
            csv_escape(&record.error.kind),
            csv_escape(&record.error.message)
        ),
        Format::Text => format!("{record}\n"),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV carries one table. With per-item rows that is the table itself
/// (header = column names); without rows it degrades to `name,value`
/// lines over the summary fields.
fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    if !report.per_item.rows.is_empty() {
        out.push_str(&report.per_item.columns.join(","));
        out.push('\n');
        for row in &report.per_item.rows {
            let cells: Vec<String> = row.iter().map(|v| csv_escape(&cell_text(v))).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    } else {
        out.push_str("name,value\n");
        for (k, v) in &report.summary.0 {
            out.push_str(&format!("{},{}\n", csv_escape(k), csv_escape(&cell_text(v))));
        }
    }
    out
}

fn push_fields(out: &mut String, heading: &str, fields: &Fields) {
    if fields.0.is_empty() {
        return;
    }
    out.push_str(heading);
    out.push('\n');
    for (k, v) in &fields.0 {
        out.push_str(&format!("  {k} = {}\n", cell_text(v)));
    }
}

fn render_text(report: &Report) -> String {
    let mut out = format!("op: {}\n", report.op);
    push_fields(&mut out, "inputs:", &report.inputs);
    let table = &report.per_item;
    if !table.rows.is_empty() {
        let mut widths: Vec<usize> = table.columns.iter().map(|c| c.len()).collect();
        let rendered: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|row| row.iter().map(cell_text).collect())
            .collect();
        for row in &rendered {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        out.push_str("per_item:\n");
        let header: Vec<String> = table
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&format!("  {}\n", header.join("  ")));
        for row in &rendered {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            out.push_str(&format!("  {}\n", line.join("  ")));
        }
    }
    push_fields(&mut out, "summary:", &report.summary);
    push_fields(&mut out, "tolerances:", &report.tolerances);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use distcalc_core::report::Report;

    fn sample() -> Report {
        Report::new("demo")
            .input("left", "delta(0)")
            .tolerance("pairing", 1e-8)
            .columns(&["k", "estimate"])
            .row(vec![Value::Int(4), Value::Real(0.5)])
            .row(vec![Value::Int(16), Value::Real(0.25)])
            .summarize("verdict", "ok")
    }

    #[test]
    fn seventeen_digit_floats_in_text_and_csv() {
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt17(1.0), "1.0000000000000000e0");
        assert_eq!(fmt17(0.0), "0.0000000000000000e0");
        let csv = render(&sample(), Format::Csv);
        assert_eq!(
            csv,
            "k,estimate\n4,5.0000000000000000e-1\n16,2.5000000000000000e-1\n"
        );
    }

    #[test]
    fn csv_without_rows_lists_summary_pairs() {
        let r = Report::new("eval").summarize("value", 1.0);
        assert_eq!(render(&r, Format::Csv), "name,value\nvalue,1.0000000000000000e0\n");
    }

    #[test]
    fn text_layout_is_aligned_and_sectioned() {
        let text = render(&sample(), Format::Text);
        assert!(text.starts_with("op: demo\n"));
        assert!(text.contains("inputs:\n  left = delta(0)\n"));
        assert!(text.contains("per_item:\n"));
        assert!(text.contains("summary:\n  verdict = ok\n"));
        assert!(text.contains("tolerances:\n  pairing = 1.0000000000000000e-8\n"));
    }

    #[test]
    fn csv_escapes_commas_and_quotes() {
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_escape("plain"), "plain");
    }
}
