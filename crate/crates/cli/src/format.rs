//! Significant-digit formatting and the CSV/JSON writers.
//!
//! Output is locale-independent: the decimal separator is always a period.
//! CSV is comma-delimited with a header row, LF line endings, and no
//! trailing delimiter.

/// Format `value` with `sig` significant digits. Values of magnitude
/// 1e-4 and above (and zero) print in plain decimal; smaller or very
/// large ones fall back to exponential notation. Both forms are valid
/// JSON numbers.
pub fn format_sig(value: f64, sig: usize) -> String {
    if value == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    if value.abs() >= 1e-4 && exponent < sig as i32 {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        format!("{:.*}", decimals, value)
    } else {
        format!("{:.*e}", sig - 1, value)
    }
}

/// Join one CSV record (no quoting is ever needed for this output set).
pub fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}

/// Assemble a CSV body from a header and records, LF-terminated.
pub fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&csv_line(header));
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(row));
        out.push('\n');
    }
    out
}

/// Re-format a CSV body field by field: integers stay integers, floats go
/// through [`format_sig`], everything else is kept verbatim. The emitted
/// tables are fixed points of this map, which is the round-trip contract.
pub fn reformat_csv(body: &str, sig: usize) -> String {
    let mut out = String::new();
    for line in body.lines() {
        let fields: Vec<String> = line
            .split(',')
            .map(|field| {
                if field.parse::<i64>().is_ok() {
                    field.to_string()
                } else if let Ok(v) = field.parse::<f64>() {
                    format_sig(v, sig)
                } else {
                    field.to_string()
                }
            })
            .collect();
        out.push_str(&csv_line(&fields));
        out.push('\n');
    }
    out
}

/// Minimal ordered JSON value; keys render in insertion order so output
/// is deterministic and diffable.
pub enum Json {
    Num(f64, usize),
    Int(i64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Num(v, sig) => out.push_str(&format_sig(*v, *sig)),
            Json::Int(v) => out.push_str(&v.to_string()),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    item.write(out, indent);
                }
                out.push(']');
            }
            Json::Obj(entries) => {
                if entries.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                let pad = "  ".repeat(indent + 1);
                for (i, (key, value)) in entries.iter().enumerate() {
                    out.push_str(&pad);
                    Json::Str(key.clone()).write(out, indent + 1);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                    if i + 1 < entries.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig(1.4878, 6), "1.48780");
        assert_eq!(format_sig(0.0349398, 6), "0.0349398");
        assert_eq!(format_sig(428.718, 6), "428.718");
        assert_eq!(format_sig(0.000100954, 6), "0.000100954");
        assert_eq!(format_sig(0.0, 6), "0.00000");
    }

    #[test]
    fn exponential_fallback() {
        assert_eq!(format_sig(1.39e-16, 6), "1.39000e-16");
        assert_eq!(format_sig(1.02476e6, 6), "1.02476e6");
    }

    #[test]
    fn formatting_is_idempotent_under_reparse() {
        for &v in &[1.4878, 0.0349398, 428.718, 1.00954e-4, 5.36798e-3, 2.93372] {
            let s = format_sig(v, 6);
            let reparsed: f64 = s.parse().unwrap();
            assert_eq!(format_sig(reparsed, 6), s);
        }
    }

    #[test]
    fn json_renders_in_insertion_order() {
        let j = Json::Obj(vec![
            ("zeta".into(), Json::Int(1)),
            ("alpha".into(), Json::Num(0.5, 6)),
        ]);
        let text = j.render();
        assert!(text.find("zeta").unwrap() < text.find("alpha").unwrap());
    }
}
