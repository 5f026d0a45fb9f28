//! Minimal deterministic JSON writer.
//!
//! Reports must serialize byte-identically across runs: object keys are
//! emitted in sorted order and floats are printed with a fixed 17
//! significant digit scientific format, so the output is a pure function of
//! the values.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn obj(fields: Vec<(&str, Json)>) -> Json {
        Json::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn complex(re: f64, im: f64) -> Json {
        Json::obj(vec![("im", Json::Float(im)), ("re", Json::Float(re))])
    }

    pub fn to_string(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Float(x) => out.push_str(&format_float(*x)),
            Json::Str(s) => write_escaped(out, s),
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Object(fields) => {
                let mut sorted: Vec<&(String, Json)> = fields.iter().collect();
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                out.push('{');
                for (i, (k, v)) in sorted.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(out, k);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

/// 17 significant digits, scientific notation; total order on the bits is
/// preserved for identical inputs.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "\"nan\"".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "\"inf\"".into() } else { "\"-inf\"".into() };
    }
    format!("{x:.16e}")
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = Json::obj(vec![
            ("zeta", Json::Int(1)),
            ("alpha", Json::Bool(true)),
            ("mid", Json::Null),
        ]);
        assert_eq!(v.to_string(), r#"{"alpha":true,"mid":null,"zeta":1}"#);
    }

    #[test]
    fn floats_have_fixed_width() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.5), "-5.0000000000000000e-1");
    }

    #[test]
    fn output_is_deterministic() {
        let v = Json::obj(vec![
            ("b", Json::Float(std::f64::consts::PI)),
            ("a", Json::Array(vec![Json::Float(1.0 / 3.0), Json::Str("x\"y".into())])),
        ]);
        assert_eq!(v.to_string(), v.to_string());
    }
}
