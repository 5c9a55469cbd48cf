//! Input documents and JSON output formatting.
//!
//! Matrices travel as nested arrays of `[re, im]` pairs. Output floats are written
//! with 17 significant digits so every value round-trips to the same `f64`.

use std::io;

use serde::{Deserialize, Serialize};
use su3exp::gellmann::{from_coefficients, GellMannVector};
use su3exp::Matrix3;

use crate::error::CliError;

pub type MatrixPairs = [[[f64; 2]; 3]; 3];

/// `{"matrix": ...}` or `{"coefficients": [a1..a8]}`, with optional `theta` and `s`.
#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixPairs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<[f64; 8]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| CliError::input("InvalidDocument", e.to_string()))?;
        doc.check()?;
        Ok(doc)
    }

    fn check(&self) -> Result<(), CliError> {
        match (&self.matrix, &self.coefficients) {
            (Some(_), Some(_)) => {
                return Err(CliError::input(
                    "InvalidDocument",
                    "exactly one of \"matrix\" and \"coefficients\" may be given",
                ))
            }
            (None, None) => {
                return Err(CliError::input(
                    "InvalidDocument",
                    "one of \"matrix\" or \"coefficients\" is required",
                ))
            }
            _ => {}
        }
        let mut numbers: Vec<f64> = Vec::new();
        if let Some(m) = &self.matrix {
            numbers.extend(m.iter().flatten().flatten());
        }
        if let Some(c) = &self.coefficients {
            numbers.extend(c);
        }
        numbers.extend(self.theta);
        numbers.extend(self.s);
        if numbers.iter().any(|x| !x.is_finite()) {
            return Err(CliError::input("NonFinite", "document contains a non-finite number"));
        }
        Ok(())
    }

    /// The generator described by the document, before validation.
    pub fn generator(&self) -> Matrix3 {
        match (&self.matrix, &self.coefficients) {
            (Some(m), _) => Matrix3::from_pairs(*m),
            (None, Some(c)) => from_coefficients(&GellMannVector(*c)),
            (None, None) => unreachable!("checked at parse time"),
        }
    }

    pub fn require_theta(&self) -> Result<f64, CliError> {
        self.theta
            .ok_or_else(|| CliError::input("MissingField", "\"theta\" is required"))
    }

    pub fn require_s(&self) -> Result<f64, CliError> {
        self.s
            .ok_or_else(|| CliError::input("MissingField", "\"s\" is required"))
    }
}

/// `%.17g`-style rendering that is also valid JSON.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0" } else { "0.0" }.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_fraction(&fixed)
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return format!("{s}.0");
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` as a single line of JSON with 17-significant-digit floats.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for x in [
            1.0,
            -2.5,
            0.1,
            1.0 / 3.0,
            std::f64::consts::FRAC_PI_6,
            1e-20,
            -3.25e-7,
            6.02214076e23,
            123456789.123,
            f64::MIN_POSITIVE,
            f64::MAX,
        ] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let v: serde_json::Value = serde_json::from_str(&s).unwrap();
            assert_eq!(v.as_f64().unwrap(), x);
        }
        assert_eq!(format_f64(1.0), "1.0");
        assert_eq!(format_f64(0.0), "0.0");
        assert_eq!(format_f64(0.5235987755982988), "0.52359877559829882");
        assert_eq!(format_f64(1e-20), "9.9999999999999995e-21");
    }

    #[test]
    fn document_shapes() {
        let d = MatrixDocument::parse(r#"{"coefficients": [0,0,0,0,0,0,0,1], "theta": 1.0}"#).unwrap();
        assert_eq!(d.theta, Some(1.0));
        assert_eq!(d.generator(), su3exp::gellmann::lambda(8));

        let m = r#"{"matrix": [[[1,0],[0,0],[0,0]],[[0,0],[-1,0],[0,0]],[[0,0],[0,0],[0,0]]], "s": 0.5}"#;
        let d = MatrixDocument::parse(m).unwrap();
        assert_eq!(d.generator(), su3exp::gellmann::lambda(3));
        assert!(d.require_theta().is_err());
        assert_eq!(d.require_s().unwrap(), 0.5);
    }

    #[test]
    fn document_errors() {
        assert!(MatrixDocument::parse("{}").is_err());
        assert!(MatrixDocument::parse("not json").is_err());
        assert!(MatrixDocument::parse(r#"{"coefficients": [1,2,3]}"#).is_err());
        let both = r#"{"coefficients": [0,0,0,0,0,0,0,1],
                       "matrix": [[[1,0],[0,0],[0,0]],[[0,0],[-1,0],[0,0]],[[0,0],[0,0],[0,0]]]}"#;
        assert!(MatrixDocument::parse(both).is_err());
        assert!(MatrixDocument::parse(r#"{"coefficients": [0,0,0,0,0,0,0,1], "phi": 2}"#).is_err());
        let err = MatrixDocument::parse(r#"{"coefficients": [0,0,0,0,0,0,0,1e999]}"#).unwrap_err();
        assert_eq!(err.exit_code, 1);
    }

    #[test]
    fn json_line_is_single_line() {
        let d = MatrixDocument {
            coefficients: Some([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            theta: Some(0.1),
            ..Default::default()
        };
        let s = to_json_line(&d);
        assert!(!s.contains('\n'));
        assert_eq!(MatrixDocument::parse(&s).unwrap(), d);
    }
}
