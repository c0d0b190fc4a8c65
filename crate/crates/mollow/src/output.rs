//! Deterministic numeric formatting and serialization helpers.
//!
//! Every floating-point value emitted by the CLI goes through
//! [`fmt_sig`] with 12 significant digits: identical inputs therefore
//! produce byte-identical artifacts, and re-parsing an emitted value and
//! formatting it again is a fixed point (12 < 15 decimal digits survive a
//! decimal→binary→decimal round trip unchanged).

use serde::Serialize;
use serde_json::ser::Formatter;

/// Significant digits used for all emitted numbers.
pub const SIG_DIGITS: usize = 12;

/// Shortest scientific representation preserving [`SIG_DIGITS`]
/// significant digits: trailing zeros of the mantissa are trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exponent) = s.split_once('e').expect("scientific format");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}e{exponent}")
}

/// serde_json formatter routing every float through [`fmt_sig`].
#[derive(Default)]
pub struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(fmt_sig(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(fmt_sig(value as f64).as_bytes())
    }
}

/// Serialize any value to JSON with 12-significant-digit floats and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> crate::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| crate::Error::Io(format!("json serialization: {e}")))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| crate::Error::Io(e.to_string()))
}
