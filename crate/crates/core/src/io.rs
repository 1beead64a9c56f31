//! Barcode and word file formats, and number formatting for reports.

use std::path::Path;
use std::str::FromStr;

use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guesses the format from the file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

/// One `birth,death` pair per line; lines starting with `#` are comments.
pub fn parse_barcode_csv(text: &str) -> Result<Barcode> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut bars = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "line {line}: expected `birth,death`, found {} fields",
                record.len()
            )));
        }
        let field = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("line {line}: `{}` is not a number", &record[i])))
        };
        let (birth, death) = (field(0)?, field(1)?);
        bars.push(Bar::new(birth, death).map_err(|e| Error::Parse(format!("line {line}: {e}")))?);
    }
    Barcode::new(bars).map_err(|e| Error::Parse(e.to_string()))
}

/// A JSON array of `[birth, death]` pairs.
pub fn parse_barcode_json(text: &str) -> Result<Barcode> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_barcode(text: &str, format: Format) -> Result<Barcode> {
    match format {
        Format::Csv => parse_barcode_csv(text),
        Format::Json => parse_barcode_json(text),
    }
}

/// Reads a barcode, using `format` if given and the extension otherwise.
pub fn read_barcode(path: &Path, format: Option<Format>) -> Result<Barcode> {
    let format = format.or_else(|| Format::from_path(path)).ok_or_else(|| {
        Error::Parse(format!(
            "cannot tell the format of {} (use .csv or .json, or pass a format)",
            path.display()
        ))
    })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_barcode(&text, format)
}

pub fn barcode_to_csv(barcode: &Barcode) -> String {
    let mut out = String::new();
    for bar in barcode.bars() {
        out.push_str(&format_number(bar.birth()));
        out.push(',');
        out.push_str(&format_number(bar.death()));
        out.push('\n');
    }
    out
}

/// `%.17g`: 17 significant digits, trailing zeros removed.
pub fn format_number(x: f64) -> String {
    const DIGITS: i32 = 17;
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        strip_zeros(format!("{:.*}", decimals, x))
    } else {
        let mantissa = strip_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
