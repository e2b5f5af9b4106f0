//! JSON records with numbers printed to 17 significant digits.

use lerch::{Complex64, LerchError};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A binary64 serialized as `d.dddddddddddddddde±x`; non-finite values become
/// `null`.
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JsonComplex {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self { re: Num(z.re), im: Num(z.im) }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: ErrorBody<'a>,
}

/// Failures reported on stderr with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Lerch(LerchError),
    Io(String),
}

impl From<LerchError> for CliError {
    fn from(e: LerchError) -> Self {
        CliError::Lerch(e)
    }
}

pub fn error_json(e: &CliError) -> String {
    let (kind, message) = match e {
        CliError::Lerch(e) => (e.kind(), e.to_string()),
        CliError::Io(m) => ("Io", m.clone()),
    };
    serde_json::to_string(&ErrorRecord { error: ErrorBody { kind, message } }).expect("error record serializes")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("record serializes")
}
