//! Text format for tensors and vectors.
//!
//! A tensor document is a JSON object with an integer array `shape` and a flat
//! number array `entries` in row-major order (last index fastest):
//!
//! ```text
//! {"shape": [2, 2], "entries": [1.0000000000000000e0, 0.0000000000000000e0, ...]}
//! ```
//!
//! Writers emit every number with 17 significant digits, which round-trips any
//! binary64 value exactly. A vector document is either a plain number array or a
//! tensor document of order 1.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::tensor::{DenseTensor, Shape};

#[derive(Debug, Deserialize)]
struct TensorDocument {
    shape: Vec<usize>,
    entries: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum VectorDocument {
    Plain(Vec<f64>),
    Tensor(TensorDocument),
}

/// `x` with 17 significant digits in scientific notation, e.g. `1.0000000000000000e0`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_tensor(text: &str) -> Result<DenseTensor<f64>> {
    let doc: TensorDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let shape = Shape::new(doc.shape)?;
    DenseTensor::new(shape, doc.entries)
}

pub fn format_tensor(t: &DenseTensor<f64>) -> String {
    let mut out = String::from("{\"shape\": [");
    let dims: Vec<String> = t.dims().iter().map(ToString::to_string).collect();
    out.push_str(&dims.join(", "));
    out.push_str("], \"entries\": [");
    for (i, &x) in t.entries().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}", format_number(x));
    }
    out.push_str("]}\n");
    out
}

pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let doc: VectorDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let v = match doc {
        VectorDocument::Plain(v) => v,
        VectorDocument::Tensor(doc) => {
            if doc.shape.len() != 1 {
                return Err(Error::Shape(format!("vector document has shape {:?}", doc.shape)));
            }
            DenseTensor::new(Shape::new(doc.shape)?, doc.entries)?.entries().to_vec()
        }
    };
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Argument("vector has a non-finite entry".into()));
    }
    Ok(v)
}

/// Reads a tensor document, returning the tensor and the raw bytes (for digests).
pub fn read_tensor(path: &Path) -> Result<(DenseTensor<f64>, Vec<u8>)> {
    let bytes = std::fs::read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((parse_tensor(text)?, bytes))
}

pub fn read_vector(path: &Path) -> Result<Vec<f64>> {
    parse_vector(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        let t = DenseTensor::from_dims(&[2, 1], vec![1.0, -0.1]).unwrap();
        let text = format_tensor(&t);
        assert_eq!(text, "{\"shape\": [2, 1], \"entries\": [1.0000000000000000e0, -1.0000000000000001e-1]}\n");
        assert_eq!(parse_tensor(&text).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_tensor("{\"shape\": [2]}"), Err(Error::Parse(_))));
        assert!(matches!(parse_tensor("{\"shape\": [2], \"entries\": [1]}"), Err(Error::Shape(_))));
        assert!(parse_tensor("{\"shape\": [1], \"entries\": [1e999]}").is_err());
        assert!(matches!(parse_tensor("{\"shape\": [0], \"entries\": []}"), Err(Error::Shape(_))));
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("[1, 0.5]").unwrap(), vec![1.0, 0.5]);
        assert_eq!(parse_vector("{\"shape\": [2], \"entries\": [1, 2]}").unwrap(), vec![1.0, 2.0]);
        assert!(parse_vector("{\"shape\": [1, 2], \"entries\": [1, 2]}").is_err());
    }
}
