use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::numkernel::{ComplexMatrix, C64};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

/// Contents and SHA-256 digest of an input file.
pub struct LoadedMatrix {
    pub matrix: ComplexMatrix,
    pub sha256: String,
}

pub fn parse_matrix_str(text: &str) -> Result<ComplexMatrix, CliError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed matrix file: {e}")))?;
    if file.entries.len() != file.rows || file.entries.iter().any(|r| r.len() != file.cols) {
        return Err(CliError::Usage(format!(
            "entries do not form a {}x{} array",
            file.rows, file.cols
        )));
    }
    let flat: Vec<C64> = file
        .entries
        .iter()
        .flatten()
        .map(|&[re, im]| C64::new(re, im))
        .collect();
    ComplexMatrix::from_row_major(file.rows, file.cols, &flat).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn load_matrix(path: &Path) -> Result<LoadedMatrix, CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    let matrix = parse_matrix_str(text)?;
    Ok(LoadedMatrix {
        matrix,
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

/// Convenience wrapper returning only the matrix.
pub fn parse_matrix_file(path: &Path) -> Result<ComplexMatrix, CliError> {
    load_matrix(path).map(|m| m.matrix)
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// The matrix in the same shape it is read in.
pub fn matrix_json(m: &ComplexMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array((0..m.cols()).map(|c| complex_json(m[(r, c)])).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}
