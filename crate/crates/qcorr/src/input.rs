//! JSON state-input parsing for the CLI. A document must carry exactly
//! one of the keys `bell_diagonal`, `matrix`, `pure_alpha`.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{Mat4, C64};
use crate::states::{BellDiagonalState, DensityMatrix, PureSchmidtState};

/// Parsed state input, one variant per recognized key.
#[derive(Clone, Debug)]
pub enum StateInput {
    BellDiagonal(BellDiagonalState),
    Matrix(DensityMatrix),
    PureAlpha(PureSchmidtState),
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("{what} must be a number")))
}

/// One complex entry: either a real number or a [re, im] pair.
fn as_c64(v: &Value) -> Result<C64> {
    if let Some(x) = v.as_f64() {
        return Ok(C64::new(x, 0.0));
    }
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse("matrix entry must be a number or [re, im]".into()))?;
    Ok(C64::new(
        as_f64(&pair[0], "matrix entry real part")?,
        as_f64(&pair[1], "matrix entry imaginary part")?,
    ))
}

/// Parses a JSON document into a state, validating physical invariants.
pub fn parse_state_input(document: &str) -> Result<StateInput> {
    let root: Value =
        serde_json::from_str(document).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parse("top-level value must be an object".into()))?;

    let keys = ["bell_diagonal", "matrix", "pure_alpha"];
    let present: Vec<&str> = keys.iter().copied().filter(|k| obj.contains_key(*k)).collect();
    if present.len() > 1 {
        return Err(Error::AmbiguousInput);
    }
    let key = *present
        .first()
        .ok_or_else(|| Error::Parse("expected one of: bell_diagonal, matrix, pure_alpha".into()))?;

    match key {
        "bell_diagonal" => {
            let arr = obj[key]
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse("bell_diagonal must be [c1, c2, c3]".into()))?;
            let c1 = as_f64(&arr[0], "c1")?;
            let c2 = as_f64(&arr[1], "c2")?;
            let c3 = as_f64(&arr[2], "c3")?;
            Ok(StateInput::BellDiagonal(BellDiagonalState::from_c(c1, c2, c3)?))
        }
        "pure_alpha" => {
            let alpha = as_f64(&obj[key], "pure_alpha")?;
            Ok(StateInput::PureAlpha(PureSchmidtState::new(alpha)?))
        }
        "matrix" => {
            let rows = obj[key]
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| Error::Parse("matrix must be a 4x4 array".into()))?;
            let mut m = Mat4::zero();
            for (i, row) in rows.iter().enumerate() {
                let cols = row
                    .as_array()
                    .filter(|a| a.len() == 4)
                    .ok_or_else(|| Error::Parse("matrix must be a 4x4 array".into()))?;
                for (j, entry) in cols.iter().enumerate() {
                    m.0[i][j] = as_c64(entry)?;
                }
            }
            Ok(StateInput::Matrix(DensityMatrix::new(m)?))
        }
        _ => unreachable!(),
    }
}
