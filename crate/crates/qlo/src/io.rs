//! Operator file format: `{"dim": n, "label": ..., "matrix": [[[re,im],...],...]}`.
//!
//! Entries are explicit [re, im] pairs so any language can parse them; the
//! JSON writer emits shortest round-tripping decimals, so write-then-read is
//! bit-exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::operator::HermitianOperator;
use crate::tol::Tolerances;
use num_complex::Complex64;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OperatorFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl OperatorFile {
    pub fn from_operator(op: &HermitianOperator, label: Option<String>) -> Self {
        let n = op.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = op.matrix()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        OperatorFile { dim: n, label, matrix }
    }

    pub fn to_operator(&self, tol: &Tolerances) -> Result<HermitianOperator> {
        if self.matrix.len() != self.dim {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("matrix has {} rows, dim says {}", self.matrix.len(), self.dim),
            });
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != self.dim {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("row {i} has {} entries, dim says {}", row.len(), self.dim),
                });
            }
        }
        let mat = CMatrix::from_fn(self.dim, self.dim, |i, j| {
            Complex64::new(self.matrix[i][j][0], self.matrix[i][j][1])
        });
        HermitianOperator::new(mat, tol)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("operator file serializes")
    }
}
