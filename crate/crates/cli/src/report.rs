//! JSON report shapes. Every type round-trips through `serde_json` unchanged.

use std::fmt;

use serde::{Deserialize, Serialize};

use bider_core::{BilinearTensor, CheckOutcome, IdentityFailure, Kind, RationalMatrix};

/// A failing basis instance with 1-based indices and rendered vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureJson {
    pub identity: String,
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

impl From<&IdentityFailure> for FailureJson {
    fn from(f: &IdentityFailure) -> Self {
        Self {
            identity: f.identity.as_str().to_string(),
            indices: f.indices.iter().map(|i| i + 1).collect(),
            lhs: f.lhs.to_string(),
            rhs: f.rhs.to_string(),
            residual: f.residual().to_string(),
        }
    }
}

impl fmt::Display for FailureJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.indices.iter().map(|i| format!("e{i}")).collect();
        write!(
            f,
            "{} at ({}): lhs = {}, rhs = {}, residual = {}",
            self.identity,
            args.join(","),
            self.lhs,
            self.rhs,
            self.residual
        )
    }
}

/// `B(e_i, e_j) = value` for one basis pair (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisValue {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

impl fmt::Display for BasisValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B(e{},e{}) = {}", self.i, self.j, self.value)
    }
}

/// Nonzero values of a tensor on basis pairs, in index order.
pub fn basis_values(b: &BilinearTensor) -> Vec<BasisValue> {
    let n = b.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = b.on_basis(i, j);
            if !v.is_zero() {
                out.push(BasisValue {
                    i: i + 1,
                    j: j + 1,
                    value: v.to_string(),
                });
            }
        }
    }
    out
}

pub fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub algebra: String,
    pub dim: usize,
    pub kind: Kind,
    pub checked_as: Kind,
    pub passed: bool,
    pub failures: Vec<FailureJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerReport {
    pub algebra: String,
    pub dim: usize,
    pub derivation_dim: usize,
    pub basis: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiderReport {
    pub algebra: String,
    pub side: String,
    pub dim: usize,
    pub basis: Vec<Vec<BasisValue>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketReport {
    pub op: String,
    pub inputs_are_biderivations: bool,
    /// The result in map-file format.
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub outcomes: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub b1: Vec<BasisValue>,
    pub b2: Vec<BasisValue>,
    pub b1_is_biderivation: bool,
    pub b2_is_biderivation: bool,
    /// The bracket's values on basis pairs.
    pub bracket: Vec<BasisValue>,
    pub bracket_is_right: bool,
    pub bracket_is_left: bool,
    pub left_witness: Option<FailureJson>,
}
