//! Machine-readable reports.  One JSON object per command run; every
//! list is emitted in a deterministic order, and `serde_json` round-trips
//! each report to an equal value.
//!
//! Schema (field: meaning):
//! - groups are strings in the shared literal syntax (`"0"`, `"Z"`,
//!   `"Z^2 + Z4"`);
//! - homomorphisms are `{domain, codomain, matrix}` where `matrix[i][j]`
//!   is the coefficient of codomain generator `i` on domain generator
//!   `j`;
//! - extension classes are `{ambient, trivial, representative}`;
//! - `notes` collects input annotations (`#!` lines) and computed
//!   remarks, in input order then computation order.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use wseq_core::abgroup::AbHom;
use wseq_core::matrix::IntMatrix;
use wseq_core::whitehead::ExtClass;

use crate::errors::CliError;
use crate::formats::render_group;

pub fn matrix_json(m: &IntMatrix) -> Result<Vec<Vec<i128>>, CliError> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let v = m.get(i, j).to_i128().ok_or_else(|| {
                CliError::Internal("matrix entry exceeds the report range".into())
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomJson {
    pub domain: String,
    pub codomain: String,
    pub matrix: Vec<Vec<i128>>,
}

impl HomJson {
    pub fn from_hom(h: &AbHom) -> Result<Self, CliError> {
        Ok(HomJson {
            domain: render_group(h.domain()),
            codomain: render_group(h.codomain()),
            matrix: matrix_json(h.matrix())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtJson {
    pub ambient: String,
    pub trivial: bool,
    pub representative: Vec<Vec<i128>>,
}

impl ExtJson {
    pub fn from_ext(e: &ExtClass) -> Result<Self, CliError> {
        Ok(ExtJson {
            ambient: render_group(&e.ambient),
            trivial: e.trivial,
            representative: matrix_json(&e.representative)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub degree: usize,
    /// `H_n(V, d)` — homology of the module of generators.
    pub module: String,
    /// `H_n(T(V_{<=N}))` — homology of the truncated algebra.
    pub algebra: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub command: String,
    pub file: String,
    pub max_degree: usize,
    pub rows: Vec<HomologyRow>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhiteheadDegree {
    pub degree: usize,
    /// `H_n(V, d)`.
    pub h_module: String,
    /// `H_n(T(V))`.
    pub h_algebra: String,
    pub gamma: String,
    /// `b_{n+1}: H_{n+1}(V, d) -> Γ_n`.
    pub b: HomJson,
    pub coker_b: String,
    pub phi: HomJson,
    pub ext_bracket: ExtJson,
    pub ext_brace: ExtJson,
    pub perfect: bool,
    pub quasi_perfect: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhiteheadReport {
    pub command: String,
    pub file: String,
    pub range: [usize; 2],
    pub degrees: Vec<WhiteheadDegree>,
    pub perfect: bool,
    pub quasi_perfect: bool,
    /// Always `"verified"` in a successful run: a junction failure is a
    /// hard error, never report data.
    pub exactness: String,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaJson {
    pub degree: usize,
    /// Distinct values observed across the enumerated systems (the value
    /// can depend on earlier stage choices), sorted.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub command: String,
    pub file: String,
    pub provider: String,
    pub equivalence: String,
    pub max_degree: usize,
    /// `"finite"`, `"infinite"` or `"unknown"`.
    pub outcome: String,
    pub stages: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinite_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub lower_bound: bool,
    pub gammas: Vec<GammaJson>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeHom {
    pub degree: usize,
    pub map: HomJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub f: Vec<DegreeHom>,
    pub gamma: Vec<DegreeHom>,
    pub h: Vec<DegreeHom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub command: String,
    pub files: [String; 2],
    pub range: [usize; 2],
    /// `"yes"`, `"no"` or `"unknown"`.
    pub isomorphic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiJson {
    pub degree: usize,
    pub ambient: String,
    pub trivial: bool,
    pub representative: Vec<Vec<i128>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub command: String,
    pub file: String,
    pub range: [usize; 2],
    /// The perfect differential, rendered as a `.dga` document.
    pub dga: String,
    pub pi: Vec<PiJson>,
    pub notes: Vec<String>,
}

pub fn to_json<T: Serialize>(r: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(r).map_err(|e| CliError::Internal(e.to_string()))
}
