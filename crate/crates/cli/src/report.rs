//! The JSON document schema shared by every subcommand. Field order is
//! declaration order and is part of the schema; bump `SCHEMA_VERSION` on
//! any breaking change.

use serde::{Deserialize, Serialize};

use zariski_core::binforms::{BinaryEvenForm, ClassicalForm};
use zariski_core::moduli::ComponentReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub invocation: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Components(ComponentReport),
    FormsByDet { det: i64, classes: Vec<FormByDet> },
    FormsByDisc { disc: i64, forms: Vec<ClassicalForm> },
    Cm(CmSection),
    Census(CensusSummary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormByDet {
    pub form: BinaryEvenForm,
    pub name: String,
    pub sl2_fiber: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmSection {
    pub discriminant: i64,
    pub class_number: usize,
    pub cyclic_factors: Vec<u64>,
    pub generator: Option<ClassicalForm>,
    pub forms: Vec<ClassicalForm>,
    pub embeddings: Vec<EmbeddingRow>,
    pub hilbert: Option<HilbertSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRow {
    pub index: usize,
    pub class: ClassicalForm,
    pub square: ClassicalForm,
    pub lattice: BinaryEvenForm,
    pub lattice_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertSection {
    pub degree: usize,
    /// Decimal strings, highest degree first, leading coefficient included.
    pub coefficients: Vec<String>,
    pub max_rounding_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub input: String,
    pub out_dir: String,
    pub entries: Vec<CensusEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub line: usize,
    pub input: String,
    pub canonical: Option<String>,
    pub status: String,
    pub total_components: Option<u32>,
    pub error: Option<String>,
}
