//! Differential testing of a document against its eliminated form.

use std::time::Instant;

use crate::eliminate::elim_document;
use crate::error::ElimError;
use crate::harness::fixtures::Labelled;
use crate::json::{serialize_json, JsonValue};
use crate::schema::{serialize_schema, SchemaDocument};
use crate::validator::Validator;

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub instance: JsonValue,
    pub original: bool,
    pub eliminated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffReport {
    pub schema_id: String,
    pub instances_total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub disagreements: Vec<Disagreement>,
    /// Instances that could not be read, with the reason.
    pub errors: Vec<(String, String)>,
    pub elapsed_ms: f64,
    pub size_ratio: f64,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.disagree == 0
    }

    pub fn to_json(&self) -> JsonValue {
        let num = |x: f64| format!("{x:.4}").parse::<JsonValue>().unwrap_or(JsonValue::Null);
        let count = |n: usize| JsonValue::from_i64(n as i64);
        JsonValue::object([
            ("schema_id", JsonValue::string(&self.schema_id)),
            ("instances_total", count(self.instances_total)),
            ("agree", count(self.agree)),
            ("disagree", count(self.disagree)),
            (
                "disagreements",
                JsonValue::Array(
                    self.disagreements
                        .iter()
                        .map(|d| {
                            JsonValue::object([
                                ("instance", d.instance.clone()),
                                ("original", JsonValue::Bool(d.original)),
                                ("eliminated", JsonValue::Bool(d.eliminated)),
                            ])
                        })
                        .collect(),
                ),
            ),
            (
                "errors",
                JsonValue::Array(
                    self.errors
                        .iter()
                        .map(|(src, msg)| {
                            JsonValue::object([("source", JsonValue::string(src)), ("error", JsonValue::string(msg))])
                        })
                        .collect(),
                ),
            ),
            ("elapsed_ms", num(self.elapsed_ms)),
            ("size_ratio", num(self.size_ratio)),
        ])
    }
}

/// Compact serialized size in bytes.
pub fn document_size(doc: &SchemaDocument) -> usize {
    serialize_json(&serialize_schema(doc)).len()
}

/// Eliminates `doc` and compares validity under both documents on each
/// instance. `Err` entries are unreadable instances, reported and skipped.
pub fn difftest(schema_id: &str, doc: &SchemaDocument, instances: &[Labelled]) -> Result<DiffReport, ElimError> {
    let start = Instant::now();
    let (eliminated, _) = elim_document(doc)?;
    let original = Validator::new(doc)?;
    let rewritten = Validator::new(&eliminated)?;
    let mut report = DiffReport {
        schema_id: schema_id.to_owned(),
        instances_total: 0,
        agree: 0,
        disagree: 0,
        disagreements: Vec::new(),
        errors: Vec::new(),
        elapsed_ms: 0.0,
        size_ratio: document_size(&eliminated) as f64 / document_size(doc).max(1) as f64,
    };
    for (source, instance) in instances {
        let instance = match instance {
            Ok(v) => v,
            Err(e) => {
                report.errors.push((source.clone(), e.clone()));
                continue;
            }
        };
        report.instances_total += 1;
        let a = original.is_valid(instance);
        let b = rewritten.is_valid(instance);
        if a == b {
            report.agree += 1;
        } else {
            report.disagree += 1;
            report.disagreements.push(Disagreement { instance: instance.clone(), original: a, eliminated: b });
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// `difftest` over plain values.
pub fn difftest_values(
    schema_id: &str,
    doc: &SchemaDocument,
    instances: &[JsonValue],
) -> Result<DiffReport, ElimError> {
    let labelled: Vec<_> = instances.iter().enumerate().map(|(i, v)| (format!("#{i}"), Ok(v.clone()))).collect();
    difftest(schema_id, doc, &labelled)
}
