//! Validation of JSON instances against static Draft 2020-12 JSON Schema
//! with full annotation semantics, and elimination of
//! `unevaluatedProperties` / `unevaluatedItems` into an equivalent schema
//! that only uses annotation-independent keywords.
//!
//! ```
//! use uneval_core::{elim_document, parse_json_str, parse_schema_text, Validator};
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let doc = parse_schema_text(r#"{"properties":{"a":{}},"unevaluatedProperties":false}"#)?;
//! let (rewritten, _stats) = elim_document(&doc)?;
//! let v = Validator::new(&rewritten)?;
//! assert!(v.is_valid(&parse_json_str(r#"{"a":1}"#)?));
//! assert!(!v.is_valid(&parse_json_str(r#"{"b":1}"#)?));
//! # Ok(())
//! # }
//! ```

pub mod analysis;
pub mod eliminate;
pub mod enf;
pub mod error;
pub mod harness;
pub mod json;
pub mod pattern;
pub mod schema;
pub mod validator;

pub use analysis::{Analyzer, EvalPair, ItemBound};
pub use eliminate::{elim_document, enf_named, ElimStats, Eliminator};
pub use error::{ElimError, SchemaError};
pub use json::{json_equal, parse_json, parse_json_str, serialize_json, JsonValue};
pub use pattern::{Pattern, PatternSet};
pub use schema::{parse_schema, parse_schema_text, serialize_schema, Keyword, Schema, SchemaDocument, Target};
pub use validator::{Annotation, Outcome, Validator};
