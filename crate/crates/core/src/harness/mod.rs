//! Test and measurement support: schema families, instance enumeration,
//! differential testing and fixture loading.

pub mod bounds;
pub mod difftest;
pub mod enumerate;
pub mod families;
pub mod fixtures;

pub use bounds::{bound_violations, cover_violations};
pub use difftest::{difftest, difftest_values, document_size, DiffReport, Disagreement};
pub use enumerate::{universe, Vocabulary};
pub use families::{family_san_json, family_sn_json, gen_family_san, gen_family_sn};
pub use fixtures::{load_corpus, load_fixture, read_instances, Fixture, FixtureError, Labelled};
