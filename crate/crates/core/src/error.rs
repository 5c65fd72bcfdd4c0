use thiserror::Error;

use crate::json::JsonError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("#{pointer}: a schema must be a boolean or an object")]
    NotASchema { pointer: String },
    #[error("#{pointer}: malformed `{keyword}`: {message}")]
    BadKeyword { pointer: String, keyword: String, message: String },
    #[error("#{pointer}: invalid pattern {pattern:?}: {message}")]
    InvalidPattern { pointer: String, pattern: String, message: String },
    #[error("#{pointer}: `$defs` is only supported at the top level of the document")]
    NestedDefs { pointer: String },
    #[error("#{pointer}: `$anchor` is only supported at the top level of the root or of a `$defs` entry")]
    NestedAnchor { pointer: String },
    #[error("#{pointer}: unsupported keyword `{keyword}`")]
    UnsupportedKeyword { pointer: String, keyword: String },
    #[error("#{pointer}: unsupported reference {uri:?} (only `#`, `#/$defs/name` and `#anchor` are allowed)")]
    UnsupportedRef { pointer: String, uri: String },
    #[error("#{pointer}: unresolved reference {uri:?}")]
    UnresolvedRef { pointer: String, uri: String },
    #[error("anchor {anchor:?} is declared more than once")]
    AmbiguousAnchor { anchor: String },
    #[error("anchor {anchor:?} (on {holder}) collides with the `$defs` entry of the same name")]
    AnchorCollision { anchor: String, holder: String },
    #[error("unguarded recursion: {}", cycle.join(" -> "))]
    UnguardedRecursion { cycle: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("could not generate a fresh definition name")]
    NamesExhausted,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
