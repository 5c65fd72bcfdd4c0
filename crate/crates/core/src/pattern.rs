//! Regular patterns as used by `pattern`, `patternProperties` and the
//! evaluated-property analysis. Patterns are unanchored: `a` matches any
//! string containing `a`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use regex::Regex;

/// The pattern that matches every string.
pub const DOT_STAR: &str = ".*";

#[derive(Clone)]
pub struct Pattern {
    source: String,
    regex: Regex,
}

fn cache() -> &'static Mutex<HashMap<String, Regex>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Regex>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Pattern {
    pub fn new(source: &str) -> Result<Pattern, regex::Error> {
        let mut cache = cache().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(regex) = cache.get(source) {
            return Ok(Pattern { source: source.to_owned(), regex: regex.clone() });
        }
        let regex = Regex::new(source)?;
        cache.insert(source.to_owned(), regex.clone());
        Ok(Pattern { source: source.to_owned(), regex })
    }

    /// `^k$` with every regex metacharacter of `k` escaped.
    pub fn exact(name: &str) -> Pattern {
        Pattern::new(&exact_name_source(name)).expect("escaped name is a valid regex")
    }

    pub fn dot_star() -> Pattern {
        Pattern::new(DOT_STAR).expect("valid regex")
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_match(&self, text: &str) -> bool {
        self.regex.is_match(text)
    }

    pub fn is_dot_star(&self) -> bool {
        self.source == DOT_STAR
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

impl Eq for Pattern {}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.source.cmp(&other.source)
    }
}

impl Hash for Pattern {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.source.hash(state);
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.source)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

const META: &[char] = &['\\', '^', '$', '.', '|', '?', '*', '+', '(', ')', '[', ']', '{', '}'];

pub fn escape_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    for c in text.chars() {
        if META.contains(&c) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

pub fn exact_name_source(name: &str) -> String {
    format!("^{}$", escape_literal(name))
}

/// If `source` denotes a single literal string once anchors are removed,
/// return that literal together with whether it was anchored at both ends.
pub fn literal_of(source: &str) -> Option<(String, bool)> {
    let (body, anchored_start) = match source.strip_prefix('^') {
        Some(rest) => (rest, true),
        None => (source, false),
    };
    let (body, anchored_end) = match body.strip_suffix('$') {
        Some(rest) if !rest.ends_with('\\') || rest.ends_with("\\\\") => (rest, true),
        _ => (body, false),
    };
    let mut out = String::new();
    let mut chars = body.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            let next = chars.next()?;
            if !META.contains(&next) && next != '-' && next != '/' {
                return None;
            }
            out.push(next);
        } else if META.contains(&c) {
            return None;
        } else {
            out.push(c);
        }
    }
    Some((out, anchored_start && anchored_end))
}

/// Finite set of patterns, read as the union of their languages.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet {
    patterns: BTreeSet<Pattern>,
}

impl PatternSet {
    pub fn empty() -> Self {
        PatternSet::default()
    }

    pub fn dot_star() -> Self {
        PatternSet::from_iter([Pattern::dot_star()])
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn contains_dot_star(&self) -> bool {
        self.patterns.iter().any(Pattern::is_dot_star)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pattern> {
        self.patterns.iter()
    }

    pub fn insert(&mut self, p: Pattern) {
        self.patterns.insert(p);
    }

    /// True iff `name` belongs to the language of some member.
    pub fn matches(&self, name: &str) -> bool {
        self.patterns.iter().any(|p| p.is_match(name))
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        PatternSet { patterns: self.patterns.union(&other.patterns).cloned().collect() }
    }

    /// Syntactic intersection: the patterns that occur in both sets.
    pub fn intersection(&self, other: &PatternSet) -> PatternSet {
        PatternSet { patterns: self.patterns.intersection(&other.patterns).cloned().collect() }
    }

    /// Sound check for ⟦other⟧ ⊆ ⟦self⟧: `self` has `.*`, or every pattern
    /// of `other` occurs verbatim in `self`.
    pub fn proves_superset_of(&self, other: &PatternSet) -> bool {
        self.contains_dot_star() || other.patterns.is_subset(&self.patterns)
    }

    pub fn sources(&self) -> Vec<String> {
        self.patterns.iter().map(|p| p.source.clone()).collect()
    }
}

impl FromIterator<Pattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Pattern>>(iter: I) -> Self {
        PatternSet { patterns: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Pattern;
    type IntoIter = std::collections::btree_set::Iter<'a, Pattern>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}
