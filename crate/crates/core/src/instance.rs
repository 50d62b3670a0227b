//! Instance documents (JSON) and the plain-text family and word listings.
//!
//! An instance has a ground size and any of an operator, a linkage, an
//! explicit family and an explicit language:
//!
//! ```json
//! {
//!   "ground": 3,
//!   "operator": { "kind": "poset_min", "covers": [[1, 2], [1, 3]] },
//!   "linkage": { "kind": "weight_minus_size", "weights": [1, 6, 3] }
//! }
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::family::SetFamily;
use crate::language::{SimpleLanguage, Word};
use crate::linkage::{FailureParams, LinkageKind, LinkageSpec};
use crate::operator::{OperatorKind, OperatorSpec};
use crate::poset::Poset;
use crate::subset::{Element, GroundSet, Subset};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub ground: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linkage: Option<LinkageDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<Element>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<Vec<Vec<Element>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorDoc {
    /// `(set, value)` pairs; missing sets map to `∅`.
    Table { entries: Vec<(Vec<Element>, Vec<Element>)> },
    Full,
    MaxOrder,
    /// Cover pairs `(a, b)` with `a < b`.
    PosetMin { covers: Vec<(Element, Element)> },
    Chain,
    BasisOfFamily { family: Vec<Vec<Element>> },
    Truncated { cutoff: usize, inner: Box<OperatorDoc> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LinkageDoc {
    /// `(x, X, π(x, X))` triples covering every `x ∉ X`.
    Table { entries: Vec<(Element, Vec<Element>, f64)> },
    WeightMinusSize { weights: Vec<f64> },
    SingleLinkage {
        distances: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        empty_value: Option<f64>,
    },
    Failure { letters: Vec<Element> },
}

/// A validated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub ground: GroundSet,
    pub operator: Option<OperatorSpec>,
    pub linkage: Option<LinkageSpec>,
    pub family: Option<SetFamily>,
    pub language: Option<SimpleLanguage>,
}

fn set_of(ground: &GroundSet, elements: &[Element]) -> Result<Subset, Error> {
    ground.subset(elements.iter().copied())
}

fn family_of(ground: &GroundSet, lists: &[Vec<Element>]) -> Result<SetFamily, Error> {
    let sets = lists
        .iter()
        .map(|l| set_of(ground, l))
        .collect::<Result<Vec<_>, _>>()?;
    SetFamily::new(ground.clone(), sets)
}

fn list_of(s: Subset) -> Vec<Element> {
    s.iter().collect()
}

impl OperatorDoc {
    pub fn build(&self, ground: &GroundSet) -> Result<OperatorSpec, Error> {
        Ok(match self {
            OperatorDoc::Table { entries } => {
                let entries = entries
                    .iter()
                    .map(|(k, v)| Ok((set_of(ground, k)?, set_of(ground, v)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                OperatorSpec::table(ground.clone(), entries)?
            }
            OperatorDoc::Full => OperatorSpec::full(ground.clone()),
            OperatorDoc::MaxOrder => OperatorSpec::max_order(ground.clone()),
            OperatorDoc::PosetMin { covers } => {
                OperatorSpec::poset_min(Poset::new(ground.clone(), covers.clone())?)
            }
            OperatorDoc::Chain => OperatorSpec::chain(ground.clone()),
            OperatorDoc::BasisOfFamily { family } => {
                OperatorSpec::from_family(family_of(ground, family)?)?
            }
            OperatorDoc::Truncated { cutoff, inner } => inner.build(ground)?.truncated(*cutoff),
        })
    }

    pub fn from_spec(op: &OperatorSpec) -> OperatorDoc {
        match op.kind() {
            OperatorKind::Table(map) => OperatorDoc::Table {
                entries: map.iter().map(|(&k, &v)| (list_of(k), list_of(v))).collect(),
            },
            OperatorKind::Full => OperatorDoc::Full,
            OperatorKind::MaxOrder => OperatorDoc::MaxOrder,
            OperatorKind::PosetMin(p) => OperatorDoc::PosetMin {
                covers: p.covers().to_vec(),
            },
            OperatorKind::Chain => OperatorDoc::Chain,
            OperatorKind::BasisOfFamily(f) => OperatorDoc::BasisOfFamily {
                family: f.iter().map(|&s| list_of(s)).collect(),
            },
            OperatorKind::Truncated { inner, cutoff } => OperatorDoc::Truncated {
                cutoff: *cutoff,
                inner: Box::new(OperatorDoc::from_spec(inner)),
            },
        }
    }
}

impl LinkageDoc {
    pub fn build(&self, ground: &GroundSet) -> Result<LinkageSpec, Error> {
        match self {
            LinkageDoc::Table { entries } => {
                let entries = entries
                    .iter()
                    .map(|(x, set, v)| Ok((*x, set_of(ground, set)?, *v)))
                    .collect::<Result<Vec<_>, Error>>()?;
                LinkageSpec::table(ground.clone(), entries)
            }
            LinkageDoc::WeightMinusSize { weights } => {
                LinkageSpec::weight_minus_size(ground.clone(), weights.clone())
            }
            LinkageDoc::SingleLinkage {
                distances,
                empty_value,
            } => LinkageSpec::single_linkage(ground.clone(), distances.clone(), *empty_value),
            LinkageDoc::Failure { letters } => {
                LinkageSpec::failure(ground.clone(), FailureParams::new(ground, letters.clone())?)
            }
        }
    }

    pub fn from_spec(pi: &LinkageSpec) -> LinkageDoc {
        match pi.kind() {
            LinkageKind::Table(map) => {
                let mut entries: Vec<(Element, Subset, f64)> =
                    map.iter().map(|(&(x, s), &v)| (x, s, v)).collect();
                entries.sort_by_key(|a| (a.0, a.1));
                LinkageDoc::Table {
                    entries: entries.into_iter().map(|(x, s, v)| (x, list_of(s), v)).collect(),
                }
            }
            LinkageKind::WeightMinusSize(w) => LinkageDoc::WeightMinusSize { weights: w.clone() },
            LinkageKind::SingleLinkage {
                distances,
                empty_value,
            } => LinkageDoc::SingleLinkage {
                distances: distances.clone(),
                empty_value: Some(*empty_value),
            },
            LinkageKind::Failure(p) => LinkageDoc::Failure {
                letters: p.letters().to_vec(),
            },
        }
    }
}

impl InstanceDocument {
    pub fn build(&self) -> Result<Instance, Error> {
        let ground = match &self.labels {
            Some(labels) => GroundSet::with_labels(self.ground, labels.clone())?,
            None => GroundSet::new(self.ground)?,
        };
        if self.operator.is_none() && self.family.is_none() && self.language.is_none() {
            return Err(Error::InvalidArgument(
                "instance needs an operator, a family or a language".into(),
            ));
        }
        let operator = self.operator.as_ref().map(|d| d.build(&ground)).transpose()?;
        let linkage = self.linkage.as_ref().map(|d| d.build(&ground)).transpose()?;
        let family = self.family.as_ref().map(|f| family_of(&ground, f)).transpose()?;
        let language = self
            .language
            .as_ref()
            .map(|words| {
                let words = words.iter().map(|w| Word::new(w.clone())).collect::<Vec<_>>();
                SimpleLanguage::new(ground.clone(), words)
            })
            .transpose()?;
        Ok(Instance {
            ground,
            operator,
            linkage,
            family,
            language,
        })
    }
}

impl Instance {
    /// Parses and validates a JSON instance.
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| InstanceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(doc.build()?)
    }

    pub fn to_document(&self) -> InstanceDocument {
        InstanceDocument {
            ground: self.ground.len(),
            labels: self.ground.labels().map(<[String]>::to_vec),
            operator: self.operator.as_ref().map(OperatorDoc::from_spec),
            linkage: self.linkage.as_ref().map(LinkageDoc::from_spec),
            family: self.family.as_ref().map(|f| f.iter().map(|&s| list_of(s)).collect()),
            language: self
                .language
                .as_ref()
                .map(|l| l.words().map(|w| w.letters().to_vec()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("documents always serialize")
    }
}

/// One set per line in canonical order, `{}` for `∅`.
pub fn format_family(family: &SetFamily) -> String {
    let mut out = String::new();
    for s in family {
        let _ = writeln!(out, "{s}");
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_element(token: &str, line: usize, column: usize, ground: &GroundSet) -> Result<Element, InstanceError> {
    let x: Element = token
        .parse()
        .map_err(|_| syntax(line, column, format!("expected an element identifier, found {token:?}")))?;
    ground.check_element(x)?;
    Ok(x)
}

/// Inverse of [`format_family`]; blank lines are skipped.
pub fn parse_family_listing(ground: &GroundSet, text: &str) -> Result<SetFamily, InstanceError> {
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len() + 1;
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| syntax(line, indent, "expected a set in braces"))?;
        let mut set = Subset::EMPTY;
        if !inner.trim().is_empty() {
            let mut column = indent + 1;
            for token in inner.split(',') {
                let x = parse_element(token.trim(), line, column, ground)?;
                if set.contains(x) {
                    return Err(syntax(line, column, format!("element {x} repeats")));
                }
                set = set.with(x);
                column += token.len() + 1;
            }
        }
        sets.push(set);
    }
    Ok(SetFamily::new(ground.clone(), sets)?)
}

/// One word per line, letters separated by spaces, `-` for the empty word.
pub fn format_words<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> String {
    let mut out = String::new();
    for w in words {
        let _ = writeln!(out, "{w}");
    }
    out
}

/// Inverse of [`format_words`]; blank lines are skipped, words must be simple.
pub fn parse_word_list(ground: &GroundSet, text: &str) -> Result<Vec<Word>, InstanceError> {
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if raw.trim() == "-" {
            words.push(Word::empty());
            continue;
        }
        let mut letters = Vec::new();
        let mut seen = Subset::EMPTY;
        let mut offset = 0;
        for token in raw.split(' ') {
            let column = offset + 1;
            offset += token.len() + 1;
            if token.is_empty() {
                continue;
            }
            let x = parse_element(token, line, column, ground)?;
            if seen.contains(x) {
                return Err(syntax(line, column, format!("letter {x} repeats")));
            }
            seen = seen.with(x);
            letters.push(x);
        }
        words.push(Word::new(letters));
    }
    Ok(words)
}
