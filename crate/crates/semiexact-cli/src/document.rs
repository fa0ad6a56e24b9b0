//! The algebra document: a single JSON object describing named semirings,
//! semimodules, morphisms, sequences and diagrams. Later kinds reference
//! earlier names; element index 0 is the zero everywhere.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use semiexact::builtins;
use semiexact::{
    validate_morphism, Diagram, Elem, Morphism, Semimodule, Semiring, SemiringFamily, Sequence,
};

/// Input failures, one class per exit-2 diagnostic: `syntax` (bad JSON or
/// malformed/ragged tables), `reference` (a name that does not resolve),
/// `validation` (well-formed tables that violate an axiom).
#[derive(Debug)]
pub enum DocError {
    Syntax(String),
    Reference(String),
    Validation(String),
}

impl DocError {
    pub fn class(&self) -> &'static str {
        match self {
            DocError::Syntax(_) => "syntax",
            DocError::Reference(_) => "reference",
            DocError::Validation(_) => "validation",
        }
    }
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (DocError::Syntax(m) | DocError::Reference(m) | DocError::Validation(m)) = self;
        write!(f, "{} error: {}", self.class(), m)
    }
}

fn lift(context: &str, e: semiexact::Error) -> DocError {
    match e {
        semiexact::Error::MalformedTable(_) | semiexact::Error::ShapeMismatch(_) => {
            DocError::Syntax(format!("{context}: {e}"))
        }
        other => DocError::Validation(format!("{context}: {other}")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemiringSpec {
    Builtin {
        builtin: String,
        #[serde(default)]
        k: usize,
    },
    Tables {
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        one: Elem,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemimoduleSpec {
    /// builtin ∈ {"cyclic", "trunc", "boolean", "zero"}
    Builtin {
        semiring: String,
        builtin: String,
        #[serde(default)]
        k: usize,
    },
    Tables {
        semiring: String,
        add: Vec<Vec<Elem>>,
        act: Vec<Vec<Elem>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub dom: String,
    pub cod: String,
    pub map: Vec<Elem>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub morphisms: Vec<String>,
    #[serde(default = "default_true")]
    pub pad_left: bool,
    #[serde(default = "default_true")]
    pub pad_right: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub objects: Vec<Vec<String>>,
    pub horiz: Vec<Vec<String>>,
    pub vert: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub semirings: BTreeMap<String, SemiringSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub semimodules: BTreeMap<String, SemimoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sequences: BTreeMap<String, SequenceSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagrams: BTreeMap<String, DiagramSpec>,
}

/// A document with every table validated and every reference resolved.
pub struct ResolvedDocument {
    #[cfg_attr(not(test), allow(dead_code))]
    pub raw: AlgebraDocument,
    pub semirings: BTreeMap<String, Arc<Semiring>>,
    pub semimodules: BTreeMap<String, Arc<Semimodule>>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub sequences: BTreeMap<String, Sequence>,
    pub diagrams: BTreeMap<String, Diagram>,
}

pub fn parse_document(text: &str) -> Result<ResolvedDocument, DocError> {
    let raw: AlgebraDocument = serde_json::from_str(text)
        .map_err(|e| DocError::Syntax(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    resolve(raw)
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn serialize_document(doc: &AlgebraDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

fn resolve(raw: AlgebraDocument) -> Result<ResolvedDocument, DocError> {
    let mut semirings = BTreeMap::new();
    for (name, spec) in &raw.semirings {
        let ring = match spec {
            SemiringSpec::Builtin { builtin, k } => {
                let family = SemiringFamily::parse(builtin)
                    .map_err(|e| lift(&format!("semiring '{name}'"), e))?;
                semiexact::builtin_semiring(family, *k)
                    .map_err(|e| lift(&format!("semiring '{name}'"), e))?
            }
            SemiringSpec::Tables { add, mul, one } => {
                Semiring::from_tables(name.clone(), add.clone(), mul.clone(), *one)
                    .map_err(|e| lift(&format!("semiring '{name}'"), e))?
            }
        };
        semirings.insert(name.clone(), ring);
    }

    let mut semimodules = BTreeMap::new();
    for (name, spec) in &raw.semimodules {
        let ring_name = match spec {
            SemimoduleSpec::Builtin { semiring, .. } | SemimoduleSpec::Tables { semiring, .. } => {
                semiring
            }
        };
        let ring = semirings
            .get(ring_name)
            .ok_or_else(|| {
                DocError::Reference(format!(
                    "semimodule '{name}' references unknown semiring '{ring_name}'"
                ))
            })?
            .clone();
        let module = match spec {
            SemimoduleSpec::Builtin { builtin, k, .. } => {
                let built = match builtin.as_str() {
                    "cyclic" => builtins::cyclic_group(*k, ring),
                    "trunc" => builtins::trunc_monoid(*k, ring),
                    "boolean" => builtins::boolean_monoid(ring),
                    "zero" => Ok(semiexact::zero_module(ring)),
                    other => Err(semiexact::Error::UnsupportedBuiltin(format!(
                        "semimodule family '{other}'"
                    ))),
                };
                let m = built.map_err(|e| lift(&format!("semimodule '{name}'"), e))?;
                // rename so diagnostics use the document's name
                Arc::new(Semimodule { name: name.clone(), ..(*m).clone() })
            }
            SemimoduleSpec::Tables { add, act, .. } => {
                Semimodule::from_tables(name.clone(), ring, add.clone(), act.clone())
                    .map_err(|e| lift(&format!("semimodule '{name}'"), e))?
            }
        };
        semimodules.insert(name.clone(), module);
    }

    let mut morphisms = BTreeMap::new();
    for (name, spec) in &raw.morphisms {
        let dom = semimodules.get(&spec.dom).ok_or_else(|| {
            DocError::Reference(format!(
                "morphism '{name}' references unknown semimodule '{}'",
                spec.dom
            ))
        })?;
        let cod = semimodules.get(&spec.cod).ok_or_else(|| {
            DocError::Reference(format!(
                "morphism '{name}' references unknown semimodule '{}'",
                spec.cod
            ))
        })?;
        let f = validate_morphism(name.clone(), dom.clone(), cod.clone(), spec.map.clone())
            .map_err(|e| lift(&format!("morphism '{name}'"), e))?;
        morphisms.insert(name.clone(), f);
    }

    let mut sequences = BTreeMap::new();
    for (name, spec) in &raw.sequences {
        let mut ms = Vec::with_capacity(spec.morphisms.len());
        for m in &spec.morphisms {
            ms.push(
                morphisms
                    .get(m)
                    .ok_or_else(|| {
                        DocError::Reference(format!(
                            "sequence '{name}' references unknown morphism '{m}'"
                        ))
                    })?
                    .clone(),
            );
        }
        let seq = Sequence::new(ms, spec.pad_left, spec.pad_right)
            .map_err(|e| lift(&format!("sequence '{name}'"), e))?;
        sequences.insert(name.clone(), seq);
    }

    let mut diagrams = BTreeMap::new();
    for (name, spec) in &raw.diagrams {
        let objects = spec
            .objects
            .iter()
            .map(|row| {
                row.iter()
                    .map(|o| {
                        semimodules.get(o).cloned().ok_or_else(|| {
                            DocError::Reference(format!(
                                "diagram '{name}' references unknown semimodule '{o}'"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fetch_grid = |grid: &Vec<Vec<String>>| -> Result<Vec<Vec<Morphism>>, DocError> {
            grid.iter()
                .map(|row| {
                    row.iter()
                        .map(|m| {
                            morphisms.get(m).cloned().ok_or_else(|| {
                                DocError::Reference(format!(
                                    "diagram '{name}' references unknown morphism '{m}'"
                                ))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let d = Diagram::new(objects, fetch_grid(&spec.horiz)?, fetch_grid(&spec.vert)?)
            .map_err(|e| lift(&format!("diagram '{name}'"), e))?;
        diagrams.insert(name.clone(), d);
    }

    Ok(ResolvedDocument { raw, semirings, semimodules, morphisms, sequences, diagrams })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        let path =
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
        std::fs::read_to_string(path).unwrap()
    }

    #[test]
    fn round_trip_is_identity() {
        let parsed = parse_document(&fixture("basic.json")).unwrap();
        let serialized = serialize_document(&parsed.raw);
        let reparsed = parse_document(&serialized).unwrap();
        assert_eq!(reparsed.raw, parsed.raw);
        assert_eq!(serialize_document(&reparsed.raw), serialized);
    }

    #[test]
    fn error_classes_are_distinct() {
        assert!(matches!(parse_document("{"), Err(DocError::Syntax(_))));
        assert!(matches!(parse_document(&fixture("ragged.json")), Err(DocError::Syntax(_))));
        assert!(matches!(parse_document(&fixture("badref.json")), Err(DocError::Reference(_))));
        assert!(matches!(
            parse_document(&fixture("badaxiom.json")),
            Err(DocError::Validation(_))
        ));
    }

    #[test]
    fn resolved_entities_are_usable() {
        let doc = parse_document(&fixture("basic.json")).unwrap();
        assert_eq!(doc.semirings["R"].order, 4);
        assert_eq!(doc.semimodules["Z4"].order, 4);
        assert_eq!(doc.morphisms["g"].map, vec![0, 1, 0, 1]);
        assert_eq!(doc.sequences["s1"].morphisms.len(), 2);
        assert_eq!(doc.diagrams["d1"].rows, 2);
    }
}
