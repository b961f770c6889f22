//! Instance documents: named universes, relations, mappings and sets in one
//! JSON object.
//!
//! ```json
//! {
//!   "universes": { "U": ["x", "y", "z"], "V": ["a", "b"] },
//!   "relations": { "R": { "universe": "U", "pairs": [["x", "y"]] } },
//!   "mappings":  { "f": { "domain": "U", "codomain": "V",
//!                         "map": { "x": "a", "y": "b", "z": "b" } } },
//!   "sets":      { "X": { "universe": "U", "members": ["z"] } }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use gapspace::propcheck::Instance;
use gapspace::{BinaryRelation, FiniteMapping, Subset, Universe};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A JSON object whose keys must be unique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct UniqueMap<V>(pub BTreeMap<String, V>);

impl<V> Default for UniqueMap<V> {
    fn default() -> Self {
        UniqueMap(BTreeMap::new())
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct UniqueVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for UniqueVisitor<V> {
            type Value = UniqueMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with unique keys")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut map = BTreeMap::new();
                while let Some(key) = access.next_key::<String>()? {
                    if map.contains_key(&key) {
                        return Err(de::Error::custom(format!("duplicate name `{key}`")));
                    }
                    let value = access.next_value()?;
                    map.insert(key, value);
                }
                Ok(UniqueMap(map))
            }
        }

        deserializer.deserialize_map(UniqueVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDecl {
    pub universe: String,
    pub pairs: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingDecl {
    pub domain: String,
    pub codomain: String,
    pub map: UniqueMap<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDecl {
    pub universe: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default)]
    pub universes: UniqueMap<Vec<String>>,
    #[serde(default)]
    pub relations: UniqueMap<RelationDecl>,
    #[serde(default)]
    pub mappings: UniqueMap<MappingDecl>,
    #[serde(default)]
    pub sets: UniqueMap<SetDecl>,
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Serializes a law instance as `U`, `V`, `R`, `f`, and when present
    /// `Q` and `X`.
    pub fn from_instance(instance: &Instance) -> Self {
        let f = &instance.mapping;
        let mut doc = InstanceDocument::default();
        doc.universes
            .0
            .insert("U".into(), f.domain().labels().to_vec());
        doc.universes
            .0
            .insert("V".into(), f.codomain().labels().to_vec());
        let relation_decl = |r: &BinaryRelation| RelationDecl {
            universe: if r.universe().same_as(f.domain()) {
                "U"
            } else {
                "V"
            }
            .into(),
            pairs: r
                .label_pairs()
                .into_iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        };
        doc.relations
            .0
            .insert("R".into(), relation_decl(&instance.relation));
        if let Some(q) = &instance.second {
            doc.relations.0.insert("Q".into(), relation_decl(q));
        }
        let map = (0..f.domain().len())
            .map(|x| {
                (
                    f.domain().label(x).to_string(),
                    f.codomain().label(f.apply(x)).to_string(),
                )
            })
            .collect();
        doc.mappings.0.insert(
            "f".into(),
            MappingDecl {
                domain: "U".into(),
                codomain: "V".into(),
                map: UniqueMap(map),
            },
        );
        if let Some(x) = &instance.subset {
            doc.sets.0.insert(
                "X".into(),
                SetDecl {
                    universe: "U".into(),
                    members: x.labels().into_iter().map(String::from).collect(),
                },
            );
        }
        doc
    }
}

fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A document with every name resolved to a library value.
#[derive(Debug, Clone)]
pub struct Model {
    pub universes: BTreeMap<String, Universe>,
    pub relations: BTreeMap<String, BinaryRelation>,
    pub mappings: BTreeMap<String, FiniteMapping>,
    pub sets: BTreeMap<String, Subset>,
}

/// Resolution errors point at the first occurrence of the offending name in
/// the source text.
struct Locator<'a> {
    source: &'a str,
}

impl Locator<'_> {
    fn error(&self, name: &str, message: String) -> CliError {
        let needle = format!("\"{name}\"");
        let (line, column) = match self.source.find(&needle) {
            Some(offset) => {
                let before = &self.source[..offset];
                let line = before.matches('\n').count() + 1;
                let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                (line, column)
            }
            None => (0, 0),
        };
        CliError::Resolve {
            line,
            column,
            message,
        }
    }
}

impl Model {
    pub fn from_source(source: &str) -> Result<Self, CliError> {
        let doc = InstanceDocument::parse(source)?;
        Self::resolve(&doc, source)
    }

    pub fn resolve(doc: &InstanceDocument, source: &str) -> Result<Self, CliError> {
        let at = Locator { source };
        let mut universes = BTreeMap::new();
        for (name, labels) in &doc.universes.0 {
            if let Some(bad) = labels.iter().find(|l| !is_valid_label(l)) {
                return Err(at.error(bad, format!("universe `{name}`: invalid label `{bad}`")));
            }
            let u = Universe::new(labels.iter().cloned())
                .map_err(|e| at.error(name, format!("universe `{name}`: {e}")))?;
            universes.insert(name.clone(), u);
        }
        let universe = |owner: &str, name: &str| {
            universes.get(name).cloned().ok_or_else(|| {
                at.error(
                    name,
                    format!("`{owner}` refers to unknown universe `{name}`"),
                )
            })
        };

        let mut relations = BTreeMap::new();
        for (name, decl) in &doc.relations.0 {
            let u = universe(name, &decl.universe)?;
            let r = BinaryRelation::from_pairs(&u, decl.pairs.iter().map(|[a, b]| (a, b)))
                .map_err(|e| at.error(name, format!("relation `{name}`: {e}")))?;
            relations.insert(name.clone(), r);
        }

        let mut mappings = BTreeMap::new();
        for (name, decl) in &doc.mappings.0 {
            let domain = universe(name, &decl.domain)?;
            let codomain = universe(name, &decl.codomain)?;
            let f = FiniteMapping::from_labels(&domain, &codomain, &decl.map.0)
                .map_err(|e| at.error(name, format!("mapping `{name}`: {e}")))?;
            mappings.insert(name.clone(), f);
        }

        let mut sets = BTreeMap::new();
        for (name, decl) in &doc.sets.0 {
            let u = universe(name, &decl.universe)?;
            let s = Subset::from_labels(&u, &decl.members)
                .map_err(|e| at.error(name, format!("set `{name}`: {e}")))?;
            sets.insert(name.clone(), s);
        }

        Ok(Model {
            universes,
            relations,
            mappings,
            sets,
        })
    }

    pub fn relation(&self, name: &str) -> Result<&BinaryRelation, CliError> {
        self.relations
            .get(name)
            .ok_or_else(|| CliError::UnknownName {
                kind: "relation",
                name: name.into(),
            })
    }

    pub fn mapping(&self, name: &str) -> Result<&FiniteMapping, CliError> {
        self.mappings
            .get(name)
            .ok_or_else(|| CliError::UnknownName {
                kind: "mapping",
                name: name.into(),
            })
    }

    pub fn set(&self, name: &str) -> Result<&Subset, CliError> {
        self.sets.get(name).ok_or_else(|| CliError::UnknownName {
            kind: "set",
            name: name.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAP: &str = r#"{
  "universes": { "U": ["x", "y", "z"], "V": ["a", "b"] },
  "relations": { "R": { "universe": "U", "pairs": [["x", "y"]] } },
  "mappings": { "f": { "domain": "U", "codomain": "V", "map": { "x": "a", "y": "b", "z": "b" } } },
  "sets": { "X": { "universe": "U", "members": ["z"] } }
}"#;

    #[test]
    fn resolves_a_small_document() {
        let model = Model::from_source(GAP).unwrap();
        assert_eq!(model.relation("R").unwrap().len(), 1);
        assert_eq!(model.mapping("f").unwrap().targets(), &[0, 1, 1]);
        assert_eq!(model.set("X").unwrap().labels(), vec!["z"]);
        assert!(matches!(
            model.set("Y"),
            Err(CliError::UnknownName { kind: "set", .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err =
            InstanceDocument::parse("{\n  \"universes\": {\n    \"U\": [\"a\" \"b\"]\n  }\n}")
                .unwrap_err();
        let CliError::Parse { line, column, .. } = err else {
            panic!()
        };
        assert_eq!((line, column), (3, 15));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let text = r#"{ "universes": { "U": ["a"], "U": ["b"] } }"#;
        let err = InstanceDocument::parse(text).unwrap_err();
        assert!(err.to_string().contains("duplicate name `U`"), "{err}");
    }

    #[test]
    fn dangling_references_are_located() {
        let text = "{\n  \"universes\": { \"U\": [\"a\"] },\n  \"relations\": { \"R\": { \"universe\": \"W\", \"pairs\": [] } }\n}";
        let err = Model::from_source(text).unwrap_err();
        let CliError::Resolve {
            line,
            column,
            message,
        } = err
        else {
            panic!()
        };
        assert_eq!((line, column), (3, 37));
        assert!(message.contains("`W`"));
    }

    #[test]
    fn partial_mappings_and_bad_labels() {
        let partial = GAP.replace(r#", "z": "b""#, "");
        assert!(Model::from_source(&partial)
            .unwrap_err()
            .to_string()
            .contains("no image assigned to `z`"));
        let bad = GAP.replace(r#""z"]"#, r#""9z"]"#);
        assert!(Model::from_source(&bad)
            .unwrap_err()
            .to_string()
            .contains("invalid label"));
        let unknown_field = GAP.replace("\"sets\"", "\"extras\"");
        assert!(InstanceDocument::parse(&unknown_field).is_err());
    }
}
