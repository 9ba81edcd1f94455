//! Diagram JSON:
//! `{"index_set": [1,2,3], "groups": {"": {...}, "1": {...}, ...},
//!   "homs": {"->1": [...], "1->12": [...], ...}}`.
//!
//! A group object carrying an `"infinite"` field describes an infinite
//! group and is rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CorsonDiagram, DiagramError, Label, Subset, TriangleDiagram};
use crate::group::{Elem, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinite: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub index_set: Vec<Label>,
    pub groups: BTreeMap<String, GroupEntry>,
    #[serde(default)]
    pub homs: BTreeMap<String, Vec<Elem>>,
}

fn describe(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl DiagramJson {
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        serde_json::from_str(text).map_err(|e| DiagramError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn into_diagram(self) -> Result<CorsonDiagram, DiagramError> {
        let mut groups = BTreeMap::new();
        for (key, entry) in self.groups {
            let subset = Subset::from_key(&key).ok_or_else(|| DiagramError::UnexpectedGroup(key.clone()))?;
            if let Some(v) = &entry.infinite {
                return Err(DiagramError::InfiniteInput {
                    key,
                    description: describe(v),
                });
            }
            let (Some(order), Some(mul)) = (entry.order, entry.mul) else {
                return Err(DiagramError::MissingGroup(key));
            };
            let g = FiniteGroup::from_json(crate::group::GroupJson {
                order,
                mul,
                names: entry.names,
            })
            .map_err(|source| DiagramError::Group {
                key: key.clone(),
                source,
            })?;
            groups.insert(subset, g);
        }
        let mut homs = BTreeMap::new();
        for (key, map) in self.homs {
            let parsed = key
                .split_once("->")
                .and_then(|(a, b)| Some((Subset::from_key(a)?, Subset::from_key(b)?)));
            let Some(k) = parsed else {
                return Err(DiagramError::UnexpectedHom(key));
            };
            homs.insert(k, map);
        }
        CorsonDiagram::new(self.index_set, groups, homs)
    }
}

impl CorsonDiagram {
    pub fn from_json_str(text: &str) -> Result<Self, DiagramError> {
        DiagramJson::parse(text)?.into_diagram()
    }

    /// JSON form; composed `∅ → {i,j}` maps are left out.
    pub fn to_json(&self) -> DiagramJson {
        let groups = self
            .groups()
            .iter()
            .map(|(s, g)| {
                let j = g.to_json();
                (
                    s.key(),
                    GroupEntry {
                        order: Some(j.order),
                        mul: Some(j.mul),
                        names: j.names,
                        infinite: None,
                    },
                )
            })
            .collect();
        let homs = self
            .homs()
            .iter()
            .filter(|((a, b), _)| !(a.is_empty() && b.len() == 2 && self.is_derived(b)))
            .map(|((a, b), h)| (super::hom_key(a, b), h.map().to_vec()))
            .collect();
        DiagramJson {
            index_set: self.index_set().to_vec(),
            groups,
            homs,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("diagram JSON serializes")
    }
}

impl TriangleDiagram {
    pub fn from_json_str(text: &str) -> Result<Self, DiagramError> {
        TriangleDiagram::new(CorsonDiagram::from_json_str(text)?)
    }
}
