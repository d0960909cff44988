//! JSON instance files.
//!
//! ```json
//! {
//!   "relations": {"OR": {"arity": 2, "tuples": ["01", "10", "11"]}},
//!   "variables": ["x", "y"],
//!   "constraints": [{"rel": "OR", "scope": ["x", "y"]}],
//!   "assignment": {"x": 1, "y": 1},
//!   "k": 1,
//!   "metadata": {"generator": "..."}
//! }
//! ```
//!
//! The leftmost character of a tuple bitstring is coordinate 1. Malformed
//! relations are rejected during deserialization, so the error carries the
//! line and column of the offending entry.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula, LsInstance};
use crate::relation::Relation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRelation", into = "RawRelation")]
pub struct RelationSpec {
    pub arity: usize,
    pub tuples: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawRelation {
    arity: usize,
    tuples: Vec<String>,
}

impl TryFrom<RawRelation> for RelationSpec {
    type Error = String;

    fn try_from(raw: RawRelation) -> std::result::Result<Self, String> {
        // Validate eagerly; the name is attached later.
        Relation::from_bitstrings("relation", raw.arity, &raw.tuples).map_err(|e| e.to_string())?;
        Ok(Self {
            arity: raw.arity,
            tuples: raw.tuples,
        })
    }
}

impl From<RelationSpec> for RawRelation {
    fn from(spec: RelationSpec) -> Self {
        Self {
            arity: spec.arity,
            tuples: spec.tuples,
        }
    }
}

impl RelationSpec {
    pub fn from_relation(r: &Relation) -> Self {
        Self {
            arity: r.arity(),
            tuples: r.tuples().iter().map(|&t| r.bitstring(t)).collect(),
        }
    }

    pub fn to_relation(&self, name: &str) -> Result<Relation> {
        Relation::from_bitstrings(name, self.arity, &self.tuples)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub rel: String,
    pub scope: Vec<String>,
}

/// 0 or 1 in the assignment map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Bit(pub bool);

impl TryFrom<u8> for Bit {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Bit(false)),
            1 => Ok(Bit(true)),
            _ => Err(format!("assignment value must be 0 or 1, got {v}")),
        }
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        u8::from(b.0)
    }
}

/// An instance file as written on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub relations: IndexMap<String, RelationSpec>,
    pub variables: Vec<String>,
    pub constraints: Vec<ConstraintSpec>,
    pub assignment: IndexMap<String, Bit>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

/// Just the relation declarations; other fields are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationsFile {
    pub relations: IndexMap<String, RelationSpec>,
}

impl RelationsFile {
    pub fn to_relations(&self) -> Result<Vec<Relation>> {
        self.relations.iter().map(|(name, spec)| spec.to_relation(name)).collect()
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &LsInstance, metadata: Option<Value>) -> Self {
        let f = inst.formula();
        Self {
            relations: f
                .relations
                .iter()
                .map(|r| (r.name().to_string(), RelationSpec::from_relation(r)))
                .collect(),
            variables: f.variables.clone(),
            constraints: f
                .constraints
                .iter()
                .map(|c| ConstraintSpec {
                    rel: f.relations[c.relation].name().to_string(),
                    scope: c.scope.iter().map(|&v| f.variables[v].clone()).collect(),
                })
                .collect(),
            assignment: f
                .variables
                .iter()
                .enumerate()
                .map(|(v, name)| (name.clone(), Bit(inst.base().get(v))))
                .collect(),
            k: inst.k(),
            metadata,
        }
    }

    /// Resolves names and validates the instance.
    pub fn to_instance(&self) -> Result<LsInstance> {
        let mut f = Formula::new();
        for (name, spec) in &self.relations {
            f.add_relation(spec.to_relation(name)?)?;
        }
        for name in &self.variables {
            f.add_variable(name.clone())?;
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let rel = f
                .relation_id(&c.rel)
                .ok_or_else(|| Error::Format(format!("constraint {i}: unknown relation {}", c.rel)))?;
            let scope = c
                .scope
                .iter()
                .map(|name| {
                    f.variable_id(name)
                        .ok_or_else(|| Error::Format(format!("constraint {i}: unknown variable {name}")))
                })
                .collect::<Result<Vec<_>>>()?;
            f.add_constraint(rel, scope)?;
        }
        if let Some(name) = self.assignment.keys().find(|n| f.variable_id(n).is_none()) {
            return Err(Error::Format(format!("assignment to unknown variable {name}")));
        }
        let bits = self
            .variables
            .iter()
            .map(|name| {
                self.assignment
                    .get(name)
                    .map(|b| b.0)
                    .ok_or_else(|| Error::Format(format!("variable {name} has no assigned value")))
            })
            .collect::<Result<Vec<_>>>()?;
        LsInstance::new(f, Assignment::new(bits), self.k)
    }
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_instance(text: &str) -> Result<LsInstance> {
    parse_instance_file(text)?.to_instance()
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<(LsInstance, Option<Value>)> {
    let file = parse_instance_file(&fs::read_to_string(path)?)?;
    let inst = file.to_instance()?;
    Ok((inst, file.metadata))
}

pub fn parse_relations(text: &str) -> Result<Vec<Relation>> {
    let file: RelationsFile = serde_json::from_str(text)?;
    file.to_relations()
}

pub fn read_relations(path: impl AsRef<Path>) -> Result<Vec<Relation>> {
    parse_relations(&fs::read_to_string(path)?)
}

pub fn instance_to_string(inst: &LsInstance, metadata: Option<Value>) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(inst, metadata))
        .expect("instance files always serialize");
    s.push('\n');
    s
}

pub fn write_instance(path: impl AsRef<Path>, inst: &LsInstance, metadata: Option<Value>) -> Result<()> {
    fs::write(path, instance_to_string(inst, metadata))?;
    Ok(())
}
