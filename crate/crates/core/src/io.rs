//! JSON file formats.
//!
//! A workspace file holds named monoids and named acts:
//!
//! ```json
//! {
//!   "monoids": { "S": { "size": 2, "identity": 0, "table": [[0, 1], [1, 1]] } },
//!   "acts":    { "A": { "monoid": "S", "size": 1, "table": [[0, 0]] } },
//!   "metadata": {}
//! }
//! ```
//!
//! An act's `monoid` is either the name of a monoid in the same file or an
//! inline monoid object. `zero` is optional on both and, when present, must
//! name a genuine zero.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::RightAct;
use crate::error::{Error, Result};
use crate::monoid::Monoid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDef {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
}

impl MonoidDef {
    pub fn build(&self) -> Result<Monoid> {
        if self.table.len() != self.size {
            return Err(Error::MalformedTable(format!(
                "size is {} but the table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        let m = Monoid::from_table(self.table.clone(), self.identity)?;
        if let Some(z) = self.zero {
            if m.zero() != Some(z) {
                return Err(Error::BadZero(z));
            }
        }
        Ok(m)
    }
}

impl From<&Monoid> for MonoidDef {
    fn from(m: &Monoid) -> Self {
        MonoidDef {
            size: m.size(),
            identity: m.identity(),
            table: m.rows(),
            zero: m.zero(),
        }
    }
}

/// Action table without its monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActTable {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
}

impl ActTable {
    pub fn build(&self, monoid: &Arc<Monoid>) -> Result<RightAct> {
        if self.table.len() != self.size {
            return Err(Error::MalformedTable(format!(
                "size is {} but the table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        let act = RightAct::from_table(Arc::clone(monoid), self.table.clone())?;
        match self.zero {
            Some(z) => act.with_zero(Some(z)),
            None => Ok(act),
        }
    }
}

impl From<&RightAct> for ActTable {
    fn from(a: &RightAct) -> Self {
        ActTable {
            size: a.size(),
            table: a.rows(),
            zero: a.zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Name(String),
    Inline(MonoidDef),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActDef {
    pub monoid: MonoidRef,
    #[serde(flatten)]
    pub body: ActTable,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub monoids: BTreeMap<String, MonoidDef>,
    #[serde(default)]
    pub acts: BTreeMap<String, ActDef>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub metadata: serde_json::Value,
}

/// A workspace with every table validated.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub monoids: BTreeMap<String, Arc<Monoid>>,
    pub acts: BTreeMap<String, Arc<RightAct>>,
    pub metadata: serde_json::Value,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))?;
        if !value.is_object() {
            return Err(Error::Invalid(
                "a workspace file must be a JSON object".into(),
            ));
        }
        serde_json::from_value(value)
            .map_err(|e| Error::Invalid(format!("malformed workspace: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    /// Validates every table. Errors name the offending structure.
    pub fn load(&self) -> Result<Workspace> {
        let mut monoids = BTreeMap::new();
        for (name, def) in &self.monoids {
            let m = def
                .build()
                .map_err(|e| annotate(e, &format!("monoid `{name}`")))?;
            monoids.insert(name.clone(), Arc::new(m));
        }
        let mut acts = BTreeMap::new();
        for (name, def) in &self.acts {
            let monoid = match &def.monoid {
                MonoidRef::Name(m) => monoids.get(m).cloned().ok_or_else(|| {
                    Error::Invalid(format!("act `{name}` references unknown monoid `{m}`"))
                })?,
                MonoidRef::Inline(d) => Arc::new(
                    d.build()
                        .map_err(|e| annotate(e, &format!("inline monoid of act `{name}`")))?,
                ),
            };
            let act = def
                .body
                .build(&monoid)
                .map_err(|e| annotate(e, &format!("act `{name}`")))?;
            acts.insert(name.clone(), Arc::new(act));
        }
        Ok(Workspace {
            monoids,
            acts,
            metadata: self.metadata.clone(),
        })
    }

    pub fn add_monoid(&mut self, name: &str, m: &Monoid) {
        self.monoids.insert(name.to_string(), MonoidDef::from(m));
    }

    pub fn add_act(&mut self, name: &str, monoid_name: &str, a: &RightAct) {
        self.acts.insert(
            name.to_string(),
            ActDef {
                monoid: MonoidRef::Name(monoid_name.to_string()),
                body: ActTable::from(a),
            },
        );
    }
}

/// Indented JSON with arrays of scalars kept on one line, so tables read as
/// rows.
pub fn to_pretty_json<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("value serializes");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out
}

fn write_value(out: &mut String, v: &serde_json::Value, depth: usize) {
    use serde_json::Value;
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Keeps validation variants intact so their witnesses survive; wraps the
/// free-form ones with the structure name.
fn annotate(e: Error, what: &str) -> Error {
    match e {
        Error::Invalid(msg) => Error::Invalid(format!("{what}: {msg}")),
        Error::MalformedTable(msg) => Error::MalformedTable(format!("{what}: {msg}")),
        other => other,
    }
}

pub fn load_path(path: &Path) -> Result<Workspace> {
    WorkspaceFile::read(path)?.load()
}
