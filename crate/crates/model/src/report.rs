//! Audit report types.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::relations::RelationAudit;

/// A coarse constant that may be unbounded on the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    pub fn at_most(self, e: u32) -> bool {
        matches!(self, Bound::Finite(v) if v <= e)
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_u32(*v),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Bound::Finite(v)),
            Raw::S(s) if s == "inf" => Ok(Bound::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad bound `{s}`"))),
        }
    }
}

/// A concrete instance realising a measured value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub domains: Vec<String>,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coords: Vec<String>,
    pub value: Bound,
    pub detail: String,
}

impl Default for Bound {
    fn default() -> Self {
        Bound::Finite(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub holds_at_declared_e: bool,
    pub minimal_constant: Bound,
    pub witness: Option<Witness>,
    /// True when a budget cut the quantifier short; the constant is then a lower bound.
    pub partial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomEntry {
    pub fn new(axiom: &str, minimal: Bound, declared_e: u32, witness: Option<Witness>) -> Self {
        AxiomEntry {
            axiom: axiom.to_string(),
            holds_at_declared_e: minimal.at_most(declared_e),
            minimal_constant: minimal,
            witness,
            partial: false,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_partial(mut self, partial: bool) -> Self {
        self.partial = partial;
        self
    }

    /// Re-evaluates `holds_at_declared_e` against another constant.
    pub fn rejudge(&mut self, e: u32) {
        self.holds_at_declared_e = self.minimal_constant.at_most(e);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessSample {
    pub kappa: u32,
    pub theta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub declared_e: u32,
    /// Largest finite minimal constant over the entries, and at least 1;
    /// `None` when some entry is unbounded.
    pub audited_e: Option<u32>,
    pub relations: RelationAudit,
    pub complexity: Option<usize>,
    pub entries: Vec<AxiomEntry>,
    pub uniqueness: Vec<UniquenessSample>,
    #[serde(default)]
    pub uniqueness_partial: bool,
    pub notes: Vec<String>,
}

impl AxiomReport {
    /// Every relational clause and every entry holds at the declared constant.
    pub fn passes(&self) -> bool {
        self.relations.holds() && self.entries.iter().all(|e| e.holds_at_declared_e)
    }

    pub fn partial(&self) -> bool {
        self.uniqueness_partial || self.entries.iter().any(|e| e.partial)
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failures(&self) -> Vec<&AxiomEntry> {
        self.entries.iter().filter(|e| !e.holds_at_declared_e).collect()
    }

    /// Re-judges every entry against `e` and records it as the declared constant.
    pub fn rejudge(&mut self, e: u32) {
        self.declared_e = e;
        for entry in &mut self.entries {
            entry.rejudge(e);
        }
    }
}
