use std::fmt;
use std::str::FromStr;

use hhs_coarse::VertexSet;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::error::{ConvexityError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Subgroup,
    Coset,
    Arbitrary,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Subgroup => "subgroup",
            Provenance::Coset => "coset",
            Provenance::Arbitrary => "arbitrary",
        })
    }
}

impl FromStr for Provenance {
    type Err = ConvexityError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subgroup" => Ok(Provenance::Subgroup),
            "coset" => Ok(Provenance::Coset),
            "arbitrary" => Ok(Provenance::Arbitrary),
            _ => Err(ConvexityError::Invalid(format!("unknown provenance `{s}`"))),
        }
    }
}

/// A nonempty set of ambient vertices of one model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSpec {
    pub name: String,
    pub provenance: Provenance,
    pub members: VertexSet,
}

impl SubsetSpec {
    pub fn new(
        m: &HierarchicalModel,
        name: &str,
        provenance: Provenance,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let members: Vec<usize> = members.into_iter().collect();
        if let Some(&v) = members.iter().find(|&&v| v >= m.ambient().len()) {
            return Err(ConvexityError::Vertex(v));
        }
        let members = VertexSet::from_usizes(members).map_err(|_| ConvexityError::EmptySubset(name.to_string()))?;
        Ok(SubsetSpec { name: name.to_string(), provenance, members })
    }

    /// The whole ambient space.
    pub fn whole(m: &HierarchicalModel) -> Self {
        SubsetSpec { name: "X".into(), provenance: Provenance::Arbitrary, members: VertexSet::all(m.ambient()) }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_usizes(&self) -> Vec<usize> {
        self.members.to_usizes()
    }

    /// Member labels, in vertex order.
    pub fn labels(&self, m: &HierarchicalModel) -> Vec<String> {
        self.members.iter().map(|v| m.ambient().label(v).to_string()).collect()
    }
}
