//! JSON model files with explicit tables.

use std::collections::BTreeMap;

use hhs_coarse::sets::VertexSet;
use hhs_coarse::FiniteGraph;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::{HierarchicalModel, ProjectionTable};
use crate::relations::DomainSet;

pub const MODEL_FORMAT: &str = "hhs-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoPointEntry {
    pub from: String,
    pub to: String,
    pub set: VertexSet,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoMapEntry {
    /// The larger domain.
    pub from: String,
    /// The nested domain.
    pub to: String,
    pub table: ProjectionTable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExplicitModel {
    pub format: String,
    pub version: u32,
    #[serde(default)]
    pub header: Vec<String>,
    pub e: u32,
    pub ambient: FiniteGraph,
    pub domains: DomainSet,
    /// Coordinate spaces in domain order.
    pub coords: Vec<FiniteGraph>,
    /// Projections in domain order.
    pub pi: Vec<ProjectionTable>,
    pub rho_point: Vec<RhoPointEntry>,
    pub rho_map: Vec<RhoMapEntry>,
    #[serde(default)]
    pub unchecked_minimal: Vec<String>,
}

impl ExplicitModel {
    pub fn from_model(m: &HierarchicalModel, header: Vec<String>) -> Self {
        let d = m.domains();
        let n = d.len();
        let mut rho_point = Vec::new();
        for v in 0..n {
            for u in 0..n {
                if let Some(s) = m.rho_point(v, u) {
                    rho_point.push(RhoPointEntry { from: d.name(v).into(), to: d.name(u).into(), set: s.clone() });
                }
            }
        }
        let rho_map = m
            .rho_maps()
            .map(|((u, v), t)| RhoMapEntry { from: d.name(u).into(), to: d.name(v).into(), table: t.clone() })
            .collect();
        ExplicitModel {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            header,
            e: m.e(),
            ambient: m.ambient().clone(),
            domains: d.clone(),
            coords: m.coords().to_vec(),
            pi: (0..n).map(|u| m.pi(u).clone()).collect(),
            rho_point,
            rho_map,
            unchecked_minimal: (0..n).filter(|&u| m.is_unchecked_minimal(u)).map(|u| d.name(u).to_string()).collect(),
        }
    }

    pub fn into_model(self) -> Result<HierarchicalModel> {
        if self.format != MODEL_FORMAT {
            return Err(ModelError::Format(format!("expected format `{MODEL_FORMAT}`, found `{}`", self.format)));
        }
        if self.version != MODEL_VERSION {
            return Err(ModelError::Format(format!("unsupported version {}", self.version)));
        }
        let d = &self.domains;
        let mut rp = BTreeMap::new();
        for e in self.rho_point {
            if rp.insert((d.id(&e.from)?, d.id(&e.to)?), e.set).is_some() {
                return Err(ModelError::Format(format!("ρ from {} to {} given twice", e.from, e.to)));
            }
        }
        let mut rm = BTreeMap::new();
        for e in self.rho_map {
            if rm.insert((d.id(&e.from)?, d.id(&e.to)?), e.table).is_some() {
                return Err(ModelError::Format(format!("ρ map from {} to {} given twice", e.from, e.to)));
            }
        }
        let flags: Vec<usize> = self.unchecked_minimal.iter().map(|s| d.id(s)).collect::<Result<_>>()?;
        let mut m = HierarchicalModel::new(self.ambient, self.domains, self.coords, self.pi, rp, rm, self.e)?;
        for u in flags {
            m.mark_unchecked_minimal(u)?;
        }
        Ok(m)
    }
}

pub fn write_model(m: &HierarchicalModel, header: Vec<String>) -> String {
    serde_json::to_string(&ExplicitModel::from_model(m, header)).expect("model serialises")
}

pub fn read_model(text: &str) -> Result<HierarchicalModel> {
    let e: ExplicitModel = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    e.into_model()
}
