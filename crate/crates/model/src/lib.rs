//! Finite hierarchical spaces: domains with nesting and orthogonality,
//! coordinate spaces, projections and relative projections, together with an
//! auditor that measures the least constant for each axiom.

pub mod audit;
pub mod error;
pub mod format;
pub mod hierarchy;
pub mod model;
pub mod relations;
pub mod report;
pub mod tuples;

pub use audit::{audit, audited_constant, uniqueness_thetas, AuditOptions};
pub use error::{ModelError, Result};
pub use format::{read_model, write_model, ExplicitModel};
pub use hierarchy::Hierarchy;
pub use model::{HierarchicalModel, ProjectionTable};
pub use relations::{audit_relations, DomainSet, Relation, RelationAudit};
pub use report::{AxiomEntry, AxiomReport, Bound, Witness};
pub use tuples::{infer_transverse, is_consistent_tuple, orthogonal_rho_proximity, realize_tuple, CoordinateTuple};
