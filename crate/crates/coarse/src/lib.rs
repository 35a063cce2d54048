//! Finite-graph metric geometry: distances, set diameters, hyperbolicity,
//! quasiconvexity and discrete quasigeodesics.
//!
//! Every coarse constant is an exact integer or rational.

pub mod convex;
pub mod error;
pub mod graph;
pub mod hyperbolic;
pub mod interchange;
pub mod quasigeodesic;
pub mod sets;

pub use convex::{quasiconvexity_constant, quasiconvexity_constant_budget, QcOutcome};
pub use error::{CoarseError, Result};
pub use graph::FiniteGraph;
pub use hyperbolic::{hyperbolicity_delta, hyperbolicity_report, slim_constant, HyperbolicityReport};
pub use num_rational::Rational64;
pub use quasigeodesic::{is_quasigeodesic, is_unparametrized_quasigeodesic, DiscretePath};
pub use sets::{set_diameter, set_distance, VertexSet};

/// Distance between two vertices of `g`.
pub fn distance(g: &FiniteGraph, u: usize, v: usize) -> Result<u32> {
    g.distance(u, v)
}

/// Serde adapter writing a rational as the string `p/q` (or `p` when integral).
pub mod rational {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
    }

    /// Parses `p/q` or `p`, rejecting a zero denominator.
    pub fn parse(text: &str) -> Option<Rational64> {
        match text.split_once('/') {
            Some((p, q)) => {
                let q: i64 = q.trim().parse().ok()?;
                if q == 0 {
                    return None;
                }
                Some(Rational64::new(p.trim().parse().ok()?, q))
            }
            None => Some(Rational64::from_integer(text.trim().parse().ok()?)),
        }
    }
}
