use hhs_coarse::Rational64;
use serde::{Deserialize, Serialize};

use crate::frame::Frame;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeKind {
    /// Realisation gauge: coordinate defect `R` to ambient distance.
    Kappa,
    /// Hierarchy-path gauge: `λ` to the farthest path point.
    Lambda,
    /// Strong convexity gauge: `λ` to the farthest quasigeodesic point.
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeSample {
    #[serde(with = "hhs_coarse::rational")]
    pub input: Rational64,
    /// Value on the half-radius sub-window.
    pub half: u32,
    /// Value on the whole window.
    pub full: u32,
    pub unbounded: bool,
    pub witness: Option<String>,
}

/// A gauge sampled at finitely many inputs, as a monotone envelope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeTable {
    pub kind: GaugeKind,
    pub samples: Vec<GaugeSample>,
    /// Some value came from a budget-limited search and is a lower bound.
    pub partial: bool,
}

impl GaugeTable {
    /// Sorts by input, replaces both columns by their running maxima and
    /// applies the growth test.
    pub fn new(kind: GaugeKind, frame: &Frame, mut raw: Vec<(Rational64, u32, u32, Option<String>)>, partial: bool) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let (mut half_max, mut full_max) = (0, 0);
        let samples = raw
            .into_iter()
            .map(|(input, half, full, witness)| {
                half_max = half_max.max(half);
                full_max = full_max.max(full);
                GaugeSample { input, half: half_max, full: full_max, unbounded: frame.grows(half_max, full_max), witness }
            })
            .collect();
        GaugeTable { kind, samples, partial }
    }

    pub fn bounded(&self) -> bool {
        self.samples.iter().all(|s| !s.unbounded)
    }

    /// Full-window value at `input`.
    pub fn value(&self, input: Rational64) -> Option<u32> {
        self.samples.iter().find(|s| s.input == input).map(|s| s.full)
    }

    pub fn first_unbounded(&self) -> Option<&GaugeSample> {
        self.samples.iter().find(|s| s.unbounded)
    }
}
