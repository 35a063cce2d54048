//! Work limits, with overrides from the environment and the command line.

use hhs_convexity::Budgets;
use hhs_model::AuditOptions;
use serde::Serialize;

use crate::error::{input, Result};

/// Comma-separated `key=value` overrides, applied before `--budget` flags.
pub const BUDGET_ENV: &str = "HHS_BUDGETS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunBudgets {
    #[serde(flatten)]
    pub convexity: Budgets,
    pub audit_qc_pairs: usize,
    pub large_links_pairs: usize,
    pub realisation_tuples: usize,
    pub uniqueness_pairs: usize,
}

impl Default for RunBudgets {
    fn default() -> Self {
        let a = AuditOptions::default();
        RunBudgets {
            convexity: Budgets::default(),
            audit_qc_pairs: a.qc_pair_budget,
            large_links_pairs: a.large_links_pair_budget,
            realisation_tuples: a.realisation_tuple_budget,
            uniqueness_pairs: a.uniqueness_pair_budget,
        }
    }
}

pub const KEYS: [&str; 8] = [
    "qc_pairs",
    "path_expansions",
    "path_pairs",
    "distance_rows",
    "audit_qc_pairs",
    "large_links_pairs",
    "realisation_tuples",
    "uniqueness_pairs",
];

impl RunBudgets {
    fn slot(&mut self, key: &str) -> Option<&mut usize> {
        Some(match key {
            "qc_pairs" => &mut self.convexity.qc_pairs,
            "path_expansions" => &mut self.convexity.path_expansions,
            "path_pairs" => &mut self.convexity.path_pairs,
            "distance_rows" => &mut self.convexity.distance_rows,
            "audit_qc_pairs" => &mut self.audit_qc_pairs,
            "large_links_pairs" => &mut self.large_links_pairs,
            "realisation_tuples" => &mut self.realisation_tuples,
            "uniqueness_pairs" => &mut self.uniqueness_pairs,
            _ => return None,
        })
    }

    /// Applies `key=value[,key=value…]`.  Values must be positive integers.
    pub fn apply(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| input(format!("budget `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| input(format!("budget `{item}` needs a positive integer")))?;
            let key = key.trim().replace('-', "_");
            *self
                .slot(&key)
                .ok_or_else(|| input(format!("unknown budget `{key}`; known: {}", KEYS.join(", "))))? = value;
        }
        Ok(())
    }

    pub fn resolve(env: Option<&str>, flags: &[String]) -> Result<Self> {
        let mut b = RunBudgets::default();
        if let Some(e) = env {
            b.apply(e)?;
        }
        for f in flags {
            b.apply(f)?;
        }
        Ok(b)
    }

    pub fn audit_options(&self) -> AuditOptions {
        AuditOptions {
            qc_pair_budget: self.audit_qc_pairs,
            large_links_pair_budget: self.large_links_pairs,
            realisation_tuple_budget: self.realisation_tuples,
            uniqueness_pair_budget: self.uniqueness_pairs,
            ..AuditOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_the_environment() {
        let b = RunBudgets::resolve(Some("path_pairs=7, qc-pairs=9"), &["path_pairs=11".into()]).unwrap();
        assert_eq!((b.convexity.path_pairs, b.convexity.qc_pairs), (11, 9));
        assert!(RunBudgets::resolve(Some("path_pairs=0"), &[]).is_err());
        assert!(RunBudgets::resolve(None, &["walks=3".into()]).is_err());
        assert!(RunBudgets::resolve(None, &["walks".into()]).is_err());
    }
}
