use hhs_coarse::sets::diameter_unchecked;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::{density, image, orthogonal_pairs};
use crate::error::Result;
use crate::frame::{Frame, WindowInfo};
use crate::subset::SubsetSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDichotomy {
    pub u: String,
    pub v: String,
    pub diam_u: u32,
    /// Least `R` with `π_V(W) ⊆ N_R(π_V(Y))`, `W` the window.
    pub density_v: u32,
}

impl PairDichotomy {
    /// Least `Θ` for which this pair satisfies the dichotomy.
    pub fn theta(&self) -> u32 {
        (self.diam_u + 1).min(self.density_v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub subset: String,
    pub window: WindowInfo,
    pub theta_half: u32,
    pub theta_full: u32,
    /// Least valid `Θ` on the full window, present when it stays bounded.
    pub theta: Option<u32>,
    /// Whether the dichotomy holds on the full window at each requested `Θ`.
    pub holds_at: Vec<(u32, bool)>,
    /// Pairs with a positive least `Θ`, largest first.
    pub pairs: Vec<PairDichotomy>,
    pub witness: Option<PairDichotomy>,
    pub passes: bool,
}

const LISTED_PAIRS: usize = 8;

fn window_pairs(m: &HierarchicalModel, members: &[usize], window: &[usize]) -> Vec<(usize, usize, u32, u32)> {
    if members.is_empty() {
        return Vec::new();
    }
    let (mut diam, mut dense) = (vec![None; m.domain_count()], vec![None; m.domain_count()]);
    let mut out = Vec::new();
    for (u, v) in orthogonal_pairs(m) {
        let du = *diam[u].get_or_insert_with(|| diameter_unchecked(m.coord(u), image(m, u, members).expect("nonempty").members()));
        let dv = *dense[v].get_or_insert_with(|| {
            density(m.coord(v), &image(m, v, members).expect("nonempty"), &image(m, v, window).expect("nonempty"))
        });
        out.push((u, v, du, dv));
    }
    out.sort_by(|x, y| (y.2 + 1).min(y.3).cmp(&(x.2 + 1).min(x.3)).then((x.0, x.1).cmp(&(y.0, y.1))));
    out
}

/// `Θ_r = max_{U⊥V} min(diam_U(Y_r) + 1, density of π_V(Y_r) in π_V(W_r))` on
/// the half and full windows.
pub fn orth_dichotomy(m: &HierarchicalModel, s: &SubsetSpec, frame: &Frame, thetas: &[u32]) -> Result<DichotomyReport> {
    let members = s.members.to_usizes();
    let levels = frame.levels();
    let ball = |r: u32| -> Vec<usize> { (0..levels.len()).filter(|&x| levels[x] <= r).collect() };
    let [h, f] = frame.scales();
    let half = window_pairs(m, &frame.restrict(&members, h), &ball(h));
    let full = window_pairs(m, &members, &ball(f));
    let worst = |t: &[(usize, usize, u32, u32)]| t.first().map_or(0, |x| (x.2 + 1).min(x.3));
    let (theta_half, theta_full) = (worst(&half), worst(&full));
    let pairs: Vec<PairDichotomy> = full
        .iter()
        .filter(|x| (x.2 + 1).min(x.3) > 0)
        .take(LISTED_PAIRS)
        .map(|&(u, v, du, dv)| PairDichotomy {
            u: m.domains().name(u).to_string(),
            v: m.domains().name(v).to_string(),
            diam_u: du,
            density_v: dv,
        })
        .collect();
    let passes = !frame.grows(theta_half, theta_full);
    Ok(DichotomyReport {
        subset: s.name.clone(),
        window: frame.info(m),
        theta_half,
        theta_full,
        theta: passes.then_some(theta_full),
        holds_at: thetas.iter().map(|&t| (t, theta_full <= t)).collect(),
        witness: if passes { None } else { pairs.first().cloned() },
        pairs,
        passes,
    })
}
