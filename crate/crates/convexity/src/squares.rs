use hhs_coarse::sets::diameter_unchecked;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::{density, image, orthogonal_pairs};
use crate::error::Result;
use crate::frame::{Frame, WindowInfo};
use crate::gate::GateContext;
use crate::subset::SubsetSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDefect {
    pub u: String,
    pub v: String,
    /// Least `R` with `π_U(A) ⊆ N_R(π_U(𝔤_A(B)))`.
    pub density_u: u32,
    /// Least `R` with `π_V(B) ⊆ N_R(π_V(𝔤_B(A)))`.
    pub density_v: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillReport {
    pub window: WindowInfo,
    /// Worst pair defect `max_{U⊥V} min(density_u, density_v)` on each window.
    pub defect_half: u32,
    pub defect_full: u32,
    /// Least `T` such that some side is within distance strictly less than
    /// `T` everywhere; present when the defect stays bounded.
    pub t: Option<u32>,
    /// `max_{U⊥V} min(diam_U(A), diam_V(B))`.
    pub k: u32,
    /// Worst pairs on the full window, largest first.
    pub pairs: Vec<SquareDefect>,
    pub witness: Option<SquareDefect>,
    pub passes: bool,
}

const LISTED_PAIRS: usize = 8;

fn window_defects(m: &HierarchicalModel, a: &[usize], b: &[usize]) -> Vec<(u32, usize, usize, u32, u32)> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ga = GateContext::new(m, a).image(b);
    let gb = GateContext::new(m, b).image(a);
    let pairs = orthogonal_pairs(m);
    let mut side_a = vec![None; m.domain_count()];
    let mut side_b = vec![None; m.domain_count()];
    let mut out = Vec::new();
    for (u, v) in pairs {
        let du = *side_a[u].get_or_insert_with(|| density(m.coord(u), &image(m, u, &ga).expect("gate image nonempty"), &image(m, u, a).expect("nonempty")));
        let dv = *side_b[v].get_or_insert_with(|| density(m.coord(v), &image(m, v, &gb).expect("gate image nonempty"), &image(m, v, b).expect("nonempty")));
        out.push((du.min(dv), u, v, du, dv));
    }
    out.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    out
}

/// Measures how far the gates of `A` and `B` onto each other fail to fill
/// each orthogonal square, on the half and full windows.
pub fn fill_all_squares(m: &HierarchicalModel, a: &SubsetSpec, b: &SubsetSpec, frame: &Frame) -> Result<FillReport> {
    let (am, bm) = (a.members.to_usizes(), b.members.to_usizes());
    let [h, _] = frame.scales();
    let half = window_defects(m, &frame.restrict(&am, h), &frame.restrict(&bm, h));
    let full = window_defects(m, &am, &bm);
    let worst = |t: &[(u32, usize, usize, u32, u32)]| t.first().map_or(0, |x| x.0);
    let (defect_half, defect_full) = (worst(&half), worst(&full));
    let name = |u: usize| m.domains().name(u).to_string();
    let pairs: Vec<SquareDefect> = full
        .iter()
        .filter(|x| x.0 > 0)
        .take(LISTED_PAIRS)
        .map(|&(_, u, v, du, dv)| SquareDefect { u: name(u), v: name(v), density_u: du, density_v: dv })
        .collect();
    let diam = |members: &[usize], u: usize| diameter_unchecked(m.coord(u), image(m, u, members).expect("nonempty").members());
    let (mut diam_a, mut diam_b) = (vec![None; m.domain_count()], vec![None; m.domain_count()]);
    let mut k = 0;
    for (u, v) in orthogonal_pairs(m) {
        let du = *diam_a[u].get_or_insert_with(|| diam(&am, u));
        let dv = *diam_b[v].get_or_insert_with(|| diam(&bm, v));
        k = k.max(du.min(dv));
    }
    let passes = !frame.grows(defect_half, defect_full);
    Ok(FillReport {
        window: frame.info(m),
        defect_half,
        defect_full,
        t: passes.then_some(defect_full + 1),
        k,
        witness: if passes { None } else { pairs.first().cloned() },
        pairs,
        passes,
    })
}
