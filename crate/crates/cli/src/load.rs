//! Model files, the closed forms behind zoo models, and subset arguments.

use std::path::Path;

use hhs_action::{orbit_ball, GroupHierarchy, GroupSpec};
use hhs_amalgam::{AmalgamData, Factor};
use hhs_convexity::{central_vertex, Frame, Provenance, SubsetSpec};
use hhs_model::{ExplicitModel, HierarchicalModel};
use hhs_zoo::f2xdxd::{self, F2xD2};
use hhs_zoo::grid::{self, Grid};
use hhs_zoo::tree::{self, FreeTree};
use hhs_zoo::{parse_reference, Family, ZooModel};
use serde::Serialize;

use crate::error::{input, CliError, Result};

pub struct Loaded {
    pub model: HierarchicalModel,
    pub header: Vec<String>,
    /// The rebuilt zoo model when the header names one.
    pub zoo: Option<ZooModel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelInfo {
    pub reference: Option<String>,
    pub vertices: usize,
    pub domains: usize,
    pub e: u32,
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

pub fn load_model(path: &Path) -> Result<Loaded> {
    let explicit: ExplicitModel =
        serde_json::from_str(&read_text(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let header = explicit.header.clone();
    let model = explicit.into_model()?;
    let zoo = match parse_reference(&header) {
        None => None,
        Some((family, params)) => {
            let z = hhs_zoo::build(family, params)?;
            if z.model.ambient().labels() != model.ambient().labels() || z.model.domain_count() != model.domain_count() {
                return Err(input(format!("{} does not match its zoo reference", path.display())));
            }
            Some(z)
        }
    };
    Ok(Loaded { model, header, zoo })
}

impl Loaded {
    pub fn info(&self) -> ModelInfo {
        ModelInfo {
            reference: self.zoo.as_ref().map(ZooModel::reference_line),
            vertices: self.model.ambient().len(),
            domains: self.model.domain_count(),
            e: self.model.e(),
        }
    }

    /// Centred at the identity for zoo models, otherwise at a vertex of least
    /// eccentricity.
    pub fn frame(&self) -> Result<Frame> {
        let center = match &self.zoo {
            Some(z) => z.basepoint,
            None => central_vertex(self.model.ambient()),
        };
        Ok(Frame::new(&self.model, center)?)
    }

    pub fn zoo(&self, what: &str) -> Result<&ZooModel> {
        self.zoo.as_ref().ok_or_else(|| input(format!("{what} needs a model built by `zoo build`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetInfo {
    pub name: String,
    pub argument: String,
    pub members: usize,
    /// Orbit points beyond the window, dropped from the subset.
    pub outside_window: usize,
}

fn provenance(s: &str) -> Provenance {
    match s {
        "subgroup" => Provenance::Subgroup,
        "coset" => Provenance::Coset,
        _ => Provenance::Arbitrary,
    }
}

/// Resolves a subset argument:
/// - a name shipped with the zoo model (`A`, `x-axis`, …), or `X` for the whole window;
/// - `vertices:<label>;<label>;…` or `ids:<id>,<id>,…`;
/// - `orbit:<word>;<word>;…@<radius>`, the orbit of the basepoint under the
///   subgroup generated by the words, through words of length at most `radius`.
pub fn resolve_subset(l: &Loaded, argument: &str) -> Result<(SubsetSpec, SubsetInfo)> {
    let m = &l.model;
    let mut outside = 0;
    let spec = if let Some(rest) = argument.strip_prefix("vertices:") {
        let ids = rest
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|label| m.ambient().vertex(label.trim()).map_err(|_| input(format!("no vertex labelled `{label}`"))))
            .collect::<Result<Vec<usize>>>()?;
        SubsetSpec::new(m, argument, Provenance::Arbitrary, ids)?
    } else if let Some(rest) = argument.strip_prefix("ids:") {
        let ids = rest
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse::<usize>().map_err(|_| input(format!("`{s}` is not a vertex id"))))
            .collect::<Result<Vec<usize>>>()?;
        SubsetSpec::new(m, argument, Provenance::Arbitrary, ids)?
    } else if let Some(rest) = argument.strip_prefix("orbit:") {
        let (words, radius) = rest.rsplit_once('@').ok_or_else(|| input("orbit spec needs `@<radius>`"))?;
        let radius: u64 = radius.trim().parse().map_err(|_| input(format!("bad orbit radius `{radius}`")))?;
        let words: Vec<&str> = words.split(';').map(str::trim).filter(|w| !w.is_empty()).collect();
        if words.is_empty() {
            return Err(input("orbit spec needs at least one generator word"));
        }
        let labels = orbit_labels(l.zoo("an orbit spec")?, &words, radius)?;
        let mut ids = Vec::new();
        for label in &labels {
            match m.ambient().vertex(label) {
                Ok(v) => ids.push(v),
                Err(_) => outside += 1,
            }
        }
        SubsetSpec::new(m, argument, Provenance::Subgroup, ids)?
    } else if argument == "X" {
        SubsetSpec::whole(m)
    } else {
        let z = l.zoo("a named subset")?;
        let s = z.subset(argument).ok_or_else(|| {
            let names: Vec<&str> = z.subsets.iter().map(|s| s.name.as_str()).collect();
            input(format!("no subset `{argument}`; this model ships {}", names.join(", ")))
        })?;
        SubsetSpec::new(m, &s.name, provenance(&s.provenance), s.members.iter().copied())?
    };
    if spec.is_empty() {
        return Err(input(format!("subset `{argument}` has no vertex in the window")));
    }
    let info = SubsetInfo { name: spec.name.clone(), argument: argument.into(), members: spec.len(), outside_window: outside };
    Ok((spec, info))
}

fn orbit_of<H: GroupHierarchy>(h: &H, spec: &GroupSpec<H::Element>, words: &[&str], radius: u64) -> Result<Vec<String>> {
    let gens = words
        .iter()
        .enumerate()
        .map(|(i, w)| Ok((format!("g{i}"), spec.evaluate(h, &spec.parse(w)?))))
        .collect::<Result<Vec<_>>>()?;
    let sub = GroupSpec::new(gens)?;
    Ok(orbit_ball(h, &sub, radius).iter().map(|e| h.describe_point(&e.point)).collect())
}

fn orbit_labels(z: &ZooModel, words: &[&str], radius: u64) -> Result<Vec<String>> {
    match z.family {
        Family::ProductF2xDxD | Family::DiagonalF2xDxD | Family::ProductF2 => {
            let h = product_closed_form(z.family);
            orbit_of(&h, &h.generators(), words, radius)
        }
        Family::GridZ2 | Family::ParallelLines => {
            let h = Grid::new(grid::DECLARED_E);
            orbit_of(&h, &h.generators(), words, radius)
        }
        Family::TreeFreeGroup => {
            let h = FreeTree::new(tree::DECLARED_E);
            orbit_of(&h, &h.generators(), words, radius)
        }
    }
}

pub fn product_closed_form(family: Family) -> F2xD2 {
    match family {
        Family::ProductF2 => F2xD2::reduced(f2xdxd::REDUCED_E),
        _ => F2xD2::new(f2xdxd::DECLARED_E),
    }
}

/// The closed form of a product-family model, for building amalgam data.
pub fn amalgam_closed_form(l: &Loaded, what: &str) -> Result<(F2xD2, i64)> {
    let z = l.zoo(what)?;
    match z.family {
        Family::ProductF2xDxD | Family::DiagonalF2xDxD | Family::ProductF2 => Ok((product_closed_form(z.family), z.params.twist)),
        other => Err(input(format!("{what} needs a product-family model, not {other}"))),
    }
}

/// `A = ⟨a^N x₁x₂⟩` and `B = ⟨b^N y₁y₂⟩` with trivial `C`, witnesses `L_a` and `L_b`.
pub fn twisted_amalgam(h: &F2xD2, n: i64, m: u64) -> Result<AmalgamData<'_, F2xD2>> {
    if n < 1 || m < 1 {
        return Err(input("the twist N and the scale M must be positive"));
    }
    Ok(AmalgamData::new(
        h,
        vec![Factor::cyclic("A", "A", h.a_generator(n))?, Factor::cyclic("B", "B", h.b_generator(n))?],
        vec![h.identity()],
        Box::new(|f, _| Some(if f == 0 { F2xD2::a_line() } else { F2xD2::b_line() })),
        m,
    )?)
}
