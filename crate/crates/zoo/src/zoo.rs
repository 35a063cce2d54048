//! One entry point for every shipped family, with its named subsets.

use std::fmt;
use std::str::FromStr;

use hhs_action::orbit_in_window;
use hhs_model::HierarchicalModel;

use crate::error::{Result, ZooError};
use crate::f2xdxd::{build_diagonal, build_f2xdxd, build_window, F2xD2, FreeWindow};
use crate::free::FreeWord;
use crate::grid::build_grid_z2;
use crate::tree::build_tree_free_group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    ProductF2xDxD,
    /// The product group on a window following `A*B` along the dihedral
    /// diagonal, with a box of radius `n`.
    DiagonalF2xDxD,
    /// `F(a,b)` alone: the product family with both dihedral factors removed.
    ProductF2,
    GridZ2,
    ParallelLines,
    TreeFreeGroup,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::ProductF2xDxD,
        Family::DiagonalF2xDxD,
        Family::ProductF2,
        Family::GridZ2,
        Family::ParallelLines,
        Family::TreeFreeGroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ProductF2xDxD => "product_F2xDxD",
            Family::DiagonalF2xDxD => "product_F2xDxD_diagonal",
            Family::ProductF2 => "product_F2",
            Family::GridZ2 => "grid_Z2",
            Family::ParallelLines => "parallel_lines",
            Family::TreeFreeGroup => "tree_free_group",
        }
    }

    /// The window used when no parameters are given.  The diagonal window is
    /// the largest whose convexity sweeps run in seconds.
    pub fn default_params(self) -> ZooParams {
        let (n, twist) = match self {
            Family::ProductF2xDxD => (6, 4),
            Family::DiagonalF2xDxD => (8, 1),
            Family::ProductF2 => (6, 2),
            Family::GridZ2 | Family::ParallelLines => (10, 1),
            Family::TreeFreeGroup => (6, 1),
        };
        ZooParams { n, twist }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ZooError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == key)
            .or(match key.as_str() {
                "f2xdxd" => Some(Family::ProductF2xDxD),
                "f2" => Some(Family::ProductF2),
                "diagonal" => Some(Family::DiagonalF2xDxD),
                "grid" => Some(Family::GridZ2),
                "tree" => Some(Family::TreeFreeGroup),
                _ => None,
            })
            .ok_or_else(|| ZooError::Parameters(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZooParams {
    /// Window radius.
    pub n: usize,
    /// Twist exponent `N` of the product family's subgroups.
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSubset {
    pub name: String,
    /// `subgroup`, `coset` or `arbitrary`.
    pub provenance: String,
    pub members: Vec<usize>,
}

impl NamedSubset {
    fn new(name: &str, provenance: &str, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        NamedSubset { name: name.into(), provenance: provenance.into(), members }
    }
}

pub struct ZooModel {
    pub family: Family,
    pub params: ZooParams,
    pub model: HierarchicalModel,
    pub header: Vec<String>,
    pub subsets: Vec<NamedSubset>,
    /// Vertex id of the identity (the origin for the grid families).
    pub basepoint: usize,
}

/// Header line naming the family and parameters, so a model file can be
/// matched back to its closed form.
pub const REFERENCE_PREFIX: &str = "zoo-reference:";

impl ZooModel {
    pub fn subset(&self, name: &str) -> Option<&NamedSubset> {
        self.subsets.iter().find(|s| s.name == name)
    }

    pub fn reference_line(&self) -> String {
        format!("{REFERENCE_PREFIX} {} n={} N={}", self.family, self.params.n, self.params.twist)
    }
}

/// Reads the family and parameters back from a model-file header.
pub fn parse_reference(header: &[String]) -> Option<(Family, ZooParams)> {
    let line = header.iter().find_map(|l| l.strip_prefix(REFERENCE_PREFIX))?;
    let mut parts = line.split_whitespace();
    let family: Family = parts.next()?.parse().ok()?;
    let mut params = ZooParams { n: 0, twist: 1 };
    for p in parts {
        match p.split_once('=')? {
            ("n", v) => params.n = v.parse().ok()?,
            ("N", v) => params.twist = v.parse().ok()?,
            _ => return None,
        }
    }
    Some((family, params))
}

/// Orbits of `A = ⟨a^N x₁x₂⟩`, `B = ⟨b^N y₁y₂⟩`, their union and `⟨A, B⟩` in a
/// product window.
pub fn product_subsets(w: &crate::f2xdxd::F2xD2Window, twist: i64) -> Vec<NamedSubset> {
    let h = &w.closed;
    let (a, b) = (h.a_generator(twist), h.b_generator(twist));
    let reach = w.model.ambient().len();
    let ids = |gens: &[crate::f2xdxd::Elt]| -> Vec<usize> {
        orbit_in_window(h, &w.index, gens, reach).into_iter().map(|(_, i)| i).collect()
    };
    let (oa, ob) = (ids(std::slice::from_ref(&a)), ids(std::slice::from_ref(&b)));
    let union: Vec<usize> = oa.iter().chain(&ob).copied().collect();
    vec![
        NamedSubset::new("A", "subgroup", oa),
        NamedSubset::new("B", "subgroup", ob),
        NamedSubset::new("A+B", "arbitrary", union),
        NamedSubset::new("A*B", "subgroup", ids(&[a, b])),
    ]
}

pub fn build(family: Family, params: ZooParams) -> Result<ZooModel> {
    let n = params.n;
    let product_base = |w: &crate::f2xdxd::F2xD2Window| w.index.point_index(&crate::f2xdxd::Elt::identity()).expect("identity in window");
    let (model, mut header, subsets, basepoint) = match family {
        Family::ProductF2xDxD => {
            let w = build_f2xdxd(n, params.twist)?;
            let subsets = product_subsets(&w, params.twist);
            let base = product_base(&w);
            (w.model, w.header, subsets, base)
        }
        Family::DiagonalF2xDxD => {
            let w = build_diagonal(n, params.twist)?;
            let subsets = product_subsets(&w, params.twist);
            let base = product_base(&w);
            (w.model, w.header, subsets, base)
        }
        Family::ProductF2 => {
            if params.twist < 1 || (n as i64) < params.twist {
                return Err(ZooError::Parameters(format!("radius {n} cannot hold a^{}", params.twist)));
            }
            let w = build_window(F2xD2::reduced(crate::f2xdxd::REDUCED_E), FreeWindow::Ball(n), 0)?;
            let subsets = product_subsets(&w, params.twist);
            let base = product_base(&w);
            (w.model, w.header, subsets, base)
        }
        Family::GridZ2 | Family::ParallelLines => {
            let g = build_grid_z2(n as i64)?;
            let subsets = if family == Family::GridZ2 {
                let (x, y) = (g.row(0), g.column(0));
                let both = x.iter().chain(&y).copied().collect();
                vec![
                    NamedSubset::new("x-axis", "subgroup", x),
                    NamedSubset::new("y-axis", "subgroup", y),
                    NamedSubset::new("axes", "arbitrary", both),
                ]
            } else {
                let (l0, l1) = (g.row(0), g.row(1));
                let both = l0.iter().chain(&l1).copied().collect();
                vec![
                    NamedSubset::new("y0", "subgroup", l0),
                    NamedSubset::new("y1", "coset", l1),
                    NamedSubset::new("parallel-lines", "arbitrary", both),
                ]
            };
            let base = g.id(0, 0);
            (g.model, g.header, subsets, base)
        }
        Family::TreeFreeGroup => {
            let t = build_tree_free_group(n)?;
            let a = FreeWord::power(1, 1);
            let b = FreeWord::power(2, 1);
            let orbit = |gens: &[FreeWord]| -> Vec<usize> {
                orbit_in_window(&t.closed, &t.index, gens, n).into_iter().map(|(_, i)| i).collect()
            };
            let subsets = vec![
                NamedSubset::new("a-axis", "subgroup", orbit(std::slice::from_ref(&a))),
                NamedSubset::new("ab-axis", "subgroup", orbit(&[a.mul(&b)])),
                NamedSubset::new("a2-b2", "subgroup", orbit(&[a.mul(&a), b.mul(&b)])),
            ];
            let base = t.index.point_index(&FreeWord::identity()).expect("identity in window");
            (t.model, t.header, subsets, base)
        }
    };
    let mut z = ZooModel { family, params, model, header: Vec::new(), subsets, basepoint };
    header.insert(0, z.reference_line());
    z.header = header;
    Ok(z)
}
