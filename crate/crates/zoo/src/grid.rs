//! The square lattice `ℤ²` with its product hierarchy: a top domain and two
//! orthogonal coordinate lines.

use hhs_action::{GroupHierarchy, GroupSpec};
use hhs_model::{Hierarchy, HierarchicalModel, Relation};

use crate::error::{Result, ZooError};
use crate::window::{tabulate_window, Index, RhoDown, Tabulable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    S,
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridCoord {
    Unit,
    Pos(i64),
}

#[derive(Clone, Debug)]
pub struct Grid {
    e: u32,
}

/// The audited constant of the grid: two orthogonal lines force a list of two
/// domains in the large-links axiom.
pub const DECLARED_E: u32 = 2;

impl Grid {
    pub fn new(e: u32) -> Self {
        Grid { e }
    }

    pub fn generators(&self) -> GroupSpec<(i64, i64)> {
        GroupSpec::new(vec![("s".into(), (1, 0)), ("t".into(), (0, 1))]).expect("valid names")
    }
}

impl Hierarchy for Grid {
    type Point = (i64, i64);
    type Domain = Axis;
    type Coord = GridCoord;

    fn constant(&self) -> u32 {
        self.e
    }

    fn relation(&self, u: &Axis, v: &Axis) -> Relation {
        match (u, v) {
            _ if u == v => Relation::Equal,
            (Axis::S, _) => Relation::Contains,
            (_, Axis::S) => Relation::NestedIn,
            _ => Relation::Orthogonal,
        }
    }

    fn project(&self, u: &Axis, x: &(i64, i64)) -> Option<Vec<GridCoord>> {
        Some(vec![match u {
            Axis::S => GridCoord::Unit,
            Axis::X => GridCoord::Pos(x.0),
            Axis::Y => GridCoord::Pos(x.1),
        }])
    }

    fn rho(&self, from: &Axis, to: &Axis) -> Option<Vec<GridCoord>> {
        (*to == Axis::S && *from != Axis::S).then(|| vec![GridCoord::Unit])
    }

    fn coord_distance(&self, _u: &Axis, a: &GridCoord, b: &GridCoord) -> Option<u32> {
        match (a, b) {
            (GridCoord::Unit, GridCoord::Unit) => Some(0),
            (GridCoord::Pos(p), GridCoord::Pos(q)) => Some(p.abs_diff(*q) as u32),
            _ => None,
        }
    }
}

impl GroupHierarchy for Grid {
    type Element = (i64, i64);

    fn describe_element(&self, g: &(i64, i64)) -> String {
        self.point_label(g)
    }

    fn describe_point(&self, x: &(i64, i64)) -> String {
        self.point_label(x)
    }

    fn describe_domain(&self, u: &Self::Domain) -> String {
        self.domain_name(u)
    }

    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }

    fn multiply(&self, g: &(i64, i64), h: &(i64, i64)) -> (i64, i64) {
        (g.0 + h.0, g.1 + h.1)
    }

    fn inverse(&self, g: &(i64, i64)) -> (i64, i64) {
        (-g.0, -g.1)
    }

    fn act_point(&self, g: &(i64, i64), x: &(i64, i64)) -> (i64, i64) {
        self.multiply(g, x)
    }

    fn act_domain(&self, _g: &(i64, i64), u: &Axis) -> Axis {
        *u
    }

    fn act_coord(&self, g: &(i64, i64), u: &Axis, c: &GridCoord) -> GridCoord {
        match (u, c) {
            (Axis::X, GridCoord::Pos(p)) => GridCoord::Pos(p + g.0),
            (Axis::Y, GridCoord::Pos(p)) => GridCoord::Pos(p + g.1),
            _ => *c,
        }
    }

    fn basepoint(&self) -> (i64, i64) {
        (0, 0)
    }
}

impl Tabulable for Grid {
    fn point_label(&self, x: &(i64, i64)) -> String {
        format!("{},{}", x.0, x.1)
    }

    fn domain_name(&self, u: &Axis) -> String {
        format!("{u:?}")
    }

    fn coord_label(&self, _u: &Axis, c: &GridCoord) -> String {
        match c {
            GridCoord::Unit => "*".into(),
            GridCoord::Pos(p) => p.to_string(),
        }
    }

    fn neighbours(&self, x: &(i64, i64)) -> Vec<(i64, i64)> {
        vec![(x.0 - 1, x.1), (x.0 + 1, x.1), (x.0, x.1 - 1), (x.0, x.1 + 1)]
    }

    fn coord_edges(&self, _u: &Axis, coords: &[GridCoord]) -> Vec<(usize, usize)> {
        (1..coords.len()).map(|i| (i - 1, i)).collect()
    }

    fn rho_down(&self, _u: &Axis, _v: &Axis, _c: &GridCoord) -> RhoDown<GridCoord> {
        RhoDown::All
    }
}

pub struct GridWindow {
    pub closed: Grid,
    pub model: HierarchicalModel,
    pub index: Index<Grid>,
    pub radius: i64,
    pub header: Vec<String>,
}

impl GridWindow {
    /// Vertex id of the lattice point `(x, y)`.
    pub fn id(&self, x: i64, y: i64) -> usize {
        ((x + self.radius) * (2 * self.radius + 1) + (y + self.radius)) as usize
    }

    /// The points of the horizontal line at height `y`.
    pub fn row(&self, y: i64) -> Vec<usize> {
        (-self.radius..=self.radius).map(|x| self.id(x, y)).collect()
    }

    pub fn column(&self, x: i64) -> Vec<usize> {
        (-self.radius..=self.radius).map(|y| self.id(x, y)).collect()
    }
}

/// The box `[−n, n]²`, with ids `(x + n)(2n + 1) + (y + n)`.
pub fn build_grid_z2(n: i64) -> Result<GridWindow> {
    if n < 1 {
        return Err(ZooError::Parameters("grid radius must be at least 1".into()));
    }
    let grid = Grid::new(DECLARED_E);
    let points = (-n..=n).flat_map(|x| (-n..=n).map(move |y| (x, y))).collect();
    let pos: Vec<GridCoord> = (-n..=n).map(GridCoord::Pos).collect();
    let coords = vec![vec![GridCoord::Unit], pos.clone(), pos];
    let (model, index) = tabulate_window(&grid, points, vec![Axis::S, Axis::X, Axis::Y], coords, DECLARED_E)?;
    let header = vec!["family: grid_Z2".into(), format!("window: [-{n},{n}]^2 with the l1 metric")];
    Ok(GridWindow { closed: grid, model, index, radius: n, header })
}
