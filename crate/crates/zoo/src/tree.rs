//! The free group of rank two as a one-domain hierarchy: the top coordinate
//! space is the Cayley tree itself.

use hhs_action::{GroupHierarchy, GroupSpec};
use hhs_model::{Hierarchy, HierarchicalModel, Relation};

use crate::error::{Result, ZooError};
use crate::free::FreeWord;
use crate::window::{tabulate_window, Index, RhoDown, Tabulable};

#[derive(Clone, Debug)]
pub struct FreeTree {
    e: u32,
}

/// A tree with the identity projection needs only the positivity floor.
pub const DECLARED_E: u32 = 1;

impl FreeTree {
    pub fn new(e: u32) -> Self {
        FreeTree { e }
    }

    pub fn generators(&self) -> GroupSpec<FreeWord> {
        GroupSpec::new(vec![("a".into(), FreeWord::power(1, 1)), ("b".into(), FreeWord::power(2, 1))]).expect("valid names")
    }
}

impl Hierarchy for FreeTree {
    type Point = FreeWord;
    type Domain = ();
    type Coord = FreeWord;

    fn constant(&self) -> u32 {
        self.e
    }

    fn relation(&self, _u: &(), _v: &()) -> Relation {
        Relation::Equal
    }

    fn project(&self, _u: &(), x: &FreeWord) -> Option<Vec<FreeWord>> {
        Some(vec![x.clone()])
    }

    fn rho(&self, _from: &(), _to: &()) -> Option<Vec<FreeWord>> {
        None
    }

    fn coord_distance(&self, _u: &(), a: &FreeWord, b: &FreeWord) -> Option<u32> {
        Some(a.inverse().mul(b).len() as u32)
    }
}

impl GroupHierarchy for FreeTree {
    type Element = FreeWord;

    fn describe_element(&self, g: &FreeWord) -> String {
        self.point_label(g)
    }

    fn describe_point(&self, x: &FreeWord) -> String {
        self.point_label(x)
    }

    fn describe_domain(&self, u: &Self::Domain) -> String {
        self.domain_name(u)
    }

    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }

    fn multiply(&self, g: &FreeWord, h: &FreeWord) -> FreeWord {
        g.mul(h)
    }

    fn inverse(&self, g: &FreeWord) -> FreeWord {
        g.inverse()
    }

    fn act_point(&self, g: &FreeWord, x: &FreeWord) -> FreeWord {
        g.mul(x)
    }

    fn act_domain(&self, _g: &FreeWord, _u: &()) {}

    fn act_coord(&self, g: &FreeWord, _u: &(), c: &FreeWord) -> FreeWord {
        g.mul(c)
    }

    fn basepoint(&self) -> FreeWord {
        FreeWord::identity()
    }
}

impl Tabulable for FreeTree {
    fn point_label(&self, x: &FreeWord) -> String {
        x.compact()
    }

    fn domain_name(&self, _u: &()) -> String {
        "S".into()
    }

    fn coord_label(&self, _u: &(), c: &FreeWord) -> String {
        c.compact()
    }

    fn neighbours(&self, x: &FreeWord) -> Vec<FreeWord> {
        [1, -1, 2, -2].iter().map(|&l| x.mul(&FreeWord::from_letters([l]))).collect()
    }

    fn coord_edges(&self, _u: &(), coords: &[FreeWord]) -> Vec<(usize, usize)> {
        let index: std::collections::HashMap<&FreeWord, usize> = coords.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut edges = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            if let Some(&l) = c.letters().last() {
                let parent = c.mul(&FreeWord::from_letters([-l]));
                if let Some(&j) = index.get(&parent) {
                    edges.push((j, i));
                }
            }
        }
        edges
    }

    fn rho_down(&self, _u: &(), _v: &(), _c: &FreeWord) -> RhoDown<FreeWord> {
        RhoDown::All
    }
}

pub struct TreeWindow {
    pub closed: FreeTree,
    pub model: HierarchicalModel,
    pub index: Index<FreeTree>,
    pub radius: usize,
    pub header: Vec<String>,
}

/// The ball of radius `n` in the Cayley tree of `F(a,b)`, in shortlex order.
pub fn build_tree_free_group(n: usize) -> Result<TreeWindow> {
    if n < 1 {
        return Err(ZooError::Parameters("tree radius must be at least 1".into()));
    }
    let t = FreeTree::new(DECLARED_E);
    let ball = FreeWord::ball(n);
    let (model, index) = tabulate_window(&t, ball.clone(), vec![()], vec![ball], DECLARED_E)?;
    let header = vec!["family: tree_free_group".into(), format!("window: ball of radius {n} in F(a,b)")];
    Ok(TreeWindow { closed: t, model, index, radius: n, header })
}
