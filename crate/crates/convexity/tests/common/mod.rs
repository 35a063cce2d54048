#![allow(dead_code)]

use hhs_convexity::{Frame, Provenance, SubsetSpec};
use hhs_zoo::zoo::{build, Family, ZooModel, ZooParams};

pub fn zoo(family: Family, n: usize, twist: i64) -> ZooModel {
    build(family, ZooParams { n, twist }).unwrap()
}

pub fn default_zoo(family: Family) -> ZooModel {
    build(family, family.default_params()).unwrap()
}

pub fn subset(z: &ZooModel, name: &str) -> SubsetSpec {
    let s = z.subset(name).unwrap_or_else(|| panic!("no subset {name}"));
    SubsetSpec::new(&z.model, name, s.provenance.parse().unwrap_or(Provenance::Arbitrary), s.members.iter().copied()).unwrap()
}

pub fn frame(z: &ZooModel) -> Frame {
    Frame::new(&z.model, z.basepoint).unwrap()
}

/// Vertex of a grid model from its coordinates.
pub fn grid_point(z: &ZooModel, x: i64, y: i64) -> usize {
    z.model.ambient().vertex(&format!("{x},{y}")).unwrap()
}

pub fn grid_coords(label: &str) -> (i64, i64) {
    let (x, y) = label.split_once(',').unwrap();
    (x.parse().unwrap(), y.parse().unwrap())
}
