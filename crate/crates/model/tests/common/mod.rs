//! Random small models shared by the test targets.

use std::collections::BTreeMap;

use hhs_coarse::{FiniteGraph, VertexSet};
use hhs_model::{DomainSet, HierarchicalModel, ProjectionTable};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> FiniteGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..3);
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    FiniteGraph::from_edges(n, &edges).unwrap()
}

pub fn random_set(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let k = rng.gen_range(1..=2.min(n));
    VertexSet::from_usizes((0..k).map(|_| rng.gen_range(0..n))).unwrap()
}

pub fn template(i: usize) -> DomainSet {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match i % 5 {
        0 => DomainSet::new(names(&["S", "A", "B"]), &[(1, 0), (2, 0)], &[], &[]).unwrap(),
        1 => DomainSet::new(names(&["S", "A", "B"]), &[(1, 0), (2, 0)], &[(1, 2)], &[(0, 1, 2), (0, 2, 1)]).unwrap(),
        2 => DomainSet::new(names(&["S", "A", "B", "C"]), &[(1, 0), (2, 0), (3, 0), (3, 1)], &[], &[]).unwrap(),
        3 => DomainSet::new(
            names(&["S", "A", "B", "C"]),
            &[(1, 0), (2, 0), (3, 0)],
            &[(1, 2)],
            &[(0, 1, 2), (0, 2, 1)],
        )
        .unwrap(),
        _ => DomainSet::new(names(&["S"]), &[], &[], &[]).unwrap(),
    }
}

pub fn random_model(rng: &mut ChaCha8Rng, t: usize) -> HierarchicalModel {
    let nx = rng.gen_range(2..=7);
    let ambient = random_graph(rng, nx);
    let d = template(t);
    let n = d.len();
    let coords: Vec<FiniteGraph> = (0..n).map(|_| {
        let k = rng.gen_range(1..=5);
        random_graph(rng, k)
    }).collect();
    let pi = (0..n)
        .map(|u| ProjectionTable::from_images((0..ambient.len()).map(|_| random_set(rng, coords[u].len())).collect()))
        .collect();
    let mut rho_point = BTreeMap::new();
    let mut rho_map = BTreeMap::new();
    for v in 0..n {
        for u in 0..n {
            if d.is_nested(v, u) || d.is_transverse(v, u) {
                rho_point.insert((v, u), random_set(rng, coords[u].len()));
            }
            if d.is_nested(v, u) {
                let images = (0..coords[u].len()).map(|_| random_set(rng, coords[v].len())).collect();
                rho_map.insert((u, v), ProjectionTable::from_images(images));
            }
        }
    }
    HierarchicalModel::new(ambient, d, coords, pi, rho_point, rho_map, 1).unwrap()
}

