//! Class graphs over a decomposition and the prime graph, with exact clique search.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classes::ClassDecomposition;
use crate::numbers::{gcd, prime_divisors};
use crate::perm::Group;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Order,
    Size,
    Prime,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Order => "order",
            GraphKind::Size => "size",
            GraphKind::Prime => "prime",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Vertex {
    Class {
        index: usize,
        order: u64,
        size: usize,
    },
    Prime {
        p: u64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassGraph {
    pub kind: GraphKind,
    pub vertices: Vec<Vertex>,
    adjacency: Vec<Vec<bool>>,
}

impl ClassGraph {
    fn build(
        kind: GraphKind,
        vertices: Vec<Vertex>,
        adjacent: impl Fn(&Vertex, &Vertex) -> bool,
    ) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let e = adjacent(&vertices[i], &vertices[j]);
                adjacency[i][j] = e;
                adjacency[j][i] = e;
            }
        }
        ClassGraph {
            kind,
            vertices,
            adjacency,
        }
    }

    /// Graph with vertices `0..n` and the given undirected edges; used by tests.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> ClassGraph {
        let vertices = (0..n)
            .map(|i| Vertex::Class {
                index: i,
                order: 1,
                size: 1,
            })
            .collect();
        let mut adjacency = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a != b {
                adjacency[a][b] = true;
                adjacency[b][a] = true;
            }
        }
        ClassGraph {
            kind: GraphKind::Order,
            vertices,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .map(|(j, _)| j)
    }
}

fn class_vertices(d: &ClassDecomposition) -> Vec<Vertex> {
    d.non_central()
        .map(|(index, c)| Vertex::Class {
            index,
            order: c.element_order,
            size: c.size,
        })
        .collect()
}

/// Γ(G): non-central classes, adjacent when their element orders share a prime.
pub fn order_class_graph(d: &ClassDecomposition) -> ClassGraph {
    ClassGraph::build(GraphKind::Order, class_vertices(d), |a, b| match (a, b) {
        (Vertex::Class { order: x, .. }, Vertex::Class { order: y, .. }) => gcd(*x, *y) > 1,
        _ => false,
    })
}

/// Γ'(G): non-central classes, adjacent when their sizes share a prime.
pub fn size_class_graph(d: &ClassDecomposition) -> ClassGraph {
    ClassGraph::build(GraphKind::Size, class_vertices(d), |a, b| match (a, b) {
        (Vertex::Class { size: x, .. }, Vertex::Class { size: y, .. }) => {
            gcd(*x as u64, *y as u64) > 1
        }
        _ => false,
    })
}

pub fn prime_graph(group: &Group) -> ClassGraph {
    prime_graph_from(group.order() as u64, &crate::classes::spectrum(group))
}

/// Prime graph from the group order and its element-order spectrum.
pub fn prime_graph_from(order: u64, spectrum: &BTreeSet<u64>) -> ClassGraph {
    let vertices = prime_divisors(order)
        .into_iter()
        .map(|p| Vertex::Prime { p })
        .collect();
    ClassGraph::build(GraphKind::Prime, vertices, |a, b| match (a, b) {
        (Vertex::Prime { p }, Vertex::Prime { p: q }) => spectrum.contains(&(p * q)),
        _ => false,
    })
}

/// Primes adjacent to 2 in a prime graph; empty when 2 is not a vertex.
pub fn neighbors_of_two(graph: &ClassGraph) -> Vec<u64> {
    let Some(two) = graph
        .vertices
        .iter()
        .position(|v| *v == Vertex::Prime { p: 2 })
    else {
        return Vec::new();
    };
    graph
        .neighbors(two)
        .filter_map(|j| match graph.vertices[j] {
            Vertex::Prime { p } => Some(p),
            _ => None,
        })
        .collect()
}

fn extend_clique(
    graph: &ClassGraph,
    clique: &mut Vec<usize>,
    candidates: &[usize],
    target: usize,
) -> bool {
    if clique.len() == target {
        return true;
    }
    for (pos, &v) in candidates.iter().enumerate() {
        if clique.len() + candidates.len() - pos < target {
            return false;
        }
        let next: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|&w| graph.adjacency[v][w])
            .collect();
        clique.push(v);
        if extend_clique(graph, clique, &next, target) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Lexicographically least clique on `n` vertices, if one exists.
pub fn has_k_n(graph: &ClassGraph, n: usize) -> Option<Vec<usize>> {
    let all: Vec<usize> = (0..graph.vertex_count()).collect();
    let mut clique = Vec::with_capacity(n);
    extend_clique(graph, &mut clique, &all, n).then_some(clique)
}

pub fn max_clique(graph: &ClassGraph) -> usize {
    let mut best = 0;
    while has_k_n(graph, best + 1).is_some() {
        best += 1;
    }
    best
}
