use serde::{Deserialize, Serialize};

use super::{mask_of, Polytope};
use crate::scalar::Field;

/// The 1-skeleton as a simple graph on the vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SkeletonGraph {
    pub fn new(num_vertices: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        SkeletonGraph { num_vertices, edges }
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.num_vertices]; self.num_vertices];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// First triangle in lexicographic order, if any.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        let adj = self.adjacency();
        for &(a, b) in &self.edges {
            if let Some(c) = (b + 1..self.num_vertices).find(|&c| adj[a][c] && adj[b][c]) {
                return Some([a, b, c]);
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }
}

impl<F: Field> Polytope<F> {
    /// Pairs of vertices whose minimal face is exactly that pair.
    pub fn skeleton(&self) -> SkeletonGraph {
        let n = self.num_vertices();
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let m = mask_of(&[a, b]);
                self.closure_mask(m) == m
            })
            .collect();
        SkeletonGraph::new(n, edges)
    }
}
