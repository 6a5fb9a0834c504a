//! The greedy construction for real-valued maps on triangle-free skeleta.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{Polytope, SkeletonGraph};
use crate::scalar::Field;

/// `r - 1` edges and one vertex, pairwise disjoint, whose value intervals
/// all contain `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct D1Witness<F> {
    pub edges: Vec<[usize; 2]>,
    pub vertex: usize,
    #[serde(with = "crate::exact::scalar")]
    pub value: F,
}

/// Sorts vertices by `(value, index)` as `v_1, v_2, ...` and matches each
/// `v_i`, `i < r`, to its first neighbor in that order outside
/// `{v_1..v_r}` and earlier matches. Only the edge list and the values are
/// read. A failed match yields the triangle that makes it impossible.
pub fn triangle_free_d1<F: Field>(graph: &SkeletonGraph, values: &[F], r: usize) -> Result<D1Witness<F>> {
    let n = graph.num_vertices;
    if values.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: values.len() });
    }
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!("r = {r} with {n} vertices")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("exact scalars are ordered").then(a.cmp(&b)));
    let adjacency = graph.adjacency();

    let mut taken = vec![false; n];
    order[..r].iter().for_each(|&v| taken[v] = true);
    let mut edges: Vec<[usize; 2]> = Vec::with_capacity(r - 1);
    for &v in &order[..r - 1] {
        match order[r..].iter().find(|&&u| !taken[u] && adjacency[v][u]) {
            Some(&u) => {
                taken[u] = true;
                edges.push([v, u]);
            }
            None => {
                let t = edges.iter().find(|[a, b]| adjacency[v][*a] && adjacency[v][*b]);
                return Err(match t {
                    Some(&[a, b]) => Error::Triangle([v, a, b]),
                    None => Error::DegreeTooSmall {
                        vertex: v,
                        degree: adjacency[v].iter().filter(|&&e| e).count(),
                        needed: r,
                    },
                });
            }
        }
    }
    let vertex = order[r - 1];
    Ok(D1Witness { edges, vertex, value: values[vertex].clone() })
}

/// [`triangle_free_d1`] on the skeleton of `polytope`, after checking that
/// the skeleton is triangle-free and `dim >= r`.
pub fn triangle_free_d1_polytope<F: Field>(polytope: &Polytope<F>, values: &[F], r: usize) -> Result<D1Witness<F>> {
    if polytope.dim() < r {
        return Err(Error::InvalidArgument(format!("dimension {} is below r = {r}", polytope.dim())));
    }
    let graph = polytope.skeleton();
    if let Some(t) = graph.find_triangle() {
        return Err(Error::Triangle(t));
    }
    triangle_free_d1(&graph, values, r)
}

/// Exact check of a [`D1Witness`] against a graph and vertex values.
pub fn check_d1_witness<F: Field>(graph: &SkeletonGraph, values: &[F], w: &D1Witness<F>) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidWitness(msg));
    let n = graph.num_vertices;
    let mut used = vec![false; n];
    for &v in w.edges.iter().flatten().chain(std::iter::once(&w.vertex)) {
        if v >= n || std::mem::replace(&mut used[v], true) {
            return bad(format!("vertex {v} out of range or reused"));
        }
    }
    if values[w.vertex] != w.value {
        return bad("value differs from the final vertex".into());
    }
    let adjacency = graph.adjacency();
    for &[a, b] in &w.edges {
        if !adjacency[a][b] {
            return bad(format!("{a}-{b} is not an edge"));
        }
        let (lo, hi) = if values[a] <= values[b] { (&values[a], &values[b]) } else { (&values[b], &values[a]) };
        if w.value < *lo || w.value > *hi {
            return bad(format!("value outside the interval of edge {a}-{b}"));
        }
    }
    Ok(())
}
