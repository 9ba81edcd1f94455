//! The link of a vertex `{i,j}`: the bipartite coset graph of `G_{i,j}`.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use super::{gs_angle, GSAngle, Label, Subset, TriangleDiagram};
use crate::group::left_cosets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("the angle at {{{0},{1}}} is zero, so the link is a forest with no cycle")]
    ZeroAngleInfiniteLink(Label, Label),
}

/// Nodes `0..left` are cosets of `φ(G_i)`, nodes `left..left+right` are
/// cosets of `φ(G_j)`; every coset of `φ(G_∅)` is one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
    /// Shortest cycle length, `None` for a forest or a skipped check.
    pub girth: Option<usize>,
    /// One side is a single coset, the girth check is skipped.
    pub degenerate: bool,
}

pub fn link_graph(d: &TriangleDiagram, i: Label, j: Label) -> Result<LinkGraph, LinkError> {
    if gs_angle(d, i, j).angle == GSAngle::Zero {
        return Err(LinkError::ZeroAngleInfiniteLink(i.min(j), i.max(j)));
    }
    let pair = Subset::pair(i, j);
    let g = d.group(&pair);
    let hi = d.image(&Subset::single(i), &pair);
    let hj = d.image(&Subset::single(j), &pair);
    let he = d.base_image(&pair);
    let (ci, of_i) = left_cosets(g, &hi);
    let (cj, of_j) = left_cosets(g, &hj);
    let (ce, _) = left_cosets(g, &he);
    let left = ci.len();
    let edges: Vec<(usize, usize)> = ce.iter().map(|c| (of_i[c[0]], left + of_j[c[0]])).collect();
    let degenerate = ci.len() == 1 || cj.len() == 1;
    let girth = if degenerate {
        None
    } else {
        girth(left + cj.len(), &edges)
    };
    Ok(LinkGraph {
        left,
        right: cj.len(),
        edges,
        girth,
        degenerate,
    })
}

/// Girth of a multigraph by one breadth-first search per node.
pub(crate) fn girth(nodes: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj = vec![Vec::new(); nodes];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut best: Option<usize> = None;
    for root in 0..nodes {
        let mut dist = vec![usize::MAX; nodes];
        let mut via = vec![usize::MAX; nodes];
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &(w, e) in &adj[u] {
                if e == via[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = e;
                    q.push_back(w);
                } else {
                    let c = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_of_small_graphs() {
        let cycle: Vec<(usize, usize)> = (0..8).map(|k| (k, (k + 1) % 8)).collect();
        assert_eq!(girth(8, &cycle), Some(8));
        assert_eq!(girth(2, &[(0, 1), (0, 1)]), Some(2));
        assert_eq!(girth(3, &[(0, 1), (1, 2)]), None);
    }
}
