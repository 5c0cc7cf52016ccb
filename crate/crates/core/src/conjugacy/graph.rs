use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::group::FiniteGroup;
use crate::norms::LengthFunction;

/// Graph on the conjugacy classes: `x` and `y` are adjacent when
/// `x ⊆ c * y` for some distinguished class `c`. Since `c * y` is a union of
/// classes, meeting `x` already implies containing it. Edges are taken in
/// both directions.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyGraph {
    #[serde(skip)]
    group: Arc<FiniteGroup>,
    /// Canonical representative of every vertex.
    pub vertices: Vec<usize>,
    pub vertex_literals: Vec<String>,
    pub class_sizes: Vec<usize>,
    /// Distinguished classes, by vertex index.
    pub delta: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
    /// Distance from the identity class; `None` when unreachable.
    pub distances: Vec<Option<usize>>,
    /// Diameter of the identity's connected component.
    pub identity_component_diameter: usize,
    pub disconnected: bool,
}

fn bfs(adjacency: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices are reached");
        for &w in &adjacency[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

impl ConjugacyGraph {
    /// `delta_elements` are any members of the distinguished classes.
    pub fn build(group: &Arc<FiniteGroup>, delta_elements: &[usize]) -> ConjugacyGraph {
        let data = group.classes();
        let nv = data.count();
        let mut delta: Vec<usize> = delta_elements.iter().map(|&x| data.class_of(x)).collect();
        delta.sort_unstable();
        delta.dedup();
        let mut adj = vec![vec![false; nv]; nv];
        for x in 0..nv {
            let rx = data.representative(x);
            for &c in &delta {
                for &a in data.members(c) {
                    // x ⊆ a' y for a' in c  iff  a^-1 rep(x) lies in y for some a in c
                    let y = data.class_of(group.mul(group.inv(a), rx));
                    adj[x][y] = true;
                    adj[y][x] = true;
                }
            }
        }
        let adjacency: Vec<Vec<usize>> = adj.iter().map(|row| (0..nv).filter(|&j| row[j]).collect()).collect();
        let id_class = data.class_of(group.identity());
        let distances = bfs(&adjacency, id_class);
        let component: Vec<usize> = (0..nv).filter(|&v| distances[v].is_some()).collect();
        let identity_component_diameter = component
            .iter()
            .map(|&v| bfs(&adjacency, v).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let vertices: Vec<usize> = (0..nv).map(|c| data.representative(c)).collect();
        ConjugacyGraph {
            group: group.clone(),
            vertex_literals: vertices.iter().map(|&v| group.format_element(v)).collect(),
            class_sizes: (0..nv).map(|c| data.size(c)).collect(),
            vertices,
            delta,
            adjacency,
            disconnected: component.len() < nv,
            distances,
            identity_component_diameter,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `l_Delta` of a vertex: the distance from the identity class, or the
    /// identity component's diameter plus one when unreachable.
    pub fn vertex_length(&self, v: usize) -> usize {
        self.distances[v].unwrap_or(self.identity_component_diameter + 1)
    }

    pub fn length(&self, g: usize) -> usize {
        self.vertex_length(self.group.classes().class_of(g))
    }

    pub fn is_reachable(&self, g: usize) -> bool {
        self.distances[self.group.classes().class_of(g)].is_some()
    }
}

/// `l_Delta(g)` for the classes of `delta_elements`.
pub fn delta_length(group: &Arc<FiniteGroup>, delta_elements: &[usize], g: usize) -> usize {
    ConjugacyGraph::build(group, delta_elements).length(g)
}

/// `l_Delta` tabulated over the whole group.
pub fn delta_length_function(group: &Arc<FiniteGroup>, delta_elements: &[usize]) -> Result<LengthFunction> {
    let graph = ConjugacyGraph::build(group, delta_elements);
    let values = group.elements().map(|g| graph.length(g) as f64).collect();
    LengthFunction::from_values(group.clone(), values, "delta", true, None)
}
