//! Chordality and induced squares of commutation graphs, and the structural
//! verdicts they imply for right-angled Coxeter groups.
//!
//! The commutator subgroup of a right-angled Coxeter group is free iff its
//! graph is chordal (Panov–Verëvkin); the group is word-hyperbolic iff the
//! graph has no induced square (Moussong). Virtual freeness and the absence
//! of surface subgroups are equivalent for Coxeter groups (Gordon–Long–Reid).

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::presentation::{as_racg, CommutationGraph, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    /// Vertices in perfect elimination order.
    Chordal(Vec<usize>),
    /// An induced cycle of length at least 4.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Lexicographic breadth-first search; ties go to the smallest vertex.
pub fn lex_bfs(g: &CommutationGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut visited = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (1..=n)
            .filter(|&v| !visited[v])
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if labels[b] >= labels[v] => Some(b),
                _ => Some(v),
            })
            .expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                labels[u].push(n - step);
            }
        }
    }
    order
}

/// True iff, for every vertex, its neighbours later in `order` are pairwise
/// adjacent.
pub fn is_perfect_elimination_order(g: &CommutationGraph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut pos = vec![0; n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        later
            .iter()
            .enumerate()
            .all(|(i, &a)| later[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// Decides chordality by LexBFS; on failure returns a chordless cycle.
pub fn is_chordal(g: &CommutationGraph) -> Chordality {
    let mut peo = lex_bfs(g);
    peo.reverse();
    if is_perfect_elimination_order(g, &peo) {
        return Chordality::Chordal(peo);
    }
    let cycle = find_chordless_cycle(g).expect("a graph without a PEO has a chordless cycle");
    assert!(is_induced_cycle(g, &cycle), "witness {cycle:?} is not an induced cycle");
    Chordality::NotChordal(cycle)
}

// For each vertex v and nonadjacent neighbours a < b, look for a shortest
// a-b path avoiding the rest of N[v]; together with v it closes an induced
// cycle of length >= 4.
fn find_chordless_cycle(g: &CommutationGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for v in 1..=n {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let blocked = |u: usize| u == v || (g.has_edge(v, u) && u != a && u != b);
                if let Some(path) = shortest_path(g, a, b, blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(
    g: &CommutationGraph,
    from: usize,
    to: usize,
    blocked: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut prev = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u) {
            if !seen[w] && !blocked(w) {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// `cycle` lists distinct vertices, consecutive ones (cyclically) are
/// adjacent, no other pair is, and the length is at least 4.
pub fn is_induced_cycle(g: &CommutationGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

/// First induced 4-cycle in lexicographic order of vertex quadruples.
pub fn has_induced_square(g: &CommutationGraph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if is_induced_cycle(g, &cyc) {
                            return Some(cyc);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Whether the commutator subgroup of the right-angled Coxeter group is free.
pub fn commutator_free(p: &Presentation) -> Result<bool> {
    Ok(is_chordal(&as_racg(p)?).is_chordal())
}

pub const PROVENANCE: &str = "commutator_free from chordality of the commutation graph (Panov-Verevkin); \
hyperbolic from absence of induced squares (Moussong); virtually_free equals commutator_free and \
contains_surface_group is its negation (Gordon-Long-Reid). Flags are consequences of cited criteria, \
not independently proven.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub generators: usize,
    pub edges: Vec<(usize, usize)>,
    pub chordal: bool,
    pub chordless_cycle_witness: Option<Vec<usize>>,
    pub perfect_elimination_order: Option<Vec<usize>>,
    pub induced_square: Option<[usize; 4]>,
    pub commutator_free: bool,
    pub hyperbolic: bool,
    pub contains_surface_group: bool,
    pub virtually_free: bool,
    pub criterion: &'static str,
    pub provenance: &'static str,
}

pub fn structure_report(p: &Presentation) -> Result<StructureReport> {
    let graph = as_racg(p)?;
    Ok(structure_report_for_graph(&graph))
}

pub fn structure_report_for_graph(graph: &CommutationGraph) -> StructureReport {
    let chordality = is_chordal(graph);
    let square = has_induced_square(graph);
    let chordal = chordality.is_chordal();
    let (peo, witness) = match chordality {
        Chordality::Chordal(order) => (Some(order), None),
        Chordality::NotChordal(cycle) => (None, Some(cycle)),
    };
    StructureReport {
        generators: graph.vertex_count(),
        edges: graph.edges(),
        chordal,
        chordless_cycle_witness: witness,
        perfect_elimination_order: peo,
        induced_square: square,
        commutator_free: chordal,
        hyperbolic: square.is_none(),
        contains_surface_group: !chordal,
        virtually_free: chordal,
        criterion: "racg-graph",
        provenance: PROVENANCE,
    }
}
