//! Finite presentations, the twin-group family and right-angled Coxeter
//! structure extraction.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

/// A finitely presented group `⟨ generators | relators ⟩`.
///
/// Relators are stored cyclically reduced. Letters refer to generators by
/// 1-based position in `generator_names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &generator_names {
            if name.is_empty() {
                return Err(Error::InvalidArgument("generator names must be nonempty".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate generator name `{name}`")));
            }
        }
        let n = generator_names.len();
        for (i, r) in relators.iter().enumerate() {
            if r.max_gen() > n {
                return Err(Error::InvalidArgument(format!(
                    "relator {i} uses generator {} but only {n} generators exist",
                    r.max_gen()
                )));
            }
        }
        Ok(Self::from_parts(generator_names, relators))
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators.iter().map(Word::cyclic_reduce).collect();
        Presentation {
            generator_names,
            relators,
        }
    }

    /// Generators named `prefix1, prefix2, ...`.
    pub fn with_numbered_generators(prefix: &str, count: usize, relators: Vec<Word>) -> Result<Self> {
        let names = (1..=count).map(|i| format!("{prefix}{i}")).collect();
        Self::new(names, relators)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Position (1-based) of the generator with the given name.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name).map(|i| i + 1)
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            generators: self.generator_names.clone(),
            relators: self.relators.iter().map(Word::to_signed).collect(),
        }
    }

    pub fn from_file(file: PresentationFile) -> Result<Self> {
        let n = file.generators.len();
        for (i, r) in file.relators.iter().enumerate() {
            for (k, &v) in r.iter().enumerate() {
                if v == 0 || v.unsigned_abs() as usize > n {
                    return Err(Error::Parse(format!(
                        "field `relators[{i}][{k}]`: letter {v} is not a signed index in 1..={n}"
                    )));
                }
            }
        }
        for (i, g) in file.generators.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::Parse(format!("field `generators[{i}]`: empty name")));
            }
        }
        let relators = file
            .relators
            .iter()
            .map(|r| Word::from_signed(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.generators, relators).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::Parse(format!("field `generators`: {msg}")),
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    /// Compact JSON with one relator per line.
    pub fn to_json(&self) -> String {
        let gens = serde_json::to_string(&self.generator_names).expect("strings serialize");
        let mut out = format!("{{\n  \"generators\": {gens},\n  \"relators\": [");
        for (i, r) in self.relators.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&serde_json::to_string(&r.to_signed()).expect("ints serialize"));
        }
        out.push_str(if self.relators.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        out
    }

    /// Renders a word with this presentation's generator names.
    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let name = &self.generator_names[l.gen() - 1];
                if l.is_inverse() {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generator_names.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.display_word(r)).collect();
        write!(f, "{} >", rels.join(", "))
    }
}

/// On-disk interchange format: `{ "generators": [...], "relators": [[1,1], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

/// Twin group on `n` arcs: involutions `t1..t(n-1)`, distant pairs commute.
pub fn twin_group(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("twin group needs n >= 2, got {n}")));
    }
    let k = n - 1;
    let mut graph = CommutationGraph::new(k);
    for i in 1..=k {
        for j in i + 2..=k {
            graph.add_edge(i, j);
        }
    }
    let names = (1..=k).map(|i| format!("t{i}")).collect();
    Ok(racg_presentation_named(&graph, names))
}

/// Grothendieck's `m`-dimensional cartographical group, i.e. `TW_{m+2}`.
pub fn cartographical_group(m: usize) -> Result<Presentation> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("cartographical group needs m >= 1, got {m}")));
    }
    twin_group(m + 2)
}

/// Simple undirected graph on vertices `1..=n`; an edge means the two
/// generators commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl CommutationGraph {
    pub fn new(n: usize) -> Self {
        CommutationGraph {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for a in 1..=n {
            for b in a + 1..=n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Panics on self-loops or out-of-range vertices.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loop at {a}");
        assert!((1..=self.n).contains(&a) && (1..=self.n).contains(&b), "vertex out of range");
        self.adj[a - 1][b - 1] = true;
        self.adj[b - 1][a - 1] = true;
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a - 1][b - 1] = false;
        self.adj[b - 1][a - 1] = false;
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adj[a - 1][b - 1]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .map(|(i, _)| i + 1)
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if self.adj[a - 1][b - 1] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

/// Right-angled Coxeter presentation of a commutation graph: `g²` for every
/// vertex, `(gh)²` for every edge.
pub fn racg_presentation(graph: &CommutationGraph) -> Presentation {
    let names = (1..=graph.vertex_count()).map(|i| format!("s{i}")).collect();
    racg_presentation_named(graph, names)
}

fn racg_presentation_named(graph: &CommutationGraph, names: Vec<String>) -> Presentation {
    let mut relators: Vec<Word> = (1..=graph.vertex_count()).map(|g| Word::from_gens(&[g, g])).collect();
    relators.extend(graph.edges().into_iter().map(|(a, b)| Word::from_gens(&[a, b, a, b])));
    Presentation::from_parts(names, relators)
}

enum RacgRelator {
    Square(usize),
    Commutation(usize, usize),
}

fn classify(r: &Word) -> Option<RacgRelator> {
    let w = r.cyclic_reduce();
    let l = w.letters();
    match l.len() {
        2 if l[0] == l[1] => Some(RacgRelator::Square(l[0].gen())),
        4 => {
            let (g, h) = (l[0].gen(), l[1].gen());
            (g != h && l[2].gen() == g && l[3].gen() == h).then(|| RacgRelator::Commutation(g.min(h), g.max(h)))
        }
        _ => None,
    }
}

/// Extracts the commutation graph of a right-angled Coxeter presentation.
///
/// Accepts `(gh)²` or commutator `[g,h]` spellings (any signs); every
/// generator must carry a square relator.
pub fn as_racg(p: &Presentation) -> Result<CommutationGraph> {
    let mut graph = CommutationGraph::new(p.generator_count());
    let mut squares = BTreeSet::new();
    for (index, r) in p.relators().iter().enumerate() {
        match classify(r) {
            Some(RacgRelator::Square(g)) => {
                squares.insert(g);
            }
            Some(RacgRelator::Commutation(a, b)) => graph.add_edge(a, b),
            None => {
                return Err(Error::NotRacg {
                    index,
                    relator: p.display_word(r),
                })
            }
        }
    }
    if let Some(g) = (1..=p.generator_count()).find(|g| !squares.contains(g)) {
        return Err(Error::MissingSquare(p.generator_names()[g - 1].clone()));
    }
    Ok(graph)
}
