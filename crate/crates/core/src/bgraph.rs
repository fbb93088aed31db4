//! Bipartite multigraphs with labeled edges, plain multigraphs, and the
//! colour-preserving automorphism group acting on edge labels.
//!
//! File formats are line oriented; `#` starts a comment.
//!
//! ```text
//! black b1 b2
//! white w1
//! edge 1 b1 w1
//! edge 2 b2 w1
//! ```
//!
//! Plain graphs use `vertex <id>…` and `edge [<label>] <id> <id>`; both ids
//! may be equal (a loop). Edge labels are either given on every edge line or
//! on none, in which case edges are numbered in file order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{CycleType, Permutation};
use crate::permgroup::{factorial, GroupError, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex {id:?} declared twice")]
    DuplicateVertex { line: usize, id: String },
    #[error("line {line}: unknown vertex {id:?}")]
    UnknownVertex { line: usize, id: String },
    #[error("line {line}: loop at {id:?}; bipartite edges join a black and a white vertex")]
    Loop { line: usize, id: String },
    #[error("line {line}: edge must join a black vertex to a white vertex")]
    WrongColours { line: usize },
    #[error("line {line}: edge label {label} used twice")]
    DuplicateLabel { line: usize, label: usize },
    #[error("line {line}: label {label} leaves a gap; labels must be exactly 1..{edges}")]
    LabelGap {
        line: usize,
        label: usize,
        edges: usize,
    },
    #[error("line {line}: either every edge line carries a label or none does")]
    MixedLabels { line: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is disconnected: vertex {id:?} (line {line}) is unreachable")]
    Disconnected { line: usize, id: String },
    #[error("edge action is not faithful: |theta(G)| = {theta} but |G| = {counted}")]
    NotFaithful { theta: BigUint, counted: BigUint },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An edge: its label joins the black and white vertices at these indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: usize,
    pub black: usize,
    pub white: usize,
}

/// A connected bipartite multigraph with edges labeled `1..e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    blacks: Vec<String>,
    whites: Vec<String>,
    /// `edges[ℓ − 1]` is the edge labeled `ℓ`.
    edges: Vec<Edge>,
    black_lines: Vec<usize>,
    white_lines: Vec<usize>,
}

/// Ascending degree multisets of the two colour classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphPassport {
    pub black: CycleType,
    pub white: CycleType,
}

impl std::fmt::Display for GraphPassport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({};{})", self.black, self.white)
    }
}

impl BipartiteGraph {
    /// Builds and validates a graph; `edges` are `(black index, white index)`
    /// in label order.
    pub fn new(
        blacks: Vec<String>,
        whites: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let edges = edges
            .iter()
            .enumerate()
            .map(|(k, &(black, white))| Edge {
                label: k + 1,
                black,
                white,
            })
            .collect();
        let g = BipartiteGraph {
            black_lines: vec![0; blacks.len()],
            white_lines: vec![0; whites.len()],
            blacks,
            whites,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        for e in &self.edges {
            if e.black >= self.blacks.len() || e.white >= self.whites.len() {
                return Err(GraphError::UnknownVertex {
                    line: 0,
                    id: format!("index {}/{}", e.black, e.white),
                });
            }
        }
        // Union of black and white vertices; whites offset by α.
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            let w = self.blacks.len() + e.white;
            adj[e.black].push(w);
            adj[w].push(e.black);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            let (id, line) = if v < self.blacks.len() {
                (self.blacks[v].clone(), self.black_lines[v])
            } else {
                let w = v - self.blacks.len();
                (self.whites[w].clone(), self.white_lines[w])
            };
            return Err(GraphError::Disconnected { line, id });
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn black_count(&self) -> usize {
        self.blacks.len()
    }

    pub fn white_count(&self) -> usize {
        self.whites.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.blacks.len() + self.whites.len()
    }

    pub fn black_ids(&self) -> &[String] {
        &self.blacks
    }

    pub fn white_ids(&self) -> &[String] {
        &self.whites
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Labels incident to black vertex `i`, ascending.
    pub fn black_labels(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.black == i)
            .map(|e| e.label)
            .collect()
    }

    /// Labels incident to white vertex `j`, ascending.
    pub fn white_labels(&self, j: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.white == j)
            .map(|e| e.label)
            .collect()
    }

    pub fn black_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.blacks.len()];
        for e in &self.edges {
            d[e.black] += 1;
        }
        d
    }

    pub fn white_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.whites.len()];
        for e in &self.edges {
            d[e.white] += 1;
        }
        d
    }

    pub fn passport(&self) -> GraphPassport {
        GraphPassport {
            black: CycleType::new(self.black_degrees()),
            white: CycleType::new(self.white_degrees()),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.white_degrees().iter().all(|&d| d == 2)
    }

    /// `∏ (deg − 1)!` over all vertices: the number of rotation pairs.
    pub fn candidate_count(&self) -> BigUint {
        self.black_degrees()
            .into_iter()
            .chain(self.white_degrees())
            .fold(BigUint::one(), |acc, d| acc * factorial(d - 1))
    }

    /// Writes the graph in the labeled file format.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "black {}", self.blacks.join(" "));
        let _ = writeln!(out, "white {}", self.whites.join(" "));
        for e in &self.edges {
            let _ = writeln!(
                out,
                "edge {} {} {}",
                e.label, self.blacks[e.black], self.whites[e.white]
            );
        }
        out
    }

    /// Colour-preserving automorphisms together with their action on labels.
    pub fn automorphism_group(&self) -> Result<EdgeActionGroup, GraphError> {
        EdgeActionGroup::compute(self)
    }
}

struct EdgeLine<'a> {
    line: usize,
    label: Option<usize>,
    a: &'a str,
    b: &'a str,
}

/// Shared tokenizer: vertex declaration lines and edge lines.
fn scan<'a>(
    text: &'a str,
    vertex_keywords: &[&str],
) -> Result<(Vec<(usize, usize, &'a str)>, Vec<EdgeLine<'a>>), GraphError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(head) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        if let Some(kind) = vertex_keywords.iter().position(|k| *k == head) {
            if rest.is_empty() {
                return Err(GraphError::Syntax {
                    line,
                    msg: format!("`{head}` needs at least one id"),
                });
            }
            vertices.extend(rest.into_iter().map(|id| (line, kind, id)));
        } else if head == "edge" {
            let (label, a, b) = match rest.as_slice() {
                [a, b] => (None, *a, *b),
                [l, a, b] => {
                    let label = l.parse::<usize>().ok().filter(|&l| l > 0).ok_or_else(|| {
                        GraphError::Syntax {
                            line,
                            msg: format!("bad edge label {l:?}"),
                        }
                    })?;
                    (Some(label), *a, *b)
                }
                _ => {
                    return Err(GraphError::Syntax {
                        line,
                        msg: "expected `edge [<label>] <id> <id>`".into(),
                    })
                }
            };
            edges.push(EdgeLine { line, label, a, b });
        } else {
            return Err(GraphError::Syntax {
                line,
                msg: format!("unknown keyword {head:?}"),
            });
        }
    }
    Ok((vertices, edges))
}

/// Resolves labels to `0..e` indices, checking they are exactly `1..e`.
fn resolve_labels(edges: &[EdgeLine<'_>]) -> Result<Vec<usize>, GraphError> {
    let labeled = edges.first().is_some_and(|e| e.label.is_some());
    if let Some(bad) = edges.iter().find(|e| e.label.is_some() != labeled) {
        return Err(GraphError::MixedLabels { line: bad.line });
    }
    if !labeled {
        return Ok((0..edges.len()).collect());
    }
    let n = edges.len();
    let mut used: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::with_capacity(n);
    for e in edges {
        let label = e.label.expect("labeled");
        if label > n {
            return Err(GraphError::LabelGap {
                line: e.line,
                label,
                edges: n,
            });
        }
        if used[label - 1].is_some() {
            return Err(GraphError::DuplicateLabel {
                line: e.line,
                label,
            });
        }
        used[label - 1] = Some(e.line);
        out.push(label - 1);
    }
    Ok(out)
}

/// Parses the bipartite graph file format.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph, GraphError> {
    let (vertices, edge_lines) = scan(text, &["black", "white"])?;
    let mut blacks = Vec::new();
    let mut whites = Vec::new();
    let mut black_lines = Vec::new();
    let mut white_lines = Vec::new();
    let mut ids: HashMap<&str, (bool, usize)> = HashMap::new();
    for (line, kind, id) in vertices {
        let is_black = kind == 0;
        let slot = if is_black { blacks.len() } else { whites.len() };
        if ids.insert(id, (is_black, slot)).is_some() {
            return Err(GraphError::DuplicateVertex {
                line,
                id: id.to_string(),
            });
        }
        if is_black {
            blacks.push(id.to_string());
            black_lines.push(line);
        } else {
            whites.push(id.to_string());
            white_lines.push(line);
        }
    }
    if edge_lines.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let order = resolve_labels(&edge_lines)?;
    let mut edges = vec![
        Edge {
            label: 0,
            black: 0,
            white: 0
        };
        edge_lines.len()
    ];
    for (e, &slot) in edge_lines.iter().zip(&order) {
        if e.a == e.b {
            return Err(GraphError::Loop {
                line: e.line,
                id: e.a.to_string(),
            });
        }
        let lookup = |id: &str| {
            ids.get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex {
                    line: e.line,
                    id: id.to_string(),
                })
        };
        let (a, b) = (lookup(e.a)?, lookup(e.b)?);
        let (black, white) = match (a, b) {
            ((true, x), (false, y)) | ((false, y), (true, x)) => (x, y),
            _ => return Err(GraphError::WrongColours { line: e.line }),
        };
        edges[slot] = Edge {
            label: slot + 1,
            black,
            white,
        };
    }
    let g = BipartiteGraph {
        blacks,
        whites,
        edges,
        black_lines,
        white_lines,
    };
    g.validate()?;
    Ok(g)
}

/// A connected multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    vertices: Vec<String>,
    /// `edges[k]` is the edge labeled `k + 1`, as a pair of vertex indices.
    edges: Vec<(usize, usize)>,
}

impl PlainGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let g = PlainGraph { vertices, edges };
        g.validate(&[])?;
        Ok(g)
    }

    fn validate(&self, lines: &[usize]) -> Result<(), GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let n = self.vertices.len();
        for &(a, b) in &self.edges {
            if a >= n || b >= n {
                return Err(GraphError::UnknownVertex {
                    line: 0,
                    id: format!("index {}", a.max(b)),
                });
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &self.edges {
                if seen[a] != seen[b] {
                    seen[a] = true;
                    seen[b] = true;
                    changed = true;
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::Disconnected {
                line: lines.get(v).copied().unwrap_or(0),
                id: self.vertices[v].clone(),
            });
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Clean bipartite graph: every vertex black, a white vertex in the
    /// middle of every edge. Edge `k` contributes labels `2k − 1` (first
    /// endpoint side) and `2k` (second endpoint side); a loop becomes two
    /// parallel edges.
    pub fn cleanify(&self) -> BipartiteGraph {
        let taken: std::collections::HashSet<&str> =
            self.vertices.iter().map(String::as_str).collect();
        let whites: Vec<String> = (1..=self.edges.len())
            .map(|k| {
                let mut id = format!("m{k}");
                while taken.contains(id.as_str()) {
                    id.push('\'');
                }
                id
            })
            .collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(k, &(a, b))| [(a, k), (b, k)])
            .collect();
        BipartiteGraph::new(self.vertices.clone(), whites, &edges)
            .expect("cleanification of a connected graph is connected")
    }
}

/// Parses the plain graph file format.
pub fn parse_plain(text: &str) -> Result<PlainGraph, GraphError> {
    let (vertices, edge_lines) = scan(text, &["vertex"])?;
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut lines = Vec::new();
    for (line, _, id) in vertices {
        if ids.insert(id, names.len()).is_some() {
            return Err(GraphError::DuplicateVertex {
                line,
                id: id.to_string(),
            });
        }
        names.push(id.to_string());
        lines.push(line);
    }
    if edge_lines.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let order = resolve_labels(&edge_lines)?;
    let mut edges = vec![(0, 0); edge_lines.len()];
    for (e, &slot) in edge_lines.iter().zip(&order) {
        let lookup = |id: &str| {
            ids.get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex {
                    line: e.line,
                    id: id.to_string(),
                })
        };
        edges[slot] = (lookup(e.a)?, lookup(e.b)?);
    }
    let g = PlainGraph {
        vertices: names,
        edges,
    };
    g.validate(&lines)?;
    Ok(g)
}

/// A colour-preserving automorphism: vertex bijections (by index) and the
/// induced permutation of edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub edges: Permutation,
}

/// `G_𝒢` given by generators, and its image `θ(G_𝒢)` on edge labels.
#[derive(Debug, Clone)]
pub struct EdgeActionGroup {
    generators: Vec<GraphAutomorphism>,
    theta: PermGroup,
    order: BigUint,
}

impl EdgeActionGroup {
    fn compute(g: &BipartiteGraph) -> Result<Self, GraphError> {
        let alpha = g.black_count();
        let n = g.vertex_count();
        let e = g.edge_count();

        // Parallel classes keyed by (black, white), labels ascending.
        let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for edge in g.edges() {
            classes
                .entry((edge.black, edge.white))
                .or_default()
                .push(edge.label);
        }
        let mut mult = vec![0u32; n * n];
        for (&(b, w), labels) in &classes {
            mult[b * n + alpha + w] = labels.len() as u32;
            mult[(alpha + w) * n + b] = labels.len() as u32;
        }
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for (&(b, w), labels) in &classes {
            adj[b].push((alpha + w, labels.len() as u32));
            adj[alpha + w].push((b, labels.len() as u32));
        }
        let search = AutomorphismSearch {
            n,
            adj: &adj,
            mult: &mult,
            initial: initial_colours(g),
        };
        let (vertex_gens, vertex_order) = search.generators();

        let lift = |map: &[usize]| -> Permutation {
            let mut images = vec![0u32; e];
            for (&(b, w), labels) in &classes {
                let target = &classes[&(map[b], map[alpha + w] - alpha)];
                for (l, t) in labels.iter().zip(target) {
                    images[l - 1] = (t - 1) as u32;
                }
            }
            Permutation::from_images0(images).expect("lift of an automorphism is a bijection")
        };

        let mut generators = Vec::new();
        for map in &vertex_gens {
            generators.push(GraphAutomorphism {
                black: map[..alpha].to_vec(),
                white: map[alpha..].iter().map(|w| w - alpha).collect(),
                edges: lift(map),
            });
        }
        let mut parallel_factor = BigUint::one();
        for labels in classes.values() {
            parallel_factor *= factorial(labels.len());
            for pair in labels.windows(2) {
                generators.push(GraphAutomorphism {
                    black: (0..alpha).collect(),
                    white: (0..g.white_count()).collect(),
                    edges: Permutation::from_cycles(e, &[vec![pair[0], pair[1]]])
                        .expect("transposition"),
                });
            }
        }
        let theta = if generators.is_empty() {
            PermGroup::trivial(e)
        } else {
            PermGroup::from_generators(generators.iter().map(|a| a.edges.clone()).collect())?
        };
        let counted = vertex_order * parallel_factor;
        let group = EdgeActionGroup {
            generators,
            theta,
            order: counted.clone(),
        };
        debug_assert!(group.generators.iter().all(|a| preserves_incidence(g, a)));
        let theta_order = group.theta.order();
        if theta_order != counted {
            return Err(GraphError::NotFaithful {
                theta: theta_order,
                counted,
            });
        }
        Ok(group)
    }

    pub fn generators(&self) -> &[GraphAutomorphism] {
        &self.generators
    }

    /// `θ(G_𝒢)` as a permutation group on edge labels.
    pub fn theta(&self) -> &PermGroup {
        &self.theta
    }

    /// `|G_𝒢|`, counted by the vertex search times the parallel-edge factor.
    pub fn order(&self) -> &BigUint {
        &self.order
    }
}

/// Every edge `(ℓ, b, w)` is sent to an edge joining the images of `b`, `w`.
pub fn preserves_incidence(g: &BipartiteGraph, a: &GraphAutomorphism) -> bool {
    g.edges().iter().all(|edge| {
        let image = &g.edges()[a.edges.apply(edge.label) - 1];
        image.black == a.black[edge.black] && image.white == a.white[edge.white]
    })
}

/// Colour and degree; whites are offset so the two colours never share a
/// class.
fn initial_colours(g: &BipartiteGraph) -> Vec<u32> {
    let e = g.edge_count() as u32;
    g.black_degrees()
        .into_iter()
        .map(|d| d as u32)
        .chain(g.white_degrees().into_iter().map(|d| e + 1 + d as u32))
        .collect()
}

type Trace = Vec<Vec<(u32, Vec<(u32, u32)>, usize)>>;

/// Individualization-refinement backtracking on the vertex set.
struct AutomorphismSearch<'a> {
    n: usize,
    adj: &'a [Vec<(usize, u32)>],
    mult: &'a [u32],
    initial: Vec<u32>,
}

impl AutomorphismSearch<'_> {
    /// Colour refinement to the coarsest equitable partition. Colours are
    /// ranks of sorted signatures, so the result and the trace are
    /// isomorphism invariant.
    fn refine(&self, colours: &[u32]) -> (Vec<u32>, Trace) {
        let mut colours = colours.to_vec();
        let mut trace = Vec::new();
        let mut classes = count_distinct(&colours);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(u32, u32)> =
                        self.adj[v].iter().map(|&(u, m)| (colours[u], m)).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let mut sorted: Vec<&(u32, Vec<(u32, u32)>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let rank: HashMap<&(u32, Vec<(u32, u32)>), u32> = sorted
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, i as u32))
                .collect();
            let mut counts = vec![0usize; sorted.len()];
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| {
                    let r = rank[s];
                    counts[r as usize] += 1;
                    r
                })
                .collect();
            trace.push(
                sorted
                    .iter()
                    .zip(&counts)
                    .map(|(s, &c)| (s.0, s.1.clone(), c))
                    .collect(),
            );
            let new_classes = sorted.len();
            colours = next;
            if new_classes == classes {
                break;
            }
            classes = new_classes;
        }
        (colours, trace)
    }

    fn individualize(&self, colours: &[u32], v: usize) -> Vec<u32> {
        let mut c: Vec<u32> = colours.iter().map(|&x| 2 * x).collect();
        c[v] = 2 * colours[v] + 1;
        c
    }

    /// Searches for an automorphism compatible with the two colourings.
    fn extend(&self, left: &[u32], right: &[u32]) -> Option<Vec<usize>> {
        let (left, lt) = self.refine(left);
        let (right, rt) = self.refine(right);
        if lt != rt {
            return None;
        }
        let cells = count_distinct(&left);
        if cells == self.n {
            let mut map = vec![0; self.n];
            let mut by_colour = vec![0; self.n];
            for v in 0..self.n {
                by_colour[right[v] as usize] = v;
            }
            for v in 0..self.n {
                map[v] = by_colour[left[v] as usize];
            }
            return self.is_automorphism(&map).then_some(map);
        }
        // First non-singleton cell of the smallest colour.
        let mut sizes = vec![0usize; self.n];
        for &c in &left {
            sizes[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| sizes[c] > 1)? as u32;
        let v = (0..self.n).find(|&v| left[v] == target)?;
        let l2 = self.individualize(&left, v);
        for w in (0..self.n).filter(|&w| right[w] == target) {
            let r2 = self.individualize(&right, w);
            if let Some(map) = self.extend(&l2, &r2) {
                return Some(map);
            }
        }
        None
    }

    fn is_automorphism(&self, map: &[usize]) -> bool {
        (0..self.n).all(|v| self.initial[v] == self.initial[map[v]])
            && (0..self.n).all(|v| {
                self.adj[v]
                    .iter()
                    .all(|&(u, m)| self.mult[map[v] * self.n + map[u]] == m)
            })
    }

    /// Strong generators along the base `0, 1, 2, …` and the group order as
    /// the product of basic orbit lengths.
    fn generators(&self) -> (Vec<Vec<usize>>, BigUint) {
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut order = BigUint::one();
        let mut prefix = self.initial.clone();
        let mut fixed: Vec<usize> = Vec::new();
        for b in 0..self.n {
            let (colours, _) = self.refine(&prefix);
            if count_distinct(&colours) == self.n {
                break;
            }
            let candidates: Vec<usize> =
                (0..self.n).filter(|&u| colours[u] == colours[b]).collect();
            if candidates.len() > 1 {
                // Orbit of b under the generators fixing the current prefix.
                let mut level: Vec<Vec<usize>> = gens
                    .iter()
                    .filter(|g| fixed.iter().all(|&f| g[f] == f))
                    .cloned()
                    .collect();
                let mut orbit = vec![b];
                let mut in_orbit = vec![false; self.n];
                in_orbit[b] = true;
                close_orbit(&mut orbit, &mut in_orbit, &level);
                let left = self.individualize(&colours, b);
                for &u in &candidates {
                    if in_orbit[u] {
                        continue;
                    }
                    let right = self.individualize(&colours, u);
                    if let Some(map) = self.extend(&left, &right) {
                        gens.push(map.clone());
                        level.push(map);
                        close_orbit(&mut orbit, &mut in_orbit, &level);
                    }
                }
                order *= BigUint::from(orbit.len());
            }
            prefix = self.individualize(&colours, b);
            fixed.push(b);
        }
        (gens, order)
    }
}

fn close_orbit(orbit: &mut Vec<usize>, in_orbit: &mut [bool], gens: &[Vec<usize>]) {
    let mut k = 0;
    while k < orbit.len() {
        let x = orbit[k];
        for g in gens {
            let y = g[x];
            if !in_orbit[y] {
                in_orbit[y] = true;
                orbit.push(y);
            }
        }
        k += 1;
    }
}

fn count_distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}
