//! Labelled graphs with an edge involution, paths and simple cycles.
//!
//! Every undirected edge is stored as a pair of directed edges. The edge with
//! id `2k` is the positive orientation (its label has sign `+1`) and `2k + 1`
//! is its inverse, so inversion is `id ^ 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{is_identifier, Label, Word};

/// Default bound on the number of simple-cycle classes enumerated.
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

/// A directed edge of the graph; `e.inv()` is its partner under the
/// involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn inv(self) -> EdgeId {
        EdgeId(self.0 ^ 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Index of the underlying undirected edge.
    pub fn pair(self) -> usize {
        self.0 >> 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("edges at positions {0} and {} are not adjacent", .0 + 1)]
    NotAdjacent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("more than {cap} simple cycle classes")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone)]
struct EdgeRecord {
    src: VertexId,
    dst: VertexId,
    label: Label,
}

/// A finite labelled graph. Immutable once built.
#[derive(Debug, Clone, Default)]
pub struct LabelledGraph {
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<EdgeRecord>,
    outgoing: Vec<Vec<EdgeId>>,
}

/// Incremental constructor for [`LabelledGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    graph: LabelledGraph,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex if it does not exist yet and returns its id.
    pub fn vertex(&mut self, name: &str) -> VertexId {
        let g = &mut self.graph;
        if let Some(&v) = g.vertex_index.get(name) {
            return v;
        }
        let v = VertexId(g.vertex_names.len());
        g.vertex_names.push(name.to_string());
        g.vertex_index.insert(name.to_string(), v);
        g.outgoing.push(Vec::new());
        v
    }

    /// Adds the positive edge `src --generator--> dst` and its inverse.
    pub fn edge(&mut self, src: &str, dst: &str, generator: &str) -> EdgeId {
        let s = self.vertex(src);
        let t = self.vertex(dst);
        let g = &mut self.graph;
        let id = EdgeId(g.edges.len());
        g.edges.push(EdgeRecord {
            src: s,
            dst: t,
            label: Label::pos(generator),
        });
        g.edges.push(EdgeRecord {
            src: t,
            dst: s,
            label: Label::new(generator, true),
        });
        g.outgoing[s.0].push(id);
        g.outgoing[t.0].push(id.inv());
        id
    }

    pub fn build(self) -> LabelledGraph {
        self.graph
    }
}

impl LabelledGraph {
    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// vertex O
    /// edge A O b
    /// ```
    pub fn parse(text: &str) -> Result<LabelledGraph, GraphParseError> {
        let mut builder = GraphBuilder::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(line);
            let Some(&(col, keyword)) = tokens.first() else {
                continue;
            };
            let err = |column: usize, message: String| GraphParseError::Syntax {
                line: lineno + 1,
                column,
                message,
            };
            match keyword {
                "vertex" => {
                    if tokens.len() != 2 {
                        return Err(err(col, "expected `vertex <name>`".into()));
                    }
                    let (c, name) = tokens[1];
                    if !is_identifier(name) {
                        return Err(err(c, format!("invalid vertex name `{name}`")));
                    }
                    builder.vertex(name);
                }
                "edge" => {
                    if tokens.len() != 4 {
                        return Err(err(col, "expected `edge <src> <dst> <label>`".into()));
                    }
                    for &(c, name) in &tokens[1..3] {
                        if !is_identifier(name) {
                            return Err(err(c, format!("invalid vertex name `{name}`")));
                        }
                    }
                    let (c, label) = tokens[3];
                    if !is_identifier(label) {
                        return Err(err(c, format!("invalid label `{label}`")));
                    }
                    builder.edge(tokens[1].1, tokens[2].1, label);
                }
                other => return Err(err(col, format!("unknown directive `{other}`"))),
            }
        }
        Ok(builder.build())
    }

    /// Writes the graph back in the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.vertex_names {
            out.push_str(&format!("vertex {name}\n"));
        }
        for k in 0..self.edge_pair_count() {
            let e = EdgeId(2 * k);
            out.push_str(&format!(
                "edge {} {} {}\n",
                self.vertex_name(self.alpha(e)),
                self.vertex_name(self.omega(e)),
                self.label(e).generator()
            ));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    /// Number of directed edges (twice the number of involution pairs).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_pair_count(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn alpha(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn omega(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].dst
    }

    pub fn label(&self, e: EdgeId) -> &Label {
        &self.edges[e.0].label
    }

    /// Directed edges starting at `v`, in input order.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.outgoing[v.0].len()
    }

    /// Finds the positive edge `src --generator--> dst`.
    pub fn find_edge(&self, src: &str, dst: &str, generator: &str) -> Option<EdgeId> {
        let s = self.vertex_by_name(src)?;
        let t = self.vertex_by_name(dst)?;
        self.outgoing(s)
            .iter()
            .copied()
            .find(|&e| self.omega(e) == t && self.label(e) == &Label::pos(generator))
    }

    /// Sorted set of generator names occurring on edges.
    pub fn generators(&self) -> BTreeSet<String> {
        self.edges
            .iter()
            .map(|e| e.label.generator().to_string())
            .collect()
    }

    /// Human-readable `src->dst` name of a directed edge.
    pub fn edge_name(&self, e: EdgeId) -> String {
        format!(
            "{}->{}",
            self.vertex_name(self.alpha(e)),
            self.vertex_name(self.omega(e))
        )
    }

    pub fn check_path(&self, p: &GraphPath) -> Result<(), PathError> {
        for (i, e) in p.edges.iter().enumerate() {
            if e.0 >= self.edges.len() {
                return Err(PathError::UnknownEdge(e.0));
            }
            if i + 1 < p.edges.len() {
                let next = p.edges[i + 1];
                if next.0 >= self.edges.len() {
                    return Err(PathError::UnknownEdge(next.0));
                }
                if self.omega(*e) != self.alpha(next) {
                    return Err(PathError::NotAdjacent(i));
                }
            }
        }
        Ok(())
    }

    /// Product of the edge labels, without reduction.
    pub fn path_label(&self, p: &GraphPath) -> Result<Word, PathError> {
        self.check_path(p)?;
        Ok(self.label_unchecked(&p.edges))
    }

    pub(crate) fn label_unchecked(&self, edges: &[EdgeId]) -> Word {
        edges.iter().map(|&e| self.label(e).clone()).collect()
    }

    pub fn classify_path(&self, p: &GraphPath) -> Result<PathClass, PathError> {
        self.check_path(p)?;
        let edges = &p.edges;
        let reduced = edges.windows(2).all(|w| w[1] != w[0].inv());
        let trivial = reduce_edges(edges).is_empty();
        let closed = edges.is_empty() || self.alpha(edges[0]) == self.omega(edges[edges.len() - 1]);
        let starts: Vec<VertexId> = edges.iter().map(|&e| self.alpha(e)).collect();
        let distinct_starts = starts.iter().collect::<BTreeSet<_>>().len() == starts.len();
        // No non-empty closed subpath: every visited vertex is distinct.
        let simple = !edges.is_empty()
            && distinct_starts
            && !starts.contains(&self.omega(edges[edges.len() - 1]));
        let simple_closed = closed && !edges.is_empty() && !trivial && distinct_starts;
        Ok(PathClass {
            reduced,
            trivial,
            closed,
            simple,
            simple_closed,
        })
    }

    /// `Ok` if no two distinct edges share a start vertex and a label (which
    /// also rules out shared end vertex and label, by inversion); otherwise
    /// an offending pair.
    pub fn check_reduced_labelling(&self) -> Result<(), (EdgeId, EdgeId)> {
        for v in self.vertices() {
            let mut seen: BTreeMap<&Label, EdgeId> = BTreeMap::new();
            for &e in self.outgoing(v) {
                if let Some(&first) = seen.get(self.label(e)) {
                    return Err((first, e));
                }
                seen.insert(self.label(e), e);
            }
        }
        Ok(())
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s.0] {
                continue;
            }
            let mut comp = vec![s];
            seen[s.0] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in self.outgoing(v) {
                    let w = self.omega(e);
                    if !seen[w.0] {
                        seen[w.0] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Every simple closed path, grouped into classes up to rotation and
    /// inversion. Each class keeps its least edge-sequence representative.
    pub fn enumerate_simple_cycles(&self, cap: usize) -> Result<Vec<Cycle>, CycleError> {
        let mut classes: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
        let n = self.vertex_count();
        let mut on_path = vec![false; n];
        let mut path: Vec<EdgeId> = Vec::new();
        for s in self.vertices() {
            on_path[s.0] = true;
            self.cycle_dfs(s, s, &mut on_path, &mut path, &mut classes, cap)?;
            on_path[s.0] = false;
        }
        Ok(classes
            .into_iter()
            .map(|edges| Cycle {
                path: GraphPath::new(edges),
            })
            .collect())
    }

    fn cycle_dfs(
        &self,
        start: VertexId,
        cur: VertexId,
        on_path: &mut [bool],
        path: &mut Vec<EdgeId>,
        classes: &mut BTreeSet<Vec<EdgeId>>,
        cap: usize,
    ) -> Result<(), CycleError> {
        for &e in self.outgoing(cur) {
            let w = self.omega(e);
            if w == start {
                let backtrack = path.len() == 1 && e == path[0].inv();
                if !backtrack {
                    path.push(e);
                    let canon = canonical_cycle(path);
                    path.pop();
                    if classes.insert(canon) && classes.len() > cap {
                        return Err(CycleError::CapExceeded { cap });
                    }
                }
            } else if w > start && !on_path[w.0] {
                on_path[w.0] = true;
                path.push(e);
                self.cycle_dfs(start, w, on_path, path, classes, cap)?;
                path.pop();
                on_path[w.0] = false;
            }
        }
        Ok(())
    }
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in line.split_whitespace() {
        let at = line[offset..].find(part).unwrap() + offset;
        out.push((at + 1, part));
        offset = at + part.len();
    }
    out
}

/// Deletes `(e, e⁻¹)` subpaths until none remain.
pub(crate) fn reduce_edges(edges: &[EdgeId]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = Vec::with_capacity(edges.len());
    for &e in edges {
        if out.last() == Some(&e.inv()) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

/// Least edge sequence among all rotations of a closed path and of its
/// inverse.
pub(crate) fn canonical_cycle(edges: &[EdgeId]) -> Vec<EdgeId> {
    let inv: Vec<EdgeId> = edges.iter().rev().map(|e| e.inv()).collect();
    let a = rotate_least(edges);
    let b = rotate_least(&inv);
    a.min(b)
}

fn rotate_least(edges: &[EdgeId]) -> Vec<EdgeId> {
    let k = crate::word::least_rotation(edges);
    let mut out = edges[k..].to_vec();
    out.extend_from_slice(&edges[..k]);
    out
}

/// A finite sequence of consecutive edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphPath {
    pub edges: Vec<EdgeId>,
}

impl GraphPath {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        GraphPath { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn inverse(&self) -> GraphPath {
        GraphPath::new(self.edges.iter().rev().map(|e| e.inv()).collect())
    }

    pub fn rotate(&self, k: usize) -> GraphPath {
        if self.edges.is_empty() {
            return self.clone();
        }
        let k = k % self.edges.len();
        let mut edges = self.edges[k..].to_vec();
        edges.extend_from_slice(&self.edges[..k]);
        GraphPath::new(edges)
    }

    pub fn first(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }
}

impl fmt::Display for GraphPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.edges.iter().map(|e| e.0.to_string()).collect();
        write!(f, "({})", ids.join(", "))
    }
}

/// Flags derived from a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClass {
    pub reduced: bool,
    pub trivial: bool,
    pub closed: bool,
    pub simple: bool,
    pub simple_closed: bool,
}

/// A simple cycle: the class of a simple closed path under rotation (and,
/// for the enumeration, inversion). `path` is the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub path: GraphPath,
}

impl Cycle {
    pub fn from_path(path: &GraphPath) -> Cycle {
        Cycle {
            path: GraphPath::new(canonical_cycle(&path.edges)),
        }
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// All rotations of the representative and of its inverse.
    pub fn directed_rotations(&self) -> Vec<GraphPath> {
        let inv = self.path.inverse();
        let mut out: Vec<GraphPath> = (0..self.len()).map(|k| self.path.rotate(k)).collect();
        out.extend((0..self.len()).map(|k| inv.rotate(k)));
        out.sort();
        out.dedup();
        out
    }

    pub fn label(&self, g: &LabelledGraph) -> Word {
        g.label_unchecked(&self.path.edges)
    }
}
