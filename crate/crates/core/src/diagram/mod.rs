//! Van Kampen diagrams as combinatorial maps.
//!
//! A diagram is a set of darts with two permutations: `alpha` pairs the two
//! darts of an edge and `sigma` lists the darts around each vertex in
//! counterclockwise order. Faces are the orbits of `phi = sigma ∘ alpha`.
//! Each dart carries the word read along it, so a face's boundary word is the
//! concatenation of the labels of its darts.

mod glue;
mod origination;
mod surgery;

pub use glue::{disk_for_cycle, glue_bouquet, GlueTrace, Lollipop};
pub use origination::{
    edge_originates, face_lifts, is_graphically_reduced, not_originating_skeleton,
    origination_report, EdgeOrigination, FaceLift, OriginationError, Skeleton,
};
pub use surgery::{
    cancellation_sites, diamond_move, forget_degree2, pq_witness, PqWitness, SurgeryError,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::LabelledGraph;
use crate::presentation::Presentation;
use crate::word::Word;

/// The relator a face is labelled with: reading the face from its tagged dart
/// gives `relator^exponent` rotated left by `rotation` letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceTag {
    pub relator: Word,
    #[serde(default = "plus_one")]
    pub exponent: i8,
    #[serde(default)]
    pub rotation: usize,
}

fn plus_one() -> i8 {
    1
}

impl FaceTag {
    pub fn new(relator: Word, exponent: i8) -> Self {
        FaceTag {
            relator,
            exponent,
            rotation: 0,
        }
    }

    pub fn word(&self) -> Word {
        self.relator.pow_sign(self.exponent).rotate(self.rotation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiagramKind {
    /// A disk; `outer` is a dart of the outer face, where the boundary
    /// reading starts.
    Disk {
        outer: usize,
    },
    Sphere,
    /// Spheres that met at cut vertices, stored as separate components.
    SphereTree,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram JSON: {0}")]
    Json(String),
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone)]
pub struct Diagram {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    labels: Vec<Word>,
    tags: BTreeMap<usize, FaceTag>,
    kind: DiagramKind,
    marked: Option<usize>,
    pub(crate) trace: Option<Box<GlueTrace>>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && self.sigma == other.sigma
            && self.labels == other.labels
            && self.tags == other.tags
            && self.kind == other.kind
            && self.marked == other.marked
    }
}

impl Eq for Diagram {}

/// A phi-orbit, listed from its tagged dart when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub start: usize,
    pub darts: Vec<usize>,
}

impl Diagram {
    /// Assembles a diagram without checking it; see [`Diagram::validate`].
    pub fn from_parts(
        alpha: Vec<usize>,
        sigma: Vec<usize>,
        labels: Vec<Word>,
        tags: BTreeMap<usize, FaceTag>,
        kind: DiagramKind,
    ) -> Self {
        Diagram {
            alpha,
            sigma,
            labels,
            tags,
            kind,
            marked: None,
            trace: None,
        }
    }

    /// Builds a diagram from vertex rotations given as dart lists.
    pub fn from_rotations(
        alpha_pairs: &[(usize, usize)],
        rotations: &[Vec<usize>],
        labels: Vec<Word>,
        tags: BTreeMap<usize, FaceTag>,
        kind: DiagramKind,
    ) -> Result<Self, DiagramError> {
        let n = labels.len();
        let mut alpha = vec![usize::MAX; n];
        for &(a, b) in alpha_pairs {
            if a >= n || b >= n || alpha[a] != usize::MAX || alpha[b] != usize::MAX || a == b {
                return Err(DiagramError::Malformed(format!("bad edge pair ({a}, {b})")));
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        if let Some(d) = alpha.iter().position(|&x| x == usize::MAX) {
            return Err(DiagramError::Malformed(format!("dart {d} is not paired")));
        }
        let mut sigma = vec![usize::MAX; n];
        for rot in rotations {
            for (i, &d) in rot.iter().enumerate() {
                if d >= n || sigma[d] != usize::MAX {
                    return Err(DiagramError::Malformed(format!(
                        "dart {d} in two rotations"
                    )));
                }
                sigma[d] = rot[(i + 1) % rot.len()];
            }
        }
        if let Some(d) = sigma.iter().position(|&x| x == usize::MAX) {
            return Err(DiagramError::Malformed(format!("dart {d} is at no vertex")));
        }
        Ok(Diagram::from_parts(alpha, sigma, labels, tags, kind))
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    pub fn label(&self, d: usize) -> &Word {
        &self.labels[d]
    }

    pub fn tags(&self) -> &BTreeMap<usize, FaceTag> {
        &self.tags
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    pub fn with_marked(mut self, dart: Option<usize>) -> Self {
        self.marked = dart;
        self
    }

    pub(crate) fn parts(&self) -> (&[usize], &[usize], &[Word], &BTreeMap<usize, FaceTag>) {
        (&self.alpha, &self.sigma, &self.labels, &self.tags)
    }

    fn orbits(&self, next: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for d in 0..self.dart_count() {
            if seen[d] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = next(x);
            }
            out.push(orbit);
        }
        out
    }

    /// Sigma-orbits, each starting at its least dart.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.orbits(|d| self.sigma[d])
    }

    /// Maps each dart to the index of its vertex in [`Diagram::vertices`].
    pub fn vertex_index(&self) -> Vec<usize> {
        index_of(&self.vertices(), self.dart_count())
    }

    /// Phi-orbits ordered by least dart, each read from its tagged dart if any.
    pub fn faces(&self) -> Vec<Face> {
        self.orbits(|d| self.phi(d))
            .into_iter()
            .map(|orbit| {
                let start = orbit
                    .iter()
                    .copied()
                    .filter(|d| self.tags.contains_key(d))
                    .min()
                    .unwrap_or(orbit[0]);
                let mut darts = Vec::with_capacity(orbit.len());
                let mut x = start;
                loop {
                    darts.push(x);
                    x = self.phi(x);
                    if x == start {
                        break;
                    }
                }
                Face { start, darts }
            })
            .collect()
    }

    pub fn face_index(&self) -> Vec<usize> {
        let faces: Vec<Vec<usize>> = self.faces().into_iter().map(|f| f.darts).collect();
        index_of(&faces, self.dart_count())
    }

    /// The word read along the phi-orbit of `start`.
    pub fn face_word_from(&self, start: usize) -> Word {
        let mut letters = Vec::new();
        let mut x = start;
        loop {
            letters.extend_from_slice(self.labels[x].letters());
            x = self.phi(x);
            if x == start {
                break;
            }
        }
        Word::new(letters)
    }

    pub fn is_outer(&self, d: usize) -> bool {
        match self.kind {
            DiagramKind::Disk { outer } => {
                let mut x = outer;
                loop {
                    if x == d {
                        return true;
                    }
                    x = self.phi(x);
                    if x == outer {
                        return false;
                    }
                }
            }
            _ => false,
        }
    }

    /// Inner faces: every face except the outer face of a disk.
    pub fn inner_faces(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .filter(|f| !self.is_outer(f.start))
            .collect()
    }

    /// The boundary word of a disk, read from its outer dart.
    pub fn boundary_word(&self) -> Option<Word> {
        match self.kind {
            DiagramKind::Disk { outer } => Some(self.face_word_from(outer).inverse()),
            _ => None,
        }
    }

    /// Darts of each connected component, in increasing order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.dart_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut darts = Vec::new();
            comp[s] = id;
            while let Some(d) = stack.pop() {
                darts.push(d);
                for x in [self.alpha[d], self.sigma[d]] {
                    if comp[x] == usize::MAX {
                        comp[x] = id;
                        stack.push(x);
                    }
                }
            }
            darts.sort_unstable();
            out.push(darts);
        }
        out
    }

    /// Restriction to a set of darts closed under alpha and sigma, renumbered
    /// in increasing order.
    pub(crate) fn restrict(&self, darts: &[usize], kind: DiagramKind) -> Diagram {
        let mut new_id = vec![usize::MAX; self.dart_count()];
        for (i, &d) in darts.iter().enumerate() {
            new_id[d] = i;
        }
        let map = |d: usize| new_id[d];
        let kind = match kind {
            DiagramKind::Disk { outer } => DiagramKind::Disk { outer: map(outer) },
            k => k,
        };
        Diagram {
            alpha: darts.iter().map(|&d| map(self.alpha[d])).collect(),
            sigma: darts.iter().map(|&d| map(self.sigma[d])).collect(),
            labels: darts.iter().map(|&d| self.labels[d].clone()).collect(),
            tags: self
                .tags
                .iter()
                .filter(|(d, _)| new_id[**d] != usize::MAX)
                .map(|(&d, t)| (map(d), t.clone()))
                .collect(),
            kind,
            marked: self.marked.filter(|&d| new_id[d] != usize::MAX).map(map),
            trace: None,
        }
    }

    /// Splits a sphere tree into its spheres.
    pub fn component_diagrams(&self) -> Vec<Diagram> {
        let comps = self.components();
        if comps.len() == 1 {
            let mut d = self.clone();
            if d.kind == DiagramKind::SphereTree {
                d.kind = DiagramKind::Sphere;
            }
            return vec![d];
        }
        comps
            .iter()
            .map(|darts| {
                let kind = match self.kind {
                    DiagramKind::Disk { outer } if darts.binary_search(&outer).is_ok() => self.kind,
                    _ => DiagramKind::Sphere,
                };
                self.restrict(darts, kind)
            })
            .collect()
    }

    /// V − E + F of each component.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        let comps = self.components();
        let vidx = self.vertex_index();
        let fidx = self.face_index();
        comps
            .iter()
            .map(|darts| {
                let mut vs: Vec<usize> = darts.iter().map(|&d| vidx[d]).collect();
                let mut fs: Vec<usize> = darts.iter().map(|&d| fidx[d]).collect();
                vs.sort_unstable();
                vs.dedup();
                fs.sort_unstable();
                fs.dedup();
                vs.len() as i64 - (darts.len() / 2) as i64 + fs.len() as i64
            })
            .collect()
    }

    /// Checks the map structure, labels, face tags, connectivity and Euler
    /// characteristic; with a presentation, also checks that inner face
    /// words lie in its symmetrized relator set.
    pub fn validate(&self, p: Option<&Presentation>) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.dart_count();
        if self.sigma.len() != n || self.labels.len() != n {
            violations.push(Violation::LengthMismatch);
            return ValidationReport::failed(violations);
        }
        if !is_permutation(&self.alpha) {
            violations.push(Violation::NotPermutation {
                map: "alpha".into(),
            });
        }
        if !is_permutation(&self.sigma) {
            violations.push(Violation::NotPermutation {
                map: "sigma".into(),
            });
        }
        if !violations.is_empty() {
            return ValidationReport::failed(violations);
        }
        for d in 0..n {
            if self.alpha[d] == d {
                violations.push(Violation::AlphaFixedPoint { dart: d });
            } else if self.alpha[self.alpha[d]] != d {
                violations.push(Violation::AlphaNotInvolution { dart: d });
            }
        }
        if !violations.is_empty() {
            return ValidationReport::failed(violations);
        }
        for d in 0..n {
            if self.labels[d].is_empty() {
                violations.push(Violation::EmptyLabel { dart: d });
            } else if d < self.alpha[d] && self.labels[self.alpha[d]] != self.labels[d].inverse() {
                violations.push(Violation::LabelMismatch { dart: d });
            }
        }
        if let DiagramKind::Disk { outer } = self.kind {
            if outer >= n {
                violations.push(Violation::BadOuterDart { dart: outer });
                return ValidationReport::failed(violations);
            }
        }
        if let Some(m) = self.marked.filter(|&m| m >= n) {
            violations.push(Violation::BadMarkedDart { dart: m });
        }

        let faces = self.faces();
        let fidx = self.face_index();
        let mut tagged = vec![0usize; faces.len()];
        for (&d, tag) in &self.tags {
            if d >= n {
                violations.push(Violation::TagOffDiagram { dart: d });
                continue;
            }
            tagged[fidx[d]] += 1;
            if self.is_outer(d) {
                violations.push(Violation::TaggedOuterFace { dart: d });
                continue;
            }
            let found = self.face_word_from(d);
            let expected = tag.word();
            if found != expected {
                violations.push(Violation::TagMismatch {
                    dart: d,
                    expected,
                    found,
                });
            }
        }
        for (i, &count) in tagged.iter().enumerate() {
            if count > 1 {
                violations.push(Violation::MultipleTags {
                    face: faces[i].start,
                });
            }
        }
        if let Some(p) = p {
            for f in &faces {
                if self.is_outer(f.start) {
                    continue;
                }
                let w = self.face_word_from(f.start);
                if !p.in_symmetrized(&w) {
                    violations.push(Violation::NotARelator {
                        face: f.start,
                        word: w,
                    });
                }
            }
        }

        let euler = self.euler_characteristics();
        let components = euler.len();
        if components != 1 && self.kind != DiagramKind::SphereTree {
            violations.push(Violation::Disconnected { components });
        }
        for (i, &chi) in euler.iter().enumerate() {
            if chi != 2 {
                violations.push(Violation::EulerCharacteristic { component: i, chi });
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            vertices: self.vertices().len(),
            edges: self.edge_count(),
            faces: faces.len(),
            components,
            euler,
            violations,
        }
    }

    pub fn is_valid(&self, p: Option<&Presentation>) -> bool {
        self.validate(p).valid
    }

    pub fn to_json_value(&self) -> DiagramJson {
        let mut sigma = BTreeMap::new();
        for (i, v) in self.vertices().into_iter().enumerate() {
            sigma.insert(i, v);
        }
        DiagramJson {
            darts: (0..self.dart_count()).collect(),
            alpha: (0..self.dart_count())
                .filter(|&d| d < self.alpha[d])
                .map(|d| [d, self.alpha[d]])
                .collect(),
            sigma,
            labels: self.labels.iter().cloned().enumerate().collect(),
            faces: self.tags.clone(),
            kind: match self.kind {
                DiagramKind::Disk { .. } => "disk",
                DiagramKind::Sphere => "sphere",
                DiagramKind::SphereTree => "sphere_tree",
            }
            .into(),
            outer: match self.kind {
                DiagramKind::Disk { outer } => Some(outer),
                _ => None,
            },
            marked: self.marked,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Diagram, DiagramError> {
        let j: DiagramJson =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Diagram::from_json_value(j)
    }

    pub fn from_json_value(j: DiagramJson) -> Result<Diagram, DiagramError> {
        let n = j.darts.len();
        if j.darts.iter().enumerate().any(|(i, &d)| i != d) {
            return Err(DiagramError::Malformed(
                "darts must be 0..n in order".into(),
            ));
        }
        let mut labels = vec![Word::empty(); n];
        for (d, w) in j.labels {
            if d >= n {
                return Err(DiagramError::Malformed(format!(
                    "label for unknown dart {d}"
                )));
            }
            labels[d] = w;
        }
        let kind = match (j.kind.as_str(), j.outer) {
            ("disk", Some(outer)) => DiagramKind::Disk { outer },
            ("disk", None) => {
                return Err(DiagramError::Malformed("disk without outer dart".into()))
            }
            ("sphere", _) => DiagramKind::Sphere,
            ("sphere_tree", _) => DiagramKind::SphereTree,
            (other, _) => return Err(DiagramError::Malformed(format!("unknown kind `{other}`"))),
        };
        let pairs: Vec<(usize, usize)> = j.alpha.iter().map(|p| (p[0], p[1])).collect();
        let rotations: Vec<Vec<usize>> = j.sigma.into_values().collect();
        let d = Diagram::from_rotations(&pairs, &rotations, labels, j.faces, kind)?;
        Ok(d.with_marked(j.marked))
    }

    /// Graphviz rendering of the 1-skeleton. With a graph, originating edges
    /// are dashed.
    pub fn to_dot(&self, g: Option<&LabelledGraph>) -> String {
        let vidx = self.vertex_index();
        let originating: Vec<bool> = match g {
            Some(g) => {
                let mut v = vec![false; self.dart_count()];
                for r in origination_report(self, g) {
                    v[r.dart] = r.originates;
                }
                v
            }
            None => vec![false; self.dart_count()],
        };
        let mut out = String::from("digraph diagram {\n  node [shape=point];\n");
        for v in 0..self.vertices().len() {
            let _ = writeln!(out, "  v{v};");
        }
        for d in (0..self.dart_count()).filter(|&d| d < self.alpha[d]) {
            let style = if originating[d] { ", style=dashed" } else { "" };
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"{}];",
                vidx[d], vidx[self.alpha[d]], self.labels[d], style
            );
        }
        out.push_str("}\n");
        out
    }
}

fn index_of(orbits: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, o) in orbits.iter().enumerate() {
        for &d in o {
            idx[d] = i;
        }
    }
    idx
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// On-disk form of a diagram.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub darts: Vec<usize>,
    pub alpha: Vec<[usize; 2]>,
    pub sigma: BTreeMap<usize, Vec<usize>>,
    pub labels: BTreeMap<usize, Word>,
    pub faces: BTreeMap<usize, FaceTag>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<usize>,
    #[serde(default)]
    pub marked: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    LengthMismatch,
    NotPermutation {
        map: String,
    },
    AlphaFixedPoint {
        dart: usize,
    },
    AlphaNotInvolution {
        dart: usize,
    },
    EmptyLabel {
        dart: usize,
    },
    LabelMismatch {
        dart: usize,
    },
    BadOuterDart {
        dart: usize,
    },
    BadMarkedDart {
        dart: usize,
    },
    TagOffDiagram {
        dart: usize,
    },
    TaggedOuterFace {
        dart: usize,
    },
    TagMismatch {
        dart: usize,
        expected: Word,
        found: Word,
    },
    MultipleTags {
        face: usize,
    },
    NotARelator {
        face: usize,
        word: Word,
    },
    Disconnected {
        components: usize,
    },
    EulerCharacteristic {
        component: usize,
        chi: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    pub euler: Vec<i64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn failed(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: false,
            vertices: 0,
            edges: 0,
            faces: 0,
            components: 0,
            euler: Vec::new(),
            violations,
        }
    }
}
