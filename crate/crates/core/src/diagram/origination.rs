//! Which diagram edges come from the graph.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use super::Diagram;
use crate::graph::{GraphPath, LabelledGraph};
use crate::lifting::lifts_upto;
use crate::verdict::Verdict;

const LIFT_LIMIT: usize = 10_000;

/// A closed path in the graph reading a face's boundary from its start dart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceLift {
    pub face: usize,
    pub lift: GraphPath,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OriginationError {
    #[error("dart {0} is not in the diagram")]
    NoSuchDart(usize),
}

/// Origination status of one edge, named by its lesser dart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeOrigination {
    pub dart: usize,
    pub originates: bool,
    /// On the boundary of a disk; such edges never originate.
    pub boundary: bool,
    /// One of the incident faces has more than one lift, so the answer
    /// rests on a choice of lifts.
    pub multiple_lifts: bool,
}

/// All closed lifts of the face through `start`; none for the outer face.
pub fn face_lifts(d: &Diagram, g: &LabelledGraph, start: usize) -> Vec<FaceLift> {
    if d.is_outer(start) {
        return Vec::new();
    }
    let w = d.face_word_from(start);
    lifts_upto(g, &w, LIFT_LIMIT)
        .into_iter()
        .filter(|p| p.first().map(|e| g.alpha(e)) == p.last().map(|e| g.omega(e)))
        .map(|lift| FaceLift { face: start, lift })
        .collect()
}

struct LiftTable {
    face_of: Vec<usize>,
    /// Letter offset of each dart within its face, read from the face start.
    offset: Vec<usize>,
    lifts: Vec<Vec<GraphPath>>,
    outer: Vec<bool>,
}

impl LiftTable {
    fn new(d: &Diagram, g: &LabelledGraph) -> Self {
        let faces = d.faces();
        let mut face_of = vec![0; d.dart_count()];
        let mut offset = vec![0; d.dart_count()];
        let mut lifts = Vec::with_capacity(faces.len());
        let mut outer = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let mut pos = 0;
            for &x in &f.darts {
                face_of[x] = i;
                offset[x] = pos;
                pos += d.label(x).len();
            }
            outer.push(d.is_outer(f.start));
            lifts.push(
                face_lifts(d, g, f.start)
                    .into_iter()
                    .map(|l| l.lift)
                    .collect(),
            );
        }
        LiftTable {
            face_of,
            offset,
            lifts,
            outer,
        }
    }

    fn segment(&self, d: &Diagram, x: usize, lift: &GraphPath) -> GraphPath {
        let o = self.offset[x];
        GraphPath::new(lift.edges[o..o + d.label(x).len()].to_vec())
    }

    fn edge(&self, d: &Diagram, x: usize) -> EdgeOrigination {
        let y = d.alpha(x);
        let (fx, fy) = (self.face_of[x], self.face_of[y]);
        let dart = x.min(y);
        let multiple_lifts = self.lifts[fx].len() > 1 || self.lifts[fy].len() > 1;
        if self.outer[fx] || self.outer[fy] {
            return EdgeOrigination {
                dart,
                originates: false,
                boundary: true,
                multiple_lifts,
            };
        }
        let originates = if fx == fy {
            // One face, so both sides must use the same lift.
            self.lifts[fx]
                .iter()
                .any(|p| self.segment(d, x, p) == self.segment(d, y, p).inverse())
        } else {
            let xs: HashSet<GraphPath> = self.lifts[fx]
                .iter()
                .map(|p| self.segment(d, x, p))
                .collect();
            self.lifts[fy]
                .iter()
                .any(|q| xs.contains(&self.segment(d, y, q).inverse()))
        };
        EdgeOrigination {
            dart,
            originates,
            boundary: false,
            multiple_lifts,
        }
    }
}

/// True iff some lifts of the two faces along the edge of `dart` induce the
/// same graph path on it.
pub fn edge_originates(
    d: &Diagram,
    g: &LabelledGraph,
    dart: usize,
) -> Result<bool, OriginationError> {
    if dart >= d.dart_count() {
        return Err(OriginationError::NoSuchDart(dart));
    }
    Ok(LiftTable::new(d, g).edge(d, dart).originates)
}

/// Origination of every edge, by lesser dart.
pub fn origination_report(d: &Diagram, g: &LabelledGraph) -> Vec<EdgeOrigination> {
    let table = LiftTable::new(d, g);
    (0..d.dart_count())
        .filter(|&x| x < d.alpha(x))
        .map(|x| table.edge(d, x))
        .collect()
}

/// Holds iff no edge originates; otherwise the lesser dart of the first
/// originating edge.
pub fn is_graphically_reduced(d: &Diagram, g: &LabelledGraph) -> Verdict<usize> {
    match origination_report(d, g).into_iter().find(|r| r.originates) {
        Some(r) => Verdict::Violated(r.dart),
        None => Verdict::Holds,
    }
}

/// The edges that do not originate, and the vertices where they leave a
/// spur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    /// Lesser darts of the skeleton edges.
    pub edges: Vec<usize>,
    /// Vertex indices (as in [`Diagram::vertices`]) of skeleton degree one.
    pub spurs: Vec<usize>,
}

pub fn not_originating_skeleton(d: &Diagram, g: &LabelledGraph) -> Skeleton {
    let edges: Vec<usize> = origination_report(d, g)
        .into_iter()
        .filter(|r| !r.originates)
        .map(|r| r.dart)
        .collect();
    let in_skeleton: HashSet<usize> = edges.iter().flat_map(|&x| [x, d.alpha(x)]).collect();
    let spurs = d
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, darts)| darts.iter().filter(|x| in_skeleton.contains(x)).count() == 1)
        .map(|(i, _)| i)
        .collect();
    Skeleton { edges, spurs }
}
