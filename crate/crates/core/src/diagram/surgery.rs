//! Local rewrites: degree-2 forgetting, diamond moves, (p, q) witnesses.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use super::{origination_report, Diagram, DiagramKind, FaceTag};
use crate::graph::LabelledGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("vertex {vertex} has degree one")]
    Spur { vertex: usize },
    #[error("vertex {vertex} has degree two")]
    DegreeTwo { vertex: usize },
    #[error("(p, q) = ({p}, {q}) does not satisfy 1/p + 1/q = 1/2")]
    NotEuclidean { p: usize, q: usize },
    #[error("expected a connected sphere")]
    NotASphere,
    #[error("darts {0} and {1} are not a cancellation pair at one vertex")]
    NotASite(usize, usize),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("no witness found; the diagram violates Euler's formula")]
    NoWitness,
}

fn spur(d: &Diagram) -> Option<usize> {
    d.vertices().iter().position(|v| v.len() == 1)
}

/// Replaces every maximal arc through degree-2 vertices by one edge whose
/// label is the word read along the arc. Faces keep their darts' words, and
/// tags move to the arc that now carries their first letter. A disk keeps the
/// vertex its boundary reading starts from.
pub fn forget_degree2(d: &Diagram) -> Result<Diagram, SurgeryError> {
    if let Some(vertex) = spur(d) {
        return Err(SurgeryError::Spur { vertex });
    }
    let (alpha, sigma, labels, tags) = d.parts();
    let (mut alpha, mut sigma, mut labels, mut tags) = (
        alpha.to_vec(),
        sigma.to_vec(),
        labels.to_vec(),
        tags.clone(),
    );
    let n = alpha.len();
    let mut alive = vec![true; n];
    // A disk keeps the vertex its boundary reading starts from.
    let keep = match d.kind() {
        DiagramKind::Disk { outer } => Some(outer),
        _ => None,
    };
    loop {
        let site = (0..n).find(|&x| {
            alive[x]
                && sigma[x] != x
                && sigma[sigma[x]] == x
                && alpha[x] != sigma[x]
                && keep.is_none_or(|o| o != x && o != sigma[x])
        });
        let Some(x) = site else { break };
        let y = sigma[x];
        let (a, b) = (alpha[x], alpha[y]);
        for (key, pred) in [(x, b), (y, a)] {
            if let Some(tag) = tags.remove(&key) {
                let len = tag.relator.len();
                let shift = labels[pred].len() % len.max(1);
                let rotation = (tag.rotation + len - shift) % len.max(1);
                tags.insert(pred, FaceTag { rotation, ..tag });
            }
        }
        labels[a] = labels[a].concat(&labels[y]);
        labels[b] = labels[b].concat(&labels[x]);
        alpha[a] = b;
        alpha[b] = a;
        alive[x] = false;
        alive[y] = false;
        sigma[x] = x;
        sigma[y] = y;
    }
    let live: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
    let full = Diagram::from_parts(alpha, sigma, labels, tags, d.kind()).with_marked(None);
    let kind = d.kind();
    let marked = d.marked().filter(|&m| alive[m]);
    Ok(full
        .restrict(&live, kind)
        .with_marked(marked.map(|m| live.binary_search(&m).unwrap())))
}

/// A face with fewer than `q` sides or a vertex of degree less than `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PqWitness {
    Face { start: usize, degree: usize },
    Vertex { vertex: usize, degree: usize },
}

/// On a sphere with no vertex of degree two, Euler's formula forbids every
/// face having at least `q` sides while every vertex has degree at least `p`
/// when 1/p + 1/q = 1/2; this returns the offending face or vertex.
pub fn pq_witness(d: &Diagram, p: usize, q: usize) -> Result<PqWitness, SurgeryError> {
    if p < 3 || q < 3 || (p - 2) * (q - 2) != 4 {
        return Err(SurgeryError::NotEuclidean { p, q });
    }
    if d.kind() != DiagramKind::Sphere || d.components().len() != 1 {
        return Err(SurgeryError::NotASphere);
    }
    let vertices = d.vertices();
    // The one-loop sphere cannot lose its vertex; it is allowed through.
    if d.dart_count() > 2 {
        if let Some(vertex) = vertices.iter().position(|v| v.len() == 2) {
            return Err(SurgeryError::DegreeTwo { vertex });
        }
    }
    if let Some(f) = d.faces().into_iter().find(|f| f.darts.len() < q) {
        return Ok(PqWitness::Face {
            start: f.start,
            degree: f.darts.len(),
        });
    }
    if let Some((vertex, v)) = vertices.iter().enumerate().find(|(_, v)| v.len() < p) {
        return Ok(PqWitness::Vertex {
            vertex,
            degree: v.len(),
        });
    }
    Err(SurgeryError::NoWitness)
}

/// Pairs `(f, e)` of darts leaving one vertex with equal labels that are
/// adjacent once originating edges are erased: the two sides of a
/// cancellation in a face boundary of the not-originating skeleton.
pub fn cancellation_sites(d: &Diagram, g: &LabelledGraph) -> Vec<(usize, usize)> {
    let kept: HashSet<usize> = origination_report(d, g)
        .into_iter()
        .filter(|r| !r.originates)
        .flat_map(|r| [r.dart, d.alpha(r.dart)])
        .collect();
    let mut out = Vec::new();
    for &f in &kept {
        let mut e = d.sigma(f);
        while !kept.contains(&e) {
            e = d.sigma(e);
        }
        if e != f && d.label(e) == d.label(f) && !d.is_outer(d.alpha(f)) {
            out.push((f, e));
        }
    }
    out.sort_unstable();
    out
}

/// The diamond move on darts `e`, `f` leaving one vertex with equal labels.
///
/// The common vertex is split between `e` and `f`, the far endpoints are
/// joined, and the two edges are re-paired crosswise, so every face keeps
/// its darts and boundary word while the letters that cancelled across the
/// vertex now share one edge.
pub fn diamond_move(d: &Diagram, e: usize, f: usize) -> Result<Diagram, SurgeryError> {
    let n = d.dart_count();
    if e >= n || f >= n || e == f || f == d.alpha(e) || d.label(e) != d.label(f) {
        return Err(SurgeryError::NotASite(e, f));
    }
    let at_same_vertex = {
        let mut x = d.sigma(e);
        while x != e && x != f {
            x = d.sigma(x);
        }
        x == f
    };
    if !at_same_vertex {
        return Err(SurgeryError::NotASite(e, f));
    }
    let (eps, ph) = (d.alpha(e), d.alpha(f));
    let tau = |x: usize| match x {
        x if x == e => f,
        x if x == f => e,
        x if x == eps => ph,
        x if x == ph => eps,
        x => x,
    };
    let (alpha, sigma, labels, tags) = d.parts();
    let new_alpha: Vec<usize> = (0..n).map(|x| alpha[tau(x)]).collect();
    let new_sigma: Vec<usize> = (0..n).map(|x| sigma[tau(x)]).collect();
    let mut out = Diagram::from_parts(
        new_alpha,
        new_sigma,
        labels.to_vec(),
        tags.clone(),
        d.kind(),
    )
    .with_marked(d.marked());
    if out.components().len() > 1 {
        if d.kind() == DiagramKind::Sphere || d.kind() == DiagramKind::SphereTree {
            out.kind = DiagramKind::SphereTree;
        } else {
            return Err(SurgeryError::Unsupported(
                "the move disconnects a disk".into(),
            ));
        }
    }
    if out.euler_characteristics().iter().any(|&chi| chi != 2) {
        return Err(SurgeryError::Unsupported(
            "the move leaves the sphere".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
/// Word read along the darts of a face, for audits.
pub(crate) fn face_words(d: &Diagram) -> Vec<crate::word::Word> {
    let mut v: Vec<crate::word::Word> = d
        .inner_faces()
        .iter()
        .map(|f| d.face_word_from(f.start))
        .collect();
    v.sort();
    v
}
