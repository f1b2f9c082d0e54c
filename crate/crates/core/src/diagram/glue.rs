//! Bouquets of lollipops and boundary gluing.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramKind, FaceTag};
use crate::graph::{EdgeId, GraphPath, LabelledGraph};
use crate::presentation::{relators_basis, spanning_forest, tree_path};
use crate::word::{Label, Word};

/// One petal of a bouquet: a stem reading `stem` from the base point, ending
/// in a face whose boundary, read from its tagged dart, is `tag.word()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lollipop {
    pub stem: Word,
    pub tag: FaceTag,
}

impl Lollipop {
    /// `stem · face · stem⁻¹`, the element the lollipop contributes.
    pub fn element(&self) -> Word {
        self.stem
            .concat(&self.tag.word())
            .concat(&self.stem.inverse())
    }
}

/// How a diagram was glued: the bouquet and the boundary position of every
/// fold, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueTrace {
    pub lollipops: Vec<Lollipop>,
    pub sites: Vec<usize>,
}

/// A map under construction, with tombstoned darts.
pub(super) struct MapBuilder {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    labels: Vec<Word>,
    alive: Vec<bool>,
    tags: BTreeMap<usize, FaceTag>,
}

impl MapBuilder {
    fn new() -> Self {
        MapBuilder {
            alpha: Vec::new(),
            sigma: Vec::new(),
            sigma_inv: Vec::new(),
            labels: Vec::new(),
            alive: Vec::new(),
            tags: BTreeMap::new(),
        }
    }

    fn edge(&mut self, l: &Label) -> (usize, usize) {
        let d = self.alpha.len();
        self.alpha.extend([d + 1, d]);
        self.sigma.extend([d, d + 1]);
        self.sigma_inv.extend([d, d + 1]);
        self.labels.push(Word::new(vec![l.clone()]));
        self.labels.push(Word::new(vec![l.inverse()]));
        self.alive.extend([true, true]);
        (d, d + 1)
    }

    fn rotation(&mut self, darts: &[usize]) {
        for (i, &d) in darts.iter().enumerate() {
            let next = darts[(i + 1) % darts.len()];
            self.sigma[d] = next;
            self.sigma_inv[next] = d;
        }
    }

    fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    /// Takes `d` out of its rotation; returns its former predecessor unless
    /// `d` was alone.
    fn unlink(&mut self, d: usize) -> Option<usize> {
        let (p, s) = (self.sigma_inv[d], self.sigma[d]);
        self.sigma[d] = d;
        self.sigma_inv[d] = d;
        if p == d {
            return None;
        }
        self.sigma[p] = s;
        self.sigma_inv[s] = p;
        Some(p)
    }

    /// Folds consecutive outer darts `d1`, `d2` (`phi(d1) == d2`) with
    /// mutually inverse labels.
    fn fold(&mut self, d1: usize, d2: usize) {
        if d2 == self.alpha[d1] {
            self.unlink(d1);
            self.unlink(d2);
            self.alive[d1] = false;
            self.alive[d2] = false;
            return;
        }
        let (e1, e2) = (self.alpha[d1], self.alpha[d2]);
        self.unlink(d2);
        let a = self.unlink(d1);
        self.alive[d1] = false;
        self.alive[d2] = false;
        self.alpha[e1] = e2;
        self.alpha[e2] = e1;
        if let Some(a) = a {
            // Swapping successors merges the two vertices, or splits one.
            let (sa, se) = (self.sigma[a], self.sigma[e2]);
            self.sigma[a] = se;
            self.sigma_inv[se] = a;
            self.sigma[e2] = sa;
            self.sigma_inv[sa] = e2;
        }
    }

    fn finish(self, boundary: &[usize], base: &[usize]) -> Diagram {
        let live: Vec<usize> = (0..self.alpha.len()).filter(|&d| self.alive[d]).collect();
        let full = Diagram::from_parts(
            self.alpha,
            self.sigma,
            self.labels,
            self.tags,
            DiagramKind::Sphere,
        );
        let marked = base
            .iter()
            .copied()
            .find(|&d| live.binary_search(&d).is_ok());
        let full = full.with_marked(marked);
        let kind = match boundary.first() {
            Some(&outer) => DiagramKind::Disk { outer },
            None => DiagramKind::Sphere,
        };
        let mut d = full.restrict(&live, kind);
        if d.kind == DiagramKind::Sphere && d.components().len() > 1 {
            d.kind = DiagramKind::SphereTree;
        }
        d
    }
}

/// Lays the lollipops around one base vertex so that the boundary reads the
/// product of their elements in order. Returns the map, the outer face as a
/// dart list and the base vertex's darts.
pub(super) fn bouquet(lollipops: &[Lollipop]) -> (MapBuilder, Vec<usize>, Vec<usize>) {
    let mut m = MapBuilder::new();
    let mut base = Vec::new();
    let mut entries = Vec::new();
    // The outer face reads each petal as an inverse, so the petals go around
    // the base in reverse order.
    for lp in lollipops.iter().rev() {
        let face = lp.tag.word();
        assert!(!face.is_empty(), "lollipop faces must be nonempty");
        let stem: Vec<(usize, usize)> = lp.stem.letters().iter().map(|l| m.edge(l)).collect();
        let rim: Vec<(usize, usize)> = face.inverse().letters().iter().map(|l| m.edge(l)).collect();
        let n = rim.len();
        for j in 1..stem.len() {
            m.rotation(&[stem[j - 1].1, stem[j].0]);
        }
        for k in 1..n {
            m.rotation(&[rim[k - 1].1, rim[k].0]);
        }
        if let Some(&(a1, _)) = stem.first() {
            let bm = stem[stem.len() - 1].1;
            m.rotation(&[bm, rim[0].0, rim[n - 1].1]);
            base.push(a1);
            entries.push(a1);
        } else {
            base.extend([rim[0].0, rim[n - 1].1]);
            entries.push(rim[0].0);
        }
        m.tags.insert(rim[n - 1].1, lp.tag.clone());
    }
    m.rotation(&base);
    let mut outer = Vec::new();
    if let Some(&start) = entries.first() {
        let mut x = start;
        loop {
            outer.push(x);
            x = m.phi(x);
            if x == start {
                break;
            }
        }
    }
    (m, outer, base)
}

fn leftmost_site(m: &MapBuilder, boundary: &[usize]) -> Option<usize> {
    (0..boundary.len().saturating_sub(1))
        .find(|&i| m.labels[boundary[i + 1]] == m.labels[boundary[i]].inverse())
}

/// Builds the bouquet and folds the leftmost cancelling boundary pair until
/// the boundary word is freely reduced. An empty boundary gives a sphere (or
/// a tree of spheres); otherwise a disk whose boundary reads the product of
/// the lollipop elements, freely reduced.
pub fn glue_bouquet(lollipops: &[Lollipop]) -> Diagram {
    let (mut m, mut boundary, base) = bouquet(lollipops);
    let mut sites = Vec::new();
    while let Some(i) = leftmost_site(&m, &boundary) {
        m.fold(boundary[i], boundary[i + 1]);
        boundary.drain(i..i + 2);
        sites.push(i);
    }
    let mut d = m.finish(&boundary, &base);
    d.trace = Some(Box::new(GlueTrace {
        lollipops: lollipops.to_vec(),
        sites,
    }));
    d
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DiskError {
    #[error("path is not a simple closed path in the graph")]
    NotSimpleClosed,
}

fn tlabel(e: EdgeId) -> Label {
    Label::new(&format!("t{}", e.pair()), !e.is_positive())
}

fn tword(edges: &[EdgeId]) -> Word {
    Word::new(edges.iter().map(|&e| tlabel(e)).collect())
}

/// A disk over the basis presentation whose boundary reads the label of `c`
/// and whose interior edges all originate from the graph.
///
/// Every edge gets a private letter, the cycle is written as a product of
/// conjugated basis elements, their bouquet is glued, and the graph's labels
/// are put back.
pub fn disk_for_cycle(g: &LabelledGraph, c: &GraphPath) -> Result<Diagram, DiskError> {
    match g.classify_path(c) {
        Ok(class) if class.simple_closed && !c.is_empty() => {}
        _ => return Err(DiskError::NotSimpleClosed),
    }
    let (_, parent) = spanning_forest(g);
    let tree: HashSet<usize> = parent.iter().flatten().map(|e| e.pair()).collect();
    let basis = relators_basis(g);
    let non_tree: Vec<usize> = g
        .edges()
        .filter(|e| e.is_positive() && !tree.contains(&e.pair()))
        .map(|e| e.pair())
        .collect();

    let start = g.alpha(c.edges[0]);
    let to_root: Vec<EdgeId> = tree_path(g, &parent, start)
        .into_iter()
        .rev()
        .map(EdgeId::inv)
        .collect();
    let mut lollipops = Vec::new();
    let mut relators = Vec::new();
    for &e in c.edges.iter().filter(|e| !tree.contains(&e.pair())) {
        let pos = if e.is_positive() { e } else { e.inv() };
        let mut b = tree_path(g, &parent, g.alpha(pos));
        b.push(pos);
        b.extend(
            tree_path(g, &parent, g.omega(pos))
                .into_iter()
                .rev()
                .map(EdgeId::inv),
        );
        let b = if e.is_positive() {
            b
        } else {
            GraphPath::new(b).inverse().edges
        };
        let mut path = to_root.clone();
        path.extend(b);
        path.extend(to_root.iter().rev().map(|e| e.inv()));
        let w = tword(&path).free_reduce();
        let letters = w.letters();
        let mut k = 0;
        while 2 * k + 1 < letters.len() && letters[k].is_inverse_of(&letters[letters.len() - 1 - k])
        {
            k += 1;
        }
        let stem = w.subword(0, k);
        let face = w.subword(k, w.len() - k);
        let index = non_tree.binary_search(&e.pair()).expect("non-tree edge");
        relators.push((
            basis.relators[index].word.representative().clone(),
            e.is_positive(),
        ));
        lollipops.push(Lollipop {
            stem,
            tag: FaceTag::new(face, 1),
        });
    }

    let glued = glue_bouquet(&lollipops);
    let DiagramKind::Disk { outer } = glued.kind else {
        unreachable!("a simple cycle is not freely trivial")
    };
    // Drop any spheres pinched off while gluing.
    let comp = glued
        .components()
        .into_iter()
        .find(|c| c.binary_search(&outer).is_ok())
        .expect("outer dart has a component");
    let disk = glued.restrict(&comp, glued.kind);

    let to_graph = |w: &Word| -> Word {
        Word::new(
            w.letters()
                .iter()
                .map(|l| {
                    let pair: usize = l.generator()[1..].parse().expect("t-label");
                    let base = g.label(EdgeId(2 * pair));
                    if l.is_inverse() {
                        base.inverse()
                    } else {
                        base.clone()
                    }
                })
                .collect(),
        )
    };
    let (alpha, sigma, labels, tags) = disk.parts();
    let labels: Vec<Word> = labels.iter().map(to_graph).collect();
    let tags = tags
        .iter()
        .map(|(&d, t)| {
            let face = to_graph(&t.word());
            let i = lollipops
                .iter()
                .position(|lp| lp.tag == *t)
                .expect("tag from bouquet");
            let (rel, positive) = &relators[i];
            let exponent = if *positive { 1 } else { -1 };
            let tag = match rel.pow_sign(exponent).rotation_to(&face) {
                Some(rotation) => FaceTag {
                    relator: rel.clone(),
                    exponent,
                    rotation,
                },
                None => FaceTag::new(face, 1),
            };
            (d, tag)
        })
        .collect();
    let out = Diagram::from_parts(alpha.to_vec(), sigma.to_vec(), labels, tags, disk.kind)
        .with_marked(disk.marked());
    debug_assert_eq!(out.boundary_word(), g.path_label(c).ok());
    Ok(out)
}
