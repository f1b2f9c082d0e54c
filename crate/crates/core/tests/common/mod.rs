//! Brute-force oracles shared by the integration tests. They use only the
//! graph's raw incidence data and the diagram's permutations, never the
//! library's lifting or piece code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use graphsc::diagram::{Diagram, DiagramKind};
use graphsc::word::Label;
use graphsc::{EdgeId, LabelledGraph, VertexId, Word};

pub fn k4() -> LabelledGraph {
    LabelledGraph::parse(include_str!("../../data/k4.graph")).unwrap()
}

pub fn theta() -> LabelledGraph {
    LabelledGraph::parse(include_str!("../../data/theta.graph")).unwrap()
}

pub fn twins() -> LabelledGraph {
    LabelledGraph::parse(include_str!("../../data/twin_triangles.graph")).unwrap()
}

pub fn w(s: &str) -> Word {
    Word::parse(s)
}

/// Stack-based free reduction.
pub fn stack_reduce(word: &Word) -> Word {
    let mut out: Vec<Label> = Vec::new();
    for l in word.letters() {
        if out
            .last()
            .is_some_and(|t| t.generator() == l.generator() && t.is_inverse() != l.is_inverse())
        {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    Word::new(out)
}

/// Every edge path of the given length without immediate backtracking.
pub fn reduced_paths(g: &LabelledGraph, len: usize) -> Vec<Vec<EdgeId>> {
    let mut layer: Vec<Vec<EdgeId>> = g.edges().map(|e| vec![e]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &layer {
            let last = *p.last().unwrap();
            for &e in g.outgoing(g.omega(last)) {
                if e != last.inv() {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    layer
}

pub fn path_word(g: &LabelledGraph, p: &[EdgeId]) -> Word {
    Word::new(p.iter().map(|&e| g.label(e).clone()).collect())
}

/// Words of exactly `len` letters read along at least two distinct paths.
pub fn brute_pieces(g: &LabelledGraph, len: usize) -> BTreeSet<Word> {
    let mut count: BTreeMap<Word, usize> = BTreeMap::new();
    for p in reduced_paths(g, len) {
        *count.entry(path_word(g, &p)).or_default() += 1;
    }
    count
        .into_iter()
        .filter(|&(_, n)| n >= 2)
        .map(|(w, _)| w)
        .collect()
}

/// Paths reading `word` letter by letter.
pub fn paths_reading(g: &LabelledGraph, word: &Word) -> Vec<Vec<EdgeId>> {
    let mut out: Vec<Vec<EdgeId>> = Vec::new();
    let letters = word.letters();
    if letters.is_empty() {
        return out;
    }
    let mut stack: Vec<Vec<EdgeId>> = g
        .edges()
        .filter(|&e| *g.label(e) == letters[0])
        .map(|e| vec![e])
        .collect();
    while let Some(p) = stack.pop() {
        if p.len() == letters.len() {
            out.push(p);
            continue;
        }
        let last = *p.last().unwrap();
        for &e in g.outgoing(g.omega(last)) {
            if *g.label(e) == letters[p.len()] {
                let mut q = p.clone();
                q.push(e);
                stack.push(q);
            }
        }
    }
    out.sort();
    out
}

pub fn closed_paths_reading(g: &LabelledGraph, word: &Word) -> Vec<Vec<EdgeId>> {
    paths_reading(g, word)
        .into_iter()
        .filter(|p| g.alpha(p[0]) == g.omega(*p.last().unwrap()))
        .collect()
}

/// Fewest pieces covering some rotation of the closed path, each piece a
/// subpath whose word has two lifts; `None` if no cover exists.
pub fn brute_min_pieces(g: &LabelledGraph, cycle: &[EdgeId]) -> Option<usize> {
    let n = cycle.len();
    let is_piece = |p: &[EdgeId]| paths_reading(g, &path_word(g, p)).len() >= 2;
    let mut best: Option<usize> = None;
    for start in 0..n {
        let rot: Vec<EdgeId> = (0..n).map(|i| cycle[(start + i) % n]).collect();
        let mut dp = vec![usize::MAX; n + 1];
        dp[0] = 0;
        for j in 1..=n {
            for i in 0..j {
                if dp[i] != usize::MAX && is_piece(&rot[i..j]) {
                    dp[j] = dp[j].min(dp[i] + 1);
                }
            }
        }
        if dp[n] != usize::MAX {
            best = Some(best.map_or(dp[n], |b: usize| b.min(dp[n])));
        }
    }
    best
}

/// Simple closed paths up to rotation and inversion, by vertex-simple DFS.
pub fn brute_simple_cycles(g: &LabelledGraph) -> BTreeSet<Vec<EdgeId>> {
    fn canon(p: &[EdgeId]) -> Vec<EdgeId> {
        let n = p.len();
        let inv: Vec<EdgeId> = p.iter().rev().map(|e| e.inv()).collect();
        (0..n)
            .flat_map(|k| {
                [
                    (0..n).map(|i| p[(k + i) % n]).collect::<Vec<_>>(),
                    (0..n).map(|i| inv[(k + i) % n]).collect::<Vec<_>>(),
                ]
            })
            .min()
            .unwrap()
    }
    let mut out = BTreeSet::new();
    for v in g.vertices() {
        let mut stack: Vec<(Vec<EdgeId>, Vec<VertexId>)> = vec![(Vec::new(), vec![v])];
        while let Some((p, seen)) = stack.pop() {
            let here = *seen.last().unwrap();
            for &e in g.outgoing(here) {
                if p.last() == Some(&e.inv()) {
                    continue;
                }
                let t = g.omega(e);
                let mut q = p.clone();
                q.push(e);
                if t == v {
                    out.insert(canon(&q));
                } else if !seen.contains(&t) {
                    let mut s = seen.clone();
                    s.push(t);
                    stack.push((q, s));
                }
            }
        }
    }
    out
}

fn orbit(mut x: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    let start = x;
    let mut out = vec![x];
    loop {
        x = f(x);
        if x == start {
            return out;
        }
        out.push(x);
    }
}

/// Outer face darts of a disk, found by following phi from the outer dart.
fn outer_darts(d: &Diagram) -> BTreeSet<usize> {
    match d.kind() {
        DiagramKind::Disk { outer } => orbit(outer, |x| d.phi(x)).into_iter().collect(),
        _ => BTreeSet::new(),
    }
}

/// Origination decided from scratch: both faces' closed lifts, aligned
/// letter by letter, must run along the edge in opposite directions.
pub fn oracle_originates(d: &Diagram, g: &LabelledGraph, x: usize) -> bool {
    let outer = outer_darts(d);
    let y = d.alpha(x);
    if outer.contains(&x) || outer.contains(&y) {
        return false;
    }
    // Closed lifts of the face through `dart`, read from `dart`.
    let lifts_from = |dart: usize| -> (Vec<usize>, Vec<Vec<EdgeId>>) {
        let face = orbit(dart, |z| d.phi(z));
        let word = Word::new(
            face.iter()
                .flat_map(|&z| d.label(z).letters().to_vec())
                .collect(),
        );
        (face, closed_paths_reading(g, &word))
    };
    let segment = |face: &[usize], lift: &[EdgeId], dart: usize| -> Vec<EdgeId> {
        let offset: usize = face
            .iter()
            .take_while(|&&z| z != dart)
            .map(|&z| d.label(z).len())
            .sum();
        lift[offset..offset + d.label(dart).len()].to_vec()
    };
    let reversed = |p: &[EdgeId]| p.iter().rev().map(|e| e.inv()).collect::<Vec<_>>();
    let (fx, lx) = lifts_from(x);
    if fx.contains(&y) {
        // Same face: one lift must serve both sides.
        return lx
            .iter()
            .any(|l| segment(&fx, l, x) == reversed(&segment(&fx, l, y)));
    }
    let (fy, ly) = lifts_from(y);
    lx.iter().any(|a| {
        ly.iter()
            .any(|b| segment(&fx, a, x) == reversed(&segment(&fy, b, y)))
    })
}

/// Vertex orbits under sigma, computed directly.
pub fn vertex_degrees(d: &Diagram) -> Vec<usize> {
    let mut seen = vec![false; d.dart_count()];
    let mut out = Vec::new();
    for x in 0..d.dart_count() {
        if !seen[x] {
            let o = orbit(x, |z| d.sigma(z));
            o.iter().for_each(|&z| seen[z] = true);
            out.push(o.len());
        }
    }
    out
}

pub fn face_degrees(d: &Diagram) -> Vec<usize> {
    let mut seen = vec![false; d.dart_count()];
    let mut out = Vec::new();
    for x in 0..d.dart_count() {
        if !seen[x] {
            let o = orbit(x, |z| d.phi(z));
            o.iter().for_each(|&z| seen[z] = true);
            out.push(o.len());
        }
    }
    out
}
