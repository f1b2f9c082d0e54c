//! Lifts of words into a labelled graph, pieces, and minimum piece
//! decompositions of closed paths.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{EdgeId, GraphPath, LabelledGraph};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("more than {limit} lifts")]
    LimitExceeded { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniqueLiftError {
    #[error("word has no lift")]
    NoLift,
    #[error("word has several lifts (it is a piece)")]
    MultipleLifts,
}

/// Two distinct lifts of the same word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceWitness {
    pub word: Word,
    pub lift1: GraphPath,
    pub lift2: GraphPath,
}

/// All paths whose label equals `w` letter by letter. Fails once more than
/// `limit` lifts are found. The empty word is lifted to nothing.
pub fn lifts(g: &LabelledGraph, w: &Word, limit: usize) -> Result<Vec<GraphPath>, LiftError> {
    let mut out = Vec::new();
    collect_lifts(g, w, limit, &mut out)?;
    Ok(out)
}

/// Like [`lifts`] but stops silently after `limit` lifts.
pub(crate) fn lifts_upto(g: &LabelledGraph, w: &Word, limit: usize) -> Vec<GraphPath> {
    let mut out = Vec::new();
    let _ = collect_lifts(g, w, limit, &mut out);
    out
}

fn collect_lifts(
    g: &LabelledGraph,
    w: &Word,
    limit: usize,
    out: &mut Vec<GraphPath>,
) -> Result<(), LiftError> {
    let letters = w.letters();
    let Some(first) = letters.first() else {
        return Ok(());
    };
    let mut stack: Vec<EdgeId> = Vec::with_capacity(letters.len());
    for e in g.edges().filter(|&e| g.label(e) == first) {
        stack.push(e);
        extend(g, letters, &mut stack, limit, out)?;
        stack.pop();
    }
    Ok(())
}

fn extend(
    g: &LabelledGraph,
    letters: &[crate::word::Label],
    stack: &mut Vec<EdgeId>,
    limit: usize,
    out: &mut Vec<GraphPath>,
) -> Result<(), LiftError> {
    if stack.len() == letters.len() {
        if out.len() == limit {
            return Err(LiftError::LimitExceeded { limit });
        }
        out.push(GraphPath::new(stack.clone()));
        return Ok(());
    }
    let want = &letters[stack.len()];
    let v = g.omega(*stack.last().unwrap());
    for &e in g.outgoing(v) {
        if g.label(e) == want {
            stack.push(e);
            let r = extend(g, letters, stack, limit, out);
            stack.pop();
            r?;
        }
    }
    Ok(())
}

/// `Some(witness)` iff `w` has at least two distinct lifts.
pub fn is_piece(g: &LabelledGraph, w: &Word) -> Option<PieceWitness> {
    let mut found = lifts_upto(g, w, 2);
    if found.len() < 2 {
        return None;
    }
    let lift2 = found.pop().unwrap();
    let lift1 = found.pop().unwrap();
    Some(PieceWitness {
        word: w.clone(),
        lift1,
        lift2,
    })
}

pub fn unique_lift(g: &LabelledGraph, w: &Word) -> Result<GraphPath, UniqueLiftError> {
    let mut found = lifts_upto(g, w, 2);
    match found.len() {
        0 => Err(UniqueLiftError::NoLift),
        1 => Ok(found.pop().unwrap()),
        _ => Err(UniqueLiftError::MultipleLifts),
    }
}

/// A closed path cut into consecutive pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDecomposition {
    pub count: usize,
    /// Left rotation applied to the input path before cutting.
    pub rotation: usize,
    /// Subpaths whose concatenation is the rotated path.
    pub pieces: Vec<GraphPath>,
}

impl PieceDecomposition {
    pub fn words(&self, g: &LabelledGraph) -> Vec<Word> {
        self.pieces
            .iter()
            .map(|p| g.label_unchecked(&p.edges))
            .collect()
    }
}

/// Memoizes piece membership of words against one graph.
pub struct PieceOracle<'g> {
    graph: &'g LabelledGraph,
    cache: RefCell<HashMap<Word, bool>>,
}

impl<'g> PieceOracle<'g> {
    pub fn new(graph: &'g LabelledGraph) -> Self {
        PieceOracle {
            graph,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn is_piece(&self, w: &Word) -> bool {
        if let Some(&hit) = self.cache.borrow().get(w) {
            return hit;
        }
        let result = lifts_upto(self.graph, w, 2).len() >= 2;
        self.cache.borrow_mut().insert(w.clone(), result);
        result
    }

    /// Fewest pieces covering some rotation of the closed path `cycle`, with
    /// a witness; `None` when no rotation splits into pieces at all.
    ///
    /// For each rotation, a shortest cover of `[0, n)` by intervals whose
    /// labels are pieces; the minimum over rotations wins, earliest rotation
    /// first.
    pub fn min_piece_decomposition(&self, cycle: &GraphPath) -> Option<PieceDecomposition> {
        let n = cycle.len();
        let mut best: Option<PieceDecomposition> = None;
        for r in 0..n {
            let path = cycle.rotate(r);
            let word = self.graph.label_unchecked(&path.edges);
            let mut cost: Vec<Option<(usize, usize)>> = vec![None; n + 1];
            cost[0] = Some((0, 0));
            for j in 1..=n {
                for i in 0..j {
                    let Some((c, _)) = cost[i] else { continue };
                    if cost[j].is_some_and(|(cj, _)| cj <= c + 1) {
                        continue;
                    }
                    if self.is_piece(&word.subword(i, j)) {
                        cost[j] = Some((c + 1, i));
                    }
                }
            }
            let Some((count, _)) = cost[n] else { continue };
            if best.as_ref().is_some_and(|b| b.count <= count) {
                continue;
            }
            let mut cuts = vec![n];
            let mut j = n;
            while j > 0 {
                j = cost[j].unwrap().1;
                cuts.push(j);
            }
            cuts.reverse();
            let pieces = cuts
                .windows(2)
                .map(|w| GraphPath::new(path.edges[w[0]..w[1]].to_vec()))
                .collect();
            best = Some(PieceDecomposition {
                count,
                rotation: r,
                pieces,
            });
        }
        best
    }
}

pub fn min_piece_decomposition(g: &LabelledGraph, cycle: &GraphPath) -> Option<PieceDecomposition> {
    PieceOracle::new(g).min_piece_decomposition(cycle)
}

/// All freely reduced words of length `1..=max_len` with at least two lifts.
pub fn enumerate_pieces(g: &LabelledGraph, max_len: usize) -> BTreeSet<Word> {
    let mut counts: HashMap<Word, usize> = HashMap::new();
    let mut frontier: Vec<Vec<EdgeId>> = g.edges().map(|e| vec![e]).collect();
    for len in 1..=max_len {
        for p in &frontier {
            *counts.entry(g.label_unchecked(p)).or_default() += 1;
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.outgoing(g.omega(*p.last().unwrap())) {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        frontier = next;
    }
    counts
        .into_iter()
        .filter(|(w, c)| *c >= 2 && w.is_freely_reduced())
        .map(|(w, _)| w)
        .collect()
}
