//! Identities among relations, Peiffer moves, and their spherical diagrams.
//!
//! An item `(u, r, ε)` stands for the element `u r^ε u⁻¹` of the free group;
//! a sequence of items is an identity when the product of its elements is
//! freely trivial.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{glue_bouquet, Diagram, DiagramKind, FaceTag, Lollipop};
use crate::presentation::Presentation;
use crate::word::Word;

/// Where an item's relator sits in a presentation: `relators[index]`
/// rotated left by `rotation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelatorRef {
    pub index: usize,
    pub rotation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdentityItem {
    pub conj: Word,
    pub relator: Word,
    pub exponent: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<RelatorRef>,
}

impl IdentityItem {
    pub fn new(conj: Word, relator: Word, exponent: i8) -> Self {
        IdentityItem {
            conj,
            relator,
            exponent,
            source: None,
        }
    }

    /// `conj · relator^exponent · conj⁻¹`, freely reduced.
    pub fn element(&self) -> Word {
        self.conj
            .concat(&self.relator.pow_sign(self.exponent))
            .concat(&self.conj.inverse())
            .free_reduce()
    }

    pub fn inverse(&self) -> Self {
        IdentityItem {
            exponent: -self.exponent,
            ..self.clone()
        }
    }

    /// The same relator occurrence conjugated further by `w`.
    fn conjugated(&self, w: &Word) -> Self {
        IdentityItem {
            conj: w.concat(&self.conj).free_reduce(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdentitySequence {
    pub items: Vec<IdentityItem>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: `{word}` is not a rotation of a relator")]
    UnknownRelator { line: usize, word: Word },
    #[error("the sequence is empty")]
    Empty,
    #[error("the product is {0}, not the identity")]
    NotAnIdentity(Word),
    #[error("move {0:?} does not apply")]
    Inapplicable(PeifferMove),
    #[error("face at dart {0} has no relator tag")]
    UntaggedFace(usize),
    #[error("expected a spherical diagram")]
    NotASphere,
    #[error("the faces do not close up to an identity (left with {0})")]
    Unclosed(Word),
}

impl IdentitySequence {
    pub fn new(items: Vec<IdentityItem>) -> Self {
        IdentitySequence { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The freely reduced product of the elements.
    pub fn product(&self) -> Word {
        let mut letters = Vec::new();
        for it in &self.items {
            letters.extend(it.element().into_letters());
        }
        Word::new(letters).free_reduce()
    }

    pub fn is_identity(&self) -> bool {
        self.product().is_empty()
    }

    /// Reads `conj <word> ; rel <word> ; exp +1|-1` lines; `#` starts a
    /// comment and `1` denotes the empty word. With a presentation, every
    /// relator must be a rotation of one of its relators.
    pub fn parse(text: &str, p: Option<&Presentation>) -> Result<Self, IdentityError> {
        let mut items = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |message: String| IdentityError::Syntax { line, message };
            let mut fields = HashMap::new();
            for part in body.split(';') {
                let part = part.trim();
                let (key, value) = part.split_once(char::is_whitespace).unwrap_or((part, ""));
                if fields.insert(key, value.trim()).is_some() {
                    return Err(syntax(format!("repeated field `{key}`")));
                }
            }
            let word = |key: &str| -> Result<Word, IdentityError> {
                let v = fields
                    .get(key)
                    .ok_or_else(|| syntax(format!("missing field `{key}`")))?;
                if *v == "1" {
                    return Ok(Word::empty());
                }
                v.parse().map_err(|e| syntax(format!("{key}: {e}")))
            };
            let conj = word("conj")?;
            let relator = word("rel")?;
            if relator.is_empty() {
                return Err(syntax("empty relator".into()));
            }
            let exponent = match fields.get("exp").copied() {
                Some("+1") | Some("1") => 1,
                Some("-1") => -1,
                Some(other) => return Err(syntax(format!("exponent `{other}` is not +1 or -1"))),
                None => return Err(syntax("missing field `exp`".into())),
            };
            if let Some(k) = fields.keys().find(|k| !["conj", "rel", "exp"].contains(k)) {
                return Err(syntax(format!("unknown field `{k}`")));
            }
            let source = match p {
                Some(p) => {
                    let (index, rotation) =
                        p.resolve(&relator).ok_or(IdentityError::UnknownRelator {
                            line,
                            word: relator.clone(),
                        })?;
                    Some(RelatorRef { index, rotation })
                }
                None => None,
            };
            items.push(IdentityItem {
                conj,
                relator,
                exponent,
                source,
            });
        }
        Ok(IdentitySequence { items })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for IdentitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            let conj = if it.conj.is_empty() {
                "1".to_string()
            } else {
                it.conj.to_string()
            };
            let exp = if it.exponent < 0 { "-1" } else { "+1" };
            writeln!(f, "conj {conj} ; rel {} ; exp {exp}", it.relator)?;
        }
        Ok(())
    }
}

/// A Peiffer transformation at `position` (the index of the left item of the
/// affected pair).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum PeifferMove {
    /// `(p, q) → (p q p⁻¹, p)`.
    ExchangeLeft { position: usize },
    /// `(p, q) → (q, q⁻¹ p q)`.
    ExchangeRight { position: usize },
    /// Removes `(p, p⁻¹)`.
    Delete { position: usize },
    /// Puts `(p, p⁻¹)` before `position`.
    Insert { position: usize, item: IdentityItem },
}

pub fn peiffer_apply(
    seq: &IdentitySequence,
    mv: &PeifferMove,
) -> Result<IdentitySequence, IdentityError> {
    let items = &seq.items;
    let bad = || IdentityError::Inapplicable(mv.clone());
    let mut out = items.clone();
    match mv {
        PeifferMove::ExchangeLeft { position: i } => {
            let i = *i;
            if i + 1 >= items.len() {
                return Err(bad());
            }
            out[i] = items[i + 1].conjugated(&items[i].element());
            out[i + 1] = items[i].clone();
        }
        PeifferMove::ExchangeRight { position: i } => {
            let i = *i;
            if i + 1 >= items.len() {
                return Err(bad());
            }
            out[i] = items[i + 1].clone();
            out[i + 1] = items[i].conjugated(&items[i + 1].element().inverse());
        }
        PeifferMove::Delete { position: i } => {
            let i = *i;
            if i + 1 >= items.len()
                || !items[i]
                    .element()
                    .concat(&items[i + 1].element())
                    .free_reduce()
                    .is_empty()
            {
                return Err(bad());
            }
            out.drain(i..i + 2);
        }
        PeifferMove::Insert { position, item } => {
            if *position > items.len() || item.relator.is_empty() {
                return Err(bad());
            }
            out.splice(*position..*position, [item.clone(), item.inverse()]);
        }
    }
    Ok(IdentitySequence { items: out })
}

/// Applies moves in order.
pub fn replay(
    seq: &IdentitySequence,
    moves: &[PeifferMove],
) -> Result<IdentitySequence, IdentityError> {
    moves
        .iter()
        .try_fold(seq.clone(), |s, m| peiffer_apply(&s, m))
}

/// Glues the lollipop bouquet of an identity into a sphere (or a tree of
/// spheres) with one face per item, recording the gluing for [`unglue`].
pub fn van_kampen(seq: &IdentitySequence) -> Result<Diagram, IdentityError> {
    if seq.is_empty() {
        return Err(IdentityError::Empty);
    }
    let product = seq.product();
    if !product.is_empty() {
        return Err(IdentityError::NotAnIdentity(product));
    }
    let lollipops: Vec<Lollipop> = seq
        .items
        .iter()
        .map(|it| Lollipop {
            stem: it.conj.clone(),
            tag: FaceTag::new(it.relator.clone(), it.exponent),
        })
        .collect();
    Ok(glue_bouquet(&lollipops))
}

/// Reads an identity off a tagged sphere. A diagram straight from
/// [`van_kampen`] gives back its sequence; otherwise one face is cut out
/// and the rest is peeled face by face.
pub fn unglue(d: &Diagram) -> Result<IdentitySequence, IdentityError> {
    if let DiagramKind::Disk { .. } = d.kind() {
        return Err(IdentityError::NotASphere);
    }
    for f in d.faces() {
        if !d.tags().contains_key(&f.start) {
            return Err(IdentityError::UntaggedFace(f.start));
        }
    }
    if let Some(trace) = &d.trace {
        if glue_bouquet(&trace.lollipops) == *d {
            let items = trace
                .lollipops
                .iter()
                .map(|lp| {
                    let item =
                        IdentityItem::new(lp.stem.clone(), lp.tag.relator.clone(), lp.tag.exponent);
                    // A rotated tag conjugates by the rotated-off prefix.
                    let g = lp
                        .tag
                        .relator
                        .pow_sign(lp.tag.exponent)
                        .subword(0, lp.tag.rotation);
                    IdentityItem {
                        conj: item.conj.concat(&g.inverse()).free_reduce(),
                        ..item
                    }
                })
                .collect();
            return Ok(IdentitySequence { items });
        }
    }
    let mut items = Vec::new();
    for comp in d.component_diagrams() {
        items.extend(peel(&comp)?.items);
    }
    Ok(IdentitySequence { items })
}

/// `conj` such that `conj · tag.word()` rotated to start at letter `k` of
/// the face, conjugated by `c`, equals the item.
fn face_item(tag: &FaceTag, c: &Word, k: usize) -> IdentityItem {
    let h = tag.word().subword(0, k);
    let g = tag.relator.pow_sign(tag.exponent).subword(0, tag.rotation);
    let conj = c.concat(&h.inverse()).concat(&g.inverse()).free_reduce();
    IdentityItem::new(conj, tag.relator.clone(), tag.exponent)
}

fn peel(d: &Diagram) -> Result<IdentitySequence, IdentityError> {
    let faces = d.faces();
    let face_of = d.face_index();
    // Letter offset of every dart from its face's tagged dart.
    let mut offset = vec![0; d.dart_count()];
    for f in &faces {
        let mut pos = 0;
        for &x in &f.darts {
            offset[x] = pos;
            pos += d.label(x).len();
        }
    }
    let tag = |fi: usize| &d.tags()[&faces[fi].start];
    let mut merged = vec![false; faces.len()];
    merged[0] = true;
    let mut list: Vec<usize> = faces[0].darts.clone();
    let mut peeled = Vec::new();
    loop {
        let next = list.iter().position(|&x| !merged[face_of[d.alpha(x)]]);
        let Some(j) = next else { break };
        let x = list[j];
        let s = d.alpha(x);
        let fi = face_of[s];
        merged[fi] = true;
        let mut prefix = Vec::new();
        for &y in &list[..=j] {
            prefix.extend_from_slice(d.label(y).letters());
        }
        let c = Word::new(prefix).free_reduce();
        peeled.push(face_item(tag(fi), &c, offset[s]));
        let mut rest = Vec::new();
        let mut y = d.phi(s);
        while y != s {
            rest.push(y);
            y = d.phi(y);
        }
        list.splice(j + 1..j + 1, rest);
        list.remove(j);
    }
    let mut remaining = Vec::new();
    for &y in &list {
        remaining.extend_from_slice(d.label(y).letters());
    }
    let remaining = Word::new(remaining).free_reduce();
    if !remaining.is_empty() {
        return Err(IdentityError::Unclosed(remaining));
    }
    peeled.reverse();
    peeled.push(face_item(tag(0), &Word::empty(), 0));
    Ok(IdentitySequence { items: peeled })
}

/// Outcome of [`triviality_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "moves", rename_all = "snake_case")]
pub enum Triviality {
    /// These moves take the sequence to the empty sequence.
    Trivial(Vec<PeifferMove>),
    Unknown,
}

/// Iterative deepening over exchanges and deletions, visiting at most
/// `budget` states. Finds the shortest certificate within the budget; never
/// claims non-triviality.
pub fn triviality_search(seq: &IdentitySequence, budget: usize) -> Triviality {
    if budget == 0 || !seq.is_identity() {
        return Triviality::Unknown;
    }
    let mut visited = 0usize;
    let mut depth = seq.len() / 2;
    loop {
        let mut memo: HashMap<Vec<Word>, usize> = HashMap::new();
        let mut path = Vec::new();
        let before = visited;
        match dfs(seq, depth, &mut memo, &mut path, &mut visited, budget) {
            Some(true) => return Triviality::Trivial(path),
            None => return Triviality::Unknown,
            Some(false) => {}
        }
        // Nothing new was reachable at this depth.
        if visited == before {
            return Triviality::Unknown;
        }
        depth += 1;
    }
}

/// `Some(true)` on success, `Some(false)` when the depth is exhausted and
/// `None` when the budget runs out.
fn dfs(
    seq: &IdentitySequence,
    remaining: usize,
    memo: &mut HashMap<Vec<Word>, usize>,
    path: &mut Vec<PeifferMove>,
    visited: &mut usize,
    budget: usize,
) -> Option<bool> {
    if seq.is_empty() {
        return Some(true);
    }
    // Each deletion removes two items.
    if remaining < seq.len().div_ceil(2) {
        return Some(false);
    }
    let key: Vec<Word> = seq.items.iter().map(IdentityItem::element).collect();
    if memo.get(&key).is_some_and(|&r| r >= remaining) {
        return Some(false);
    }
    memo.insert(key, remaining);
    if *visited >= budget {
        return None;
    }
    *visited += 1;
    let n = seq.len();
    let moves = (0..n.saturating_sub(1))
        .map(|i| PeifferMove::Delete { position: i })
        .chain((0..n.saturating_sub(1)).map(|i| PeifferMove::ExchangeLeft { position: i }))
        .chain((0..n.saturating_sub(1)).map(|i| PeifferMove::ExchangeRight { position: i }));
    for mv in moves {
        let Ok(next) = peiffer_apply(seq, &mv) else {
            continue;
        };
        path.push(mv);
        match dfs(&next, remaining - 1, memo, path, visited, budget) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        path.pop();
    }
    Some(false)
}

/// Relators whose exponents do not cancel out. Every Peiffer move keeps the
/// exponent sum of each relator, so a nonempty answer shows the sequence can
/// never reach the empty one.
pub fn exponent_imbalance(seq: &IdentitySequence) -> Vec<(crate::word::CyclicWord, i64)> {
    let mut sums: std::collections::BTreeMap<crate::word::CyclicWord, i64> = Default::default();
    for it in &seq.items {
        let w = crate::word::CyclicWord::new(&it.relator);
        let (key, sign) = if w <= w.inverse() {
            (w, 1)
        } else {
            (w.inverse(), -1)
        };
        *sums.entry(key).or_default() += sign * it.exponent as i64;
    }
    sums.into_iter().filter(|(_, s)| *s != 0).collect()
}
