//! Group presentations read off a labelled graph, plus the classical
//! small-cancellation checks used for comparison.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CycleError, EdgeId, GraphPath, LabelledGraph, VertexId};
use crate::verdict::Verdict;
use crate::walk::closed_walk;
use crate::word::{CyclicWord, Word};

/// Largest `p` accepted by the T(p) deciders.
pub const MAX_TP: usize = 16;

/// Where a relator came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Label of a simple cycle; `path` reads exactly the relator
    /// representative.
    SimpleCycle { cycle: usize, path: GraphPath },
    /// Fundamental-group basis element for a non-tree edge; `path` is the
    /// closed path at `base` before reduction.
    BasisElement {
        edge: EdgeId,
        base: VertexId,
        path: GraphPath,
    },
    /// Supplied directly rather than derived from a graph.
    Given,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub word: CyclicWord,
    pub provenance: Provenance,
}

impl Relator {
    pub fn given(word: &Word) -> Relator {
        Relator {
            word: CyclicWord::new(word),
            provenance: Provenance::Given,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: BTreeSet<String>,
    pub relators: Vec<Relator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid presentation JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("relator {index} is not cyclically reduced")]
    NotCyclicallyReduced { index: usize },
    #[error("T(p) is only decided for p <= {MAX_TP}")]
    BoundTooLarge,
}

impl Presentation {
    /// Generators are the letters occurring in `words`.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> Presentation {
        let relators: Vec<Relator> = words.into_iter().map(Relator::given).collect();
        let generators = relators
            .iter()
            .flat_map(|r| r.word.representative().letters().iter())
            .map(|l| l.generator().to_string())
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    /// One relator word per line; blank lines and `#` comments are skipped.
    pub fn parse_lines(text: &str) -> Result<Presentation, PresentationParseError> {
        let mut words = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let w: Word = line.parse().map_err(|e| match e {
                crate::word::WordParseError::InvalidToken { token, column } => {
                    PresentationParseError::Syntax {
                        line: i + 1,
                        column,
                        message: format!("invalid letter `{token}`"),
                    }
                }
            })?;
            words.push(w);
        }
        Ok(Presentation::from_words(&words))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Presentation, PresentationParseError> {
        serde_json::from_str(text).map_err(|e| PresentationParseError::Json(e.to_string()))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|r| r.word.representative())
    }

    /// R_sym: every rotation of every relator and of its inverse.
    pub fn symmetrized(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for r in &self.relators {
            for cw in [r.word.clone(), r.word.inverse()] {
                out.extend(cw.rotations().filter(|w| !w.is_empty()));
            }
        }
        out
    }

    /// Whether `w` is an element of R_sym.
    pub fn in_symmetrized(&self, w: &Word) -> bool {
        let key = CyclicWord::new(w).unoriented();
        self.relators.iter().any(|r| r.word.unoriented() == key)
    }

    /// `(index, k)` with `w == relators[index].rotate(k)`, first match.
    pub fn resolve(&self, w: &Word) -> Option<(usize, usize)> {
        self.relators.iter().enumerate().find_map(|(i, r)| {
            let rep = r.word.representative();
            rep.rotation_to(w).map(|k| (i, k))
        })
    }

    fn check_reduced(&self) -> Result<(), ClassicalError> {
        match self
            .words()
            .position(|w| w.is_empty() || !w.is_cyclically_reduced())
        {
            Some(index) => Err(ClassicalError::NotCyclicallyReduced { index }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let rels: Vec<String> = self.words().map(ToString::to_string).collect();
        if rels.is_empty() {
            write!(f, "< {} | >", gens.join(", "))
        } else {
            write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
        }
    }
}

/// ⟨S | R_s⟩: one relator per simple-cycle class, oriented and rotated so its
/// provenance path reads the canonical representative.
pub fn relators_simple(g: &LabelledGraph, cap: usize) -> Result<Presentation, CycleError> {
    let cycles = g.enumerate_simple_cycles(cap)?;
    let relators = cycles
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let forward = CyclicWord::new(&c.label(g));
            let (word, path) = if forward.inverse() < forward {
                (forward.inverse(), c.path.inverse())
            } else {
                (forward, c.path.clone())
            };
            let k = g
                .label_unchecked(&path.edges)
                .rotation_to(word.representative())
                .expect("representative is a rotation of the label");
            Relator {
                word,
                provenance: Provenance::SimpleCycle {
                    cycle: i,
                    path: path.rotate(k),
                },
            }
        })
        .collect();
    Ok(Presentation {
        generators: g.generators(),
        relators,
    })
}

/// Breadth-first spanning forest: each component is rooted at its
/// least-named vertex and explored in edge input order. Returns the root of
/// every vertex and the tree edge entering it.
pub(crate) fn spanning_forest(g: &LabelledGraph) -> (Vec<VertexId>, Vec<Option<EdgeId>>) {
    let n = g.vertex_count();
    let mut root = vec![VertexId(usize::MAX); n];
    let mut parent = vec![None; n];
    for comp in g.components() {
        let r = *comp
            .iter()
            .min_by_key(|&&v| g.vertex_name(v))
            .expect("components are nonempty");
        root[r.0] = r;
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            for &e in g.outgoing(v) {
                let w = g.omega(e);
                if root[w.0].0 == usize::MAX {
                    root[w.0] = r;
                    parent[w.0] = Some(e);
                    queue.push_back(w);
                }
            }
        }
    }
    (root, parent)
}

/// Tree path from the root of `v`'s component to `v`.
pub(crate) fn tree_path(g: &LabelledGraph, parent: &[Option<EdgeId>], v: VertexId) -> Vec<EdgeId> {
    let mut edges = Vec::new();
    let mut cur = v;
    while let Some(e) = parent[cur.0] {
        edges.push(e);
        cur = g.alpha(e);
    }
    edges.reverse();
    edges
}

/// ⟨S | R_f⟩ for the deterministic breadth-first basis: one relator per
/// non-tree edge pair, in edge input order.
pub fn relators_basis(g: &LabelledGraph) -> Presentation {
    let (root, parent) = spanning_forest(g);
    let tree: HashSet<usize> = parent.iter().flatten().map(|e| e.pair()).collect();
    let mut relators = Vec::new();
    for e in g
        .edges()
        .filter(|e| e.is_positive() && !tree.contains(&e.pair()))
    {
        let mut edges = tree_path(g, &parent, g.alpha(e));
        edges.push(e);
        edges.extend(
            tree_path(g, &parent, g.omega(e))
                .into_iter()
                .rev()
                .map(EdgeId::inv),
        );
        let word = g.label_unchecked(&edges).cyclic_reduce();
        relators.push(Relator {
            word: CyclicWord::new(&word),
            provenance: Provenance::BasisElement {
                edge: e,
                base: root[g.alpha(e).0],
                path: GraphPath::new(edges),
            },
        });
    }
    Presentation {
        generators: g.generators(),
        relators,
    }
}

/// Classical pieces: nonempty common prefixes of two distinct elements of
/// R_sym.
pub fn classical_pieces(p: &Presentation) -> Result<BTreeSet<Word>, ClassicalError> {
    p.check_reduced()?;
    let sym: Vec<Word> = p.symmetrized().into_iter().collect();
    let mut pieces = BTreeSet::new();
    for (i, x) in sym.iter().enumerate() {
        for y in &sym[i + 1..] {
            let common = x
                .letters()
                .iter()
                .zip(y.letters())
                .take_while(|(a, b)| a == b)
                .count();
            for len in 1..=common {
                pieces.insert(x.subword(0, len));
            }
        }
    }
    Ok(pieces)
}

/// An element of R_sym split into classical pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalDecomposition {
    pub element: Word,
    pub pieces: Vec<Word>,
}

/// Fewest classical pieces covering `element`, if it is covered at all.
fn classical_cover(element: &Word, pieces: &BTreeSet<Word>) -> Option<Vec<Word>> {
    let n = element.len();
    let mut cost: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    cost[0] = Some((0, 0));
    for j in 1..=n {
        for i in 0..j {
            if let Some((c, _)) = cost[i] {
                if cost[j].is_none_or(|(cj, _)| c + 1 < cj)
                    && pieces.contains(&element.subword(i, j))
                {
                    cost[j] = Some((c + 1, i));
                }
            }
        }
    }
    cost[n]?;
    let mut out = Vec::new();
    let mut j = n;
    while j > 0 {
        let i = cost[j].unwrap().1;
        out.push(element.subword(i, j));
        j = i;
    }
    out.reverse();
    Some(out)
}

/// Classical C(k): no element of R_sym is a product of fewer than `k`
/// classical pieces.
pub fn classical_ck(
    p: &Presentation,
    k: usize,
) -> Result<Verdict<ClassicalDecomposition>, ClassicalError> {
    let pieces = classical_pieces(p)?;
    let mut best: Option<ClassicalDecomposition> = None;
    for element in p.symmetrized() {
        if let Some(cover) = classical_cover(&element, &pieces) {
            if cover.len() < k && best.as_ref().is_none_or(|b| cover.len() < b.pieces.len()) {
                best = Some(ClassicalDecomposition {
                    element,
                    pieces: cover,
                });
            }
        }
    }
    Ok(best.map_or(Verdict::Holds, Verdict::Violated))
}

/// Classical T(q): for `3 <= h < q` there is no cyclic tuple `r_1 … r_h` from
/// R_sym with `r_i != r_{i+1}⁻¹` and every product `r_i r_{i+1}` (indices mod
/// `h`) cancelling.
pub fn classical_tp(p: &Presentation, q: usize) -> Result<Verdict<Vec<Word>>, ClassicalError> {
    p.check_reduced()?;
    if q > MAX_TP {
        return Err(ClassicalError::BoundTooLarge);
    }
    let sym: Vec<Word> = p.symmetrized().into_iter().collect();
    let adj: Vec<Vec<usize>> = sym
        .iter()
        .map(|r| {
            let tail = r.last().expect("relators are nonempty").inverse();
            sym.iter()
                .enumerate()
                .filter(|(_, s)| s.first() == Some(&tail) && **s != r.inverse())
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    for h in 3..q {
        if let Some(walk) = closed_walk(&adj, h) {
            return Ok(Verdict::Violated(
                walk.into_iter().map(|i| sym[i].clone()).collect(),
            ));
        }
    }
    Ok(Verdict::Holds)
}

/// Concise: no two relators agree up to rotation and inversion.
pub fn is_concise(p: &Presentation) -> Verdict<(usize, usize)> {
    let mut seen: HashMap<CyclicWord, usize> = HashMap::new();
    for (j, r) in p.relators.iter().enumerate() {
        if let Some(&i) = seen.get(&r.word.unoriented()) {
            return Verdict::Violated((i, j));
        }
        seen.insert(r.word.unoriented(), j);
    }
    Verdict::Holds
}

/// `Some((root, m))` with `w = root^m` cyclically and `m >= 2`; `root` is the
/// shortest such period.
pub fn proper_power(w: &CyclicWord) -> Option<(Word, usize)> {
    let rep = w.representative();
    let period = rep.cyclic_period();
    if period == 0 || period == rep.len() {
        return None;
    }
    Some((rep.subword(0, period), rep.len() / period))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::DEFAULT_CYCLE_CAP;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    fn classes(p: &Presentation) -> BTreeSet<CyclicWord> {
        p.relators.iter().map(|r| r.word.unoriented()).collect()
    }

    #[test]
    fn simple_relators_of_k4() {
        let g = samples::k4_graph();
        let p = relators_simple(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.relators.len(), 7);
        let cls = classes(&p);
        for text in ["b b c", "c^-1 b c^-1", "b^-1 a^-1 b^-1"] {
            assert!(
                cls.contains(&CyclicWord::new(&w(text)).unoriented()),
                "{text}"
            );
        }
        for r in &p.relators {
            let Provenance::SimpleCycle { path, .. } = &r.provenance else {
                panic!("wrong provenance");
            };
            assert_eq!(&g.path_label(path).unwrap(), r.word.representative());
        }
        let tree = relators_simple(&samples::tree_graph(), 10).unwrap();
        assert_eq!(tree.to_string(), "< a, b | >");
    }

    #[test]
    fn simple_relators_of_theta() {
        let g = samples::theta_graph();
        let p = relators_simple(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.relators.len(), 3);
        let outer = CyclicWord::new(&w("a b c d a b c d a d d b")).unoriented();
        assert!(classes(&p).contains(&outer));
    }

    /// Betti number of each component by union-find, independent of the BFS.
    fn betti(g: &LabelledGraph) -> usize {
        let mut uf: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        let mut extra = 0;
        for e in g.edges().filter(|e| e.is_positive()) {
            let (a, b) = (find(&mut uf, g.alpha(e).0), find(&mut uf, g.omega(e).0));
            if a == b {
                extra += 1;
            } else {
                uf[a] = b;
            }
        }
        extra
    }

    #[test]
    fn basis_relators() {
        for g in [
            samples::k4_graph(),
            samples::theta_graph(),
            samples::loop_graph(),
            samples::tree_graph(),
            samples::twin_triangles(),
        ] {
            let p = relators_basis(&g);
            assert_eq!(p.relators.len(), betti(&g));
            assert_eq!(
                p.relators.len() + g.vertex_count(),
                g.edge_pair_count() + g.components().len()
            );
            for r in &p.relators {
                assert!(r.word.representative().is_cyclically_reduced());
                let Provenance::BasisElement { path, base, .. } = &r.provenance else {
                    panic!("wrong provenance");
                };
                let class = g.classify_path(path).unwrap();
                assert!(class.closed);
                assert_eq!(g.alpha(path.edges[0]), *base);
                let raw = g.path_label(path).unwrap().cyclic_reduce();
                assert_eq!(CyclicWord::new(&raw), r.word);
            }
        }
        let k4 = relators_basis(&samples::k4_graph());
        assert_eq!(k4.relators.len(), 3);
        assert_eq!(
            relators_basis(&samples::loop_graph()).to_string(),
            "< a | a >"
        );
    }

    #[test]
    fn text_and_json_round_trip() {
        let g = samples::k4_graph();
        for p in [relators_simple(&g, 100).unwrap(), relators_basis(&g)] {
            assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
        }
        let p = Presentation::parse_lines("# fig\nb b c\n\nc^-1 b c^-1\n").unwrap();
        assert_eq!(p.to_string(), "< b, c | b b c, b c^-1 c^-1 >");
        assert_eq!(
            Presentation::parse_lines("a\nb ^x\n"),
            Err(PresentationParseError::Syntax {
                line: 2,
                column: 3,
                message: "invalid letter `^x`".into()
            })
        );
    }

    fn theta_presentation() -> Presentation {
        Presentation::from_words(&[
            w("a b c d a b c d a d d b"),
            w("a b c d a b c d a b^-1 c^-1 c^-1"),
        ])
    }

    /// Brute-force pieces: every word that is a prefix of two distinct R_sym
    /// elements.
    fn pieces_oracle(p: &Presentation) -> BTreeSet<Word> {
        let sym = p.symmetrized();
        let mut prefixes: HashMap<Word, usize> = HashMap::new();
        for x in &sym {
            for len in 1..=x.len() {
                *prefixes.entry(x.subword(0, len)).or_default() += 1;
            }
        }
        prefixes
            .into_iter()
            .filter(|(_, c)| *c >= 2)
            .map(|(x, _)| x)
            .collect()
    }

    #[test]
    fn classical_pieces_match_oracle() {
        for p in [
            theta_presentation(),
            Presentation::from_words(&[w("a b a b^-1")]),
            Presentation::from_words(&[w("a")]),
            Presentation::from_words(&[w("b b c"), w("c^-1 b c^-1"), w("b^-1 a^-1 b^-1")]),
        ] {
            assert_eq!(classical_pieces(&p).unwrap(), pieces_oracle(&p));
        }
        assert!(classical_pieces(&Presentation::from_words(&[w("a")]))
            .unwrap()
            .is_empty());
        assert!(
            !classical_pieces(&Presentation::from_words(&[w("a b a b^-1")]))
                .unwrap()
                .is_empty()
        );
        assert!(classical_pieces(&theta_presentation())
            .unwrap()
            .contains(&w("a b c d a b c d a")));
        assert_eq!(
            classical_pieces(&Presentation::from_words(&[w("a a^-1 b")])),
            Err(ClassicalError::NotCyclicallyReduced { index: 0 })
        );
    }

    #[test]
    fn classical_conditions_on_theta() {
        let p = theta_presentation();
        let v = classical_ck(&p, 6).unwrap();
        let wit = v.witness().unwrap();
        assert!(wit.pieces.len() < 6);
        assert_eq!(
            wit.pieces.iter().fold(Word::empty(), |a, b| a.concat(b)),
            wit.element
        );
        assert!(classical_ck(&p, 1).unwrap().holds());
        // Antitone in k.
        let first_fail = (1..10)
            .find(|&k| !classical_ck(&p, k).unwrap().holds())
            .unwrap();
        assert!((first_fail..10).all(|k| !classical_ck(&p, k).unwrap().holds()));

        let t = classical_tp(&p, 4).unwrap();
        let tuple = t.witness().unwrap();
        assert_eq!(tuple.len(), 3);
        let sym = p.symmetrized();
        for i in 0..3 {
            let (r, s) = (&tuple[i], &tuple[(i + 1) % 3]);
            assert!(sym.contains(r));
            assert_eq!(r.last().unwrap().inverse(), *s.first().unwrap());
            assert_ne!(*s, r.inverse());
        }
        assert!(classical_tp(&p, 3).unwrap().holds());
        assert_eq!(classical_tp(&p, 17), Err(ClassicalError::BoundTooLarge));
    }

    #[test]
    fn classical_tp_on_triangle_presentation() {
        let p = Presentation::from_words(&[w("a b^-1"), w("b c^-1"), w("c a^-1")]);
        // Oracle: exhaustive triples over R_sym.
        let sym: Vec<Word> = p.symmetrized().into_iter().collect();
        let mut exists = false;
        for x in &sym {
            for y in &sym {
                for z in &sym {
                    let t = [x, y, z];
                    exists |= (0..3).all(|i| {
                        let (r, s) = (t[i], t[(i + 1) % 3]);
                        r.last().unwrap().inverse() == *s.first().unwrap() && *s != r.inverse()
                    });
                }
            }
        }
        assert_eq!(!classical_tp(&p, 4).unwrap().holds(), exists);
    }

    #[test]
    fn conciseness_and_powers() {
        let fig1 = Presentation::from_words(&[w("b b c"), w("c^-1 b c^-1"), w("b^-1 a^-1 b^-1")]);
        assert!(is_concise(&fig1).holds());
        assert!(is_concise(&Presentation::from_words(&[w("b b c"), w("c^-1 b c^-1")])).holds());
        assert_eq!(
            is_concise(&Presentation::from_words(&[w("a b"), w("b^-1 a^-1")])),
            Verdict::Violated((0, 1))
        );
        let abab = proper_power(&CyclicWord::new(&w("a b a b"))).unwrap();
        assert_eq!(abab, (w("a b"), 2));
        assert_eq!(proper_power(&CyclicWord::new(&w("b b c"))), None);
        assert_eq!(
            proper_power(&CyclicWord::new(&w("a b c d a b c d a d d b"))),
            None
        );
        assert_eq!(
            proper_power(&CyclicWord::new(&w("a a a"))),
            Some((w("a"), 3))
        );
    }

    #[test]
    fn symmetrized_membership() {
        let p = Presentation::from_words(&[w("b b c")]);
        assert_eq!(p.symmetrized().len(), 6);
        assert!(p.in_symmetrized(&w("c b b")));
        assert!(p.in_symmetrized(&w("b^-1 c^-1 b^-1")));
        assert!(!p.in_symmetrized(&w("b b d")));
        assert_eq!(p.resolve(&w("c b b")), Some((0, 2)));
        assert_eq!(p.resolve(&w("c^-1 b^-1 b^-1")), None);
    }
}
