//! Graphical C(k) and T(p), mutual origination, and asphericity
//! certificates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Cycle, CycleError, EdgeId, GraphPath, LabelledGraph, DEFAULT_CYCLE_CAP};
use crate::lifting::{unique_lift, PieceDecomposition, PieceOracle, UniqueLiftError};
use crate::presentation::MAX_TP;
use crate::verdict::Verdict;
use crate::walk::lightest_closed_walk;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub cycle_cap: usize,
    /// Worker threads for per-cycle work; results do not depend on it.
    pub threads: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cycle_cap: DEFAULT_CYCLE_CAP,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error(transparent)]
    Cycles(#[from] CycleError),
    #[error("graphical C(2) fails, so relators lack unique lifts")]
    NotC2(Box<CkWitness>),
    #[error("T(p) is only decided for p <= {MAX_TP}")]
    BoundTooLarge,
}

/// A simple cycle split into fewer pieces than required.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    pub cycle: GraphPath,
    pub label: Word,
    pub count: usize,
    /// Consecutive subpaths covering a rotation of `cycle`.
    pub pieces: Vec<GraphPath>,
    pub piece_words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CkWitness {
    /// Two distinct edges sharing a start vertex and a label.
    LabellingNotReduced { first: EdgeId, second: EdgeId },
    /// Every offending cycle, fewest pieces first.
    Decompositions { cycles: Vec<CycleDecomposition> },
}

impl CkWitness {
    pub fn decompositions(&self) -> &[CycleDecomposition] {
        match self {
            CkWitness::Decompositions { cycles } => cycles,
            CkWitness::LabellingNotReduced { .. } => &[],
        }
    }
}

/// Per-cycle minimum piece decompositions, shared by several C(k) queries.
#[derive(Debug, Clone)]
pub struct PieceProfile {
    pub reduced_labelling: Result<(), (EdgeId, EdgeId)>,
    pub cycles: Vec<(Cycle, Option<PieceDecomposition>)>,
}

impl PieceProfile {
    pub fn compute(g: &LabelledGraph, opts: CheckOptions) -> Result<PieceProfile, CycleError> {
        let cycles = g.enumerate_simple_cycles(opts.cycle_cap)?;
        let threads = opts.threads.max(1).min(cycles.len().max(1));
        let chunk = cycles.len().div_ceil(threads).max(1);
        let decomps: Vec<Option<PieceDecomposition>> = std::thread::scope(|s| {
            let handles: Vec<_> = cycles
                .chunks(chunk)
                .map(|part| {
                    s.spawn(move || {
                        let oracle = PieceOracle::new(g);
                        part.iter()
                            .map(|c| oracle.min_piece_decomposition(&c.path))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        Ok(PieceProfile {
            reduced_labelling: g.check_reduced_labelling(),
            cycles: cycles.into_iter().zip(decomps).collect(),
        })
    }

    pub fn ck(&self, g: &LabelledGraph, k: usize) -> Verdict<CkWitness> {
        if let Err((first, second)) = self.reduced_labelling {
            return Verdict::Violated(CkWitness::LabellingNotReduced { first, second });
        }
        let mut bad: Vec<CycleDecomposition> = self
            .cycles
            .iter()
            .filter_map(|(c, d)| {
                let d = d.as_ref().filter(|d| d.count < k)?;
                Some(CycleDecomposition {
                    cycle: c.path.clone(),
                    label: c.label(g),
                    count: d.count,
                    pieces: d.pieces.clone(),
                    piece_words: d.words(g),
                })
            })
            .collect();
        bad.sort_by_key(|d| d.count);
        if bad.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Violated(CkWitness::Decompositions { cycles: bad })
        }
    }
}

/// Graphical C(k): reduced labelling, and no simple cycle is a product of
/// fewer than `k` pieces.
pub fn check_ck(
    g: &LabelledGraph,
    k: usize,
    opts: CheckOptions,
) -> Result<Verdict<CkWitness>, CycleError> {
    Ok(PieceProfile::compute(g, opts)?.ck(g, k))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OriginationError {
    #[error("the product does not cancel")]
    NoCancellation,
    #[error("relator lift: {0}")]
    Lift(#[from] UniqueLiftError),
}

/// Whether two cancelling relators, given by their lifts, cancel along the
/// same edge of the graph: the last edge of `r1` is the inverse of the first
/// edge of `r2`.
pub fn mutually_originating(
    g: &LabelledGraph,
    r1: &GraphPath,
    r2: &GraphPath,
) -> Result<bool, OriginationError> {
    let (Some(z), Some(a)) = (r1.last(), r2.first()) else {
        return Err(OriginationError::NoCancellation);
    };
    if !g.label(a).is_inverse_of(g.label(z)) {
        return Err(OriginationError::NoCancellation);
    }
    Ok(a == z.inv())
}

/// [`mutually_originating`] on words, lifted uniquely first.
pub fn mutually_originating_words(
    g: &LabelledGraph,
    r1: &Word,
    r2: &Word,
) -> Result<bool, OriginationError> {
    mutually_originating(g, &unique_lift(g, r1)?, &unique_lift(g, r2)?)
}

/// Two consecutive edges of a directed simple cycle. The rotated relator
/// read from `next` around to `prev` is `relator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub prev: EdgeId,
    pub next: EdgeId,
    pub relator: GraphPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TpWitness {
    pub corners: Vec<Corner>,
    pub relators: Vec<Word>,
}

/// All corners, one per distinct `(prev, next)` pair in first-seen order,
/// each carrying the shortest relator through it.
pub fn corners(cycles: &[Cycle]) -> Vec<Corner> {
    let mut index: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    let mut out: Vec<Corner> = Vec::new();
    for c in cycles {
        for path in [c.path.clone(), c.path.inverse()] {
            for k in 0..path.len() {
                let rotated = path.rotate(k);
                let key = (rotated.last().unwrap(), rotated.first().unwrap());
                match index.get(&key) {
                    Some(&i) if out[i].relator.len() <= rotated.len() => {}
                    Some(&i) => out[i].relator = rotated,
                    None => {
                        index.insert(key, out.len());
                        out.push(Corner {
                            prev: key.0,
                            next: key.1,
                            relator: rotated,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Corner digraph: `x → y` when the relator of `x` followed by that of `y`
/// cancels without mutual origination.
fn corner_digraph(g: &LabelledGraph, cs: &[Corner]) -> Vec<Vec<usize>> {
    cs.iter()
        .map(|x| {
            cs.iter()
                .enumerate()
                .filter(|(_, y)| {
                    g.label(y.next).is_inverse_of(g.label(x.prev)) && y.next != x.prev.inv()
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// Graphical T(p), read cyclically: for `3 <= h < p` there is no chain of
/// `h` relators from R_s whose consecutive products (including the last with
/// the first) all cancel without mutual origination. The witness is a
/// shortest chain with the least total relator length.
pub fn check_tp(
    g: &LabelledGraph,
    p: usize,
    opts: CheckOptions,
) -> Result<Verdict<TpWitness>, ConditionError> {
    if p > MAX_TP {
        return Err(ConditionError::BoundTooLarge);
    }
    let profile = PieceProfile::compute(g, opts)?;
    tp_from_profile(g, p, &profile)
}

fn tp_from_profile(
    g: &LabelledGraph,
    p: usize,
    profile: &PieceProfile,
) -> Result<Verdict<TpWitness>, ConditionError> {
    if p > MAX_TP {
        return Err(ConditionError::BoundTooLarge);
    }
    if let Verdict::Violated(w) = profile.ck(g, 2) {
        return Err(ConditionError::NotC2(Box::new(w)));
    }
    let cycles: Vec<Cycle> = profile.cycles.iter().map(|(c, _)| c.clone()).collect();
    let cs = corners(&cycles);
    let adj = corner_digraph(g, &cs);
    let weight: Vec<usize> = cs.iter().map(|c| c.relator.len()).collect();
    for h in 3..p {
        if let Some(walk) = lightest_closed_walk(&adj, &weight, h) {
            let corners: Vec<Corner> = walk.into_iter().map(|i| cs[i].clone()).collect();
            let relators = corners
                .iter()
                .map(|c| g.label_unchecked(&c.relator.edges))
                .collect();
            return Ok(Verdict::Violated(TpWitness { corners, relators }));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    C6,
    C4T4,
    C3T6,
    Unknown,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::C6 => "C6",
            CertificateKind::C4T4 => "C4T4",
            CertificateKind::C3T6 => "C3T6",
            CertificateKind::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub evidence: Vec<ConditionReport>,
}

/// Tries C(6), then C(4)&T(4), then C(3)&T(6). `Unknown` refutes nothing.
pub fn certify_asphericity(
    g: &LabelledGraph,
    opts: CheckOptions,
) -> Result<Certificate, ConditionError> {
    let profile = PieceProfile::compute(g, opts)?;
    let n = profile.cycles.len();
    let mut evidence = Vec::new();
    let c6 = profile.ck(g, 6);
    evidence.push(ConditionReport::ck(6, &c6, n));
    if c6.holds() {
        return Ok(Certificate {
            kind: CertificateKind::C6,
            evidence,
        });
    }
    let c2 = profile.ck(g, 2).holds();
    for (k, p, kind) in [(4, 4, CertificateKind::C4T4), (3, 6, CertificateKind::C3T6)] {
        let ck = profile.ck(g, k);
        evidence.push(ConditionReport::ck(k, &ck, n));
        if ck.holds() && c2 {
            let tp = tp_from_profile(g, p, &profile)?;
            evidence.push(ConditionReport::tp(p, &tp, n));
            if tp.holds() {
                return Ok(Certificate { kind, evidence });
            }
        }
    }
    Ok(Certificate {
        kind: CertificateKind::Unknown,
        evidence,
    })
}

/// Machine-readable outcome of one condition check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub stats: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn ck(k: usize, v: &Verdict<CkWitness>, cycles: usize) -> ConditionReport {
        ConditionReport {
            condition: format!("C({k})"),
            holds: v.holds(),
            witness: v.witness().map(|w| serde_json::to_value(w).unwrap()),
            stats: BTreeMap::from([
                ("simple_cycles".to_string(), cycles),
                (
                    "violating_cycles".to_string(),
                    v.witness().map_or(0, |w| w.decompositions().len()),
                ),
            ]),
            notes: Vec::new(),
        }
    }

    pub fn tp(p: usize, v: &Verdict<TpWitness>, cycles: usize) -> ConditionReport {
        ConditionReport {
            condition: format!("T({p})"),
            holds: v.holds(),
            witness: v.witness().map(|w| serde_json::to_value(w).unwrap()),
            stats: BTreeMap::from([("simple_cycles".to_string(), cycles)]),
            notes: vec![
                "chains are closed: the pair (r_h, r_1) must also cancel without mutual origination"
                    .to_string(),
            ],
        }
    }
}
