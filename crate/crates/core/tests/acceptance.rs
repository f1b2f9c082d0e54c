//! Acceptance run: twelve criteria, one PASS/FAIL line each. Every claim is
//! checked against a brute-force oracle from `common` as well as against the
//! expected value, so a failure says which of the two disagrees.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use graphsc::conditions::{
    certify_asphericity, check_ck, check_tp, CertificateKind, CheckOptions, CkWitness,
};
use graphsc::diagram::{
    disk_for_cycle, forget_degree2, origination_report, pq_witness, Diagram, PqWitness,
};
use graphsc::identity::{
    peiffer_apply, triviality_search, unglue, van_kampen, IdentityItem, IdentitySequence,
    PeifferMove, Triviality,
};
use graphsc::lifting::enumerate_pieces;
use graphsc::presentation::{
    classical_ck, classical_tp, relators_basis, relators_simple, Presentation, Provenance,
};
use graphsc::search::{
    enumerate_spheres, search_reduced_spheres, SearchBounds, SearchError, SearchOutcome,
};
use graphsc::{CyclicWord, LabelledGraph, Word, DEFAULT_CYCLE_CAP};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn words(ws: &BTreeSet<Word>) -> String {
    ws.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn class(w: &Word) -> CyclicWord {
    CyclicWord::new(w).unoriented()
}

fn pieces_k4() -> Outcome {
    let g = k4();
    let lib1 = enumerate_pieces(&g, 1);
    let lib2: BTreeSet<Word> = enumerate_pieces(&g, 2)
        .into_iter()
        .filter(|w| w.len() == 2)
        .collect();
    ensure(
        lib1 == brute_pieces(&g, 1),
        "length-1 pieces disagree with the path oracle",
    )?;
    ensure(
        lib2 == brute_pieces(&g, 2),
        "length-2 pieces disagree with the path oracle",
    )?;
    let want1: BTreeSet<Word> = ["b", "b^-1", "c", "c^-1"].into_iter().map(w).collect();
    ensure(lib1 == want1, format!("length 1: got {{{}}}", words(&lib1)))?;
    ensure(
        !lib1.contains(&w("a")) && !lib1.contains(&w("a^-1")),
        "a is a piece",
    )?;
    let want2: BTreeSet<Word> = ["b b", "b^-1 b^-1"].into_iter().map(w).collect();
    ensure(
        lib2 == want2,
        format!(
            "length 2: expected {{{}}}, got {{{}}} (matches the path oracle)",
            words(&want2),
            words(&lib2)
        ),
    )?;
    Ok("length 1 {b, b^-1, c, c^-1}; length 2 {bb, (bb)^-1}".into())
}

fn conditions_k4() -> Outcome {
    let g = k4();
    let c2 = check_ck(&g, 2, opts()).map_err(|e| e.to_string())?;
    let c3 = check_ck(&g, 3, opts()).map_err(|e| e.to_string())?;
    let bbc = brute_simple_cycles(&g)
        .into_iter()
        .find(|c| class(&path_word(&g, c)) == class(&w("b b c")))
        .ok_or("no bbc cycle")?;
    ensure(
        brute_min_pieces(&g, &bbc) == Some(2),
        "oracle: bbc is not a product of 2 pieces",
    )?;
    ensure(c2.holds(), "C(2) fails")?;
    let Some(CkWitness::Decompositions { cycles }) = c3.witness() else {
        return Err("C(3) holds or has no decomposition witness".into());
    };
    let dec = cycles
        .iter()
        .find(|d| class(&d.label) == class(&w("b b c")))
        .ok_or("witness does not contain the bbc cycle")?;
    let got: BTreeSet<CyclicWord> = dec.piece_words.iter().map(class).collect();
    let want: BTreeSet<CyclicWord> = [class(&w("b b")), class(&w("c"))].into();
    ensure(
        dec.count == 2 && got == want,
        format!("bbc split as {:?}", dec.piece_words),
    )?;
    Ok(format!(
        "C(2) holds; C(3) fails, {} = {} · {}",
        dec.label, dec.piece_words[0], dec.piece_words[1]
    ))
}

fn oracle_ck(g: &LabelledGraph, k: usize) -> bool {
    brute_simple_cycles(g)
        .iter()
        .all(|c| brute_min_pieces(g, c).is_none_or(|n| n >= k))
}

fn conditions_theta() -> Outcome {
    let g = theta();
    let c4 = check_ck(&g, 4, opts()).map_err(|e| e.to_string())?;
    let c6 = check_ck(&g, 6, opts()).map_err(|e| e.to_string())?;
    ensure(
        c4.holds() == oracle_ck(&g, 4),
        "C(4) disagrees with the piece oracle",
    )?;
    ensure(
        c6.holds() == oracle_ck(&g, 6),
        "C(6) disagrees with the piece oracle",
    )?;
    ensure(c4.holds(), "C(4) fails")?;
    let Some(CkWitness::Decompositions { cycles }) = c6.witness() else {
        return Err("C(6) holds".into());
    };
    let target = class(&w("a b c d a b c d a d d b"));
    let dec = cycles
        .iter()
        .find(|d| class(&d.label) == target)
        .ok_or("no witness on (abcd)^2 a d^2 b")?;
    ensure(dec.count <= 5, format!("{} pieces", dec.count))?;
    let t4 = check_tp(&g, 4, opts()).map_err(|e| e.to_string())?;
    ensure(t4.holds(), "T(4) fails")?;
    let cert = certify_asphericity(&g, opts()).map_err(|e| e.to_string())?;
    ensure(
        cert.kind == CertificateKind::C4T4,
        format!("certificate {}", cert.kind),
    )?;
    Ok(format!(
        "C(4) holds; C(6) fails with {} pieces; T(4) holds; C4T4",
        dec.count
    ))
}

fn theta_presentation() -> Presentation {
    Presentation::from_words(&[
        w("a b c d a b c d a d d b"),
        w("a b c d a b c d a b^-1 c^-1 c^-1"),
    ])
}

fn symmetrized(p: &Presentation) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for r in p.words() {
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                out.insert(base.rotate(k));
            }
        }
    }
    out
}

fn classical_theta() -> Outcome {
    let p = theta_presentation();
    let sym = symmetrized(&p);
    let is_classical_piece = |u: &Word| {
        sym.iter()
            .filter(|r| r.len() >= u.len() && r.subword(0, u.len()) == *u)
            .count()
            >= 2
    };
    let c6 = classical_ck(&p, 6).map_err(|e| e.to_string())?;
    let dec = c6.witness().ok_or("classical C(6) holds")?;
    ensure(sym.contains(&dec.element), "C(6) witness is not in R_sym")?;
    ensure(dec.pieces.len() < 6, "C(6) witness uses six or more pieces")?;
    let joined = dec
        .pieces
        .iter()
        .fold(Word::empty(), |acc, x| acc.concat(x));
    ensure(
        joined == dec.element,
        "C(6) pieces do not spell the element",
    )?;
    ensure(
        dec.pieces.iter().all(is_classical_piece),
        "C(6) witness uses a non-piece",
    )?;

    let t4 = classical_tp(&p, 4).map_err(|e| e.to_string())?;
    let tuple = t4.witness().ok_or("classical T(4) holds")?;
    let h = tuple.len();
    ensure(h == 3, format!("T(4) tuple of length {h}"))?;
    for i in 0..h {
        let (r, s) = (&tuple[i], &tuple[(i + 1) % h]);
        ensure(sym.contains(r), "T(4) tuple leaves R_sym")?;
        ensure(*s != r.inverse(), "T(4) tuple has an inverse pair")?;
        ensure(
            r.last().unwrap().is_inverse_of(s.first().unwrap()),
            "T(4) product does not cancel",
        )?;
    }
    Ok(format!(
        "classical C(6) fails ({} pieces), classical T(4) fails",
        dec.pieces.len()
    ))
}

/// All violating 3-chains of directed simple closed paths.
fn oracle_t4_chains(g: &LabelledGraph) -> Vec<[Vec<graphsc::EdgeId>; 3]> {
    let mut rotations = Vec::new();
    for c in brute_simple_cycles(g) {
        let n = c.len();
        let inv: Vec<_> = c.iter().rev().map(|e| e.inv()).collect();
        for k in 0..n {
            rotations.push((0..n).map(|i| c[(k + i) % n]).collect::<Vec<_>>());
            rotations.push((0..n).map(|i| inv[(k + i) % n]).collect::<Vec<_>>());
        }
    }
    let link = |p: &Vec<graphsc::EdgeId>, q: &Vec<graphsc::EdgeId>| {
        let (z, a) = (*p.last().unwrap(), q[0]);
        g.label(a).is_inverse_of(g.label(z))
            && a != z.inv()
            && path_word(g, q) != path_word(g, p).inverse()
    };
    let mut out = Vec::new();
    for x in &rotations {
        for y in rotations.iter().filter(|y| link(x, y)) {
            for z in rotations.iter().filter(|z| link(y, z) && link(z, x)) {
                out.push([x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    out
}

fn tp_k4() -> Outcome {
    let g = k4();
    let v = check_tp(&g, 4, opts()).map_err(|e| e.to_string())?;
    let wit = v.witness().ok_or("T(4) holds")?;
    let chains = oracle_t4_chains(&g);
    let as_words =
        |c: &[Vec<graphsc::EdgeId>; 3]| c.iter().map(|p| path_word(&g, p)).collect::<Vec<_>>();
    let valid: BTreeSet<Vec<Word>> = chains.iter().map(as_words).collect();
    ensure(
        valid.contains(&wit.relators),
        "witness is not a violating chain",
    )?;
    let expected = vec![w("c b b"), w("b^-1 c c"), w("c^-1 b c^-1")];
    ensure(
        valid.contains(&expected),
        "oracle rejects the expected chain",
    )?;
    // Equivalent: same cyclic sequence up to rotation, or reversed and inverted.
    let key = |ws: &[Word]| -> BTreeSet<Vec<Word>> {
        let n = ws.len();
        let mut out = BTreeSet::new();
        for k in 0..n {
            out.insert((0..n).map(|i| ws[(k + i) % n].clone()).collect());
            out.insert((0..n).map(|i| ws[(k + n - i) % n].inverse()).collect());
        }
        out
    };
    let got: Vec<String> = wit.relators.iter().map(ToString::to_string).collect();
    ensure(
        key(&wit.relators).contains(&expected),
        format!(
            "chain ({}) is valid but not equivalent to (cbb, b^-1cc, c^-1bc^-1)",
            got.join(", ")
        ),
    )?;
    Ok(format!("chain ({})", got.join(", ")))
}

fn union_find_rank(g: &LabelledGraph) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut extra = 0;
    for e in g.edges().filter(|e| e.is_positive()) {
        let (a, b) = (
            find(&mut parent, g.alpha(e).0),
            find(&mut parent, g.omega(e).0),
        );
        if a == b {
            extra += 1;
        } else {
            parent[a] = b;
        }
    }
    extra
}

fn basis_ranks() -> Outcome {
    let mut counts = Vec::new();
    for (name, g, expected) in [("k4", k4(), 3), ("theta", theta(), 3)] {
        let p = relators_basis(&g);
        ensure(
            p.relators.len() == union_find_rank(&g),
            format!("{name}: rank disagrees with the Euler count"),
        )?;
        for r in &p.relators {
            let word = r.word.representative();
            ensure(
                word.is_cyclically_reduced(),
                format!("{name}: {word} not cyclically reduced"),
            )?;
            let Provenance::BasisElement { base, path, .. } = &r.provenance else {
                return Err(format!("{name}: relator without basis provenance"));
            };
            let first = *path.edges.first().ok_or("empty basis path")?;
            let last = *path.edges.last().unwrap();
            ensure(
                g.alpha(first) == *base && g.omega(last) == *base,
                format!("{name}: path not closed at base"),
            )?;
            let reduced = stack_reduce(&path_word(&g, &path.edges)).cyclic_reduce();
            ensure(
                class(&reduced) == class(word),
                format!("{name}: {word} is not the reduced path label"),
            )?;
        }
        counts.push(format!("{name} {}", p.relators.len()));
        ensure(
            p.relators.len() == expected,
            format!(
                "{name}: {} relators, expected {expected} (|E|/2 - |V| + 1 = {})",
                p.relators.len(),
                union_find_rank(&g)
            ),
        )?;
    }
    Ok(counts.join(", "))
}

fn item(conj: &str, rel: &str, exp: i8) -> IdentityItem {
    IdentityItem::new(w(conj), w(rel), exp)
}

fn intro() -> IdentitySequence {
    IdentitySequence::new(vec![
        item("", "a b^-1", 1),
        item("", "b c^-1", 1),
        item("", "a c^-1", -1),
    ])
}

fn face_multiset(seq: &IdentitySequence) -> BTreeMap<(CyclicWord, i8), usize> {
    let mut m = BTreeMap::new();
    for it in &seq.items {
        let (r, e) = (CyclicWord::new(&it.relator), it.exponent);
        let key = if r.representative() <= r.inverse().representative() {
            (r, e)
        } else {
            (r.inverse(), -e)
        };
        *m.entry(key).or_default() += 1;
    }
    m
}

fn identity_machinery() -> Outcome {
    let seq = intro();
    ensure(
        stack_reduce(&seq.product()).is_empty(),
        "intro is not an identity",
    )?;
    let rels = Presentation::from_words(&[w("a b^-1"), w("b c^-1"), w("a c^-1")]);
    let d = van_kampen(&seq).map_err(|e| e.to_string())?;
    let report = d.validate(Some(&rels));
    ensure(
        report.valid && report.faces == 3 && report.euler == vec![2],
        format!("{report:?}"),
    )?;
    for diagram in [
        d.clone(),
        Diagram::from_json(&d.to_json()).map_err(|e| e.to_string())?,
    ] {
        let back = unglue(&diagram).map_err(|e| e.to_string())?;
        ensure(
            stack_reduce(&back.product()).is_empty(),
            "unglued product is not trivial",
        )?;
        ensure(
            face_multiset(&back) == face_multiset(&seq),
            "unglued faces differ",
        )?;
    }
    // Per-relator exponent sums, computed here: Peiffer moves preserve them.
    let mut sums: BTreeMap<CyclicWord, i64> = BTreeMap::new();
    for ((r, e), n) in face_multiset(&seq) {
        *sums.entry(r).or_default() += e as i64 * n as i64;
    }
    let nonzero: Vec<String> = sums
        .iter()
        .filter(|(_, &s)| s != 0)
        .map(|(r, s)| format!("{r}:{s:+}"))
        .collect();
    match triviality_search(&seq, 1_000_000) {
        Triviality::Trivial(moves) if moves.len() <= 10 => {
            Ok(format!("3-face sphere; trivial in {} moves", moves.len()))
        }
        Triviality::Trivial(moves) => Err(format!("certificate needs {} moves", moves.len())),
        Triviality::Unknown => Err(format!(
            "sphere and round trip hold; no certificate: exponent sums [{}] are Peiffer invariants",
            nonzero.join(" ")
        )),
    }
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let text: Vec<String> = (0..len)
        .map(|_| {
            let g = ["a", "b", "c"][rng.gen_range(0..3)];
            if rng.gen_bool(0.5) {
                format!("{g}^-1")
            } else {
                g.to_string()
            }
        })
        .collect();
    w(&text.join(" "))
}

fn random_item(rng: &mut ChaCha8Rng) -> IdentityItem {
    let pool = ["a b^-1", "b c^-1", "a c^-1", "b b c", "a b c a^-1"];
    let len = rng.gen_range(0..4);
    let conj = random_word(rng, len);
    IdentityItem::new(
        conj,
        w(pool[rng.gen_range(0..pool.len())]),
        if rng.gen_bool(0.5) { 1 } else { -1 },
    )
}

fn random_identity(rng: &mut ChaCha8Rng) -> IdentitySequence {
    let n = rng.gen_range(1..4);
    let half: Vec<IdentityItem> = (0..n).map(|_| random_item(rng)).collect();
    let mut items = half.clone();
    items.extend(half.iter().rev().map(IdentityItem::inverse));
    IdentitySequence::new(items)
}

fn peiffer_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut seq = random_identity(&mut rng);
    let mut applied = 0;
    let mut tries = 0;
    while applied < 1000 {
        tries += 1;
        if seq.is_empty() || seq.len() > 12 || rng.gen_bool(0.02) {
            seq = if rng.gen_bool(0.2) {
                intro()
            } else {
                random_identity(&mut rng)
            };
        }
        let before = stack_reduce(&seq.product());
        let position = rng.gen_range(0..=seq.len());
        let mv = match rng.gen_range(0..4) {
            0 => PeifferMove::ExchangeLeft { position },
            1 => PeifferMove::ExchangeRight { position },
            2 => PeifferMove::Delete { position },
            _ => PeifferMove::Insert {
                position,
                item: random_item(&mut rng),
            },
        };
        if let Ok(next) = peiffer_apply(&seq, &mv) {
            let after = stack_reduce(&next.product());
            ensure(
                after == before,
                format!("{mv:?} changed {before} into {after}"),
            )?;
            ensure(after.is_empty(), "an identity stopped being one")?;
            seq = next;
            applied += 1;
        }
        ensure(tries < 100_000, "too few applicable moves")?;
    }
    Ok(format!("{applied} moves, product unchanged"))
}

fn spheres(g: &LabelledGraph, faces: usize) -> Result<Vec<Diagram>, String> {
    let mut out = Vec::new();
    let (_, finished) = enumerate_spheres(g, &SearchBounds::faces(faces), |d| {
        out.push(d.clone());
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    ensure(finished, "enumeration did not finish")?;
    Ok(out)
}

fn skeleton_spurs() -> Outcome {
    let mut summary = Vec::new();
    for (name, g) in [("k4", k4()), ("theta", theta())] {
        let all = spheres(&g, 3)?;
        ensure(!all.is_empty(), format!("{name}: nothing enumerated"))?;
        let mut violations = 0;
        for d in &all {
            let lib = origination_report(d, &g);
            let mut skeleton = vec![false; d.dart_count()];
            for e in &lib {
                let oracle = oracle_originates(d, &g, e.dart);
                ensure(
                    oracle == e.originates,
                    format!("{name}: origination of dart {} disagrees", e.dart),
                )?;
                if !oracle {
                    skeleton[e.dart] = true;
                    skeleton[d.alpha(e.dart)] = true;
                }
            }
            violations += d
                .vertices()
                .iter()
                .filter(|v| v.iter().filter(|&&x| skeleton[x]).count() == 1)
                .count();
        }
        ensure(violations == 0, format!("{name}: {violations} spurs"))?;
        summary.push(format!("{name} {} spheres", all.len()));
    }
    Ok(format!("0 spurs ({})", summary.join(", ")))
}

fn euler_pq() -> Outcome {
    let mut checked = 0;
    for (name, g) in [("k4", k4()), ("theta", theta())] {
        for d in spheres(&g, 3)? {
            let f = forget_degree2(&d).map_err(|e| format!("{name}: {e}"))?;
            let (vdeg, fdeg) = (vertex_degrees(&f), face_degrees(&f));
            ensure(
                vdeg.len() as i64 - f.edge_count() as i64 + fdeg.len() as i64 == 2,
                "Euler characteristic",
            )?;
            for (p, q) in [(3, 6), (4, 4), (6, 3)] {
                match pq_witness(&f, p, q).map_err(|e| format!("{name} ({p},{q}): {e}"))? {
                    PqWitness::Face { start, degree } => {
                        let len = f
                            .faces()
                            .into_iter()
                            .find(|x| x.start == start)
                            .ok_or("no such face")?
                            .darts
                            .len();
                        ensure(len == degree && degree < q, "bad face witness")?;
                    }
                    PqWitness::Vertex { vertex, degree } => {
                        let len = f.vertices().get(vertex).ok_or("no such vertex")?.len();
                        ensure(len == degree && degree < p, "bad vertex witness")?;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} witnesses, 0 failures"))
}

fn cycle_disks() -> Outcome {
    let mut disks = 0;
    for (name, g) in [("k4", k4()), ("theta", theta())] {
        let cycles = brute_simple_cycles(&g);
        ensure(
            cycles.len()
                == g.enumerate_simple_cycles(DEFAULT_CYCLE_CAP)
                    .map_err(|e| e.to_string())?
                    .len(),
            format!("{name}: cycle count disagrees"),
        )?;
        let basis = relators_basis(&g);
        for c in &cycles {
            let n = c.len();
            let inv: Vec<_> = c.iter().rev().map(|e| e.inv()).collect();
            for k in 0..n {
                for base in [c, &inv] {
                    let rot: Vec<_> = (0..n).map(|i| base[(k + i) % n]).collect();
                    let d = disk_for_cycle(&g, &graphsc::GraphPath::new(rot.clone()))
                        .map_err(|e| e.to_string())?;
                    ensure(d.is_valid(Some(&basis)), format!("{name}: invalid disk"))?;
                    let label = path_word(&g, &rot);
                    ensure(
                        d.boundary_word() == Some(label.clone()),
                        format!("{name}: boundary of {label}"),
                    )?;
                    for e in origination_report(&d, &g)
                        .into_iter()
                        .filter(|e| !e.boundary)
                    {
                        ensure(
                            oracle_originates(&d, &g, e.dart),
                            format!("{name}: interior edge of {label}"),
                        )?;
                    }
                    disks += 1;
                }
            }
        }
    }
    Ok(format!("{disks} disks, 0 failures"))
}

fn search_coherence() -> Outcome {
    match search_reduced_spheres(&theta(), &SearchBounds::faces(3)).map_err(|e| e.to_string())? {
        SearchOutcome::Exhausted { .. } => {}
        other => return Err(format!("theta: {other:?}")),
    }
    let g = twins();
    match search_reduced_spheres(&g, &SearchBounds::faces(2)) {
        Ok(SearchOutcome::Witness { diagram, .. }) => {
            let d = Diagram::from_json_value(
                serde_json::from_value(diagram).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let rels = relators_simple(&g, DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?;
            ensure(d.is_valid(Some(&rels)), "witness does not validate")?;
            let originating = (0..d.dart_count())
                .filter(|&x| oracle_originates(&d, &g, x))
                .count();
            ensure(originating == 0, "witness has an originating edge")?;
            Ok("theta exhausted; twin-triangle witness re-validates".into())
        }
        Ok(other) => Err(format!("theta exhausted; twin triangles: {other:?}")),
        Err(SearchError::NotC2(_)) => {
            let c2 = oracle_ck(&g, 2);
            Err(format!(
                "theta exhausted; twin triangles rejected: C(2) fails (oracle agrees: {})",
                !c2
            ))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("pieces of the K4 graph", pieces_k4),
        ("C(2) and C(3) on the K4 graph", conditions_k4),
        (
            "C(4), C(6), T(4) and certificate on the theta graph",
            conditions_theta,
        ),
        (
            "classical C(6) and T(4) on the theta presentation",
            classical_theta,
        ),
        ("T(4) chain on the K4 graph", tp_k4),
        ("basis ranks", basis_ranks),
        (
            "identity machinery on the intro identity",
            identity_machinery,
        ),
        ("Peiffer invariance", peiffer_invariance),
        ("no spurs in not-originating skeletons", skeleton_spurs),
        ("(p, q) witnesses after forgetting degree two", euler_pq),
        ("disks for simple cycles", cycle_disks),
        ("bounded search coherence", search_coherence),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
