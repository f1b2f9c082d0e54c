//! Small graphs used throughout the examples and tests.

use std::collections::BTreeMap;

use crate::diagram::{Diagram, DiagramKind, FaceTag};
use crate::graph::LabelledGraph;
use crate::word::{Label, Word};

pub const K4_GRAPH: &str = include_str!("../data/k4.graph");
pub const THETA_GRAPH: &str = include_str!("../data/theta.graph");
pub const TWIN_TRIANGLES: &str = include_str!("../data/twin_triangles.graph");

/// Complete graph on `O, A, B, C` labelled by `a, b, c`; satisfies graphical
/// C(2) but not C(3).
pub fn k4_graph() -> LabelledGraph {
    LabelledGraph::parse(K4_GRAPH).expect("bundled graph parses")
}

/// Theta graph over `a, b, c, d` whose simple-cycle presentation satisfies
/// graphical C(4) and T(4).
pub fn theta_graph() -> LabelledGraph {
    LabelledGraph::parse(THETA_GRAPH).expect("bundled graph parses")
}

/// Two disjoint triangles with identical labels.
pub fn twin_triangles() -> LabelledGraph {
    LabelledGraph::parse(TWIN_TRIANGLES).expect("bundled graph parses")
}

/// One vertex with a single loop labelled `a`.
pub fn loop_graph() -> LabelledGraph {
    LabelledGraph::parse("edge v v a\n").expect("literal graph parses")
}

/// A path `u - v - w` with no cycles.
pub fn tree_graph() -> LabelledGraph {
    LabelledGraph::parse("edge u v a\nedge v w b\n").expect("literal graph parses")
}

/// A diagram drawn in the plane: edge `i` runs from `points[from]` to
/// `points[to]` and is read as the generator `g`; its darts are `2i` (at
/// `from`) and `2i + 1` (at `to`). Darts are ordered counterclockwise around
/// each point. Every face is tagged with its own word, except the unbounded
/// face when `disk` is set.
pub fn planar_diagram(
    points: &[(f64, f64)],
    edges: &[(usize, usize, &str)],
    disk: bool,
) -> Diagram {
    let n = 2 * edges.len();
    let mut labels = Vec::with_capacity(n);
    let mut at = vec![0; n];
    let mut pairs = Vec::new();
    for (i, &(from, to, g)) in edges.iter().enumerate() {
        labels.push(Word::new(vec![Label::pos(g)]));
        labels.push(Word::new(vec![Label::new(g, true)]));
        at[2 * i] = from;
        at[2 * i + 1] = to;
        pairs.push((2 * i, 2 * i + 1));
    }
    let toward = |d: usize| at[d ^ 1];
    let rotations: Vec<Vec<usize>> = (0..points.len())
        .map(|v| {
            let mut ds: Vec<usize> = (0..n).filter(|&d| at[d] == v).collect();
            let angle = |d: usize| {
                let (x0, y0) = points[v];
                let (x1, y1) = points[toward(d)];
                (y1 - y0).atan2(x1 - x0)
            };
            ds.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
            ds
        })
        .filter(|r| !r.is_empty())
        .collect();
    let untagged = Diagram::from_rotations(
        &pairs,
        &rotations,
        labels.clone(),
        BTreeMap::new(),
        DiagramKind::Sphere,
    )
    .expect("planar drawing is a map");
    let area = |darts: &[usize]| -> f64 {
        darts
            .iter()
            .map(|&d| {
                let (x0, y0) = points[at[d]];
                let (x1, y1) = points[toward(d)];
                x0 * y1 - x1 * y0
            })
            .sum()
    };
    let faces = untagged.faces();
    let outer = faces
        .iter()
        .max_by(|a, b| area(&a.darts).total_cmp(&area(&b.darts)))
        .map(|f| f.start)
        .filter(|_| disk);
    let tags = faces
        .iter()
        .filter(|f| Some(f.start) != outer)
        .map(|f| (f.start, FaceTag::new(untagged.face_word_from(f.start), 1)))
        .collect();
    let kind = match outer {
        Some(outer) => DiagramKind::Disk { outer },
        None => DiagramKind::Sphere,
    };
    Diagram::from_rotations(&pairs, &rotations, labels, tags, kind)
        .expect("planar drawing is a map")
}

/// A disk over the simple-cycle presentation of [`k4_graph`]: three
/// triangles around a central vertex whose spokes come from the graph, plus
/// two faces attached along the rim whose shared edges do not.
pub fn k4_disk() -> Diagram {
    let h = 0.866 * 3.0;
    let points = [
        (0.0, 0.0), // O
        (0.0, 3.0), // A
        (-h, -1.5), // B
        (h, -1.5),  // C
        (h, 1.5),   // D
        (-h, -3.0), // E
        (h, -3.0),  // F
    ];
    let edges = [
        (1, 0, "b"),
        (0, 2, "b"),
        (0, 3, "c"),
        (2, 1, "a"),
        (3, 2, "c"),
        (3, 1, "b"),
        (1, 4, "b"),
        (4, 3, "a"),
        (2, 5, "b"),
        (6, 5, "a"),
        (3, 6, "b"),
    ];
    planar_diagram(&points, &edges, true)
}

/// Two faces reading `b b c` and its inverse, glued along their boundary.
pub fn bbc_sphere() -> Diagram {
    let points = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
    planar_diagram(&points, &[(0, 1, "b"), (1, 2, "b"), (2, 0, "c")], false)
}
