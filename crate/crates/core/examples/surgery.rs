//! Forgetting degree-2 vertices, (p, q) witnesses and diamond moves.
use graphsc::diagram::{diamond_move, forget_degree2, pq_witness};
use graphsc::samples::{bbc_sphere, planar_diagram};

fn main() {
    let s = bbc_sphere();
    let f = forget_degree2(&s).unwrap();
    println!(
        "bbc sphere: {} vertices -> {}",
        s.vertices().len(),
        f.vertices().len()
    );
    for (p, q) in [(3, 6), (4, 4), (6, 3)] {
        println!("  ({p},{q}) witness: {:?}", pq_witness(&f, p, q));
    }

    // A cube: every vertex of degree 3, every face a square.
    let pts = [
        (0.0, 0.0),
        (3.0, 0.0),
        (3.0, 3.0),
        (0.0, 3.0),
        (1.0, 1.0),
        (2.0, 1.0),
        (2.0, 2.0),
        (1.0, 2.0),
    ];
    let edges = [
        (0, 1, "a"),
        (1, 2, "a"),
        (2, 3, "a"),
        (3, 0, "a"),
        (4, 5, "b"),
        (5, 6, "b"),
        (6, 7, "b"),
        (7, 4, "b"),
        (0, 4, "c"),
        (1, 5, "c"),
        (2, 6, "c"),
        (3, 7, "c"),
    ];
    let cube = planar_diagram(&pts, &edges, false);
    for (p, q) in [(3, 6), (4, 4), (6, 3)] {
        println!("cube ({p},{q}) witness: {:?}", pq_witness(&cube, p, q));
    }

    // Two b-edges leave the same corner of a square; the diamond move splits
    // that corner and joins the far ends, keeping both face words.
    let square = planar_diagram(
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
        &[(0, 1, "b"), (0, 2, "b"), (1, 3, "c"), (2, 3, "c")],
        false,
    );
    let moved = diamond_move(&square, 0, 2).unwrap();
    println!(
        "\nsquare: vertex degrees {:?}",
        square.vertices().iter().map(Vec::len).collect::<Vec<_>>()
    );
    println!(
        "moved:  vertex degrees {:?}",
        moved.vertices().iter().map(Vec::len).collect::<Vec<_>>()
    );
    for f in moved.faces() {
        println!("  face {}", moved.face_word_from(f.start));
    }
}
