//! Pieces of a labelled graph: words read along at least two distinct paths.
use graphsc::lifting::{enumerate_pieces, is_piece, min_piece_decomposition};
use graphsc::LabelledGraph;

fn main() {
    let g = LabelledGraph::parse(include_str!("../data/k4.graph")).expect("graph parses");
    for w in enumerate_pieces(&g, 2) {
        println!("{:>2}  {w}", w.len());
    }

    let bb = graphsc::Word::parse("b b");
    if let Some(witness) = is_piece(&g, &bb) {
        println!("\n{bb} lifts along {} and {}", witness.lift1, witness.lift2);
    }

    // Cheapest cover of each simple cycle by pieces.
    for cycle in g.enumerate_simple_cycles(100).unwrap() {
        let path = &cycle.directed_rotations()[0];
        if let Some(dec) = min_piece_decomposition(&g, path) {
            let words: Vec<String> = dec.words(&g).iter().map(ToString::to_string).collect();
            println!(
                "{:<16} = {}",
                cycle.label(&g).to_string(),
                words.join(" · ")
            );
        }
    }
}
