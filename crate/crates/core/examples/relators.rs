//! Presentations read off a graph, compared with the classical conditions.
use graphsc::presentation::{
    classical_ck, classical_tp, is_concise, relators_basis, relators_simple,
};
use graphsc::{LabelledGraph, DEFAULT_CYCLE_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = LabelledGraph::parse(include_str!("../data/theta.graph"))?;
    let simple = relators_simple(&g, DEFAULT_CYCLE_CAP)?;
    let basis = relators_basis(&g);
    println!("simple cycles: {simple}");
    println!("basis:         {basis}");

    println!("concise: {}", is_concise(&simple).holds());
    let c6 = classical_ck(&simple, 6)?;
    println!("classical C(6): {}", c6.holds());
    if let Some(w) = c6.witness() {
        let ps: Vec<String> = w.pieces.iter().map(ToString::to_string).collect();
        println!("  {} = {}", w.element, ps.join(" · "));
    }
    println!("classical T(4): {}", classical_tp(&simple, 4)?.holds());

    // JSON keeps provenance and round-trips.
    let json = simple.to_json();
    assert_eq!(
        graphsc::presentation::Presentation::from_json(&json)?,
        simple
    );
    Ok(())
}
