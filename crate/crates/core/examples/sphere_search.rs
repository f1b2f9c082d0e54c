//! Bounded search for graphically reduced spheres, with the structural audit.
use graphsc::search::{audit_enumeration, search_reduced_spheres, SearchBounds, SearchOutcome};
use graphsc::LabelledGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in [
        ("k4", include_str!("../data/k4.graph")),
        ("theta", include_str!("../data/theta.graph")),
    ] {
        let g = LabelledGraph::parse(text)?;
        let bounds = SearchBounds::faces(3);
        match search_reduced_spheres(&g, &bounds)? {
            SearchOutcome::Exhausted { progress } => println!("{name}: exhausted, {progress:?}"),
            SearchOutcome::Witness { diagram, .. } => println!("{name}: witness {diagram}"),
            SearchOutcome::BudgetExceeded { progress } => {
                println!("{name}: out of budget, {progress:?}")
            }
        }
        let audit = audit_enumeration(&g, &bounds)?;
        println!(
            "  audit: passed={} spheres={} spur violations={} pq violations={}",
            audit.passed(),
            audit.progress.spheres,
            audit.spur_violations.len(),
            audit.pq_violations.len()
        );
    }

    let twins = LabelledGraph::parse(include_str!("../data/twin_triangles.graph"))?;
    match search_reduced_spheres(&twins, &SearchBounds::faces(2)) {
        Ok(out) => println!("twin triangles: {out:?}"),
        Err(e) => println!("twin triangles: {e}"),
    }
    Ok(())
}
