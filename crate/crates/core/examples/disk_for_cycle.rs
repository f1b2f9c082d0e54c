//! Every simple cycle bounds a disk built from basis relators whose interior
//! edges all originate.
use graphsc::diagram::{disk_for_cycle, origination_report};
use graphsc::LabelledGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = LabelledGraph::parse(include_str!("../data/theta.graph"))?;
    for cycle in g.enumerate_simple_cycles(1_000)? {
        let path = &cycle.directed_rotations()[0];
        let d = disk_for_cycle(&g, path)?;
        let inner = origination_report(&d, &g)
            .into_iter()
            .filter(|e| !e.boundary)
            .collect::<Vec<_>>();
        let originating = inner.iter().filter(|e| e.originates).count();
        println!(
            "{:<28} faces {}  interior edges {}/{} originate  boundary {}",
            cycle.label(&g).to_string(),
            d.inner_faces().len(),
            originating,
            inner.len(),
            d.boundary_word().unwrap(),
        );
    }
    Ok(())
}
