//! Asphericity certificates from C(6), C(4)&T(4) or C(3)&T(6).
use graphsc::conditions::{certify_asphericity, CheckOptions};
use graphsc::LabelledGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in [
        ("theta", include_str!("../data/theta.graph")),
        ("k4", include_str!("../data/k4.graph")),
        ("tree", include_str!("../data/tree.graph")),
    ] {
        let g = LabelledGraph::parse(text)?;
        let cert = certify_asphericity(&g, CheckOptions::default())?;
        let trail: Vec<String> = cert
            .evidence
            .iter()
            .map(|r| format!("{}={}", r.condition, r.holds))
            .collect();
        println!("{name:<6} {:<8} {}", cert.kind.to_string(), trail.join(" "));
    }
    Ok(())
}
