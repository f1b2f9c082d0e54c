//! Graphical C(k) and T(p) on the two sample graphs.
use graphsc::conditions::{check_ck, check_tp, CheckOptions, CkWitness};
use graphsc::LabelledGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CheckOptions::default();
    for (name, text) in [
        ("k4", include_str!("../data/k4.graph")),
        ("theta", include_str!("../data/theta.graph")),
    ] {
        let g = LabelledGraph::parse(text)?;
        println!("{name}:");
        for k in 2..=6 {
            let v = check_ck(&g, k, opts)?;
            print!("  C({k}) {}", if v.holds() { "holds" } else { "fails" });
            if let Some(CkWitness::Decompositions { cycles }) = v.witness() {
                let c = &cycles[0];
                let words: Vec<String> = c.piece_words.iter().map(ToString::to_string).collect();
                print!("  ({} = {})", c.label, words.join(" · "));
            }
            println!();
        }
        for p in [4, 6] {
            let v = check_tp(&g, p, opts)?;
            print!("  T({p}) {}", if v.holds() { "holds" } else { "fails" });
            if let Some(w) = v.witness() {
                let rels: Vec<String> = w.relators.iter().map(ToString::to_string).collect();
                print!("  chain [{}]", rels.join(", "));
            }
            println!();
        }
    }
    Ok(())
}
