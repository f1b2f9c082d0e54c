//! From an identity sequence to a spherical diagram and back.
use graphsc::identity::{unglue, van_kampen, IdentitySequence};
use graphsc::presentation::Presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rels = Presentation::parse_lines(include_str!("../data/intro.rel"))?;
    let seq = IdentitySequence::parse(include_str!("../data/intro.id"), Some(&rels))?;
    println!("identity: {}", seq.is_identity());

    let d = van_kampen(&seq)?;
    let v = d.validate(Some(&rels));
    println!(
        "sphere: valid={} V={} E={} F={}",
        v.valid, v.vertices, v.edges, v.faces
    );

    let back = unglue(&d)?;
    println!("unglued (from the gluing trace):\n{back}");

    // Without the trace, faces are peeled off one at a time.
    let reloaded = graphsc::diagram::Diagram::from_json(&d.to_json())?;
    let peeled = unglue(&reloaded)?;
    println!(
        "unglued (peeled), product = {:?}:\n{peeled}",
        peeled.product().to_string()
    );
    Ok(())
}
