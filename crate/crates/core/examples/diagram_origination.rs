//! Validating a diagram, asking which edges originate, and drawing it.
use graphsc::diagram::{is_graphically_reduced, not_originating_skeleton, origination_report};
use graphsc::presentation::relators_simple;
use graphsc::samples::{bbc_sphere, k4_disk, k4_graph};
use graphsc::DEFAULT_CYCLE_CAP;

fn main() {
    let g = k4_graph();
    let rels = relators_simple(&g, DEFAULT_CYCLE_CAP).unwrap();

    let sphere = bbc_sphere();
    let report = sphere.validate(Some(&rels));
    println!(
        "sphere: valid={} V={} E={} F={}",
        report.valid, report.vertices, report.edges, report.faces
    );
    println!("reduced: {:?}", is_graphically_reduced(&sphere, &g).holds());

    let disk = k4_disk();
    println!("\ndisk boundary: {}", disk.boundary_word().unwrap());
    for e in origination_report(&disk, &g) {
        let tag = if e.boundary {
            "boundary"
        } else if e.originates {
            "originates"
        } else {
            "-"
        };
        println!(
            "  edge {:>2} {:<6} {tag}",
            e.dart,
            disk.label(e.dart).to_string()
        );
    }
    let skeleton = not_originating_skeleton(&disk, &g);
    println!(
        "skeleton edges {:?}, spurs {:?}",
        skeleton.edges, skeleton.spurs
    );

    println!("\n{}", disk.to_dot(Some(&g)));
}
