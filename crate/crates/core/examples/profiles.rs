//! Exact 3-vertex profiles of a few named graphs, or of a graph file given
//! on the command line (edge list or graph6).
//!
//!     cargo run --example profiles [-- path/to/graph.txt]

use profile_atlas::density::{induced_density, profile3};
use profile_atlas::graph::{named, parse_graph, Graph};

fn show(name: &str, g: &Graph) {
    let p = profile3(g).expect("at least 3 vertices");
    let pc = profile3(&g.complement()).expect("same order");
    println!(
        "{name:<12} {:<24} complement {}",
        p.to_exact_string(),
        pc.to_exact_string()
    );
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        match parse_graph(&text) {
            Ok(g) => show(&path, &g),
            Err(e) => eprintln!("{path}: {e}"),
        }
        return;
    }

    show("C5", &named::c5());
    show("K3", &named::k3());
    show("P6", &Graph::path(6));
    show("C8", &Graph::cycle(8));
    let k44: Vec<(usize, usize)> = (0..4).flat_map(|u| (4..8).map(move |v| (u, v))).collect();
    show("K4,4", &Graph::from_edges(8, &k44));
    show("P3 (graph6)", &parse_graph(">>graph6<<Bg").expect("graph6"));

    // d(H;G) for larger H reuses the same counting machinery
    let c4 = Graph::cycle(4);
    let d = induced_density(&c4, &Graph::cycle(8)).unwrap();
    println!("d(C4; C8) = {d}");
}
