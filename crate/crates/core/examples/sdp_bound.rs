//! The density-maximization SDP for P3 in triangle-free graphs: writes the
//! SDPA file and checks a hand-made dual certificate.
//!
//!     cargo run --example sdp_bound [-- out.dat-s]

use profile_atlas::family::Family;
use profile_atlas::flags::flag_matrix;
use profile_atlas::graph::{named, Graph};
use profile_atlas::linalg::SymMatrix;
use profile_atlas::oracle::{default_flags, enumerate_census};
use profile_atlas::sdp::{dual_bound, emit_sdp, primal_value, SdpaProblem};

fn main() {
    let flags = default_flags();
    let types: Vec<Graph> = enumerate_census(3, Family::TriangleFree)
        .unwrap()
        .classes
        .into_iter()
        .map(|c| c.graph)
        .collect();
    let mats: Vec<_> = types
        .iter()
        .map(|h| flag_matrix(&flags, h).unwrap())
        .collect();
    let target = named::p3();

    let text = emit_sdp(&target, &types, &mats).unwrap();
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, &text).expect("writable");
            println!("wrote {path}");
        }
        None => print!("{text}"),
    }
    let pb = SdpaProblem::parse(&text).unwrap();
    println!("m={} blocks={:?}", pb.m, pb.block_sizes);

    // Q = (3/4)(1,-1)(1,-1)^T gives p2 <= 3/4, attained by K_{n,n}
    let q = SymMatrix::from_rows(&[vec![0.75, -0.75], vec![-0.75, 0.75]]).unwrap();
    let bound = dual_bound(&target, &types, &mats, &q).unwrap();
    let profile_of_knn = [0.25, 0.0, 0.75];
    println!(
        "dual bound {bound}, primal at the K_n,n profile {}",
        primal_value(&target, &types, &profile_of_knn).unwrap()
    );
}
