//! Flag matrices over the flags (non-edge, edge) with one labelled vertex:
//! the type matrices, the total-probability identity on a sample graph, and
//! the exact Gram factorization of the independent variant.

use profile_atlas::density::induced_density;
use profile_atlas::flags::{flag_matrix, flag_matrix_independent, gram_factor, FlagMatrix};
use profile_atlas::graph::{named, Graph};
use profile_atlas::linalg::psd_distance;
use profile_atlas::oracle::default_flags;

fn main() {
    let flags = default_flags();
    let types = named::triples();
    let names = ["K3bar", "P3bar", "P3", "K3"];
    let mats: Vec<FlagMatrix> = types
        .iter()
        .map(|h| flag_matrix(&flags, h).unwrap())
        .collect();
    for (name, m) in names.iter().zip(&mats) {
        println!("A^{name} =\n{}", m.to_exact_string());
    }

    let g = Graph::cycle(7);
    let a = flag_matrix(&flags, &g).unwrap();
    let weights: Vec<_> = types
        .iter()
        .map(|h| induced_density(h, &g).unwrap().0)
        .collect();
    let combo = FlagMatrix::weighted_sum(&weights, &mats.iter().collect::<Vec<_>>()).unwrap();
    println!("A^C7 =\n{}", a.to_exact_string());
    println!(
        "sum_a d(H_a;C7) A^H_a equals A^C7: {}",
        a.entries() == combo.as_slice()
    );
    println!("psd_distance(A^C7) = {:.6}", psd_distance(&a.to_sym()));

    let b = flag_matrix_independent(&flags, &g).unwrap();
    let gram = gram_factor(&flags, &g).unwrap();
    println!("B^C7 =\n{}", b.to_exact_string());
    println!(
        "B^C7 = scale * Q Q^T exactly: {} (scale {})",
        b.entries() == gram.product().as_slice(),
        gram.scale
    );
    println!("B^C7 is PSD (exact): {}", b.is_psd());
}
