//! Exhaustive census checks on small graphs: class counts, the exact
//! total-probability identity, Goodman minima and PSD defects.
//!
//!     cargo run --release --example census [-- 7]

use profile_atlas::family::Family;
use profile_atlas::oracle::{
    default_flags, enumerate_census, min_goodman, psd_defect_scan, verify_total_probability,
};

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let flags = default_flags();
    for n in 3..=max_n {
        let all = enumerate_census(n, Family::All).unwrap();
        let tf = enumerate_census(n, Family::TriangleFree).unwrap();
        let tp = verify_total_probability(n, &flags, Family::All).unwrap();
        let psd = psd_defect_scan(n, Family::All, &flags).unwrap();
        println!(
            "n={n}: {} classes ({} triangle-free), identity violations {}, min p0+p3 = {}, n*psd defect = {:.4}",
            all.classes.len(),
            tf.classes.len(),
            tp.violations.len(),
            min_goodman(n).unwrap(),
            psd.constant()
        );
    }
}
