//! The (p0,p3) region: membership with the binding constraint named, the
//! upper envelope, and constructive inversion onto two-block models.

use profile_atlas::randmodels::expected_profile_k3;
use profile_atlas::regions::{
    classify_k3, envelope_branches, region_inverse_k3, PointK3, BOUNDARY_TOL,
};

fn main() {
    for (p0, p3) in [
        (0.125, 0.125),
        (0.3, 0.2),
        (0.1, 0.1),
        (0.5, 0.5),
        (0.0, 1.0),
    ] {
        let pt = PointK3::new(p0, p3).unwrap();
        println!("({p0}, {p3}): {:?}", classify_k3(&pt, BOUNDARY_TOL));
    }

    for p0 in [0.05, 0.125, 0.3, 0.6, 0.9] {
        let (b1, b2) = envelope_branches(p0).unwrap();
        println!("p0={p0}: envelope branches {b1:.6} {b2:.6}");
    }

    for (p0, p3) in [(0.125, 0.125), (0.3, 0.2), (0.5, 0.05), (0.05, 0.5)] {
        let inv = region_inverse_k3(&PointK3::new(p0, p3).unwrap()).unwrap();
        let (e0, e3) = expected_profile_k3(&inv.params);
        println!(
            "({p0}, {p3}) <- {:?} x={:.6} a={:.6}, forward ({e0:.12}, {e3:.12})",
            inv.family, inv.x, inv.a
        );
    }
}
