//! Triangle-free profiles: the 2x2 PSD test, the explicit inequality it is
//! equivalent to, and the closed-form inverse onto bipartite models G(α,q).

use profile_atlas::randmodels::expected_profile_tf;
use profile_atlas::regions::{classify_tf, tf_inverse, tf_matrix, tf_slack, PointTF};

fn main() {
    for (p0, p1) in [
        (0.25, 0.0),
        (0.5, 0.2),
        (0.9, 0.3),
        (0.5, 0.45),
        (0.0, 0.0),
        (1.0, 0.0),
    ] {
        let pt = match PointTF::from_p0_p1(p0, p1) {
            Ok(pt) => pt,
            Err(e) => {
                println!("({p0}, {p1}): {e}");
                continue;
            }
        };
        let m = tf_matrix(&pt);
        println!(
            "({p0}, {p1}): matrix {:?}, slack = {:.4}, {:?}",
            m.rows(),
            tf_slack(p0, p1),
            classify_tf(&pt)
        );
        match tf_inverse(p0, p1) {
            Ok((alpha, q)) => {
                let (e0, e1) = expected_profile_tf(alpha, q);
                println!("    alpha={alpha:.6} q={q:.6} -> ({e0:.12}, {e1:.12})");
            }
            Err(e) => println!("    {e}"),
        }
    }
}
