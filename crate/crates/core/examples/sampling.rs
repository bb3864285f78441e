//! Samples two-block models and watches the empirical profile approach its
//! limit as n grows.

use profile_atlas::randmodels::{concentration_test, ModelParams};

fn main() {
    let models = [
        ("G(n,1/2)", ModelParams::uniform(0.5)),
        (
            "G(0.3,0.8,0.2,0.5)",
            ModelParams::new(0.3, 0.8, 0.2, 0.5).unwrap(),
        ),
        ("K_{n/2,n/2}", ModelParams::bipartite(0.5, 1.0)),
    ];
    for (name, params) in models {
        for n in [250, 500, 1000] {
            let rep = concentration_test(&params, n, 10, 1).unwrap();
            println!(
                "{name:<20} n={n:<5} mean dev {:.3e}  max dev {:.3e}  1/sqrt(n) {:.3e}",
                rep.mean_deviation(),
                rep.max_deviation(),
                rep.threshold()
            );
        }
    }
    let rep = concentration_test(&ModelParams::uniform(0.5), 300, 3, 7).unwrap();
    print!("{}", rep.to_csv());
}
