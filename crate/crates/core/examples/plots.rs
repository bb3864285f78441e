//! Writes the k3 and triangle-free region plots, with census scatter, as
//! SVG files.
//!
//!     cargo run --release --example plots [-- out_dir]

use std::path::PathBuf;

use profile_atlas::family::Family;
use profile_atlas::plot::{PlotSpec, ScatterSource};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir).expect("output directory");

    let mut k3 = PlotSpec::k3();
    k3.scatter.push(ScatterSource::Census {
        n: 7,
        family: Family::All,
    });
    let mut tf = PlotSpec::tf();
    tf.scatter.push(ScatterSource::Census {
        n: 7,
        family: Family::TriangleFree,
    });

    for (name, spec) in [("k3_region.svg", k3), ("tf_region.svg", tf)] {
        let path = dir.join(name);
        std::fs::write(&path, spec.render(None).unwrap()).expect("writable");
        println!("wrote {}", path.display());
    }
}
