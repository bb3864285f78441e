pub mod canon;
pub mod cli;
pub mod density;
pub mod error;
pub mod family;
pub mod flags;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod plot;
pub mod randmodels;
pub mod rational;
pub mod regions;
pub mod sdp;
