use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::Graph;

/// Hereditary graph families used to restrict censuses and flag lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Family {
    #[default]
    All,
    TriangleFree,
    Bipartite,
}

impl Family {
    pub fn contains(&self, g: &Graph) -> bool {
        match self {
            Family::All => true,
            Family::TriangleFree => !g.has_triangle(),
            Family::Bipartite => g.is_bipartite(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::All => "all",
            Family::TriangleFree => "triangle-free",
            Family::Bipartite => "bipartite",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(Family::All),
            "triangle-free" | "tf" => Ok(Family::TriangleFree),
            "bipartite" => Ok(Family::Bipartite),
            _ => Err(Error::Invalid(format!("unknown family {s:?}"))),
        }
    }
}
