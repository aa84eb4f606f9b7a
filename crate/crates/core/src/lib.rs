//! Recognition of sunflower proper and unit interval graphs.

pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pqtree;
pub mod proper;
pub mod rational;
pub mod simultaneous;
pub mod space;
pub mod svg;
pub mod unit;

pub use error::{Error, GraphError, PqError, Result};
pub use graph::{Graph, SunflowerInstance, ValidationReport, Violation};
pub use pqtree::{PqTree, Shape};
pub use proper::StraightEnumeration;
pub use rational::{Interval, Rational, Representation};

/// Which kind of representation is asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Proper,
    Unit,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Proper => "proper",
            Mode::Unit => "unit",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "proper" => Ok(Mode::Proper),
            "unit" => Ok(Mode::Unit),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}
