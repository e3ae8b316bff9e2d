//! Meanders, their strata, and the square-tiled surfaces obtained by lifting them through
//! hyperelliptic double covers.

pub mod backtrack;
pub mod canonical;
pub mod constructions;
pub mod diagram;
pub mod dsu;
pub mod enumerate;
pub mod error;
pub mod map;
pub mod stratum;
pub mod svg;
pub mod surface;
pub mod verify;

pub use diagram::{AnchorEnd, HorizontalEnd, Kind, MeanderDiagram, Side};
pub use error::{Error, Result};
pub use map::CombinatorialMap;
pub use stratum::{stratum, StratumSignature};
