//! Knot diagrams, symmetric-union constructions and the invariants used to
//! check them.

pub mod analysis;
pub mod construct;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod poly;
pub mod union_find;

pub use diagram::{parse_dt, parse_pd, Crossing, Diagram, DiagramFile, DtCode, Kink, Move, Sign};
pub use error::{Error, ParseError, Result};
pub use poly::LaurentPoly;
