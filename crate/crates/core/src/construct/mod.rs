//! Diagram constructors: braid closures, symmetric unions and doubly
//! symmetric templates.

mod braid;
mod tangle;
mod template;
mod union;

pub use braid::{braid_closure, rosette, BraidWord};

pub use tangle::{Embedded, Placement, Point, Tangle};
pub use template::{
    expand_almost, expand_almost_with, expand_template, parse_twist_list, AxisEntry, Expansion, QuadrantPair,
    QuarterCrossing, QuarterTemplate, Switch, TwistSpec,
};
pub use union::{partial_knot, symmetric_union, AxisPort, HalfDiagram};
