//! Collared-tile approximants of translational tiling spaces and the Čech
//! cohomology of the hull as a direct limit of their cohomology.
//!
//! The pipeline runs
//! [`model`] → [`language`] → [`collaring`] → [`approximant`] → [`algebra`],
//! and [`tower`] strings the levels together.

pub mod algebra;
pub mod approximant;
pub mod cli;
pub mod collaring;
pub mod language;
pub mod model;
pub mod pattern;
pub mod report;
pub mod tower;

pub use model::{parse_definition, substitute, TilingDefinition};
pub use pattern::{Pattern, Shape, Symbol};
