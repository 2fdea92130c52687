//! Recolouring reconfiguration for list and correspondence colourings.

pub mod colour;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod hunt;
pub mod io;
pub mod oracle;
pub mod sched;

pub use colour::{Colour, Colouring, Cover, Instance, Palette, Step};
pub use error::{Error, Result};
pub use graph::Graph;
