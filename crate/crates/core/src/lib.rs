pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod group;
pub mod lattice;
pub mod theta_rep;
pub mod hilbert;
pub mod theta_numeric;
pub mod ehrhart;
pub mod report;
pub mod verify;
