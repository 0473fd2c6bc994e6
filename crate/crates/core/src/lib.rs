//! Exact enumeration of 4-regular planar graphs and maps.

pub mod error;
pub mod graphs;
pub mod maps3c;
pub mod networks;
pub mod oracle;
pub mod pipeline;
pub mod quad_general;
pub mod quad_simple;
pub mod series;
pub mod simple_maps;
pub mod solve;
pub mod table;
pub mod verify;

pub use error::{Error, Result, StageContext};
pub use series::{Coefficient, Exponents, Series, VarSet};
