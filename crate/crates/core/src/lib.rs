//! Exact ruler-and-compass geometry over ordered fields: the field models,
//! the incidence, order and congruence kernel, angle measure, coordinates
//! and rigid motions, and an interpreter for construction scripts.

pub mod angle;
pub mod coords;
pub mod dsl;
pub mod error;
pub mod field;
pub mod kernel;
pub mod plane;
