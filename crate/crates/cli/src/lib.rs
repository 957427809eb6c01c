//! Command-line front end for the geometry kernel: run construction
//! scripts, verify the axioms and theorems on seeded random instances, and
//! draw scripts as SVG.

pub mod commands;
pub mod render;
pub mod report;
pub mod suites;
