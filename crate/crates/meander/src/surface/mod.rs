//! Square-tiled surfaces dual to meanders, their branched double covers and cylinder data.

pub mod cover;

pub use cover::{ConePoint, ConeSite, Dir, PillowcaseCover, VertexClasses};
pub mod quadrangulate;

pub use quadrangulate::quadrangulate;
pub mod branch;
pub mod lift;

pub use branch::{enclosed_puncture_parity, solve_branch_cocycle, BranchData, BranchSet};
pub use lift::{double_cover, lift_all_poles, lift_with, Lift};
pub mod cylinders;
pub use cylinders::{cylinder_counts, cylinders, is_separating, CoreCurve, Cylinder, CylinderDecomposition, Direction};
pub mod classify;
pub use classify::{classify_component, Branching, Component};
