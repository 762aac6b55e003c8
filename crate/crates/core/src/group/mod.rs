pub mod action;
pub mod cache;
pub mod cosets;
pub mod matrix;
pub mod named;
pub mod perm;
pub mod subgroups;
pub mod sylow;

pub use matrix::{Mat3, MatrixGroup};
pub use perm::{FiniteGroup, OrbitPartition, Perm, PermGroup};
