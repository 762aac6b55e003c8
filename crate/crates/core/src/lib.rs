pub mod design;
pub mod error;
pub mod field;
pub mod group;
pub mod plane;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Fe, FieldCtx};
pub use plane::PlaneCtx;
