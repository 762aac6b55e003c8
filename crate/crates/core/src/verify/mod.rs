//! Per-claim checks. Each check rebuilds its objects from the field, plane,
//! group and design modules and compares an observed count or set with the
//! stated one, producing one report per claim and field order.

pub mod census;
pub mod conicsol;
pub mod frob;
pub mod lsr1;
pub mod nonexist;
pub mod orbit;
pub mod replay;
pub mod report;
pub mod suite;
pub mod syl;
pub mod typeii;

pub use replay::replay;
pub use report::{any_failed, Report, Status};
pub use suite::{claim_ids, matches, verify_all};
