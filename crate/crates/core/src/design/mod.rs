pub mod blockfile;
pub mod construct;
pub mod flags;
pub mod incidence;
pub mod prescribed;
pub mod search;
pub mod table1;

pub use construct::{orbit_design, witt_bose_shrikhande};
pub use flags::{flag_transitive, FlagOrbitReport};
pub use incidence::{certify_design, CertFailure, Certified, DesignParams, IncidenceStructure};
pub use search::{search, BlockShape, SearchCaps, SearchOutcome, SearchSpace};
