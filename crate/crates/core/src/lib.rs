//! Disjoint sum-of-products (DSOP) and partial-DSOP synthesis for Boolean
//! functions given as cube covers.
//!
//! ```
//! use dsopforge::{dsop, Cover, DsopConfig, FunctionSpec};
//!
//! let on = Cover::parse(4, &["11--", "--11"]).unwrap();
//! let f = FunctionSpec::completely_specified(on);
//! let d = dsop(&f, &DsopConfig::default()).unwrap();
//! assert_eq!(d.len(), 3);
//! assert!(d.is_pairwise_disjoint());
//! ```

pub mod cli;
pub mod cover;
pub mod cube;
pub mod engine;
pub mod error;
pub mod partial;
pub mod pla;
pub mod sop;
pub mod verify;

pub use cover::{Cover, FunctionSpec, MintermCounts};
pub use cube::{Cube, Trit};
pub use engine::{dsop, dsop_run, BreakOutcome, DsopConfig, DsopRun, PassSummary, SortPolicy, Variant};
pub use error::{Error, Result};
pub use partial::{partial_break, partial_dsop, partial_dsop_run, PartialSpec};
pub use pla::{parse_pla, write_pla, PlaFile, PlaType};
pub use sop::{build_sop, MinimizerBackend};
pub use verify::{exact_min_dsop, verify_dsop, verify_partial_dsop, VerificationReport};
