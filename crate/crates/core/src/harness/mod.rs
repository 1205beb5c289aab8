//! End-to-end verification: exact slope detection, the decomposition
//! identity, parity vanishing and the lower-bound monitor.

mod identity;
mod lower_bound;
mod slope;
mod verify;

pub use identity::{check_decomposition_identity, IdentityCheck};
pub use lower_bound::{monitor_lower_bound, LowerBoundReport};
pub use slope::{check_tail, detect_slope, slope_window, SlopeReport, TailReport};
pub use verify::{
    run_verify, KindReport, PairMeta, PreflightCheck, RepReport, RepSelection, VerificationConfig,
    VerifyReport,
};
