//! One runnable scenario per theorem. Each run returns a serializable report
//! whose pass flag is a fixed function of its numeric fields.

mod eigen;
mod hardy;
mod identity;
mod monotonicity;
mod morse;
mod residual;
mod singular;
mod sturm;
mod young;

use serde::Serialize;

pub use eigen::{run_eigen, EigenReport, EigenSetup};
pub use hardy::{run_hardy, HardyReport, HardyRow, HardySetup};
pub use identity::{
    run_identity, IdentityGroup, IdentityReport, IdentityRow, IdentitySetup, Lemma,
};
pub use monotonicity::{run_monotonicity, MonotonicityReport, MonotonicitySetup};
pub use morse::{run_morse, MorseReport, MorseSetup, QuadraticFormRow};
pub use residual::{p_biharmonic, PBiharmonic};
pub use singular::{run_singular_system, ProportionalityReport, SingularSetup};
pub use sturm::{
    default_candidates, run_sturm, SturmCandidate, SturmConclusion, SturmReport, SturmSetup,
};
pub use young::{run_young, YoungReport, YoungSetup};

/// Version of the report JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Shared behaviour of experiment reports.
pub trait Report: Serialize {
    /// File stem of the report, e.g. `hardy` for `hardy.report.json`.
    fn name(&self) -> &str;

    fn passed(&self) -> bool;

    /// One line for terminal output.
    fn summary(&self) -> String;

    /// Plot-ready columns with a header line.
    fn data_csv(&self) -> String;

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| m.max(v.abs()))
}
