//! Exact q-series engine, overpartition enumeration oracle, and numerical
//! asymptotics for run-constrained partition families.
//!
//! The crate has three layers that check each other:
//!
//! * exact arithmetic — truncated integer power series ([`IntSeries`],
//!   [`BiSeries`]) and the generating functions built on them ([`qgen`]);
//! * combinatorics — explicit overpartition objects, exhaustive enumeration,
//!   and the structural bijections ([`enumeration`]);
//! * numerics — special functions, the contour representation of the double
//!   sum, and closed-form growth estimates ([`special`], [`asymptotics`]).
//!
//! With the default `parallel` feature the heavy kernels (long
//! multiplications, double-sum rows, quadrature nodes) run on rayon;
//! disabling the feature keeps identical results on one thread, since all
//! parallel reductions are either exact (integers) or pairwise-ordered
//! (floats).

pub mod asymptotics;
pub mod biseries;
pub mod enumeration;
pub mod qgen;
pub mod series;
pub mod special;

pub use asymptotics::{AsymptoticEstimate, CalibrationReport, QuadParams, SaddleData};
pub use biseries::BiSeries;
pub use enumeration::Overpartition;
pub use qgen::VerificationReport;
pub use series::{IntSeries, PochhammerOrder, SeriesError};
pub use special::AsymError;

/// Sizes the global thread pool for the parallel kernels. `None` keeps the
/// library default (one thread per core). Calling it twice, or after any
/// parallel work has run, leaves the existing pool in place.
#[cfg(feature = "parallel")]
pub fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Thread-count hint; a no-op without the `parallel` feature.
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_threads: Option<usize>) {}
