//! IO companion to the `muperm` library: JSON wire formats and the
//! deterministic parameter-sweep engine behind the `muperm` binary.

pub mod formats;
pub mod sweep;
