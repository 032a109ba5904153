//! Desk-scale reproductions of continuous-time examples. This is the only
//! module that uses floating point; lattice prices are still exact.
//!
//! Every CSV written here carries a `seed` column so tables can be
//! regenerated bit for bit.

use std::path::Path;

use serde::Serialize;

use crate::error::Result;

pub mod bs;
pub mod lattice;
pub mod stochexp;

pub use bs::{bs_gamma_grid, bs_tilted_expectation, BsParams, TiltEstimate};
pub use lattice::{lattice_family_study, LatticeKind, LatticeParams, LatticeRow};
pub use stochexp::{stochexp_alpha_curve, AlphaRow, StochExpReport, SupRow};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

pub fn write_csv<T: Serialize>(path: impl AsRef<Path>, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
