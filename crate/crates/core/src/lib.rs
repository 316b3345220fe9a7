//! Exact construction of special theta cocycles for orthogonal groups of
//! signature `(p, q)` and machine verification of their closedness, boundary
//! restriction and product identities, plus numerical theta series.
//!
//! Modules, bottom-up: [`scalars`], [`tableaux`], [`multitensor`],
//! [`liegeom`], [`weil`], [`cochain`], [`theta`], [`cli`].

pub mod error;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{Cyc, Scalar};
pub mod multitensor;
pub mod tableaux;
pub mod liegeom;
pub mod weil;
pub mod cochain;
pub mod theta;
pub mod cli;
