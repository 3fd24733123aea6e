//! Weak-form quadrature elements for strain-gradient beams and plates.
//!
//! Single-element Lagrange and Hermite formulations on GLL grids, the
//! determinant-based analytical beam solution, and helpers for sweeping
//! parameter sets in parallel.

pub mod basis;
pub mod beam;
pub mod error;
pub mod gll;
pub mod linalg;
pub mod modal;
pub mod oracle;
pub mod plate;
pub mod sweep;

pub use beam::{BeamBasis, BeamBc, BeamModel};
pub use error::{Error, Result};
pub use modal::{AssembledSystem, ModalResult};
pub use plate::{PlateBasis, PlateBc, PlateModel};
