//! Noncommutative Fourier analysis on finite groups and numerical checks of
//! the uncertainty principles relating time-limiting and band-limiting
//! operators.
//!
//! The pieces, bottom-up:
//!
//! * [`group`]: Cayley tables, subgroups and normality;
//! * [`reps`]: catalogs of unitary irreps and their verification;
//! * [`matrix`]: dense complex matrices, Jacobi SVD, ranks and norms;
//! * [`fourier`]: the operator-valued transform, inversion and support sizes;
//! * [`operators`]: time-limiters, band-limiters and translations as matrices;
//! * [`uncertainty`]: checkers that turn each inequality into a report.

pub mod error;
pub mod fourier;
pub mod group;
pub mod io;
pub mod matrix;
pub mod operators;
pub mod random;
pub mod reps;
pub mod uncertainty;

pub use error::{Error, Result};
pub use fourier::{fourier_transform, inverse_transform, GroupFunction, Spectrum, SupportMetrics};
pub use group::{FiniteGroup, GroupSpec, Subgroup};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use operators::{BandLimiter, OperatorDesc, OperatorMatrix, Side};
pub use reps::{Irrep, IrrepCatalog};
pub use uncertainty::{UncertaintyReport, Verdict};
