//! Critical points, phases and symmetries of octupolar tensors in three
//! dimensions.
//!
//! A traceless symmetric third-order tensor is stored by its seven
//! independent components in [`OctupolarTensor`]. Its cubic potential on the
//! unit sphere has at most fourteen critical points; after rotating a
//! maximum to the North Pole and normalizing, the potential depends on three
//! cylinder coordinates `(K, ρ, χ)` ([`OrientedParams`]).

pub mod commands;
pub mod config;
pub mod critical;
pub mod error;
pub mod oracle;
pub mod orientation;
pub mod output;
pub mod separatrix;
pub mod solver;
pub mod strata;
pub mod symmetry;
pub mod tensor;

pub use critical::{poincare_hopf_index, CriticalCircle, CriticalPoint, MorseType};
pub use error::{Error, Result};
pub use orientation::{canonical_form, from_cylinder, orient, Orientation, OrientedParams};
pub use solver::{solve_spectrum, Phase, SolverConfig, SpectrumReport};
pub use strata::{curve_f, curve_g, StratumLabel};
pub use tensor::{OctupolarTensor, SphericalPoint};
