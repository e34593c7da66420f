//! Wave-packet scattering off steep potentials with mid-flight momentum kicks.
//!
//! The crate has two independent routes to the transmission into a
//! classically forbidden region after a momentum transfer `hbar q`:
//!
//! * [`propagator`]: Crank-Nicolson integration of the 1D time-dependent
//!   Schrodinger equation with kick events (`psi -> exp(i q x) psi`),
//!   read out by [`observables`];
//! * [`analytic`]: projection of the kicked sub-barrier step eigenstates onto
//!   the supra-barrier continuum, evaluated by quadrature.
//!
//! [`experiments`] wires both into the scenario runners and sweeps, and
//! [`io`] provides the config/CSV/manifest formats and the command line.

pub mod analytic;
pub mod domain;
pub mod error;
pub mod experiments;
pub mod io;
pub mod observables;
pub mod propagator;
pub mod quadrature;
pub mod units;

pub use error::{Error, Result};
