//! Simulation library for the anisotropic quantum Rabi model and its
//! parametrically driven Jaynes-Cummings realization.
//!
//! The crate covers, at desk scale (dense matrices up to ~1026×1026):
//!
//! * [`hilbert`] — truncated Fock ⊗ spin operator algebra on a fixed,
//!   spin-major basis ordering;
//! * [`models`] — Hamiltonian builders for the anisotropic Rabi model,
//!   the two-photon-driven Jaynes-Cummings model, its squeezed-frame
//!   form, and the dispersive effective Hamiltonian;
//! * [`patterns`] — the operator-space decomposition `H = Σ λₙ Aₙ†Aₙ`
//!   with per-eigenstate energy and photon-number attribution and
//!   continuity-tracked labels across sweeps;
//! * [`spectra`] — dense exact diagonalization with a Fock-cutoff
//!   convergence controller, finite-difference derivatives, and a
//!   deterministic parameter-sweep engine;
//! * [`phases`] — closed-form normal/superradiant excitation energies,
//!   ground-state energy branches, critical couplings, squeeze
//!   parameters, and the variational order parameter;
//! * [`errata`] — a machine-readable ledger of documented divergences
//!   between commonly printed forms of the effective formulas and the
//!   algebra implemented here;
//! * [`cli`] — the `rabipat` command-line front end (JSON config in,
//!   CSV out).
//!
//! Start with the runnable examples (`cargo run --release --example
//! pattern_levels`, etc.) for end-to-end usage.

pub mod cli;
pub mod errata;
pub mod error;
pub mod hilbert;
pub mod models;
pub mod patterns;
pub mod phases;
pub mod spectra;

pub use error::{RabiError, Result};
