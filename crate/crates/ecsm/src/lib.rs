//! Bound-state spectra of screened diatomic potentials: closed-form energy
//! formulas in several readings, the associated wavefunctions, independent
//! numerical solvers for cross-checking, and a CLI front end.

// guards of the form !(x > 0.0) are deliberate: NaN must fail them,
// which the suggested x <= 0.0 would not do
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod molecules;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod spectrum;
pub mod wavefunction;
