//! Iterated divided-difference methods for 1-D scattered data.
//!
//! Interpolation, arbitrary-order differentiation and panel integration on
//! evenly or unevenly spaced stencils of any size, all driven by one
//! Neville/Aitken tableau engine. An exact rational oracle backs the tests
//! and the CLI's `--check` flag.

pub mod cli;
pub mod convergence;
pub mod differentiation;
pub mod divided_difference;
pub mod error;
pub mod interpolation;
pub mod oracle;
pub mod quadrature;
pub mod samples;
pub mod tableau;

pub use differentiation::{derivative, derivative_all_orders, weight_sequences, DerivativeWorkspace};
pub use divided_difference::{dd_base_values, dd_polynomial_evaluate, newton_coefficients, render_new_dd_table};
pub use error::{Error, Result};
pub use interpolation::{interpolate, interpolate_all_r, InterpolationRequest};
pub use quadrature::{gamma_coefficients, integrate_composite, integrate_panel, QuadratureWeights};
pub use samples::{SampleSet, Scheme};
