//! Exact finite truncations of the Hardy space H²(𝕊ₙ) of the unit sphere in
//! ℂⁿ, with the machinery to study how close operators are to being Toeplitz.
//!
//! The crate builds Toeplitz operators T_f and composition operators C_φ as
//! exact rational matrices against the graded monomial basis, applies the
//! Toeplitzness map
//!
//!   Φ(A) = Σⱼ T_{z̄ⱼ} A T_{zⱼ},
//!
//! whose fixed points are exactly the Toeplitz operators, and diagnoses the
//! behaviour of the iterates Φᵐ(A): decay in norm, strong-topology probes,
//! Cesàro means, asymptotic-symbol extraction, certified norm lower bounds
//! and the eigenvalue criterion for composition operators of linear maps.
//!
//! Exactness discipline: identities are verified as equalities of complex
//! rationals on certified degree blocks; floats appear only in diagnostics
//! and Monte Carlo validation. Each structure tracks a `valid_degree`
//! (entries certified exact under truncation) and a degree-growth bound that
//! products and iterates propagate conservatively.

pub mod basis;
pub mod diagnostics;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod operators;
pub mod oracle;
pub mod phi;
pub mod symbols;

pub use basis::{monomial_norm_sq, BasisTable, MultiIndex};
pub use error::{Error, Result};
pub use exact::{CRat, Rat};
pub use operators::{coeff_norm, coeff_norm_sq, kernel_vector, monomial_vector, TruncatedOperator};
pub use symbols::{pairing_symbol, PolySelfMap, SphereSymbol};
