//! ε-isothermic Dupin surfaces in pseudo-Euclidean 3-space.
//!
//! The crate builds the classified Dupin surfaces of E³ with metric
//! `ε₁dx² + ε₂dy² + ε₃dz²` from closed forms, recomputes their differential
//! geometry from the parametrization alone (fundamental forms, Weingarten
//! map, Christoffel symbols, Gauss–Codazzi residuals) and evaluates the
//! pseudo-Calapso operator on the associated solution fields.
//!
//! All derivatives come from truncated Taylor jets ([`jet::Jet`]), so every
//! residual is exact up to floating point; a finite-difference evaluator is
//! provided for the pseudo-Calapso operator as an independent oracle.
//!
//! ```
//! use dupin_core::{build_dupin, preset_surface, Preset};
//!
//! let spec = preset_surface(Preset::Ex1A).unwrap();
//! let dupin = build_dupin(&spec).unwrap();
//! let x = dupin.surface.position().value([0.0, 0.0]);
//! assert!(x.norm_inf() < 1e-15);
//! ```

// `!(x < tol)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calapso;
pub mod diffgeo;
pub mod dupin;
pub mod error;
pub mod field;
pub mod jet;
pub mod pseudo_metric;

pub use calapso::{
    calapso_residual, calapso_residual_with, corollary1_pair, holomorphic_omega,
    holomorphic_omega_eps3, omega_from_surface, printed_prop2_field, proposition_field, sphere_map,
    CalapsoConvention, CalapsoPair, HolomorphicFn, Method, Proposition, Residual,
};
pub use diffgeo::{
    christoffel, curvature_scalars, fundamental_forms, gauss2_residual, gauss_codazzi_residuals,
    jet_eval, weingarten_lambdas, ChristoffelSet, FundamentalForms, GaussCodazzi, Surface,
    SurfaceJet, Weingarten,
};
pub use dupin::{
    build_dupin, build_dupin_unchecked, conservation_vector, constraint_residual, curvature_pair,
    curvature_pair_unchecked, linear_ode_solution, preset_surface, solve_constraint, Basis,
    ConstantName, Constants, CurvaturePair, DupinCase, DupinSpec, DupinSurface, FrameData,
    OdeCurve, Preset, Profile,
};
pub use error::{Error, Result};
pub use field::{Domain, Point, ScalarField, VectorField};
pub use jet::{Axis, Jet, MAX_ORDER};
pub use pseudo_metric::{
    inner, pc_eval_poly, pc_mul, pseudo_cross, PseudoComplex, Sign, Signature, Vec3E,
};
