//! Exact computation of the slopes of the Atkin operator U₇ acting on 7-adic
//! overconvergent modular forms of level 49.
//!
//! The pipeline works entirely in exact arithmetic:
//!
//! * [`cyclotomic`] — the coefficient field K = Q(ζ₄₂), Dirichlet characters
//!   of conductor 7 and 49, generalized Bernoulli numbers;
//! * [`qseries`] — truncated Laurent q-expansions over K: eta quotients,
//!   Eisenstein series, the U₇ and V₇ actions, re-expansion in a parameter;
//! * [`localfield`] — the totally ramified local field Q₇(ζ₇), the two
//!   embeddings of K into it, valuations, Teichmüller lifts, root finding;
//! * [`curvealg`] — algebra in the function field of the level-49 modular
//!   curve and the q-expansion identities tying the models together;
//! * [`u7matrix`] — the matrix of the twisted U₇ operator on a wide-open
//!   disk, built column by column from q-expansions;
//! * [`spectral`] — characteristic series, coefficient-valuation stability,
//!   Newton polygons, and the closed-form slope predictions;
//! * [`classical`] — dimension formulas and weight-2 eigenvalue valuations
//!   used to cross-check the slope computation against classical newforms.

pub mod classical;
pub mod curvealg;
pub mod cyclotomic;
pub mod error;
pub mod localfield;
pub mod qseries;
pub mod spectral;
pub mod u7matrix;

pub use error::{Error, Result};
