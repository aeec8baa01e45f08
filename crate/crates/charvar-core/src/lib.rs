//! Exact arithmetic for the jump loci of complex hyperplane arrangements.
//!
//! This crate computes, over exact cyclotomic-rational scalars, the standard
//! invariants that sit between the combinatorics of a hyperplane arrangement
//! and the topology of its complement:
//!
//! - braid-monodromy and fibered **presentations** of the fundamental group of
//!   the complement, built from wiring diagrams of a real plane section;
//! - **Alexander matrices** via free (Fox) differential calculus, together with
//!   Gassner matrices of pure braids and the block form available for linearly
//!   fibered arrangements;
//! - the degree-one part of the **Orlik–Solomon algebra** and the resonance
//!   varieties `R_d` of its multiplication, with component enumeration through
//!   local flats and neighborly partitions of sub-arrangements;
//! - the **characteristic varieties** `V_d` of rank-one local systems, their
//!   depth function, and torsion-translated torus cosets: exact certification
//!   that a coset lies in `V_d`, intersection of cosets, and search for
//!   translated components pulled back from a pattern sub-arrangement.
//!
//! # Design principles
//!
//! **Exact arithmetic only.** Every scalar is a rational number, a rational
//! point on the unit circle (a "rotation number" `q` standing for `e^{2 pi i q}`),
//! or an element of a cyclotomic field `Q(zeta_N)` represented modulo the
//! `N`-th cyclotomic polynomial. There are no floating-point numbers anywhere;
//! equality of ranks, dimensions, and components is decided, not approximated.
//!
//! **Determinism.** Randomized pieces (the finite-field rank oracle, sampled
//! property checks) draw from a caller-supplied seed and nothing else.
//! Parallel passes collect and sort, so results are independent of scheduling.
//!
//! **Two routes where it matters.** Symbolic ranks have an independent
//! finite-field oracle; the block Alexander matrix can be checked against the
//! raw Fox matrix; the closed-form Artin action is cross-checked against the
//! generator expansion. The dual routes are kept distinct so they can disagree
//! loudly in tests rather than silently agree by construction.
//!
//! # Module map
//!
//! | module | contents |
//! |--------|----------|
//! | [`cyclo`] | rationals, cyclotomic polynomials, `Q(zeta_N)` arithmetic |
//! | [`laurent`] | multivariate Laurent polynomials over cyclotomic rationals |
//! | [`lmatrix`] | Laurent matrices; fraction-free and finite-field rank |
//! | [`intlin`] | integer linear algebra: Hermite/Smith normal forms, kernels |
//! | [`word`] | freely reduced words in a finitely generated free group |
//! | [`braid`] | pure braids, the Artin action, full and conjugated twists |
//! | [`present`] | finite presentations from braid monodromy data |
//! | [`fox`] | free differential calculus and group-ring elements |
//! | [`alexander`] | Alexander matrices, Gassner matrices, block form |
//! | [`osalg`] | Orlik–Solomon algebra in degrees one and two; resonance depth |
//! | [`arrangement`] | hyperplane arrangements, flats, cone/decone, sections |
//! | [`wiring`] | wiring diagrams and linearly fibered projections |
//! | [`subarr`] | labeled sub-arrangement pattern matching |
//! | [`character`] | torsion characters as vectors of rotation numbers |
//! | [`coset`] | torus cosets: canonical forms, intersection, containment |
//! | [`resonance`] | resonance components: local, partition, enumeration |
//! | [`depth`] | characteristic-variety depth and membership; point scans |
//! | [`certify`] | exact certification of cosets inside `V_d` |
//! | [`search`] | search for translated components via pattern pullback |
//! | [`report`] | intersection poset reports for component collections |

#![forbid(unsafe_code)]
#![warn(missing_docs)]
#![warn(missing_debug_implementations)]

pub mod error;

pub mod cyclo;
pub mod intlin;
pub mod laurent;
pub mod lmatrix;

pub mod braid;
pub mod fox;
pub mod present;
pub mod word;

pub mod alexander;
pub mod osalg;

pub mod arrangement;
pub mod subarr;
pub mod wiring;

pub mod character;
pub mod coset;

pub mod certify;
pub mod depth;
pub mod refmat;
pub mod report;
pub mod resonance;
pub mod search;

pub use error::{BudgetKind, Error, Result};

/// Crate version, re-exported for the command-line front end.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
