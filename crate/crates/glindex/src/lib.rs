//! Syzygies of powers of monomial ideals, driven by lcm-lattice homology.
//!
//! The crate computes multigraded and graded Betti numbers of a monomial
//! ideal from the reduced homology of open intervals in its lcm lattice,
//! derives the Green-Lazarsfeld index from them, and decides linear
//! presentation three independent ways: Betti vanishing, path connectivity
//! of generator graphs, and freeness of the complement of a clutter from a
//! fixed family of forbidden induced subclutters.  On top of those
//! primitives it reproduces the classification searches for 3-uniform
//! clutters whose edge ideal is linearly presented while some power is not.
//!
//! Everything is exact: homology ranks are computed over the rationals or a
//! prime field, never floating point.

#![forbid(unsafe_code)]

mod bits;
pub mod betti;
pub mod clutter;
pub mod complex;
pub mod error;
pub mod lattice;
pub mod linpres;
pub mod monomial;
pub mod search;

pub use betti::{BettiTable, IndexValue};
pub use clutter::{Clutter, SimplicialComplex};
pub use complex::FieldChoice;
pub use error::{Error, Result};
pub use lattice::LcmLattice;
pub use linpres::{GeneratorGraph, PairWitness, PresentationCheck};
pub use monomial::{Monomial, MonomialIdeal};
pub use search::{
    algorithm1, algorithm2, case_census_deg6, construct_cd, enumerate_omega, family_d, kappa,
    CensusReport, FamilyD, KappaReport, OmegaQuery, OmegaReport, Quadruple,
};
