//! Search and enumeration: the quadruple search behind the forbidden-family
//! classification of squares, the minimal-clutter-without-linear-resolution
//! bound, the Ω_{d,k}(n) counts, and the degree-6 case census.

mod algo;
mod census;
mod kappa;
mod omega;
mod perm;

pub use algo::{algorithm1, algorithm2, family_d, FamilyD, Quadruple};
pub use census::{case_census_deg6, CensusReport};
pub use kappa::{construct_cd, kappa, KappaReport};
pub use omega::{enumerate_omega, OmegaQuery, OmegaReport};
pub use perm::{apply_to_mask, census_group, orbit_classes, orbit_reps, stabilizer, Perm, PermGroup};
