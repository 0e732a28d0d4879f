//! Toric log del Pezzo surfaces of Picard number one: minimal resolutions,
//! cascades of blow-downs to the five basic surfaces, existence of surfaces
//! with prescribed singularities, numerical invariants, and a brute-force
//! enumeration oracle that cross-checks all of it.

pub mod cascade;
pub mod classify;
pub mod cli;
pub mod cycle;
pub mod enumerate;
pub mod error;
pub mod fan;
pub mod invariants;
pub mod lattice;
pub mod snf;

pub use cycle::WeightedCycle;
pub use error::{Error, NotRealizableReason, Result};
pub use fan::{FanoTriangle, ResolvedFan};
pub use lattice::{
    HJChain, LatticeVector, Rational, RationalPoint, SingularityType, UnimodularMap,
};
