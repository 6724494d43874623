//! Set-valued arithmetic for hyperfields and multigroups.
//!
//! Every structure implements [`Structure`]: a univalued multiplication and a
//! multivalued addition whose values are symbolic sets (points, arcs, disks,
//! intervals, down-sets). On top of that sit exhaustive and sampled axiom
//! checkers, finite constructions (quotients, double cosets, prime ideals),
//! homomorphism checks and the dequantization families.
//!
//! Continuous carriers are checked by stratified sampling only. Topological
//! statements (semi-continuity of the addition, closedness of zero sets, the
//! closure description of the dequantization graph) are exercised through
//! sampled membership, witness construction and numeric bounds, not proven.

pub mod axioms;
pub mod cli;
pub mod ctrop;
pub mod deq;
pub mod error;
pub mod exotic;
pub mod finite;
pub mod homs;
pub mod realhf;
pub mod registry;
pub mod sets;
pub mod structure;
pub mod tol;

pub use error::{Error, Result};
pub use structure::{Carrier, Structure};
pub use tol::Tolerance;
