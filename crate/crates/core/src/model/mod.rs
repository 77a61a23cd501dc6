//! Permutation encoding of cycles, inducers and the variable lattice.

mod inducer;
mod lattice;
mod perm;

pub use inducer::{total_inducers, ExclusionSet, Inducer};
pub(crate) use lattice::Geometry;
pub use lattice::{Cell, Snapshot, VarLattice, VarState};
pub use perm::{cycle_to_permutation, inducers_of, PermutationMatrix};
