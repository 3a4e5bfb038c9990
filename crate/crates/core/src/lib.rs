//! Free group toolkit: reduced words, Stallings subgroup graphs, truncated
//! Magnus expansions, isolation scans and exhaustive p-group separability
//! searches.
//!
//! The centrepiece is the subgroup `H = ⟨x·[y,x], y⟩` of `F(x, y)`: it is
//! isolated, does not contain `x`, and yet has the same image as `⟨x, y⟩` in
//! every nilpotent quotient of `F`. Each module checks one face of that at
//! desk scale.

pub mod error;
pub mod isolation;
pub mod lcs_witness;
pub mod magnus;
pub mod pgroups;
pub mod stallings;
pub mod words;

pub use error::{Error, Result};
pub use isolation::{isolation_scan, p_prime_isolation_scan, ScanBounds, Violation};
pub use lcs_witness::{
    abelianize, lattice_contains, nilpotent_image_equality, witness, AbelianVector, WitnessReport,
};
pub use magnus::{in_gamma, lcs_weight, magnus, TruncatedSeries, Weight};
pub use pgroups::{
    closure, separability_scan, Element, FiniteGroup, Group, Homomorphism, SeparabilityReport,
    SymmetricGroup, TargetResult,
};
pub use stallings::{Index, PermutationRep, SubgroupGraph};
pub use words::{apply_endomorphism, isolated_subgroup_generators, Alphabet, Letter, Word};
