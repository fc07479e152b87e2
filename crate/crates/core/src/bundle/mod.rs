//! Sphere bundles over `M₊`: sampling, embeddings, characteristic maps, Hopf
//! constructions, witnesses and the cohomogeneity-one maps.

pub mod charmap;
pub mod cohomogeneity;
pub mod hopf;
pub mod sample;
pub mod witness;

pub use charmap::{
    bundle_dim, chi_consistency, m_plus_membership, m_plus_membership_with, m_plus_point, nullhomotopy_eval,
    orthogonality_defect, projected_map, psi1, psi1_inverse, psi2, CharMap, Membership, NullhomotopyCase, Scale,
};
pub use cohomogeneity::{act, isoparametric_f, phi_cohomogeneity, QuatMatrix};
pub use hopf::{harmonic_seed_map, HarmonicSeed, HopfMap, HopfSpec};
pub use witness::{witness_min_norm, witness_slice_min, WitnessPair, WitnessResult};
