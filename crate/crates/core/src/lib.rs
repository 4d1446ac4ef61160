//! Decomposition of diagonal p-permutation functors over 2-blocks with
//! dihedral, generalised quaternion or semidihedral defect groups.

pub mod automorphism;
pub mod characters;
pub mod error;
pub mod family;
pub mod fusion;
pub mod group;
pub mod multiplicity;
pub mod oracle;
pub mod report;

pub use automorphism::{Automorphism, AutomorphismGroup, OutGroup};
pub use error::{Error, Result};
pub use family::{build, taxonomy, FamilyId, FamilyKind, TaxonomyLabel};
pub use fusion::{build_fusion, fusion_isomorphic, FusionLabel, FusionSystem};
pub use group::{ElemSet, Group, IsoTag, IsoType, Subgroup};
