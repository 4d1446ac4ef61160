use thiserror::Error;

use crate::family::FamilyId;
use crate::fusion::FusionLabel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("group of order {order} exceeds the supported cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("subgroup class left unlabeled by the taxonomy of {family}: {detail}")]
    UnlabeledClass { family: FamilyId, detail: String },

    #[error("taxonomy mismatch for {family}: {detail}")]
    TaxonomyMismatch { family: FamilyId, detail: String },

    #[error("no distinguished automorphism defined for {0}")]
    NoEpsilon(FamilyId),

    #[error("map is not an automorphism of the group")]
    NotAnAutomorphism,

    #[error("fusion label {label} is not valid for {family}")]
    InvalidFusionLabel { family: FamilyId, label: FusionLabel },

    #[error(
        "quaternion defect group of order 8 is deferred to prior work \
         (the Sylow argument forcing Out_F(D) = 1 fails since Aut(Q8) is not a 2-group)"
    )]
    QuaternionEightDeferred,

    #[error("fusion closure did not stabilise: {0}")]
    ClosureBound(String),

    #[error("inconsistent character data: {0}")]
    CharacterData(String),

    #[error("unrecognised Out_F image of order {0}")]
    UnrecognisedOutF(usize),

    #[error("label {label} is incompatible with {family}")]
    IncompatibleLabel { family: FamilyId, label: String },

    #[error("tables are not comparable: {0}")]
    Incomparable(String),

    #[error("invalid block spec '{spec}': {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("golden table data: {0}")]
    Golden(String),

    #[error("transport of Out_F along different isomorphisms disagrees for {0}")]
    TransportMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
