//! One-dimensional heteroclinic machinery: the double well, the profile
//! `v⋆`, its correction `η`, the constants `c⋆`, `b⋆`, `d`, the projection
//! identities and exponentially weighted norms.

pub(crate) mod eta;
mod heteroclinic;
mod identities;
mod table;
mod weights;
mod well;

pub use eta::EtaColumns;
pub use heteroclinic::{Heteroclinic, ProfilePoint};
pub use identities::{verify_identities, IdentityReport};
pub use table::{
    build_eta, profile_constants, solve_heteroclinic, EtaResiduals, ProfileConstants, ProfileTable,
};
pub use weights::{psi_weight, weighted_sup_norm, WeightedNorm};
pub use well::{DoubleWell, WellJet};
