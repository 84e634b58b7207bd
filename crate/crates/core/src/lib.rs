//! Construction, conversion and exhaustive verification of
//! `(u,m,e,s)`-nets, mixed orthogonal arrays and mixed ordered orthogonal
//! arrays, together with the necessary-condition bounds that relate them.

pub mod bounds;
pub mod cli;
pub mod corpus;
pub mod design;
pub mod dual_cert;
pub mod error;
pub mod net_verify;
pub mod oa_bridge;
pub mod ooa_bridge;

pub use design::{
    canonical_beta, DigitFraction, EVector, MixedOA, MixedOOA, NetFile, PointSet, Shape, Verdict,
    Witness,
};
pub use error::{Error, Result};
