//! Exact computations with homogeneous multilinear matrix polynomials.

pub mod budget;
pub mod canonform;
pub mod elemop;
pub mod error;
pub mod exactfield;
pub mod json;
pub mod matrixcore;
pub mod multipoly;
pub mod omegaclass;
pub mod oracle;
pub mod par;
pub mod preserver;

pub use error::{Error, Result};
