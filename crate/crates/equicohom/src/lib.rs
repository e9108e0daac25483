//! Exact-arithmetic equivariant simplicial cohomology with local
//! coefficients.
//!
//! The crate computes the cohomology of a finite, dimension-truncated
//! simplicial set carrying a finite-group action, with coefficients in a
//! diagram of finitely generated abelian groups over the orbit category,
//! twisted by a group-valued edge cocycle. Two independent cochain models
//! are built (one through coefficient-system morphisms derived from a path
//! system, one through the twisting cocycle directly); the comparison and
//! classification isomorphisms between them are verified degreewise rather
//! than assumed.

pub mod bundle;
pub mod classify;
pub mod cohomology;
pub mod commands;
pub mod equivariant;
pub mod error;
pub mod localsys;
pub mod report;
pub mod simplicial;
pub mod zmodule;

#[doc(hidden)]
pub mod testkit;

pub use error::{Error, Result};
