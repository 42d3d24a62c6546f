//! Exact representation theory of the colored-permutation groupoid and of the
//! complex reflection groups `G(l,k,d)`.
//!
//! Everything here is pure computation over `alloc`: cyclotomic arithmetic,
//! Specht modules in the polytabloid basis, the groupoid and its algebra, the
//! isomorphism with the group algebra of the wreath product `C_l ≀ S_d`, the
//! simple modules, the involutive Gelfand model, the quotient groupoid for
//! `G(l,k,d)` and tensor-space (Schur–Weyl) computations. IO, the CLI and file
//! formats live in the `groupoid-reps` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod combinat;
pub mod error;
pub mod exactnum;
pub mod galgebra;
pub mod gelfand;
pub mod gkd;
pub mod groupoid;
pub mod perm;
pub mod report;
pub mod schurweyl;
pub mod simples;
pub mod wreath;

pub use error::{Error, Result};

/// Default cap on enumerated sizes (`l^d` objects, `l^d·d!` group elements).
pub const DEFAULT_CAP: usize = 1_000_000;
