//! Compression of Trotterized free-fermionic spin-chain circuits.
//!
//! Blocks are small unitaries (one-parameter rotations or two-qubit TFXY
//! elements) indexed along the chain. A product of Trotter steps is compressed
//! into a fixed-size triangle of blocks with fusion and turnover rewrites, and
//! the triangle can be rearranged into a square layout of half the depth.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod circuit;
pub mod engine;
pub mod error;
pub mod export;
pub mod models;
pub mod pipeline;
pub mod sim;

pub use error::{Error, Result};
