//! Block intermediate representation.

mod block;
mod layout;

pub use block::{commutes, Block, BlockIndex, BlockKind, BlockMapping, Payload, Support};
pub use layout::{depth, square_shape, BlockSequence, Cascade, Square, Triangle, Zigzag};
