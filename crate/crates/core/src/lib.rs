//! Brik's sequence `b = 1010110101101110…`: the limit of the blocks
//! `B_1 = 101`, `B_{i+1} = B_i C_i` where `C_i` drops the first `i`
//! symbols of `B_i`.

pub mod access;
pub mod bfile;
pub mod blocks;
pub mod density;
pub mod error;
pub mod factors;
pub mod index;
pub mod limits;
pub mod runs;
pub mod structure;
pub mod verify;
pub mod word;

pub use error::{BrikError, Result};
pub use index::BigIndex;
pub use limits::Limits;
pub use word::Word;
