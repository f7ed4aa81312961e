//! Finite groups and loops, sharply transitive sections, the `K × P × S`
//! product loop, and exact octonion arithmetic with the 240 octavian units.
//!
//! Cayley tables are indexed `0..n` with `0` the identity.

pub mod bitset;
mod cayley;
pub mod group;
pub mod loops;
pub mod octonion;
pub mod perm;
pub mod product;
pub mod report;
pub mod sections;
pub mod tbl;

pub use cayley::TableError;
