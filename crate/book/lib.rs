//! The guide in `src/`, one module per chapter so that `cargo test --doc`
//! runs every code block against the current library.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/ring.md")]
pub mod ring {}
#[doc = include_str!("src/steenrod.md")]
pub mod steenrod {}
#[doc = include_str!("src/invariants.md")]
pub mod invariants {}
#[doc = include_str!("src/essential.md")]
pub mod essential {}
#[doc = include_str!("src/free.md")]
pub mod free {}
#[doc = include_str!("src/closure.md")]
pub mod closure {}
#[doc = include_str!("src/verification.md")]
pub mod verification {}
#[doc = include_str!("../README.md")]
pub mod readme {}
