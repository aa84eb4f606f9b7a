//! Runs the code blocks of the book as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/instances.md")]
pub mod instances {}
#[doc = include_str!("../../../book/src/proper.md")]
pub mod proper {}
#[doc = include_str!("../../../book/src/unit.md")]
pub mod unit {}
#[doc = include_str!("../../../book/src/pqtree.md")]
pub mod pqtree {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
