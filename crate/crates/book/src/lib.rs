//! Compiles the code listings of the guide in `book/` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic {}
#[doc = include_str!("../../../book/src/seidel.md")]
pub mod seidel {}
#[doc = include_str!("../../../book/src/two-graphs.md")]
pub mod two_graphs {}
#[doc = include_str!("../../../book/src/enumeration.md")]
pub mod enumeration {}
#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}
#[doc = include_str!("../../../book/src/frames.md")]
pub mod frames {}
#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
