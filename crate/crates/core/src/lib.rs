//! Complex two-graphs over m-th roots of unity.
//!
//! The crate covers exact arithmetic in ℤ[ζ_m], root-of-unity Seidel
//! matrices and their switching classes, triple-class (two-graph) data,
//! exhaustive class enumeration, exact two-eigenvalue certificates, the
//! construction and verification of equiangular tight frames, and the
//! partition formulas that count the classes.
//!
//! ```
//! use crewlab::{data, spectra, frames};
//!
//! let s = data::etf96_matrix();
//! let cert = spectra::two_eigenvalue_certificate(&s).unwrap();
//! assert_eq!(cert.certificate().unwrap().mult, [3, 6]);
//!
//! let gram = frames::gram_from_seidel(&s).unwrap();
//! let frame = frames::frame_vectors(&gram).unwrap();
//! assert!(frames::verify_etf(&frame, 1e-8).is_etf);
//! ```

pub mod counting;
pub mod cyclotomic;
pub mod data;
pub mod demo;
pub mod error;
pub mod formats;
pub mod frames;
pub mod linalg;
pub mod orbits;
pub mod seidel;
pub mod spectra;
pub mod twograph;

pub use cyclotomic::{CyclotomicInteger, CyclotomicRing};
pub use error::{Error, Result};
pub use seidel::{Digraph, RootExponent, SeidelMatrix, SimpleGraph, SwitchVector};
pub use twograph::TwoGraphData;
