#![no_std]
extern crate alloc;

pub mod catalog;
pub mod construct;
pub mod error;
pub mod homs;
pub mod lattice;
pub mod nucleus;
pub mod props;
pub mod quantic;
pub mod quantale;
pub mod search;
pub mod spectral;
pub mod spectrum;
pub mod sq2;
pub mod tensor;
pub mod topology;

pub use error::{Error, Result};
pub use lattice::{Elem, FiniteLattice, SupMap};
pub use quantale::Quantale;
