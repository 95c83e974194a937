pub mod algebra;
pub mod catalog;
pub mod complex;
pub mod error;
pub mod field;
pub mod group;
pub mod module;
pub mod random;
pub mod regularity;
pub mod residue;
pub mod separable;
pub mod spectrum;
pub mod text;

pub use error::{Error, Result};
