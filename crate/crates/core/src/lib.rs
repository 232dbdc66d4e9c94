pub mod bounds;
pub mod curve;
pub mod error;
pub mod extension;
pub mod field;
pub mod fixtures;
pub mod io;
pub mod rr;
pub mod secant;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElement, Matrix, Poly};
