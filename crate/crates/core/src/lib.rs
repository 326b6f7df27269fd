//! Power integral bases of the octic fields defined by
//! `x⁸ + a x⁶ + b x⁴ + a x² + 1`, computed by reducing the index form
//! equation to a relative quartic Thue equation over an imaginary
//! quadratic field and solving that by lattice reduction plus enumeration.

pub mod driver;
pub mod error;
pub mod lll;
pub mod oracle;
pub mod pib;
pub mod polyfield;
pub mod quadfield;
pub mod scalar;
pub mod thue;
pub mod zpoly;

pub use error::{Error, Result};
pub use polyfield::{field_params, EmbeddingTable, FieldParams};
pub use quadfield::{QuadElt, QuadField};
pub use scalar::{BigFixed, Real};

/// Embeddings at arbitrary fixed precision.
pub type Embeddings = EmbeddingTable<BigFixed>;
/// Embeddings in double precision, for quick screening.
pub type EmbeddingsF64 = EmbeddingTable<f64>;
