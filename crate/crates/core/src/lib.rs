//! Side-pairings of the ideal right-angled 24-cell and the link complements they define.

pub mod algebra;
pub mod cell24;
pub mod cusp;
pub mod encoding;
pub mod enumerate;
pub mod pipeline;
pub mod presentation;
pub mod subgroup;

pub use algebra::{abelianization, smith_normal_form, AbelianInvariants, IntMatrix, IntRing, Snf};
pub use encoding::{decode_code, DecodeError, KElem, PairingScheme, Sign, SignLabel4};
pub use presentation::{FPresentation, Letter, Word};

/// Arbitrary-precision integer matrices, used for every homology computation.
pub type BigMatrix = IntMatrix<num_bigint::BigInt>;
/// Machine-integer matrices, for small exact work where overflow cannot occur.
pub type SmallMatrix = IntMatrix<i64>;
