//! Combinatorics of affine Deligne-Lusztig varieties: root data, Iwahori-Weyl
//! groups, sigma-conjugacy, admissible sets, `B(G, mu)`, Levi data and the
//! Picard lattice of the flag variety.
//!
//! All arithmetic is exact.  Linear algebra is generic over a [`Field`];
//! lattice work is over `i64`.

#![allow(clippy::needless_range_loop)]

pub mod admissible;
pub mod affine;
pub mod error;
pub mod frobenius;
pub mod levi;
pub mod linalg;
pub mod newton_bg;
pub mod picard;
pub mod presets;
pub mod root_datum;
pub mod suites;

pub use affine::{AffineRoot, AffineWeyl, AlcoveFrame, Elt, EltJson};
pub use error::{Error, Result};
pub use frobenius::{FrobeniusDatum, NewtonPoint, ReductionPath, StraightClassTag};
pub use linalg::{Field, GroupPresentation, LatticeQuotient, Matrix};
pub use presets::{catalog, preset, Preset, SigmaOption};
pub use root_datum::{
    build_root_datum, Cocharacter, DatumSpec, FiniteWeyl, RationalCoweight, RootDatum,
};

/// Exact rationals used for Gram matrices, coroot coordinates and the
/// Picard certificates.
pub type Rational = num_rational::BigRational;
pub type QMatrix = Matrix<Rational>;
/// Rationals with machine-size parts.
pub type SmallRational = num_rational::Ratio<i64>;
