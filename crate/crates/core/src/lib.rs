//! Finite commutative rings, ring extensions and the unit-related
//! properties of extensions: local and SL morphisms, seminormality,
//! t-closedness, subring lattices, Cohn-style unit-rigid extensions and
//! bounded polynomial computations.

pub mod cohn;
pub mod constructions;
pub mod error;
pub mod extension;
pub mod ideal;
pub mod lattice;
pub mod morphism;
pub mod poly;
pub mod ring;
pub(crate) mod span;
pub mod units;

pub use cohn::{CohnElement, ShiftedKind, ShiftedRing};
pub use error::{Result, RingError};
pub use extension::{Extension, ExtensionReport, CO_INTEGRAL_DEGREE};
pub use ideal::{all_ideals, jacobson, local_factors, maximal_ideals, nilradical, Ideal, LocalFactor};
pub use lattice::{SubringLattice, LATTICE_CAP};
pub use morphism::RingMorphism;
pub use poly::BoundedPoly;
pub use ring::{FiniteRing, Ring, RingKind, DEFAULT_SIZE_CAP, PAIR_SCAN_SIZE};
pub use units::{prime_subring, subring_from_members, subring_generated, UnitGroup};
