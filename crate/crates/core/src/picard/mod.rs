//! Picard categories presented by two-term complexes of finitely generated abelian groups,
//! butterflies between them, and Heisenberg central extensions.

pub mod butterfly;
pub mod complex;
pub mod group;
pub mod heisenberg;

pub use butterfly::Butterfly;
pub use complex::{coker_functor, random_chain_map, truncated_ch1, ChainMap, CokerData, TwoTermComplex};
pub use group::{FGAbelianGroup, GroupHom};
pub use heisenberg::{biadditivity_witness, heisenberg, CentralExtension, HeisenbergGroup};
