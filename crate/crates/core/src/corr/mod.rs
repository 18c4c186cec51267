//! Correspondence calculus on `P1 x P1`, and on `E x E` for graphs of curve maps and fibers.

pub mod elliptic;
pub mod p1;

pub use elliptic::{EcCorrespondence, EcMap, EcMorphism, EcTerm};
pub use p1::{act, act_via_deligne, compose, Correspondence, DeligneAction};
