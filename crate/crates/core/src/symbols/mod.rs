//! Steinberg symbols, tame symbols and the scalar Deligne pairing on the projective line.

pub mod pairing;
pub mod sum;
pub mod tame;

pub use pairing::{deligne_scalar, move_divisor, norm_along_divisor, norm_on_divisor, DeligneLine, Generator, Moved};
pub use sum::{Letter, SymbolLetter, SymbolSum};
pub use tame::{gersten_norm, tame_symbol, tame_vector_of, weil_product, TameVector};
