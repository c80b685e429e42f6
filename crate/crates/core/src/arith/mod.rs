//! Primes, the von Mangoldt weights Λ_X, and Dirichlet characters.

pub mod characters;
pub mod sieve;
pub mod weights;

pub use characters::{alpha_of, characters_mod, Character, CharacterGroup};
pub use sieve::{sieve_primes, sieve_primes_with_bound, von_mangoldt, DEFAULT_SIEVE_BOUND};
pub use weights::{build_weight_table, lambda_x, WeightTable};
