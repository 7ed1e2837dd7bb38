//! Finite fields, Singer difference sets and integer Sidon sets.

mod field;
mod sets;
mod singer;

pub use field::{prime_power, FiniteField, MAX_FIELD_ORDER};
pub use sets::{greedy_sidon, is_sidon, max_sidon_exact, Convention, SidonSet, DEFAULT_MAX_N};
pub use singer::{singer_difference_set, DifferenceSet};
