//! Tverberg-type searches over point sets and polytopes.

mod caratheodory;
mod cross;
mod d1;
mod map;
mod neighborly;
mod partition;
mod primes;
mod search;
mod witness;

pub use caratheodory::{caratheodory_reduce, Reduced};
pub use cross::{cross_via_colorful, ColorfulReduction};
pub use d1::{check_d1_witness, triangle_free_d1, triangle_free_d1_polytope, D1Witness};
pub use map::{
    random_rational, seeded_rational_map, seeded_rational_points, seeded_rational_values, LinearMap, SeededMap,
};
pub use neighborly::neighborly_construct;
pub use partition::{colorful_tverberg, for_each_partition, tverberg_partition, ColoredConfig};
pub use primes::{is_prime, next_prime, next_prime_in_gap, primes_in, PrimeGap};
pub use search::{
    count_cross_witnesses, count_cross_witnesses_all, cross_bound, polytope_tverberg_search, CrossCount, SearchMode,
    SearchParams, SearchResult,
};
pub use witness::{validate_partition, validate_witness, TverbergWitness};
