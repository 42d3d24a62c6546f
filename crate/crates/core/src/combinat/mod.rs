//! Partitions, compositions, multi-partitions, standard tableaux and Specht
//! modules in the polytabloid basis.

mod partition;
mod specht;
mod tableau;

pub use partition::{enum_compositions, enum_multipartitions, enum_partitions, Composition, MultiPartition, Partition};
pub use specht::{outer_tensor, specht_rep, OuterSpecht, SpechtRep};
pub use tableau::{hook_length_dim, standard_tableaux, StdTableau};

/// `n!` as `u128`; saturates rather than overflowing for absurd inputs.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}
