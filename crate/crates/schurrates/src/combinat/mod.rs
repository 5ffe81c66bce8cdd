//! Partitions, types, entropies, Kostka numbers, symmetric group characters and the
//! majorization machinery shared by the rate formulas.

mod characters;
mod distribution;
mod shapes;

pub use characters::{character, class_size, cycle_type_of};
pub use distribution::{entropy, kl, majorizes, s_hat, Channel, Distribution};
pub use shapes::{
    binomial, dim_irrep, enumerate_type_class, factorial, kostka, type_class_size, Frequency,
    YoungFrame, DEFAULT_ENUMERATION_CAP,
};

#[cfg(test)]
mod tests;
