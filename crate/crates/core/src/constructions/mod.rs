//! The specific automata: Thue-Morse, multiplication by `m`, their product
//! and projection, the class partition of the projection, the directly built
//! minimal automaton, and the closed-form state complexities.

mod basic;
mod classes;
mod formulas;

pub use basic::{
    build_divisibility_dfa, build_letter_count_dfa, build_mult_pair_dfa, build_multiple_of_set_dfa,
    build_multiple_of_set_product, build_product, build_projected_product, build_thue_dfa, build_thue_pair_dfa,
    lift_to_pairs, product_state_index, MAX_TABLE_CELLS,
};
pub use classes::{
    build_class_partition, build_minimal_mt_direct, classify_residue, classify_state, ClassId, ProductState,
    StateClassPartition,
};
pub use formulas::{
    conjecture_formula, mn_threshold, sigma_witness, split_prime_power, state_complexity_mn, state_complexity_mt,
    SigmaWitness,
};
