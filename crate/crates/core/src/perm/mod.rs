//! Dense permutations of the cipher states and the group algorithms on them.

pub mod blocks;
pub mod bsgs;
pub mod cipher_maps;
pub mod dense;
pub mod giant;
pub mod group;
pub mod normality;

pub use blocks::{find_block_system, is_primitive, minimal_blocks, BlockSystem, BSGS_CAP};
pub use bsgs::{schreier_sims, schreier_sims_gens, Bsgs, SchreierSimsOptions, Verification};
pub use cipher_maps::{materialize, materialize_capped, round_group, round_group_capped, MapSelector};
pub use dense::{DensePerm, MATERIALIZE_CAP};
pub use giant::{format_cycle_type, giant_witness, GiantOptions, GiantOutcome, GiantWitness};
pub use group::{Letter, PermGroup};
pub use normality::{check_nfold_normality, NormalityReport};
