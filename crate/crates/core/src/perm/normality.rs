//! Spot-check that the subgroup generated by `N`-fold products of the
//! generators is normal.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bsgs::{schreier_sims_gens, SchreierSimsOptions};
use super::dense::DensePerm;
use super::group::PermGroup;
use crate::error::{Error, Result};

/// Products of more than this many generators are not enumerated.
pub const MAX_PRODUCT_GENERATORS: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub rounds: usize,
    pub product_generators: usize,
    pub subgroup_order: BigUint,
    pub samples: usize,
    pub failures: usize,
    pub seed: u64,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// All `k^rounds` products `g_{i_1} ... g_{i_rounds}`.
pub fn nfold_products(group: &PermGroup, rounds: usize) -> Result<Vec<DensePerm>> {
    let k = group.generators().len();
    let count = (k as u128).checked_pow(rounds as u32).unwrap_or(u128::MAX);
    if rounds == 0 || count > MAX_PRODUCT_GENERATORS as u128 {
        return Err(Error::Unsupported(format!(
            "{k}^{rounds} round products is outside 1..={MAX_PRODUCT_GENERATORS}"
        )));
    }
    let mut layer = vec![DensePerm::identity(group.degree())];
    for _ in 0..rounds {
        layer = layer
            .iter()
            .flat_map(|p| group.generators().iter().map(move |g| p.then(g)))
            .collect();
    }
    Ok(layer)
}

/// Samples conjugates `g^{-1} (g_{i_1} ... g_{i_N}) g` with `g` a generator
/// and sifts them through a BSGS of the product subgroup.
pub fn check_nfold_normality(group: &PermGroup, rounds: usize, samples: usize, seed: u64) -> Result<NormalityReport> {
    let products = nfold_products(group, rounds)?;
    let bsgs = schreier_sims_gens(
        group.degree(),
        &products,
        &SchreierSimsOptions {
            seed,
            ..SchreierSimsOptions::default()
        },
    )?;
    let k = group.generators().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut failures = 0;
    for _ in 0..samples {
        let g = rng.gen_range(0..k);
        let mut x = group.generators()[g].inverse();
        for _ in 0..rounds {
            x.then_assign(&group.generators()[rng.gen_range(0..k)]);
        }
        x.then_assign(&group.generators()[g]);
        if !bsgs.contains(&x) {
            failures += 1;
        }
    }
    Ok(NormalityReport {
        rounds,
        product_generators: products.len(),
        subgroup_order: bsgs.order(),
        samples,
        failures,
        seed,
    })
}
