//! Conjugates of N-fold round products stay in the product subgroup.

use gost_alt::cipher::{CipherParams, CipherSpec};
use gost_alt::perm::{check_nfold_normality, round_group};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gost_alt::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let spec = CipherSpec::random_bijective(CipherParams::new(4, 2, 2, 2)?, &mut rng)?;
    let group = round_group(&spec)?;
    for rounds in [2, 4, 8] {
        let rep = check_nfold_normality(&group, rounds, 100, 7)?;
        println!(
            "N = {rounds}: {} product generators, subgroup order has {} bits, {} of {} samples outside",
            rep.product_generators,
            rep.subgroup_order.bits(),
            rep.failures,
            rep.samples
        );
    }
    Ok(())
}
