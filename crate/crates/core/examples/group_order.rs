//! Schreier-Sims on the round group at n = 4, next to the generic block finder.

use gost_alt::cipher::{CipherParams, CipherSpec};
use gost_alt::perm::bsgs::alternating_order;
use gost_alt::perm::{find_block_system, round_group, schreier_sims, SchreierSimsOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gost_alt::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for r in 0..4 {
        let spec = CipherSpec::random_bijective(CipherParams::new(4, 2, 2, r)?, &mut rng)?;
        let group = round_group(&spec)?;
        let bsgs = schreier_sims(&group, &SchreierSimsOptions::default())?;
        let order = bsgs.order();
        let blocks = find_block_system(&group)?.map(|b| b.block_size());
        println!(
            "r = {r}: |G| has {} bits, Alt(256): {}, block size {:?}",
            order.bits(),
            order == alternating_order(256),
            blocks
        );
    }
    Ok(())
}
