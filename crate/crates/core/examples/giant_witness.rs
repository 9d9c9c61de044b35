//! Jordan witness at degree 65536.

use gost_alt::cipher::{CipherParams, CipherSpec};
use gost_alt::perm::{giant_witness, round_group, GiantOptions, GiantOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gost_alt::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = CipherSpec::random_bijective(CipherParams::new(8, 2, 4, 3)?, &mut rng)?;
    let group = round_group(&spec)?;
    match giant_witness(&group, &GiantOptions::default()) {
        GiantOutcome::Found(w) => print!("{}", w.to_text()),
        GiantOutcome::Inconclusive { trials } => println!("no witness in {trials} trials"),
    }
    Ok(())
}
