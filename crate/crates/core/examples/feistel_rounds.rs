//! Encrypts a state through a few GOST rounds and decrypts it again.

use gost_alt::cipher::{CipherParams, CipherSpec};
use gost_alt::word::boxminus_raw;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gost_alt::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = CipherSpec::random_bijective(CipherParams::new(8, 2, 4, 3)?, &mut rng)?;
    let n = spec.n();
    let keys = [0x3a, 0x91, 0x07, 0xee];

    let mut x = (0x12, 0x34);
    println!("plain  {:02x} {:02x}", x.0, x.1);
    for k in keys {
        x = spec.gost_round_raw(k, x);
        println!("k={k:02x}  {:02x} {:02x}", x.0, x.1);
    }
    // A GOST round is rho_(0,k) Sigma rho_(-k,0); invert it factor by factor.
    for k in keys.iter().rev() {
        x = spec.generalized_round_inverse_raw((0, *k), (boxminus_raw(*k, n), 0), x);
    }
    println!("back   {:02x} {:02x}", x.0, x.1);
    assert_eq!(x, (0x12, 0x34));
    Ok(())
}
