//! Writes a cipher spec file to stdout.
//!
//! ```text
//! cargo run --example generate_spec -- N M DELTA R SEED [random|identity|non-bijective|last-bit|header]
//! ```

use gost_alt::cipher::{CipherParams, SBoxSet};
use gost_alt::specfile::render;
use gost_alt::verify::cases::last_bit_sboxes;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 5 {
        eprintln!("usage: generate_spec N M DELTA R SEED [random|identity|non-bijective|last-bit|header]");
        std::process::exit(1);
    }
    let num = |i: usize| args[i].parse::<u32>();
    let params = CipherParams::new(num(0)?, num(1)?, num(2)?, num(3)?)?;
    let seed: u64 = args[4].parse()?;
    let kind = args.get(5).map_or("random", String::as_str);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sboxes = match kind {
        "random" => Some(SBoxSet::random_bijective(params.m, params.delta, &mut rng)?),
        "identity" => Some(SBoxSet::identity(params.m, params.delta)?),
        "non-bijective" => Some(SBoxSet::random_non_bijective(params.m, params.delta, &mut rng)?),
        "last-bit" => Some(last_bit_sboxes(params.m, params.delta, &mut rng)?),
        "header" => None,
        other => return Err(format!("unknown kind {other:?}").into()),
    };
    let comment = if sboxes.is_some() {
        format!("{kind} S-boxes, seed {seed}")
    } else {
        "parameters only".to_string()
    };
    print!("{}", render(&params, sboxes.as_ref(), Some(&comment)));
    Ok(())
}
