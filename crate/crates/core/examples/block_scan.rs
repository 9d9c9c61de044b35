//! The block scan on a conforming spec and on the identity control.

use gost_alt::cipher::{CipherParams, CipherSpec};
use gost_alt::verify::{block_scan, ScanOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gost_alt::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let specs = [
        (
            "conforming r = 3",
            CipherSpec::random_bijective(CipherParams::new(8, 2, 4, 3)?, &mut rng)?,
        ),
        ("identity r = 0", CipherSpec::identity(CipherParams::new(8, 2, 4, 0)?)?),
    ];
    for (label, spec) in &specs {
        let rep = block_scan(spec, &ScanOptions::default())?;
        println!(
            "{label}: {} subgroups tested, {} candidates, routes agree {:?}",
            rep.tested,
            rep.candidates.len(),
            rep.routes_agree
        );
        for c in rep.certified() {
            println!("  block {} of order 2^{}", c.triple, c.order_log2);
        }
    }
    Ok(())
}
