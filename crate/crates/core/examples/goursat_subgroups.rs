//! Subgroups of Z_{2^n} x Z_{2^n}: counts, a listing, and the brute-force cross-check.

use gost_alt::goursat::{compare_with_brute_force, enumerate_subgroups, subgroup_count};

fn main() -> gost_alt::error::Result<()> {
    for n in 1..=8 {
        println!("n = {n}: {} subgroups", subgroup_count(n));
    }
    for n in 1..=3 {
        let c = compare_with_brute_force(n)?;
        println!(
            "n = {n}: enumeration {} vs brute force {}: equal {}",
            c.enumerated, c.brute_force, c.equal
        );
    }
    println!("\nn = 2, as (s, sB, t, tD, z):");
    for t in enumerate_subgroups(2)? {
        let pair = t.materialize()?;
        println!("  {t}  order {:2}  members {:?}", pair.len(), pair.members);
    }
    Ok(())
}
