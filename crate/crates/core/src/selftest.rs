//! The invariant suite at `n <= 4` and the oracle agreements at degree 256.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cipher::{CipherParams, CipherSpec, SBoxSet};
use crate::error::Result;
use crate::goursat::compare_with_brute_force;
use crate::perm::bsgs::alternating_order;
use crate::perm::cipher_maps::translation_group;
use crate::perm::{check_nfold_normality, is_primitive, round_group, schreier_sims, SchreierSimsOptions};
use crate::types::{check_corollary_ds, check_not_w_form, type_suite};
use crate::verify::{affine_check, block_scan, psl_check, ScanOptions};
use crate::word::{boxminus_raw, boxplus_raw, mask, rotate_raw};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn item(name: &'static str, passed: bool, detail: impl Into<String>) -> SelftestItem {
    SelftestItem {
        name,
        passed,
        detail: detail.into(),
    }
}

fn small_spec(rng: &mut ChaCha8Rng, bijective: bool) -> Result<CipherSpec> {
    let r = rng.gen_range(0..4);
    let params = CipherParams::new(4, 2, 2, r)?;
    let sboxes = if bijective {
        SBoxSet::random_bijective(2, 2, rng)?
    } else {
        SBoxSet::random_non_bijective(2, 2, rng)?
    };
    CipherSpec::new(params, sboxes)
}

fn word_groups() -> SelftestItem {
    let mut ok = true;
    for n in 2..=4u32 {
        let size = 1u64 << n;
        let m = mask(n);
        let mut x = 1u64;
        let mut order = 1u64;
        while x != 0 {
            x = boxplus_raw(x, 1, n);
            order += 1;
        }
        ok &= order == size;
        for a in 0..size {
            ok &= boxplus_raw(a, boxminus_raw(a, n), n) == 0;
            ok &= a ^ a == 0 && a & !m == 0;
            let mut y = a;
            for _ in 0..n {
                y = rotate_raw(y, 1, n);
            }
            ok &= y == a;
            for b in 0..size {
                ok &= boxplus_raw(a, b, n) == boxplus_raw(b, a, n);
            }
        }
    }
    item("word-groups", ok, "n in 2..=4, exhaustive")
}

fn feistel(rng: &mut ChaCha8Rng) -> Result<SelftestItem> {
    let spec = small_spec(rng, true)?;
    let n = spec.n();
    let mut ok = true;
    for x1 in 0..16u64 {
        for x2 in 0..16u64 {
            let x = (x1, x2);
            ok &= spec.sigma_inverse_raw(spec.sigma_raw(x)) == x;
            for k in 0..16u64 {
                let split = spec.generalized_round_raw((0, k), (boxminus_raw(k, n), 0), x);
                ok &= spec.gost_round_raw(k, x) == split;
                let (kk, h) = ((k, k ^ 5), (x2, k));
                ok &= spec.generalized_round_inverse_raw(kk, h, spec.generalized_round_raw(kk, h, x)) == x;
            }
        }
    }
    Ok(item("feistel-rounds", ok, "n = 4, every state and key"))
}

fn parity(rng: &mut ChaCha8Rng) -> Result<SelftestItem> {
    let mut ok = true;
    let mut count = 0;
    for (n, m, delta) in [(2, 2, 1), (3, 3, 1), (4, 2, 2)] {
        for _ in 0..5 {
            let r = rng.gen_range(0..n);
            let spec = CipherSpec::random_bijective(CipherParams::new(n, m, delta, r)?, rng)?;
            ok &= round_group(&spec)?.all_even();
            count += 1;
        }
    }
    Ok(item("parity", ok, format!("{count} specs at n in 2..=4")))
}

fn goursat() -> Result<SelftestItem> {
    let mut ok = true;
    let mut counts = Vec::new();
    for n in 1..=3 {
        let c = compare_with_brute_force(n)?;
        ok &= c.equal;
        counts.push(c.enumerated.to_string());
    }
    Ok(item("goursat", ok, format!("subgroup counts {}", counts.join(", "))))
}

fn types(seed: u64) -> Result<SelftestItem> {
    let params = CipherParams::new(4, 2, 2, 2)?;
    let c = type_suite(&params, 50, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conforming = CipherSpec::random_bijective(params, &mut rng)?;
    let control = CipherSpec::identity(CipherParams::new(4, 2, 2, 0)?)?;
    let clean = check_not_w_form(&conforming)?.is_empty() && check_corollary_ds(&conforming)?.is_empty();
    let flagged = !check_not_w_form(&control)?.is_empty() && check_corollary_ds(&control)?.len() == 3;
    let ok = c.xor_violations + c.boxplus_violations + c.bricklayer_violations == 0 && clean && flagged;
    Ok(item(
        "types",
        ok,
        format!(
            "{} translation and {} bricklayer checks",
            c.xor_checks + c.boxplus_checks,
            c.bricklayer_checks
        ),
    ))
}

fn block_oracle(rng: &mut ChaCha8Rng) -> Result<SelftestItem> {
    let mut agree = 0;
    let total = 10;
    for i in 0..total {
        let spec = small_spec(rng, i % 3 != 2)?;
        let group = round_group(&spec)?;
        let scan = block_scan(&spec, &ScanOptions::default())?;
        let scan_primitive = group.is_transitive() && !scan.imprimitive();
        if scan_primitive == is_primitive(&group)? && scan.routes_agree == Some(true) {
            agree += 1;
        }
    }
    Ok(item(
        "block-oracle",
        agree == total,
        format!("{agree}/{total} specs agree at degree 256"),
    ))
}

fn orders(seed: u64) -> Result<SelftestItem> {
    // A fixed spec whose round group is known to be the full alternating group.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spec = CipherSpec::random_bijective(CipherParams::new(4, 2, 2, 2)?, &mut rng)?;
    let opts = SchreierSimsOptions {
        seed,
        ..SchreierSimsOptions::default()
    };
    let t = schreier_sims(&translation_group(&spec)?, &opts)?.order();
    let g = schreier_sims(&round_group(&spec)?, &opts)?.order();
    let ok = t == BigUint::from(256u32) && g == alternating_order(256);
    Ok(item("schreier-sims", ok, "translations 256, round group Alt(256)"))
}

fn cases() -> Result<SelftestItem> {
    let mut ok = true;
    for n in 2..=64 {
        ok &= affine_check(n)?.excluded == (n >= 6);
        let p = psl_check(n)?;
        ok &= p.excluded && p.gcd == 1;
    }
    Ok(item("case-arithmetic", ok, "affine and psl for n in 2..=64"))
}

fn normality(seed: u64) -> Result<SelftestItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = CipherSpec::random_bijective(CipherParams::new(4, 2, 2, 2)?, &mut rng)?;
    let rep = check_nfold_normality(&round_group(&spec)?, 2, 20, seed)?;
    Ok(item(
        "normality",
        rep.passed(),
        format!("{} of {} conjugates outside", rep.failures, rep.samples),
    ))
}

pub fn selftest(seed: u64) -> Result<Vec<SelftestItem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(vec![
        word_groups(),
        feistel(&mut rng)?,
        parity(&mut rng)?,
        goursat()?,
        types(seed)?,
        block_oracle(&mut rng)?,
        orders(seed)?,
        cases()?,
        normality(seed)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_items_pass() {
        for it in selftest(0).unwrap() {
            assert!(it.passed, "{}: {}", it.name, it.detail);
        }
    }
}
