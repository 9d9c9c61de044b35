//! The diagonal case and the three case eliminations for primitive groups
//! containing a regular abelian subgroup.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::cipher::{CipherSpec, SBoxSet};
use crate::error::{Error, Result};
use crate::types::BitSlice;

/// `2^{n-1} S != 0 S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalCheck {
    pub zero_s: u64,
    pub involution_s: u64,
    pub passed: bool,
}

pub fn diagonal_check(spec: &CipherSpec) -> DiagonalCheck {
    let n = spec.n();
    let zero_s = spec.s_raw(0);
    let involution_s = spec.s_raw(1u64 << (n - 1));
    DiagonalCheck {
        zero_s,
        involution_s,
        passed: zero_s != involution_s,
    }
}

/// `⌈log2 n⌉ + 2 >= n` is necessary for an element of order `2^n` in `AGL(2n, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCheck {
    pub n: u32,
    pub ceil_log2: u32,
    /// Largest exponent `k` with `2^k` the exponent of a 2-Sylow of `AGL(2n, 2)`.
    pub bound: u32,
    pub excluded: bool,
}

pub fn affine_check(n: u32) -> Result<AffineCheck> {
    if n < 2 {
        return Err(Error::InvalidWidth(n));
    }
    let ceil_log2 = u32::BITS - (n - 1).leading_zeros();
    let bound = ceil_log2 + 2;
    Ok(AffineCheck {
        n,
        ceil_log2,
        bound,
        excluded: bound < n,
    })
}

/// Facts behind the product-action case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathCheck {
    pub zero_s: u64,
    pub involution_s: u64,
    /// `2^{n-1} S != 0 S`.
    pub fact_distinct: bool,
    /// `0S` and `2^{n-1}S` agree on bits `[n-m, n-1]`.
    pub fact_top_brick: bool,
    /// `2^{n-1} + 2^{n-1} S == 0 S`, the identity the argument refutes.
    pub last_bit_identity: bool,
    pub excluded: bool,
}

pub fn wreath_check(spec: &CipherSpec) -> WreathCheck {
    let p = spec.params();
    let inv = 1u64 << (p.n - 1);
    let zero_s = spec.s_raw(0);
    let involution_s = spec.s_raw(inv);
    let top = BitSlice::brick(p.delta, p);
    let fact_distinct = zero_s != involution_s;
    let fact_top_brick = top.extract(zero_s) == top.extract(involution_s);
    WreathCheck {
        zero_s,
        involution_s,
        fact_distinct,
        fact_top_brick,
        last_bit_identity: inv ^ involution_s == zero_s,
        excluded: fact_distinct && fact_top_brick,
    }
}

/// S-boxes for which `0 gamma` and `2^{n-1} gamma` differ only in the last
/// bit: the top table is random subject to `t[2^{m-1}] = t[0] + 2^{m-1}`.
/// With `r = 0` this makes the refuted identity true.
pub fn last_bit_sboxes<R: Rng + ?Sized>(m: u32, delta: u32, rng: &mut R) -> Result<SBoxSet> {
    let base = SBoxSet::random_bijective(m, delta, rng)?;
    let mut tables = base.tables().to_vec();
    let size = 1u32 << m;
    let half = size >> 1;
    let top = tables.last_mut().expect("delta >= 1");
    let first = rng.gen_range(0..size);
    let mut rest: Vec<u32> = (0..size).filter(|&v| v != first && v != first ^ half).collect();
    rest.shuffle(rng);
    top[0] = first;
    top[half as usize] = first ^ half;
    let mut it = rest.into_iter();
    for (i, slot) in top.iter_mut().enumerate() {
        if i != 0 && i != half as usize {
            *slot = it.next().expect("enough values");
        }
    }
    SBoxSet::new(m, tables)
}

/// Replays the arithmetic that rules out `PSL_2(beta)` with `beta + 1 = 2^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PslCheck {
    pub n: u32,
    /// Forced by the parity of the geometric sum.
    pub alpha: u32,
    pub beta: u128,
    pub factors: (u128, u128),
    pub gcd: u128,
    pub excluded: bool,
}

pub fn psl_check(n: u32) -> Result<PslCheck> {
    if !(2..=64).contains(&n) {
        return Err(Error::InvalidWidth(n));
    }
    let p = 1u128 << n;
    let beta = if n == 64 { u128::MAX } else { (1u128 << (2 * n)) - 1 };
    let factors = (p - 1, p + 1);
    let product_ok = factors.0.checked_mul(factors.1) == Some(beta);
    let gcd = factors.0.gcd(&factors.1);
    Ok(PslCheck {
        n,
        alpha: 2,
        beta,
        factors,
        gcd,
        excluded: product_ok && gcd == 1 && factors.0 > 1 && factors.1 > 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::CipherParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn affine_boundary() {
        assert!(affine_check(8).unwrap().excluded);
        assert_eq!(affine_check(8).unwrap().bound, 5);
        assert!(!affine_check(4).unwrap().excluded);
        assert!(!affine_check(5).unwrap().excluded);
        assert!(affine_check(6).unwrap().excluded);
        assert_eq!(affine_check(32).unwrap().bound, 7);
        assert!(affine_check(1).is_err());
    }

    #[test]
    fn psl_examples() {
        let c = psl_check(8).unwrap();
        assert_eq!((c.beta, c.factors, c.gcd), (65535, (255, 257), 1));
        assert!(c.excluded);
        assert_eq!(psl_check(2).unwrap().factors, (3, 5));
        assert!(psl_check(64).unwrap().excluded);
        assert!(psl_check(1).is_err());
    }

    #[test]
    fn identity_gamma_rotation_m() {
        let spec = CipherSpec::identity(CipherParams::new(8, 2, 4, 2).unwrap()).unwrap();
        let w = wreath_check(&spec);
        assert_eq!((w.zero_s, w.involution_s), (0, 2));
        assert!(w.excluded && !w.last_bit_identity);
        assert!(diagonal_check(&spec).passed);
    }

    #[test]
    fn last_bit_control_defeats_the_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let sb = last_bit_sboxes(2, 4, &mut rng).unwrap();
        assert!(sb.all_bijective());
        let spec = CipherSpec::new(CipherParams::new(8, 2, 4, 0).unwrap(), sb).unwrap();
        let w = wreath_check(&spec);
        assert!(w.last_bit_identity && !w.fact_top_brick && !w.excluded);
    }

    #[test]
    fn collision_is_reported() {
        let mut tables = vec![vec![0, 1, 2, 3]; 4];
        tables[3] = vec![0, 1, 0, 3];
        let spec = CipherSpec::new(CipherParams::new(8, 2, 4, 2).unwrap(), SBoxSet::new(2, tables).unwrap()).unwrap();
        let d = diagonal_check(&spec);
        assert!(!d.passed);
        assert_eq!(d.zero_s, d.involution_s);
    }
}
