//! White/ruled/black box types of subsets of `F_2^n`.
//!
//! Boxes are numbered from the least significant brick, so a type string
//! reads low bits first:
//!
//! ```text
//! n = 8, m = 2, D = <2^3>:
//!   bits   1 0 | 3 2 | 5 4 | 7 6
//!   brick   1  |  2  |  3  |  4
//!   D      0 0 | * 0 | * * | * *      -> "WRBB"
//! ```
//!
//! A set has a type when it equals the product of its brick projections.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cipher::{CipherParams, CipherSpec, SBoxSet};
use crate::error::{Error, Result};
use crate::word::{boxplus_raw, mask, MATERIALIZE_WIDTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BoxType {
    White,
    Ruled,
    Black,
}

impl BoxType {
    pub fn symbol(self) -> char {
        match self {
            BoxType::White => 'W',
            BoxType::Ruled => 'R',
            BoxType::Black => 'B',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeVector(pub Vec<BoxType>);

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for TypeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Renders an optional type, with `-` for "no type".
pub fn show_type(t: &Option<TypeVector>) -> String {
    t.as_ref().map_or_else(|| "-".to_string(), TypeVector::to_string)
}

/// Bits `[lo, hi]` of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitSlice {
    pub lo: u32,
    pub hi: u32,
}

impl BitSlice {
    pub fn new(lo: u32, hi: u32, n: u32) -> Result<Self> {
        if lo > hi || hi >= n {
            return Err(Error::InvalidParams(format!(
                "bit slice [{lo}, {hi}] outside a {n}-bit word"
            )));
        }
        Ok(BitSlice { lo, hi })
    }

    /// Brick `j` (1-based) of the given parameters.
    pub fn brick(j: u32, params: &CipherParams) -> BitSlice {
        BitSlice {
            lo: (j - 1) * params.m,
            hi: j * params.m - 1,
        }
    }

    pub fn extract(&self, v: u64) -> u64 {
        (v >> self.lo) & mask_bits(self.hi - self.lo + 1)
    }
}

fn mask_bits(w: u32) -> u64 {
    if w >= 64 {
        u64::MAX
    } else {
        (1u64 << w) - 1
    }
}

fn check_materializable(params: &CipherParams) -> Result<()> {
    if params.n > MATERIALIZE_WIDTH {
        return Err(Error::Unsupported(format!(
            "type calculus on explicit sets needs n <= {MATERIALIZE_WIDTH}"
        )));
    }
    Ok(())
}

/// The type of `set` (duplicates ignored), or `None` when the set is not the
/// product of its brick projections. The empty set has no type.
pub fn type_of(set: &[u64], params: &CipherParams) -> Option<TypeVector> {
    let mut distinct = set.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.is_empty() {
        return None;
    }
    let side = 1usize << params.m;
    let mut seen = vec![false; side];
    let mut boxes = Vec::with_capacity(params.delta as usize);
    let mut product: u128 = 1;
    for j in 1..=params.delta {
        let slice = BitSlice::brick(j, params);
        seen.iter_mut().for_each(|x| *x = false);
        let mut count = 0usize;
        for &x in &distinct {
            let v = slice.extract(x) as usize;
            if !std::mem::replace(&mut seen[v], true) {
                count += 1;
            }
        }
        product = product.saturating_mul(count as u128);
        boxes.push(match count {
            1 => BoxType::White,
            c if c == side => BoxType::Black,
            _ => BoxType::Ruled,
        });
    }
    (product == distinct.len() as u128).then_some(TypeVector(boxes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupType {
    pub q: u32,
    pub types: TypeVector,
    pub whole: bool,
}

/// The type of `<2^q>` read off from `q`: whites below bit `q`, blacks from
/// it, and one ruled box when `q` falls inside a brick.
pub fn subgroup_type(q: u32, params: &CipherParams) -> Result<SubgroupType> {
    if q > params.n {
        return Err(Error::ExponentOutOfRange { q, n: params.n });
    }
    let whole = q % params.m == 0;
    let ruled = (q / params.m) + 1;
    let types = (1..=params.delta)
        .map(|j| {
            if j * params.m <= q {
                BoxType::White
            } else if !whole && j == ruled {
                BoxType::Ruled
            } else {
                BoxType::Black
            }
        })
        .collect();
    Ok(SubgroupType {
        q,
        types: TypeVector(types),
        whole,
    })
}

/// Members of `<2^q>` as raw words.
pub fn subgroup_members(q: u32, n: u32) -> Vec<u64> {
    if q >= n {
        return vec![0];
    }
    (0..(1u64 << (n - q))).map(|i| i << q).collect()
}

/// `type(v + D) == type(D)` for a typed `set`; `None` when `set` has no type.
pub fn check_xor_translate(set: &[u64], v: u64, params: &CipherParams) -> Option<bool> {
    let t = type_of(set, params)?;
    let moved: Vec<u64> = set.iter().map(|&x| x ^ v).collect();
    Some(type_of(&moved, params) == Some(t))
}

/// `type(v ⊞ <2^q>) == subgroup_type(q)`.
pub fn check_boxplus_translate(q: u32, v: u64, params: &CipherParams) -> Result<bool> {
    check_materializable(params)?;
    let expected = subgroup_type(q, params)?.types;
    let moved: Vec<u64> = subgroup_members(q, params.n)
        .into_iter()
        .map(|d| boxplus_raw(v, d, params.n))
        .collect();
    Ok(type_of(&moved, params) == Some(expected))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BricklayerCheck {
    pub q: u32,
    pub whole: bool,
    /// `D`, `D gamma` and `0 gamma ⊞ D` share one type.
    pub types_agree: bool,
    /// `D gamma == 0 gamma ⊞ D` as sets; only asserted for whole `D`.
    pub sets_equal: bool,
}

impl BricklayerCheck {
    pub fn passed(&self) -> bool {
        self.types_agree && (!self.whole || self.sets_equal)
    }
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

pub fn check_bricklayer_whole(q: u32, sboxes: &SBoxSet, params: &CipherParams) -> Result<BricklayerCheck> {
    check_materializable(params)?;
    let st = subgroup_type(q, params)?;
    let d = subgroup_members(q, params.n);
    let d_gamma = sorted(d.iter().map(|&x| sboxes.gamma_raw(x)).collect());
    let zero_gamma = sboxes.gamma_raw(0);
    let shifted = sorted(d.iter().map(|&x| boxplus_raw(zero_gamma, x, params.n)).collect());
    let t_d = type_of(&d, params);
    let types_agree =
        t_d.as_ref() == Some(&st.types) && type_of(&d_gamma, params) == t_d && type_of(&shifted, params) == t_d;
    Ok(BricklayerCheck {
        q,
        whole: st.whole,
        types_agree,
        sets_equal: d_gamma == shifted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeViolation {
    pub q: u32,
    pub d_type: TypeVector,
    pub ds_type: Option<TypeVector>,
}

/// `<2^q> S` as a sorted set.
pub fn image_under_s(spec: &CipherSpec, q: u32) -> Vec<u64> {
    sorted(
        subgroup_members(q, spec.n())
            .into_iter()
            .map(|x| spec.s_raw(x))
            .collect(),
    )
}

/// Proper nontrivial `<2^q>` whose image under `S` keeps the subgroup's type.
/// "No type" counts as a different type.
pub fn check_not_w_form(spec: &CipherSpec) -> Result<Vec<TypeViolation>> {
    let params = spec.params();
    check_materializable(params)?;
    let mut out = Vec::new();
    for q in 1..params.n {
        let d_type = subgroup_type(q, params)?.types;
        let ds_type = type_of(&image_under_s(spec, q), params);
        if ds_type.as_ref() == Some(&d_type) {
            out.push(TypeViolation { q, d_type, ds_type });
        }
    }
    Ok(out)
}

/// Proper nontrivial `q` with `<2^q> S == 0S ⊞ <2^q>` as sets.
pub fn check_corollary_ds(spec: &CipherSpec) -> Result<Vec<u32>> {
    let params = spec.params();
    check_materializable(params)?;
    let zero_s = spec.s_raw(0);
    Ok((1..params.n)
        .filter(|&q| {
            let shifted = sorted(
                subgroup_members(q, params.n)
                    .into_iter()
                    .map(|d| boxplus_raw(zero_s, d, params.n))
                    .collect(),
            );
            image_under_s(spec, q) == shifted
        })
        .collect())
}

/// A typed set that is not a subgroup and loses its type under some
/// `⊞`-translation: the contrast to the subgroup case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxplusContrast {
    pub set: Vec<u64>,
    pub v: u64,
    pub before: TypeVector,
    pub after: Option<TypeVector>,
}

/// Searches two-element typed sets in increasing order for a translation
/// that changes the type.
pub fn find_boxplus_contrast(params: &CipherParams) -> Option<BoxplusContrast> {
    if params.n > 12 {
        return None;
    }
    let size = 1u64 << params.n;
    for a in 0..size {
        for b in a + 1..size {
            let set = vec![a, b];
            let Some(before) = type_of(&set, params) else {
                continue;
            };
            for v in 1..size {
                let moved: Vec<u64> = set.iter().map(|&x| boxplus_raw(v, x, params.n)).collect();
                let after = type_of(&moved, params);
                if after.as_ref() != Some(&before) {
                    return Some(BoxplusContrast { set, v, before, after });
                }
            }
        }
    }
    None
}

/// Random typed sets: a product of random nonempty subsets of each brick.
pub fn random_typed_set<R: Rng + ?Sized>(params: &CipherParams, rng: &mut R) -> Vec<u64> {
    let side = 1u64 << params.m;
    let mut set = vec![0u64];
    for j in 0..params.delta {
        let mut choices: Vec<u64> = (0..side).filter(|_| rng.gen_bool(0.5)).collect();
        if choices.is_empty() {
            choices.push(rng.gen_range(0..side));
        }
        set = set
            .iter()
            .flat_map(|&x| choices.iter().map(move |&c| x | (c << (j * params.m))))
            .collect();
    }
    set
}

/// Tallies of the translation and bricklayer checks over every `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TypeSuiteCounts {
    pub xor_checks: usize,
    pub xor_violations: usize,
    pub boxplus_checks: usize,
    pub boxplus_violations: usize,
    pub bricklayer_checks: usize,
    pub bricklayer_violations: usize,
}

/// Runs the translation checks with `samples` random translations per
/// subgroup and the bricklayer check with `samples` random S-box sets.
pub fn type_suite(params: &CipherParams, samples: usize, seed: u64) -> Result<TypeSuiteCounts> {
    check_materializable(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = TypeSuiteCounts::default();
    let m = mask(params.n);
    for q in 0..=params.n {
        let d = subgroup_members(q, params.n);
        for _ in 0..samples {
            let v = rng.gen::<u64>() & m;
            c.xor_checks += 1;
            if check_xor_translate(&d, v, params) != Some(true) {
                c.xor_violations += 1;
            }
            c.boxplus_checks += 1;
            if !check_boxplus_translate(q, v, params)? {
                c.boxplus_violations += 1;
            }
        }
    }
    for _ in 0..samples {
        let set = random_typed_set(params, &mut rng);
        let v = rng.gen::<u64>() & m;
        c.xor_checks += 1;
        if check_xor_translate(&set, v, params) != Some(true) {
            c.xor_violations += 1;
        }
        let sboxes = SBoxSet::random_bijective(params.m, params.delta, &mut rng)?;
        for q in 0..=params.n {
            c.bricklayer_checks += 1;
            if !check_bricklayer_whole(q, &sboxes, params)?.passed() {
                c.bricklayer_violations += 1;
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u32, m: u32, delta: u32) -> CipherParams {
        CipherParams::new(n, m, delta, 0).unwrap()
    }

    #[test]
    fn examples() {
        let params = p(8, 2, 4);
        assert_eq!(type_of(&[0], &params).unwrap().to_string(), "WWWW");
        let full: Vec<u64> = (0..256).collect();
        assert_eq!(type_of(&full, &params).unwrap().to_string(), "BBBB");
        assert_eq!(type_of(&subgroup_members(3, 8), &params).unwrap().to_string(), "WRBB");
        assert_eq!(type_of(&[1, 2], &params).unwrap().to_string(), "RWWW");
        assert_eq!(type_of(&[1, 4], &params), None);
        assert_eq!(type_of(&[], &params), None);
    }

    #[test]
    fn subgroup_types() {
        let params = p(8, 2, 4);
        let t0 = subgroup_type(0, &params).unwrap();
        assert_eq!((t0.types.to_string(), t0.whole), ("BBBB".into(), true));
        let t8 = subgroup_type(8, &params).unwrap();
        assert_eq!((t8.types.to_string(), t8.whole), ("WWWW".into(), true));
        let t = subgroup_type(6, &p(12, 4, 3)).unwrap();
        assert_eq!((t.types.to_string(), t.whole), ("WRB".into(), false));
    }

    #[test]
    fn subgroup_type_matches_type_of() {
        for (n, m) in [
            (4, 2),
            (6, 2),
            (6, 3),
            (8, 2),
            (8, 4),
            (9, 3),
            (12, 3),
            (12, 4),
            (12, 6),
        ] {
            let params = p(n, m, n / m);
            for q in 0..=n {
                let d = subgroup_members(q, n);
                let t = type_of(&d, &params).expect("subgroups have a type");
                assert_eq!(t, subgroup_type(q, &params).unwrap().types, "n={n} m={m} q={q}");
                let counts: u64 = (1..=params.delta)
                    .map(|j| {
                        let s = BitSlice::brick(j, &params);
                        let mut v: Vec<u64> = d.iter().map(|&x| s.extract(x)).collect();
                        v.sort_unstable();
                        v.dedup();
                        v.len() as u64
                    })
                    .product();
                assert_eq!(counts, d.len() as u64);
            }
        }
    }

    #[test]
    fn identity_gamma_is_trivially_whole() {
        let params = p(8, 2, 4);
        let id = SBoxSet::identity(2, 4).unwrap();
        for q in 0..=8 {
            let c = check_bricklayer_whole(q, &id, &params).unwrap();
            assert!(c.passed() && c.sets_equal);
        }
    }

    #[test]
    fn identity_control_violates_everything() {
        let spec = CipherSpec::identity(CipherParams::new(8, 2, 4, 0).unwrap()).unwrap();
        assert_eq!(check_not_w_form(&spec).unwrap().len(), 7);
        assert_eq!(check_corollary_ds(&spec).unwrap(), (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn contrast_exists() {
        let c = find_boxplus_contrast(&p(4, 2, 2)).unwrap();
        assert_ne!(c.after.as_ref(), Some(&c.before));
    }

    #[test]
    fn bit_slices() {
        let s = BitSlice::new(6, 7, 8).unwrap();
        assert_eq!(s.extract(0b1100_0000), 3);
        assert!(BitSlice::new(3, 8, 8).is_err());
    }

    proptest! {
        #[test]
        fn xor_preserves_type(seed in any::<u64>(), v in 0u64..4096) {
            let params = p(12, 3, 4);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let set = random_typed_set(&params, &mut rng);
            prop_assert!(type_of(&set, &params).is_some());
            prop_assert_eq!(check_xor_translate(&set, v, &params), Some(true));
        }

        #[test]
        fn boxplus_preserves_subgroup_type(q in 0u32..=12, v in 0u64..4096) {
            prop_assert!(check_boxplus_translate(q, v, &p(12, 4, 3)).unwrap());
        }
    }
}
