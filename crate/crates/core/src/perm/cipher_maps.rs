//! Cipher maps tabulated as dense permutations of the `2^{2n}` states.

use rayon::prelude::*;

use super::dense::{DensePerm, MATERIALIZE_CAP};
use super::group::PermGroup;
use crate::cipher::{index_state, state_index, CipherSpec, RawState};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapSelector {
    Sigma,
    SigmaInverse,
    /// `⊞`-translation by a state.
    Rho(RawState),
    /// GOST round with a single key word.
    GostRound(u64),
    /// `ρ_k Σ ρ_h`.
    Generalized(RawState, RawState),
}

/// Number of states for width `n`, if it fits under `cap`.
pub fn state_degree(n: u32, cap: usize) -> Result<usize> {
    let cap = cap.min(MATERIALIZE_CAP);
    let degree = 1u128 << (2 * n);
    if degree > cap as u128 {
        return Err(Error::DegreeCap {
            what: "state permutation",
            cap_name: "materialization",
            degree: u64::try_from(degree).unwrap_or(u64::MAX),
            cap: cap as u64,
        });
    }
    Ok(degree as usize)
}

pub fn materialize(spec: &CipherSpec, sel: MapSelector) -> Result<DensePerm> {
    materialize_capped(spec, sel, MATERIALIZE_CAP)
}

pub fn materialize_capped(spec: &CipherSpec, sel: MapSelector, cap: usize) -> Result<DensePerm> {
    let n = spec.n();
    let degree = state_degree(n, cap)?;
    let f = |x: RawState| -> RawState {
        match sel {
            MapSelector::Sigma => spec.sigma_raw(x),
            MapSelector::SigmaInverse => spec.sigma_inverse_raw(x),
            MapSelector::Rho(k) => spec.rho_raw(k, x),
            MapSelector::GostRound(k) => spec.gost_round_raw(k, x),
            MapSelector::Generalized(k, h) => spec.generalized_round_raw(k, h, x),
        }
    };
    let images: Vec<u32> = (0..degree)
        .into_par_iter()
        .map(|i| state_index(f(index_state(i, n)), n) as u32)
        .collect();
    DensePerm::from_images(images)
        .map_err(|e| Error::NotPermutation(format!("{sel:?} did not tabulate to a permutation: {e}")))
}

/// `Γ = <ρ_(1,0), ρ_(0,1), Σ>` with generators named `t1`, `t2`, `s`.
pub fn round_group(spec: &CipherSpec) -> Result<PermGroup> {
    round_group_capped(spec, MATERIALIZE_CAP)
}

pub fn round_group_capped(spec: &CipherSpec, cap: usize) -> Result<PermGroup> {
    let gens = vec![
        materialize_capped(spec, MapSelector::Rho((1, 0)), cap)?,
        materialize_capped(spec, MapSelector::Rho((0, 1)), cap)?,
        materialize_capped(spec, MapSelector::Sigma, cap)?,
    ];
    let degree = gens[0].degree();
    PermGroup::with_names(degree, gens, vec!["t1".into(), "t2".into(), "s".into()])
}

/// The translation group `<ρ_(1,0), ρ_(0,1)>`.
pub fn translation_group(spec: &CipherSpec) -> Result<PermGroup> {
    let gens = vec![
        materialize(spec, MapSelector::Rho((1, 0)))?,
        materialize(spec, MapSelector::Rho((0, 1)))?,
    ];
    let degree = gens[0].degree();
    PermGroup::with_names(degree, gens, vec!["t1".into(), "t2".into()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::CipherParams;
    use crate::perm::bsgs::{schreier_sims, SchreierSimsOptions};
    use num_bigint::BigUint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity_spec(n: u32, m: u32, delta: u32, r: u32) -> CipherSpec {
        CipherSpec::identity(CipherParams::new(n, m, delta, r).unwrap()).unwrap()
    }

    #[test]
    fn rho_zero_is_identity() {
        let spec = identity_spec(4, 2, 2, 1);
        assert!(materialize(&spec, MapSelector::Rho((0, 0))).unwrap().is_identity());
    }

    #[test]
    fn rho_one_zero_cycles() {
        let spec = identity_spec(2, 1, 2, 0);
        let p = materialize(&spec, MapSelector::Rho((1, 0))).unwrap();
        let cycles = p.cycles();
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn sigma_index_example() {
        let spec = identity_spec(2, 1, 2, 0);
        let p = materialize(&spec, MapSelector::Sigma).unwrap();
        assert_eq!(state_index((1, 2), 2), 9);
        assert_eq!(p.apply(9), 14);
    }

    #[test]
    fn translations_compose() {
        let spec = identity_spec(4, 2, 2, 2);
        for k in [(1u64, 3u64), (15, 0), (7, 9)] {
            for h in [(2u64, 5u64), (0, 15), (9, 9)] {
                let pk = materialize(&spec, MapSelector::Rho(k)).unwrap();
                let ph = materialize(&spec, MapSelector::Rho(h)).unwrap();
                let sum = ((k.0 + h.0) % 16, (k.1 + h.1) % 16);
                assert_eq!(&pk * &ph, materialize(&spec, MapSelector::Rho(sum)).unwrap());
            }
        }
    }

    #[test]
    fn inverse_and_round_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = CipherSpec::random_bijective(CipherParams::new(4, 2, 2, 3).unwrap(), &mut rng).unwrap();
        let s = materialize(&spec, MapSelector::Sigma).unwrap();
        let si = materialize(&spec, MapSelector::SigmaInverse).unwrap();
        assert!((&s * &si).is_identity());
        let k = 11;
        let direct = materialize(&spec, MapSelector::GostRound(k)).unwrap();
        let composed = &(&materialize(&spec, MapSelector::Rho((0, k))).unwrap() * &s)
            * &materialize(&spec, MapSelector::Rho(((16 - k) % 16, 0))).unwrap();
        assert_eq!(direct, composed);
        let g = materialize(&spec, MapSelector::Generalized((0, k), ((16 - k) % 16, 0))).unwrap();
        assert_eq!(g, direct);
    }

    #[test]
    fn translation_group_is_regular() {
        let spec = identity_spec(4, 2, 2, 2);
        let g = translation_group(&spec).unwrap();
        assert!(g.is_transitive());
        let bsgs = schreier_sims(&g, &SchreierSimsOptions::default()).unwrap();
        assert_eq!(bsgs.order(), BigUint::from(256u32));
    }

    #[test]
    fn cap_is_named() {
        let spec = identity_spec(8, 2, 4, 2);
        let err = materialize_capped(&spec, MapSelector::Sigma, 1 << 12).unwrap_err();
        assert!(err.to_string().contains("materialization"), "{err}");
    }
}
