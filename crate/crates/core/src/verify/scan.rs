//! Block scan restricted to `⊞`-subgroups.
//!
//! Blocks of a group containing the regular translation group are cosets of
//! a subgroup `U` of `(V, ⊞)`, and `Σ` must send the block `U` through
//! `(0, 0)` onto the block through `(0, 0S)`. Each proper nontrivial Goursat
//! subgroup is tested against `U Σ = U ⊞ (0, 0S)`.
//!
//! Two routes decide the equation: a membership predicate over a streamed
//! enumeration of `U`, and (for `n <= 8`) explicit sorted sets. Every
//! candidate is then certified by checking that `Σ` maps every coset of `U`
//! onto a coset.

use rayon::prelude::*;
use serde::Serialize;

use crate::cipher::{state_index, CipherSpec};
use crate::error::Result;
use crate::goursat::{proper_nontrivial_subgroups, GoursatTriple, MATERIALIZE_GOURSAT_WIDTH};
use crate::perm::cipher_maps::state_degree;
use crate::perm::MATERIALIZE_CAP;
use crate::word::{boxminus_raw, boxplus_raw};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub max_degree: usize,
    /// Also decide the equation with explicit sets (only for `n <= 8`).
    pub set_route: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_degree: MATERIALIZE_CAP,
            set_route: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCandidate {
    pub triple: GoursatTriple,
    pub order_log2: u32,
    /// The shift `(0, 0S)`.
    pub shift: (u64, u64),
    /// Verdict of the explicit-set route, when it ran.
    pub set_route: Option<bool>,
    /// `Σ` permutes the cosets of `U`.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockScanReport {
    pub n: u32,
    pub tested: usize,
    pub candidates: Vec<BlockCandidate>,
    /// Both routes agree on every subgroup; `None` when only the predicate ran.
    pub routes_agree: Option<bool>,
}

impl BlockScanReport {
    pub fn certified(&self) -> impl Iterator<Item = &BlockCandidate> {
        self.candidates.iter().filter(|c| c.certified)
    }

    pub fn imprimitive(&self) -> bool {
        self.certified().next().is_some()
    }

    /// The first certified block, as the triple of its subgroup.
    pub fn block(&self) -> Option<&BlockCandidate> {
        self.certified().next()
    }
}

/// `U Σ ⊆ U ⊞ (0, 0S)` by streaming `U`; equality follows from `|UΣ| = |U|`.
pub fn shift_equation_predicate(spec: &CipherSpec, tr: &GoursatTriple) -> bool {
    let n = spec.n();
    let minus_zero_s = boxminus_raw(spec.s_raw(0), n);
    tr.for_each_member(|a, c| {
        let (y1, y2) = spec.sigma_raw((a, c));
        tr.contains(y1, boxplus_raw(y2, minus_zero_s, n))
    })
}

/// The same equation with both sides built as sorted state sets.
pub fn shift_equation_sets(spec: &CipherSpec, tr: &GoursatTriple) -> Result<bool> {
    let n = spec.n();
    let zero_s = spec.s_raw(0);
    let u = tr.materialize()?;
    let mut image: Vec<usize> = Vec::with_capacity(u.len());
    let mut shifted: Vec<usize> = Vec::with_capacity(u.len());
    let lo = (1u64 << n) - 1;
    for &x in &u.members {
        let (a, c) = (x as u64 & lo, x as u64 >> n);
        image.push(state_index(spec.sigma_raw((a, c)), n));
        shifted.push(state_index((a, boxplus_raw(c, zero_s, n)), n));
    }
    image.sort_unstable();
    shifted.sort_unstable();
    Ok(image == shifted)
}

/// `Σ` maps each coset of `U` onto a coset.
pub fn certify_block(spec: &CipherSpec, tr: &GoursatTriple) -> bool {
    let n = spec.n();
    let degree = 1usize << (2 * n);
    let mut members = Vec::with_capacity(1usize << tr.order_log2());
    tr.for_each_member(|a, c| {
        members.push((a, c));
        true
    });
    const UNSET: u32 = u32::MAX;
    let mut label = vec![UNSET; degree];
    for x in 0..degree {
        if label[x] != UNSET {
            continue;
        }
        let (xa, xc) = crate::cipher::index_state(x, n);
        for &(a, c) in &members {
            label[state_index((boxplus_raw(xa, a, n), boxplus_raw(xc, c, n)), n)] = x as u32;
        }
    }
    let sigma = |i: usize| state_index(spec.sigma_raw(crate::cipher::index_state(i, n)), n);
    (0..degree).all(|x| label[sigma(x)] == label[sigma(label[x] as usize)])
}

pub fn block_scan(spec: &CipherSpec, opts: &ScanOptions) -> Result<BlockScanReport> {
    let n = spec.n();
    state_degree(n, opts.max_degree)?;
    let triples = proper_nontrivial_subgroups(n)?;
    let zero_s = spec.s_raw(0);
    let use_sets = opts.set_route && n <= MATERIALIZE_GOURSAT_WIDTH;
    let decided: Vec<(GoursatTriple, bool, Option<bool>)> = triples
        .par_iter()
        .map(|tr| {
            let hit = shift_equation_predicate(spec, tr);
            let sets = use_sets.then(|| shift_equation_sets(spec, tr));
            (tr, hit, sets)
        })
        .map(|(tr, hit, sets)| Ok((*tr, hit, sets.transpose()?)))
        .collect::<Result<_>>()?;
    let routes_agree = use_sets.then(|| decided.iter().all(|(_, hit, sets)| Some(*hit) == *sets));
    let candidates = decided
        .iter()
        .filter(|(_, hit, sets)| *hit || *sets == Some(true))
        .map(|(tr, _, sets)| BlockCandidate {
            triple: *tr,
            order_log2: tr.order_log2(),
            shift: (0, zero_s),
            set_route: *sets,
            certified: certify_block(spec, tr),
        })
        .collect();
    Ok(BlockScanReport {
        n,
        tested: triples.len(),
        candidates,
        routes_agree,
    })
}
