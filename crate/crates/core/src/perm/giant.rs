//! Randomized giant recognition via Jordan's theorem.
//!
//! A primitive group of degree `N` containing a `p`-cycle with `p` prime and
//! `p <= N - 3` contains `Alt(N)`. Random words are searched for an element
//! with a cycle of prime length `p`, `N/2 < p < N - 2`; raising it to the
//! lcm `L` of its other cycle lengths leaves a single `p`-cycle.
//!
//! The search only ever reports a witness or "inconclusive".

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::dense::DensePerm;
use super::group::{Letter, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GiantOptions {
    pub seed: u64,
    pub word_len: usize,
    pub budget: usize,
}

impl Default for GiantOptions {
    fn default() -> Self {
        GiantOptions {
            seed: 0,
            word_len: 32,
            budget: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiantWitness {
    pub degree: usize,
    pub seed: u64,
    /// Zero-based index of the successful trial.
    pub trial: usize,
    pub word: Vec<Letter>,
    pub word_text: String,
    pub prime: usize,
    pub power: BigUint,
    /// Cycle length -> multiplicity of the sampled element, fixed points included.
    pub cycle_type: BTreeMap<usize, usize>,
}

impl GiantWitness {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "degree: {}", self.degree);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "trial: {}", self.trial);
        let _ = writeln!(out, "word: {}", self.word_text);
        let _ = writeln!(out, "cycle type: {}", format_cycle_type(&self.cycle_type));
        let _ = writeln!(out, "prime p: {}", self.prime);
        let _ = writeln!(out, "power L: {}", self.power);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GiantOutcome {
    Found(GiantWitness),
    Inconclusive { trials: usize },
}

impl GiantOutcome {
    pub fn witness(&self) -> Option<&GiantWitness> {
        match self {
            GiantOutcome::Found(w) => Some(w),
            GiantOutcome::Inconclusive { .. } => None,
        }
    }
}

/// `"1^3 2^1 251^1"` style listing.
pub fn format_cycle_type(ct: &BTreeMap<usize, usize>) -> String {
    ct.iter()
        .map(|(len, mult)| format!("{len}^{mult}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The open interval `(N/2, N-2)` of admissible witness primes.
pub fn admissible_primes(degree: usize) -> Vec<usize> {
    (degree / 2 + 1..degree.saturating_sub(2))
        .filter(|&p| 2 * p > degree && is_prime(p))
        .collect()
}

/// Returns `(p, L)` when `perm` carries a Jordan certificate.
pub fn jordan_certificate(perm: &DensePerm) -> Option<(usize, BigUint)> {
    let n = perm.degree();
    let lengths = perm.cycle_lengths();
    let pos = lengths
        .iter()
        .position(|&len| 2 * len > n && len + 2 < n && is_prime(len))?;
    let p = lengths[pos];
    let mut l = BigUint::one();
    for (i, &len) in lengths.iter().enumerate() {
        if i == pos {
            continue;
        }
        // Other cycles are shorter than p, so they are coprime to it.
        if len % p == 0 {
            return None;
        }
        l = l.lcm(&BigUint::from(len));
    }
    Some((p, l))
}

/// Checks that `perm^power` is a single `p`-cycle.
pub fn confirm_power(perm: &DensePerm, prime: usize, power: &BigUint) -> bool {
    let q = perm.pow(power);
    let cycles = q.cycles();
    cycles.len() == 1 && cycles[0].len() == prime
}

/// Searches `budget` random words of length `word_len` over the generators
/// and their inverses. Words are drawn up front from one seeded stream and
/// evaluated in parallel; the lowest-index success is returned, so the
/// outcome depends only on the seed.
pub fn giant_witness(group: &PermGroup, opts: &GiantOptions) -> GiantOutcome {
    if group.generators().is_empty() || opts.budget == 0 {
        return GiantOutcome::Inconclusive { trials: 0 };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let words: Vec<Vec<Letter>> = (0..opts.budget)
        .map(|_| group.random_word(&mut rng, opts.word_len))
        .collect();
    let found = words.par_iter().enumerate().find_map_first(|(trial, word)| {
        let g = group.evaluate(word);
        jordan_certificate(&g).map(|(p, l)| (trial, g, p, l))
    });
    match found {
        Some((trial, g, prime, power)) => {
            debug_assert!(confirm_power(&g, prime, &power));
            GiantOutcome::Found(GiantWitness {
                degree: group.degree(),
                seed: opts.seed,
                trial,
                word_text: group.format_word(&words[trial]),
                word: words[trial].clone(),
                prime,
                power,
                cycle_type: g.cycle_type(),
            })
        }
        None => GiantOutcome::Inconclusive { trials: opts.budget },
    }
}
