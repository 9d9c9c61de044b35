//! Subgroups of `Z_{2^n} x Z_{2^n}` in Goursat normal form.
//!
//! A subgroup `U` is determined by `A = <2^s> >= B = <2^sB>` (first
//! coordinates and their kernel part), `C = <2^t> >= D = <2^tD>` and an
//! isomorphism `psi: A/B -> C/D`. Both quotients are cyclic of order `2^k`,
//! `k = sB - s = tD - t`, and `psi` sends the coset of `2^s` to
//! `z 2^t + D` for an odd `z` in `[1, 2^k)` (`z = 1` when `k = 0`). Then
//!
//! ```text
//! U = { (a, c) : a in A, c in C, (a >> s) z 2^t = c  (mod 2^tD) }
//! ```
//!
//! Members are encoded as state indices `a + 2^n c`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Widest `n` supported by the predicate.
pub const MAX_GOURSAT_WIDTH: u32 = 31;
/// Member sets are materialized up to this width.
pub const MATERIALIZE_GOURSAT_WIDTH: u32 = 8;
/// The closure-growing oracle runs up to this width.
pub const BRUTE_FORCE_WIDTH: u32 = 3;

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of an odd `z` modulo `2^k`.
pub fn odd_inverse(z: u64, k: u32) -> u64 {
    debug_assert!(z & 1 == 1);
    // Newton iteration doubles the number of correct low bits.
    let mut inv = 1u64;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(z.wrapping_mul(inv)));
    }
    inv & low_mask(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GoursatTriple {
    pub n: u32,
    pub s: u32,
    pub s_b: u32,
    pub t: u32,
    pub t_d: u32,
    pub z: u64,
}

impl fmt::Display for GoursatTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.s, self.s_b, self.t, self.t_d, self.z)
    }
}

impl GoursatTriple {
    pub fn new(n: u32, s: u32, s_b: u32, t: u32, t_d: u32, z: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InconsistentTriple(msg));
        if !(1..=MAX_GOURSAT_WIDTH).contains(&n) {
            return bad(format!("width {n} outside 1..={MAX_GOURSAT_WIDTH}"));
        }
        if !(s <= s_b && s_b <= n && t <= t_d && t_d <= n) {
            return bad(format!(
                "exponents (s, sB, t, tD) = ({s}, {s_b}, {t}, {t_d}) not nested in 0..={n}"
            ));
        }
        if s_b - s != t_d - t {
            return bad(format!("quotient orders differ: 2^{} vs 2^{}", s_b - s, t_d - t));
        }
        let k = s_b - s;
        let z_ok = if k == 0 { z == 1 } else { z & 1 == 1 && z < (1u64 << k) };
        if !z_ok {
            return bad(format!("multiplier z = {z} is not an odd residue modulo 2^{k}"));
        }
        Ok(GoursatTriple { n, s, s_b, t, t_d, z })
    }

    /// Order `2^k` of the quotients.
    pub fn quotient_exponent(&self) -> u32 {
        self.s_b - self.s
    }

    /// `log2 |U| = (n - s) + (n - tD)`.
    pub fn order_log2(&self) -> u32 {
        (self.n - self.s) + (self.n - self.t_d)
    }

    pub fn is_trivial(&self) -> bool {
        self.s == self.n && self.t == self.n
    }

    pub fn is_full(&self) -> bool {
        self.s == 0 && self.t_d == 0
    }

    pub fn is_proper_nontrivial(&self) -> bool {
        !self.is_trivial() && !self.is_full()
    }

    /// The product `B x D` of the two kernels; trivial-quotient triples are products.
    pub fn is_product(&self) -> bool {
        self.s == self.s_b
    }

    /// Membership of the pair `(a, c)`.
    #[inline]
    pub fn contains(&self, a: u64, c: u64) -> bool {
        let m = low_mask(self.n);
        if a & !m != 0 || c & !m != 0 {
            return false;
        }
        if a & low_mask(self.s) != 0 || c & low_mask(self.t) != 0 {
            return false;
        }
        let image = (a >> self.s).wrapping_mul(self.z).wrapping_shl(self.t) & m;
        c.wrapping_sub(image) & m & low_mask(self.t_d) == 0
    }

    #[inline]
    pub fn contains_index(&self, index: u64) -> bool {
        self.contains(index & low_mask(self.n), index >> self.n)
    }

    /// Generators of `U` as pairs.
    pub fn generators(&self) -> Vec<(u64, u64)> {
        let m = low_mask(self.n);
        let mut g = Vec::new();
        if self.s < self.n {
            g.push((1u64 << self.s, (self.z << self.t) & m));
        }
        if self.t_d < self.n {
            g.push((0, 1u64 << self.t_d));
        }
        g
    }

    /// Visits every member `(a, c)` using the explicit parametrization:
    /// `{(a, a phi + d)}` with `phi = z 2^{t-s}` when `s <= t`, or
    /// `{(c phi' + b, c)}` with `phi' = z^{-1} 2^{s-t}` otherwise.
    /// Stops early and returns `false` as soon as `f` does.
    pub fn for_each_member(&self, mut f: impl FnMut(u64, u64) -> bool) -> bool {
        let n = self.n;
        let m = low_mask(n);
        if self.s <= self.t {
            let phi = self.z << (self.t - self.s);
            for alpha in 0..(1u64 << (n - self.s)) {
                let a = alpha << self.s;
                let base = a.wrapping_mul(phi) & m;
                for delta in 0..(1u64 << (n - self.t_d)) {
                    if !f(a, (base + (delta << self.t_d)) & m) {
                        return false;
                    }
                }
            }
        } else {
            let k = self.quotient_exponent();
            let phi = odd_inverse(self.z, k.max(1)) << (self.s - self.t);
            for gamma in 0..(1u64 << (n - self.t)) {
                let c = gamma << self.t;
                let base = c.wrapping_mul(phi) & m;
                for beta in 0..(1u64 << (n - self.s_b)) {
                    if !f((base + (beta << self.s_b)) & m, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Members in ascending state-index order.
    pub fn materialize(&self) -> Result<SubgroupPair> {
        if self.n > MATERIALIZE_GOURSAT_WIDTH {
            return Err(Error::Unsupported(format!(
                "subgroup members are materialized only for n <= {MATERIALIZE_GOURSAT_WIDTH}"
            )));
        }
        let n = self.n;
        let mut members = Vec::with_capacity(1usize << self.order_log2());
        self.for_each_member(|a, c| {
            members.push(a | (c << n));
            true
        });
        members.sort_unstable();
        members.dedup();
        let pair = SubgroupPair {
            triple: *self,
            members: members.into_iter().map(|x| x as u32).collect(),
        };
        pair.check()?;
        Ok(pair)
    }
}

/// A materialized Goursat subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPair {
    pub triple: GoursatTriple,
    /// Sorted state indices.
    pub members: Vec<u32>,
}

impl SubgroupPair {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, index: u32) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Size `|A||D|`, agreement with the predicate, and closure under
    /// translation by the generators.
    fn check(&self) -> Result<()> {
        let tr = &self.triple;
        let expected = 1usize << tr.order_log2();
        if self.members.len() != expected {
            return Err(Error::InconsistentTriple(format!(
                "{tr}: {} members, expected {expected}",
                self.members.len()
            )));
        }
        if self.members.first() != Some(&0) {
            return Err(Error::InconsistentTriple(format!("{tr}: (0, 0) missing")));
        }
        if let Some(x) = self.members.iter().find(|&&x| !tr.contains_index(x as u64)) {
            return Err(Error::InconsistentTriple(format!(
                "{tr}: member {x} fails the predicate"
            )));
        }
        let n = tr.n;
        let m = low_mask(n);
        for (ga, gc) in tr.generators() {
            for &x in &self.members {
                let (a, c) = (x as u64 & m, x as u64 >> n);
                let y = ((a + ga) & m) | (((c + gc) & m) << n);
                if !self.contains_index(y as u32) {
                    return Err(Error::InconsistentTriple(format!("{tr}: not closed under addition")));
                }
            }
        }
        Ok(())
    }
}

/// Number of subgroups: the sum over `k` of `(n-k+1)^2` placements times the
/// number of automorphisms of `Z_{2^k}`.
pub fn subgroup_count(n: u32) -> u64 {
    (0..=n as u64)
        .map(|k| {
            let places = (n as u64 - k + 1).pow(2);
            let autos = if k == 0 { 1 } else { 1u64 << (k - 1) };
            places * autos
        })
        .sum()
}

/// Every subgroup exactly once, in lexicographic order of `(s, sB, t, tD, z)`.
pub fn enumerate_subgroups(n: u32) -> Result<Vec<GoursatTriple>> {
    if !(1..=MAX_GOURSAT_WIDTH).contains(&n) {
        return Err(Error::InconsistentTriple(format!(
            "width {n} outside 1..={MAX_GOURSAT_WIDTH}"
        )));
    }
    let mut out = Vec::new();
    for s in 0..=n {
        for s_b in s..=n {
            let k = s_b - s;
            for t in 0..=n - k {
                let t_d = t + k;
                if k == 0 {
                    out.push(GoursatTriple {
                        n,
                        s,
                        s_b,
                        t,
                        t_d,
                        z: 1,
                    });
                } else {
                    for z in (1..(1u64 << k)).step_by(2) {
                        out.push(GoursatTriple { n, s, s_b, t, t_d, z });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Proper, nontrivial subgroups only.
pub fn proper_nontrivial_subgroups(n: u32) -> Result<Vec<GoursatTriple>> {
    Ok(enumerate_subgroups(n)?
        .into_iter()
        .filter(GoursatTriple::is_proper_nontrivial)
        .collect())
}

/// All `⊞`-closed subsets containing `(0, 0)`, found by growing closures
/// from the trivial subgroup one element at a time. Independent of the
/// Goursat parametrization. Sets are returned as sorted state indices.
pub fn brute_force_subgroups(n: u32) -> Result<Vec<Vec<u32>>> {
    if !(1..=BRUTE_FORCE_WIDTH).contains(&n) {
        return Err(Error::Unsupported(format!(
            "brute-force subgroup search is limited to 1 <= n <= {BRUTE_FORCE_WIDTH}"
        )));
    }
    let states = 1usize << (2 * n);
    let m = low_mask(n);
    let add = |x: usize, y: usize| -> usize {
        let (xa, xc) = (x as u64 & m, x as u64 >> n);
        let (ya, yc) = (y as u64 & m, y as u64 >> n);
        (((xa + ya) & m) | (((xc + yc) & m) << n)) as usize
    };
    // Sets as bitmasks over at most 64 states.
    let closure = |set: u64, extra: usize| -> u64 {
        let mut cur = set | (1u64 << extra);
        loop {
            let mut next = cur;
            for x in 0..states {
                if cur >> x & 1 == 1 {
                    for y in 0..states {
                        if cur >> y & 1 == 1 {
                            next |= 1u64 << add(x, y);
                        }
                    }
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    };
    let mut found: BTreeSet<u64> = BTreeSet::from([1u64]);
    let mut frontier = vec![1u64];
    while let Some(h) = frontier.pop() {
        for x in 0..states {
            if h >> x & 1 == 0 {
                let g = closure(h, x);
                if found.insert(g) {
                    frontier.push(g);
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|bits| (0..states as u32).filter(|&x| bits >> x & 1 == 1).collect())
        .collect())
}

/// Outcome of comparing the Goursat enumeration with the brute-force search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForceComparison {
    pub n: u32,
    pub enumerated: usize,
    pub distinct_sets: usize,
    pub brute_force: usize,
    pub equal: bool,
}

/// Compares the two lists as sets of member sets.
pub fn compare_with_brute_force(n: u32) -> Result<BruteForceComparison> {
    let brute: BTreeSet<Vec<u32>> = brute_force_subgroups(n)?.into_iter().collect();
    let triples = enumerate_subgroups(n)?;
    let ours = triples
        .iter()
        .map(|t| t.materialize().map(|p| p.members))
        .collect::<Result<BTreeSet<Vec<u32>>>>()?;
    Ok(BruteForceComparison {
        n,
        enumerated: triples.len(),
        distinct_sets: ours.len(),
        brute_force: brute.len(),
        equal: ours.len() == triples.len() && ours == brute,
    })
}
