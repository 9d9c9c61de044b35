//! Base and strong generating sets by Schreier-Sims.
//!
//! Construction starts with a random phase (product replacement elements,
//! sifted and added when they fail to sift). The partial structure keeps the
//! chain property `<S_{i+1}> <= Stab_{<S_i>}(b_i)` with every basic orbit
//! closed, so the product of basic orbit lengths is always a lower bound on
//! the group order. If that bound reaches `|Alt(N)|` with all generators
//! even (or `|Sym(N)|`), the order is exact. Otherwise the original
//! generators are sifted in and every Schreier generator is checked, which
//! makes the BSGS complete.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::blocks::BSGS_CAP;
use super::dense::DensePerm;
use super::group::PermGroup;
use crate::error::{Error, Result};

/// How completeness of the strong generating set was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    /// The orbit-length lower bound met `|Alt(N)|` (all generators even) or `|Sym(N)|`.
    GiantOrderBound,
    /// Every Schreier generator sifts to the identity.
    SchreierGenerators,
}

#[derive(Clone, Copy, Debug)]
pub struct SchreierSimsOptions {
    pub seed: u64,
    /// Random phase stops after this many consecutive elements sift to the identity.
    pub random_streak: usize,
}

impl Default for SchreierSimsOptions {
    fn default() -> Self {
        SchreierSimsOptions {
            seed: 0,
            random_streak: 24,
        }
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Indices into `Bsgs::strong` of generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// point -> position in `orbit`.
    position: HashMap<usize, usize>,
    /// `inv_reps[k]` maps `orbit[k]` back to `point`.
    inv_reps: Vec<DensePerm>,
    /// Schreier tree edge that reached `orbit[k]`: (parent position, strong generator).
    edges: Vec<Option<(usize, usize)>>,
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    strong: Vec<DensePerm>,
    strong_inv: Vec<DensePerm>,
    levels: Vec<Level>,
    verification: Option<Verification>,
}

impl Bsgs {
    fn empty(degree: usize) -> Bsgs {
        Bsgs {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
            verification: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[DensePerm] {
        &self.strong
    }

    pub fn verification(&self) -> Option<Verification> {
        self.verification
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strips `g` through the chain from `start`. Returns the residue and the
    /// level at which it stopped (`levels.len()` if it passed every level).
    pub fn sift_from(&self, g: &DensePerm, start: usize) -> (DensePerm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.point);
            match level.position.get(&b) {
                Some(&k) => {
                    if b != level.point {
                        h.then_assign(&level.inv_reps[k]);
                    }
                }
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, g: &DensePerm) -> (DensePerm, usize) {
        self.sift_from(g, 0)
    }

    /// Membership test; exact once the BSGS is verified.
    pub fn contains(&self, g: &DensePerm) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    fn push_strong(&mut self, h: DensePerm) -> usize {
        self.strong_inv.push(h.inverse());
        self.strong.push(h);
        self.strong.len() - 1
    }

    /// Adds `h` (non-identity, fixing base points `0..j`) to levels `0..=j`.
    fn add_generator(&mut self, h: DensePerm, j: usize) {
        if j == self.levels.len() {
            let point = (0..self.degree)
                .find(|&x| h.apply(x) != x)
                .expect("non-identity residue moves a point");
            let mut position = HashMap::new();
            position.insert(point, 0);
            self.levels.push(Level {
                point,
                gens: Vec::new(),
                orbit: vec![point],
                position,
                inv_reps: vec![DensePerm::identity(self.degree)],
                edges: vec![None],
            });
        }
        let idx = self.push_strong(h);
        for k in 0..=j {
            self.levels[k].gens.push(idx);
            self.extend_orbit(k, idx);
        }
    }

    fn extend_orbit(&mut self, k: usize, new_gen: usize) {
        let Bsgs {
            strong,
            strong_inv,
            levels,
            ..
        } = self;
        let level = &mut levels[k];
        let mut queue = Vec::new();
        let visit = |level: &mut Level, from: usize, s: usize, queue: &mut Vec<usize>| {
            let p = level.orbit[from];
            let q = strong[s].apply(p);
            if !level.position.contains_key(&q) {
                // u_q = u_p s, so u_q^{-1} = s^{-1} u_p^{-1}
                let inv = strong_inv[s].then(&level.inv_reps[from]);
                level.position.insert(q, level.orbit.len());
                level.orbit.push(q);
                level.inv_reps.push(inv);
                level.edges.push(Some((from, s)));
                queue.push(level.orbit.len() - 1);
            }
        };
        for from in 0..level.orbit.len() {
            visit(level, from, new_gen, &mut queue);
        }
        while let Some(from) = queue.pop() {
            let gens = level.gens.clone();
            for s in gens {
                visit(level, from, s, &mut queue);
            }
        }
    }

    /// Sifts `g` and records the residue. Returns whether anything changed.
    fn sift_and_add(&mut self, g: &DensePerm) -> bool {
        let (h, j) = self.sift(g);
        if h.is_identity() {
            return false;
        }
        self.add_generator(h, j);
        true
    }

    /// Sims' test over all Schreier generators, bottom level first.
    fn complete_deterministically(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let mut from = 0;
            while from < self.levels[lvl].orbit.len() {
                let u_p = self.levels[lvl].inv_reps[from].inverse();
                let gens = self.levels[lvl].gens.clone();
                for s in gens {
                    let level = &self.levels[lvl];
                    let q = self.strong[s].apply(level.orbit[from]);
                    let qpos = level.position[&q];
                    if level.edges[qpos] == Some((from, s)) {
                        continue;
                    }
                    let g = u_p.then(&self.strong[s]).then(&level.inv_reps[qpos]);
                    if g.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(&g, lvl + 1);
                    if !h.is_identity() {
                        self.add_generator(h, j);
                        i = j + 1;
                        continue 'outer;
                    }
                }
                from += 1;
            }
            i -= 1;
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `|Alt(n)| = n!/2` for `n >= 2`.
pub fn alternating_order(n: usize) -> BigUint {
    if n < 2 {
        BigUint::one()
    } else {
        factorial(n) / 2u32
    }
}

pub fn symmetric_order(n: usize) -> BigUint {
    factorial(n)
}

/// Random group elements by product replacement with an accumulator.
struct ProductReplacement {
    slots: Vec<DensePerm>,
    acc: DensePerm,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    fn new(gens: &[DensePerm], degree: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slots: Vec<DensePerm> = if gens.is_empty() {
            vec![DensePerm::identity(degree); 2]
        } else if gens.len() <= 16 {
            let count = (2 * gens.len()).max(10);
            (0..count).map(|i| gens[i % gens.len()].clone()).collect()
        } else {
            // Many generators: seed the slots with random subproducts.
            (0..32)
                .map(|_| {
                    let mut p = DensePerm::identity(degree);
                    for g in gens {
                        if rng.gen::<bool>() {
                            p.then_assign(g);
                        }
                    }
                    p
                })
                .collect()
        };
        let mut pr = ProductReplacement {
            slots,
            acc: DensePerm::identity(degree),
            rng,
        };
        for _ in 0..50 {
            pr.next();
        }
        pr
    }

    fn next(&mut self) -> DensePerm {
        let k = self.slots.len();
        let i = self.rng.gen_range(0..k);
        let mut j = self.rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen::<bool>() {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = if self.rng.gen::<bool>() {
            self.slots[i].then(&other)
        } else {
            other.then(&self.slots[i])
        };
        self.acc.then_assign(&self.slots[i]);
        self.acc.clone()
    }
}

/// Builds a verified BSGS for `group`. Degree is capped at [`BSGS_CAP`].
pub fn schreier_sims(group: &PermGroup, opts: &SchreierSimsOptions) -> Result<Bsgs> {
    schreier_sims_gens(group.degree(), group.generators(), opts)
}

pub fn schreier_sims_gens(degree: usize, gens: &[DensePerm], opts: &SchreierSimsOptions) -> Result<Bsgs> {
    if degree > BSGS_CAP {
        return Err(Error::DegreeCap {
            what: "Schreier-Sims",
            cap_name: "BSGS/blocks",
            degree: degree as u64,
            cap: BSGS_CAP as u64,
        });
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, g.degree()));
    }
    let mut bsgs = Bsgs::empty(degree);
    let gens: Vec<DensePerm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        bsgs.verification = Some(Verification::SchreierGenerators);
        return Ok(bsgs);
    }
    let all_even = gens.iter().all(|g| g.sign() == 1);
    let giant = if all_even {
        alternating_order(degree)
    } else {
        symmetric_order(degree)
    };

    let mut pr = ProductReplacement::new(&gens, degree, opts.seed);
    let mut streak = 0;
    while streak < opts.random_streak {
        let g = pr.next();
        if bsgs.sift_and_add(&g) {
            streak = 0;
            if degree >= 2 && bsgs.order() == giant {
                bsgs.verification = Some(Verification::GiantOrderBound);
                return Ok(bsgs);
            }
        } else {
            streak += 1;
        }
    }
    for g in &gens {
        bsgs.sift_and_add(g);
    }
    bsgs.complete_deterministically();
    bsgs.verification = Some(if degree >= 2 && bsgs.order() == giant {
        Verification::GiantOrderBound
    } else {
        Verification::SchreierGenerators
    });
    Ok(bsgs)
}
