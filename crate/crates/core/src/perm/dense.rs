use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Hard cap on the degree of a materialized permutation.
pub const MATERIALIZE_CAP: usize = 1 << 24;

/// A permutation of `0..N` stored as its image table.
///
/// Permutations act on the right: `p * q` is "first `p`, then `q`".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePerm {
    images: Vec<u32>,
}

impl DensePerm {
    pub fn identity(degree: usize) -> DensePerm {
        DensePerm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Checks that `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<DensePerm> {
        if images.len() > MATERIALIZE_CAP {
            return Err(Error::DegreeCap {
                what: "permutation",
                cap_name: "materialization",
                degree: images.len() as u64,
                cap: MATERIALIZE_CAP as u64,
            });
        }
        let mut seen = vec![false; images.len()];
        for (i, &x) in images.iter().enumerate() {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::NotPermutation(format!("image {x} of point {i} is out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::NotPermutation(format!(
                    "point {x} is the image of more than one point"
                )));
            }
        }
        Ok(DensePerm { images })
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<DensePerm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let next = c[(i + 1) % c.len()];
                *images
                    .get_mut(x as usize)
                    .ok_or_else(|| Error::NotPermutation(format!("cycle point {x} outside degree {degree}")))? = next;
            }
        }
        DensePerm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> DensePerm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        DensePerm { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &DensePerm) -> DensePerm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        DensePerm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self = self * other`.
    pub fn then_assign(&mut self, other: &DensePerm) {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    /// Cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            out.push(len);
        }
        out
    }

    /// Cycle length -> multiplicity, fixed points included.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut ct = BTreeMap::new();
        for len in self.cycle_lengths() {
            *ct.entry(len).or_insert(0) += 1;
        }
        ct
    }

    /// `(-1)^(N - #cycles)`.
    pub fn sign(&self) -> i8 {
        let cycles = self.cycle_lengths().len();
        if (self.degree() - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self^e`, computed cycle by cycle.
    pub fn pow(&self, e: &BigUint) -> DensePerm {
        let mut images = vec![0u32; self.degree()];
        let mut seen = vec![false; self.degree()];
        let mut cycle = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            let len = cycle.len();
            let shift = (e % BigUint::from(len)).to_usize().expect("below cycle length");
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + shift) % len];
            }
        }
        DensePerm { images }
    }
}

impl Mul for &DensePerm {
    type Output = DensePerm;

    fn mul(self, rhs: &DensePerm) -> DensePerm {
        self.then(rhs)
    }
}

impl fmt::Debug for DensePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 32 {
            write!(f, "DensePerm{:?}", self.images)
        } else {
            write!(f, "DensePerm(degree {}, {} cycles)", self.degree(), self.cycles().len())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = DensePerm> {
        (1..max_degree).prop_flat_map(|n| {
            Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| DensePerm::from_images(v).unwrap())
        })
    }

    #[test]
    fn construction_checks() {
        assert!(DensePerm::from_images(vec![1, 0, 2]).is_ok());
        assert!(DensePerm::from_images(vec![1, 1, 2]).is_err());
        assert!(DensePerm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(DensePerm::identity(10).sign(), 1);
        assert_eq!(DensePerm::from_cycles(4, &[&[0, 1]]).unwrap().sign(), -1);
        assert_eq!(DensePerm::from_cycles(4, &[&[0, 1, 2]]).unwrap().sign(), 1);
        assert_eq!(DensePerm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap().sign(), -1);
    }

    #[test]
    fn coordinate_swap_parity() {
        // (x1, x2) -> (x2, x1) on 4-bit states: 2^3 - 2^1 = 6 transpositions.
        let n = 2;
        let images: Vec<u32> = (0..16u32).map(|i| (i >> n) | ((i & 3) << n)).collect();
        let p = DensePerm::from_images(images).unwrap();
        assert_eq!(p.cycles().len(), 6);
        assert!(p.cycles().iter().all(|c| c.len() == 2));
        assert_eq!(p.sign(), 1);
    }

    #[test]
    fn pow_by_cycles() {
        let p = DensePerm::from_cycles(7, &[&[0, 1, 2], &[3, 4, 5, 6]]).unwrap();
        let mut q = DensePerm::identity(7);
        for e in 0..30u32 {
            assert_eq!(p.pow(&BigUint::from(e)), q, "exponent {e}");
            q = &q * &p;
        }
        assert!(p.pow(&BigUint::from(12u32)).is_identity());
        let fixed0 = DensePerm::from_cycles(5, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(fixed0.pow(&BigUint::from(2u32)).images(), &[0, 3, 4, 1, 2]);
    }

    #[test]
    fn composition_acts_on_the_right() {
        let p = DensePerm::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = DensePerm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!((&p * &q).apply(0), 2);
    }

    proptest! {
        #[test]
        fn sign_is_multiplicative((p, q) in arb_perm(40).prop_flat_map(|p| {
            let n = p.degree();
            (Just(p), Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
                .prop_map(|v| DensePerm::from_images(v).unwrap()))
        })) {
            prop_assert_eq!((&p * &q).sign(), p.sign() * q.sign());
        }

        #[test]
        fn inverse_cancels(p in arb_perm(60)) {
            prop_assert!((&p * &p.inverse()).is_identity());
            prop_assert_eq!(p.inverse().sign(), p.sign());
            prop_assert_eq!(p.cycle_lengths().iter().sum::<usize>(), p.degree());
        }
    }
}
