//! n-bit words with their two group structures.
//!
//! A word `(a_0, a_1, ..., a_{n-1})` is stored as the unsigned integer
//! `a_0 + 2 a_1 + ... + 2^{n-1} a_{n-1}`, so `a_0` is the least significant
//! bit. The bitwise sum is XOR and the second operation is addition modulo
//! `2^n`.
//!
//! The rotation `R` by `r` bits sends the bit at index `i` to index
//! `(i + r) mod n`. Written as a display string `(a_0, ..., a_{n-1})` this is
//! a right rotation; on the integer encoding it is a rotation toward the more
//! significant end, i.e. `rotate_left`. GOST's `<<< 11` is the `r = 11` case.
//!
//! ```text
//! n = 4, r = 1:   (1,0,0,0) -> (0,1,0,0)      value 1 -> value 2
//! ```

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 64;

/// Largest width for which subgroup member sets are materialized.
pub const MATERIALIZE_WIDTH: u32 = 20;

#[inline]
pub fn mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Rotation by `r` bits on `n`-bit words (bit `i` moves to bit `(i + r) mod n`).
#[inline]
pub fn rotate_raw(x: u64, r: u32, n: u32) -> u64 {
    if r == 0 {
        return x;
    }
    ((x << r) | (x >> (n - r))) & mask(n)
}

#[inline]
pub fn boxplus_raw(a: u64, b: u64, n: u32) -> u64 {
    a.wrapping_add(b) & mask(n)
}

#[inline]
pub fn boxminus_raw(a: u64, n: u32) -> u64 {
    a.wrapping_neg() & mask(n)
}

fn check_width(n: u32) -> Result<()> {
    if (2..=MAX_WIDTH).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidWidth(n))
    }
}

/// An element of `F_2^n`, equivalently of `Z_{2^n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    value: u64,
    width: u32,
}

impl Word {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        check_width(width)?;
        if value & !mask(width) != 0 {
            return Err(Error::ValueOutOfRange { value, width });
        }
        Ok(Word { value, width })
    }

    pub fn zero(width: u32) -> Result<Self> {
        Word::new(0, width)
    }

    /// Builds a word from its bit string `(a_0, ..., a_{n-1})`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let width = u32::try_from(bits.len()).map_err(|_| Error::InvalidWidth(u32::MAX))?;
        check_width(width)?;
        let value = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Ok(Word { value, width })
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.width).map(|i| (self.value >> i) & 1 == 1).collect()
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    fn same_width(&self, other: &Word) -> Result<()> {
        if self.width == other.width {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            })
        }
    }

    /// Bitwise sum.
    pub fn xor(&self, other: &Word) -> Result<Word> {
        self.same_width(other)?;
        Ok(Word {
            value: self.value ^ other.value,
            width: self.width,
        })
    }

    /// Sum modulo `2^n`.
    pub fn boxplus(&self, other: &Word) -> Result<Word> {
        self.same_width(other)?;
        Ok(Word {
            value: boxplus_raw(self.value, other.value, self.width),
            width: self.width,
        })
    }

    /// Opposite with respect to `boxplus`.
    pub fn boxminus(&self) -> Word {
        Word {
            value: boxminus_raw(self.value, self.width),
            width: self.width,
        }
    }

    pub fn rotate(&self, r: u32) -> Result<Word> {
        if r >= self.width {
            return Err(Error::RotationOutOfRange { r, n: self.width });
        }
        Ok(Word {
            value: rotate_raw(self.value, r, self.width),
            width: self.width,
        })
    }

    /// Lowercase hex of the integer value, without prefix.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.value)
    }

    /// Parses hex with or without a `0x` prefix.
    pub fn from_hex(s: &str, width: u32) -> Result<Word> {
        let digits = s
            .trim()
            .strip_prefix("0x")
            .or_else(|| s.trim().strip_prefix("0X"))
            .unwrap_or(s.trim());
        let value =
            u64::from_str_radix(digits, 16).map_err(|e| Error::MalformedSpec(format!("bad hex word {s:?}: {e}")))?;
        Word::new(value, width)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:#x}/{})", self.value, self.width)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.value)
    }
}

/// The unique involution `2^{n-1} = (0, ..., 0, 1)` of `Z_{2^n}`.
pub fn involution(n: u32) -> Result<Word> {
    check_width(n)?;
    Word::new(1u64 << (n - 1), n)
}

/// The subgroup `<2^q>` of `Z_{2^n}`: all multiples of `2^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupQ {
    q: u32,
    n: u32,
}

impl SubgroupQ {
    pub fn new(q: u32, n: u32) -> Result<Self> {
        check_width(n)?;
        if q > n {
            return Err(Error::ExponentOutOfRange { q, n });
        }
        Ok(SubgroupQ { q, n })
    }

    /// The chain `<2^0> > <2^1> > ... > <2^n>`.
    pub fn all(n: u32) -> Result<Vec<SubgroupQ>> {
        check_width(n)?;
        Ok((0..=n).map(|q| SubgroupQ { q, n }).collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `2^{n-q}`.
    pub fn order(&self) -> u64 {
        if self.n - self.q >= 64 {
            u64::MAX
        } else {
            1u64 << (self.n - self.q)
        }
    }

    /// Membership: the low `q` bits are zero.
    pub fn contains_raw(&self, x: u64) -> bool {
        x & mask(self.q) == 0 && x & !mask(self.n) == 0
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.width == self.n && self.contains_raw(w.value)
    }

    /// Members in ascending order. Only materialized for `n <= 20`.
    pub fn members(&self) -> Result<Vec<Word>> {
        Ok(self
            .members_raw()?
            .into_iter()
            .map(|value| Word { value, width: self.n })
            .collect())
    }

    pub fn members_raw(&self) -> Result<Vec<u64>> {
        if self.n > MATERIALIZE_WIDTH {
            return Err(Error::Unsupported(format!(
                "subgroup members are materialized only for n <= {MATERIALIZE_WIDTH}; use contains()"
            )));
        }
        let step = 1u64 << self.q.min(63);
        if self.q == self.n {
            return Ok(vec![0]);
        }
        Ok((0..self.order()).map(|i| i * step).collect())
    }
}

/// The endomorphism `x -> z x` of `Z_{2^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endo {
    z: u64,
    n: u32,
}

impl Endo {
    pub fn new(z: u64, n: u32) -> Result<Self> {
        check_width(n)?;
        Ok(Endo { z: z & mask(n), n })
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn is_automorphism(&self) -> bool {
        self.z & 1 == 1
    }

    pub fn apply_raw(&self, x: u64) -> u64 {
        self.z.wrapping_mul(x) & mask(self.n)
    }

    pub fn apply(&self, x: &Word) -> Result<Word> {
        if x.width != self.n {
            return Err(Error::WidthMismatch {
                left: self.n,
                right: x.width,
            });
        }
        Ok(Word {
            value: self.apply_raw(x.value),
            width: self.n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: u64, n: u32) -> Word {
        Word::new(v, n).unwrap()
    }

    #[test]
    fn xor_examples() {
        // (1,1,0) + (1,0,0) = (0,1,0)
        let a = Word::from_bits(&[true, true, false]).unwrap();
        let b = Word::from_bits(&[true, false, false]).unwrap();
        assert_eq!(a.xor(&b).unwrap().bits(), vec![false, true, false]);
        assert_eq!(w(0b1010, 4).xor(&w(0b0110, 4)).unwrap(), w(0b1100, 4));
        for v in 0..16 {
            assert_eq!(w(v, 4).xor(&w(v, 4)).unwrap(), w(0, 4));
        }
    }

    #[test]
    fn boxplus_examples() {
        let a = Word::from_bits(&[true, true, false]).unwrap();
        let b = Word::from_bits(&[true, false, false]).unwrap();
        assert_eq!(a.boxplus(&b).unwrap().bits(), vec![false, false, true]);
        assert_eq!(w(0, 3).boxminus(), w(0, 3));
        assert_eq!(w(1, 3).boxminus(), w(7, 3));
    }

    #[test]
    fn width_mismatch_rejected() {
        assert!(matches!(
            w(1, 3).xor(&w(1, 4)),
            Err(Error::WidthMismatch { left: 3, right: 4 })
        ));
        assert!(w(1, 3).boxplus(&w(1, 4)).is_err());
        assert!(Word::new(8, 3).is_err());
        assert!(Word::new(0, 1).is_err());
    }

    #[test]
    fn rotate_examples() {
        let a = Word::from_bits(&[true, false, false, false]).unwrap();
        assert_eq!(a.rotate(1).unwrap().bits(), vec![false, true, false, false]);
        for v in 0..16 {
            assert_eq!(w(v, 4).rotate(0).unwrap(), w(v, 4));
            for r in 1..4 {
                let back = w(v, 4).rotate(r).unwrap().rotate(4 - r).unwrap();
                assert_eq!(back, w(v, 4));
            }
        }
        assert!(matches!(
            w(1, 4).rotate(4),
            Err(Error::RotationOutOfRange { r: 4, n: 4 })
        ));
    }

    #[test]
    fn rotate_matches_display_formula() {
        // (a_0..a_{n-1})R = (a_{n-r}, ..., a_{n-1}, a_0, ..., a_{n-r-1})
        let n = 7;
        for v in 0..(1u64 << n) {
            let bits = w(v, n).bits();
            for r in 0..n {
                let mut expected = bits[(n - r) as usize..].to_vec();
                expected.extend_from_slice(&bits[..(n - r) as usize]);
                assert_eq!(w(v, n).rotate(r).unwrap().bits(), expected);
            }
        }
    }

    #[test]
    fn subgroup_members_examples() {
        let vals = |q, n| -> Vec<u64> {
            SubgroupQ::new(q, n)
                .unwrap()
                .members()
                .unwrap()
                .iter()
                .map(Word::value)
                .collect()
        };
        assert_eq!(vals(1, 2), vec![0, 2]);
        assert_eq!(vals(5, 5), vec![0]);
        assert_eq!(vals(0, 4), (0..16).collect::<Vec<_>>());
        assert!(SubgroupQ::new(5, 4).is_err());
        assert!(SubgroupQ::new(3, 32).unwrap().members().is_err());
        assert!(SubgroupQ::new(3, 32).unwrap().contains(&w(8, 32)));
    }

    #[test]
    fn endo_examples() {
        assert_eq!(Endo::new(3, 3).unwrap().apply(&w(5, 3)).unwrap(), w(7, 3));
        for v in 0..8 {
            assert_eq!(Endo::new(1, 3).unwrap().apply(&w(v, 3)).unwrap(), w(v, 3));
        }
        let inv = involution(4).unwrap();
        for z in 0..16u64 {
            let image = Endo::new(z, 4).unwrap().apply(&inv).unwrap();
            if z % 2 == 0 {
                assert_eq!(image.value(), 0);
            } else {
                assert_eq!(image, inv);
            }
        }
    }

    #[test]
    fn involution_examples() {
        let inv = involution(4).unwrap();
        assert_eq!(inv.value(), 8);
        assert_eq!(inv.bits(), vec![false, false, false, true]);
        assert_eq!(inv.boxplus(&inv).unwrap().value(), 0);
    }

    #[test]
    fn group_structures_exhaustive() {
        for n in 2..=6u32 {
            let size = 1u64 << n;
            // (Word, boxplus) is cyclic of order 2^n: 1 has order exactly 2^n.
            let one = w(1, n);
            let mut acc = w(0, n);
            for i in 1..=size {
                acc = acc.boxplus(&one).unwrap();
                assert_eq!(acc.value() == 0, i == size);
            }
            for a in 0..size {
                let wa = w(a, n);
                assert_eq!(wa.xor(&wa).unwrap().value(), 0);
                assert_eq!(wa.boxplus(&wa.boxminus()).unwrap().value(), 0);
                for b in 0..size {
                    let wb = w(b, n);
                    assert_eq!(wa.xor(&wb).unwrap(), wb.xor(&wa).unwrap());
                    assert_eq!(wa.boxplus(&wb).unwrap(), wb.boxplus(&wa).unwrap());
                    assert_eq!(wa.xor(&wb).unwrap().xor(&wb).unwrap(), wa);
                }
            }
        }
    }

    #[test]
    fn subgroup_chain_and_full_invariance() {
        for n in 2..=6u32 {
            let subs = SubgroupQ::all(n).unwrap();
            assert_eq!(subs.len() as u32, n + 1);
            for s in &subs {
                let members = s.members_raw().unwrap();
                assert_eq!(members.len() as u64, s.order());
                for &a in &members {
                    for &b in &members {
                        assert!(s.contains_raw(boxplus_raw(a, b, n)));
                        assert!(s.contains_raw(a ^ b));
                    }
                    for z in 0..(1u64 << n) {
                        assert!(s.contains_raw(Endo::new(z, n).unwrap().apply_raw(a)));
                    }
                }
            }
        }
    }

    #[test]
    fn involution_xor_equals_boxplus() {
        for n in 2..=8u32 {
            let inv = involution(n).unwrap();
            for x in 0..(1u64 << n) {
                let x = w(x, n);
                assert_eq!(x.xor(&inv).unwrap(), x.boxplus(&inv).unwrap());
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        assert_eq!(w(0xbeef, 16).to_hex(), "beef");
        assert_eq!(Word::from_hex("0xBEEF", 16).unwrap(), w(0xbeef, 16));
        assert!(Word::from_hex("1ff", 8).is_err());
        assert_eq!(w(u64::MAX, 64).rotate(13).unwrap().value(), u64::MAX);
    }
}
