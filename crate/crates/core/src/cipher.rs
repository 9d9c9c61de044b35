//! The GOST-like cipher: bricklayer S-boxes, `S = gamma R`, the Feistel map
//! `Sigma`, translations `rho_k`, the GOST round and the generalized round.
//!
//! Bricks are numbered `1..=delta` from the least significant end: brick `j`
//! occupies bits `[(j-1)m, jm - 1]`. All maps act on the right, so a
//! composition `f g` means "first `f`, then `g`".

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::word::{boxminus_raw, boxplus_raw, mask, rotate_raw, Word};

/// S-box tables wider than this are rejected.
pub const MAX_BRICK_WIDTH: u32 = 16;

/// `S` is tabulated for words up to this width.
const S_TABLE_WIDTH: u32 = 16;

/// A state `(x_1, x_2)` as raw integers.
pub type RawState = (u64, u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CipherParams {
    pub n: u32,
    pub m: u32,
    pub delta: u32,
    pub r: u32,
}

impl CipherParams {
    /// Structural checks only: `n = delta * m`, `2 <= n <= 64`, `r < n`.
    /// Brick-count and brick-width conditions of the theorem are reported
    /// by [`validate_spec`], not enforced here.
    pub fn new(n: u32, m: u32, delta: u32, r: u32) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::InvalidParams(format!("n = {n} must lie in 2..=64")));
        }
        if m == 0 || delta == 0 || m.checked_mul(delta) != Some(n) {
            return Err(Error::InvalidParams(format!(
                "n = {n} is not delta * m = {delta} * {m}"
            )));
        }
        if m > MAX_BRICK_WIDTH {
            return Err(Error::InvalidParams(format!(
                "brick width m = {m} exceeds {MAX_BRICK_WIDTH}"
            )));
        }
        if r >= n {
            return Err(Error::RotationOutOfRange { r, n });
        }
        Ok(CipherParams { n, m, delta, r })
    }

    /// `m <= r <= (delta - 1) m`.
    pub fn conforming(&self) -> bool {
        self.m <= self.r && self.r <= (self.delta - 1) * self.m
    }

    pub fn is_real_gost(&self) -> bool {
        (self.n, self.m, self.delta, self.r) == (32, 4, 8, 11)
    }

    /// Number of states, `2^{2n}`, if it fits in a `u64`.
    pub fn state_count(&self) -> Option<u64> {
        1u64.checked_shl(2 * self.n)
    }
}

/// The `delta` S-box tables, brick 1 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SBoxSet {
    m: u32,
    tables: Vec<Vec<u32>>,
}

impl SBoxSet {
    /// Rejects tables of the wrong length or with out-of-range entries.
    /// Non-bijective tables are accepted.
    pub fn new(m: u32, tables: Vec<Vec<u32>>) -> Result<Self> {
        if m == 0 || m > MAX_BRICK_WIDTH {
            return Err(Error::InvalidParams(format!("brick width m = {m}")));
        }
        let size = 1usize << m;
        for (index, t) in tables.iter().enumerate() {
            if t.len() != size {
                return Err(Error::InvalidTable {
                    index,
                    reason: format!("length {} but 2^m = {size}", t.len()),
                });
            }
            if let Some((pos, &v)) = t.iter().enumerate().find(|(_, &v)| v as usize >= size) {
                return Err(Error::InvalidTable {
                    index,
                    reason: format!("entry {pos} = {v} is not below 2^m = {size}"),
                });
            }
        }
        Ok(SBoxSet { m, tables })
    }

    pub fn identity(m: u32, delta: u32) -> Result<Self> {
        let id: Vec<u32> = (0..(1u32 << m)).collect();
        SBoxSet::new(m, vec![id; delta as usize])
    }

    pub fn random_bijective<R: Rng + ?Sized>(m: u32, delta: u32, rng: &mut R) -> Result<Self> {
        let tables = (0..delta)
            .map(|_| {
                let mut t: Vec<u32> = (0..(1u32 << m)).collect();
                t.shuffle(rng);
                t
            })
            .collect();
        SBoxSet::new(m, tables)
    }

    /// Random tables where one randomly chosen S-box has a forced collision.
    pub fn random_non_bijective<R: Rng + ?Sized>(m: u32, delta: u32, rng: &mut R) -> Result<Self> {
        let mut set = SBoxSet::random_bijective(m, delta, rng)?;
        let j = rng.gen_range(0..delta as usize);
        let size = 1usize << m;
        let a = rng.gen_range(0..size);
        let b = (a + rng.gen_range(1..size)) % size;
        set.tables[j][b] = set.tables[j][a];
        Ok(set)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn delta(&self) -> u32 {
        self.tables.len() as u32
    }

    pub fn tables(&self) -> &[Vec<u32>] {
        &self.tables
    }

    /// Per-table bijectivity.
    pub fn bijective(&self) -> Vec<bool> {
        self.tables
            .iter()
            .map(|t| {
                let mut seen = vec![false; t.len()];
                t.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
            })
            .collect()
    }

    pub fn all_bijective(&self) -> bool {
        self.bijective().into_iter().all(|b| b)
    }

    pub fn apply_brick(&self, j: usize, v: u64) -> u64 {
        u64::from(self.tables[j][v as usize])
    }

    /// The bricklayer map `gamma` on a raw word.
    pub fn gamma_raw(&self, x: u64) -> u64 {
        let bm = mask(self.m);
        self.tables.iter().enumerate().fold(0u64, |acc, (j, t)| {
            let shift = j as u32 * self.m;
            acc | (u64::from(t[((x >> shift) & bm) as usize]) << shift)
        })
    }
}

/// A cipher state `(x_1, x_2)`; also used for key pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub left: Word,
    pub right: Word,
}

impl State {
    pub fn new(left: Word, right: Word) -> Result<Self> {
        if left.width() != right.width() {
            return Err(Error::WidthMismatch {
                left: left.width(),
                right: right.width(),
            });
        }
        Ok(State { left, right })
    }

    pub fn from_raw(left: u64, right: u64, n: u32) -> Result<Self> {
        State::new(Word::new(left, n)?, Word::new(right, n)?)
    }

    pub fn raw(&self) -> RawState {
        (self.left.value(), self.right.value())
    }

    pub fn width(&self) -> u32 {
        self.left.width()
    }

    /// Componentwise opposite.
    pub fn boxminus(&self) -> State {
        State {
            left: self.left.boxminus(),
            right: self.right.boxminus(),
        }
    }
}

/// Index of a state in dense permutation tables: `left + 2^n right`.
#[inline]
pub fn state_index((l, r): RawState, n: u32) -> usize {
    (l | (r << n)) as usize
}

#[inline]
pub fn index_state(i: usize, n: u32) -> RawState {
    let i = i as u64;
    (i & mask(n), i >> n)
}

/// Cipher parameters together with their S-boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherSpec {
    params: CipherParams,
    sboxes: SBoxSet,
    s_table: Option<Vec<u64>>,
}

impl CipherSpec {
    pub fn new(params: CipherParams, sboxes: SBoxSet) -> Result<Self> {
        if sboxes.m() != params.m || sboxes.delta() != params.delta {
            return Err(Error::InvalidParams(format!(
                "S-box set has {} tables of width {}, parameters need {} of width {}",
                sboxes.delta(),
                sboxes.m(),
                params.delta,
                params.m
            )));
        }
        let mut spec = CipherSpec {
            params,
            sboxes,
            s_table: None,
        };
        if params.n <= S_TABLE_WIDTH {
            let table = (0..(1u64 << params.n)).map(|x| spec.s_uncached(x)).collect();
            spec.s_table = Some(table);
        }
        Ok(spec)
    }

    pub fn identity(params: CipherParams) -> Result<Self> {
        CipherSpec::new(params, SBoxSet::identity(params.m, params.delta)?)
    }

    pub fn random_bijective<R: Rng + ?Sized>(params: CipherParams, rng: &mut R) -> Result<Self> {
        CipherSpec::new(params, SBoxSet::random_bijective(params.m, params.delta, rng)?)
    }

    pub fn params(&self) -> &CipherParams {
        &self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn sboxes(&self) -> &SBoxSet {
        &self.sboxes
    }

    fn s_uncached(&self, x: u64) -> u64 {
        rotate_raw(self.sboxes.gamma_raw(x), self.params.r, self.params.n)
    }

    #[inline]
    pub fn gamma_raw(&self, x: u64) -> u64 {
        self.sboxes.gamma_raw(x)
    }

    /// `x S = (x gamma) R`.
    #[inline]
    pub fn s_raw(&self, x: u64) -> u64 {
        match &self.s_table {
            Some(t) => t[x as usize],
            None => self.s_uncached(x),
        }
    }

    #[inline]
    pub fn sigma_raw(&self, (x1, x2): RawState) -> RawState {
        (x2, x1 ^ self.s_raw(x2))
    }

    #[inline]
    pub fn sigma_inverse_raw(&self, (y1, y2): RawState) -> RawState {
        (y2 ^ self.s_raw(y1), y1)
    }

    #[inline]
    pub fn rho_raw(&self, (k1, k2): RawState, (x1, x2): RawState) -> RawState {
        let n = self.params.n;
        (boxplus_raw(x1, k1, n), boxplus_raw(x2, k2, n))
    }

    /// `tau_k: (x_1, x_2) -> (x_2, x_1 + (x_2 [+] k) S)`.
    #[inline]
    pub fn gost_round_raw(&self, k: u64, (x1, x2): RawState) -> RawState {
        (x2, x1 ^ self.s_raw(boxplus_raw(x2, k, self.params.n)))
    }

    /// `rho_k Sigma rho_h`.
    #[inline]
    pub fn generalized_round_raw(&self, k: RawState, h: RawState, x: RawState) -> RawState {
        let n = self.params.n;
        let (x1, x2) = x;
        let a = boxplus_raw(x2, k.1, n);
        (
            boxplus_raw(a, h.0, n),
            boxplus_raw(boxplus_raw(x1, k.0, n) ^ self.s_raw(a), h.1, n),
        )
    }

    /// Inverse of [`Self::generalized_round_raw`]: `rho_{-h} Sigma^{-1} rho_{-k}`.
    pub fn generalized_round_inverse_raw(&self, k: RawState, h: RawState, y: RawState) -> RawState {
        let n = self.params.n;
        let minus_h = (boxminus_raw(h.0, n), boxminus_raw(h.1, n));
        let minus_k = (boxminus_raw(k.0, n), boxminus_raw(k.1, n));
        let y = self.rho_raw(minus_h, y);
        let y = self.sigma_inverse_raw(y);
        self.rho_raw(minus_k, y)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.width() == self.params.n {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                left: self.params.n,
                right: w.width(),
            })
        }
    }

    fn check_state(&self, st: &State) -> Result<()> {
        self.check_word(&st.left)?;
        self.check_word(&st.right)
    }

    fn wrap(&self, (l, r): RawState) -> State {
        let n = self.params.n;
        State {
            left: Word::new(l, n).expect("masked"),
            right: Word::new(r, n).expect("masked"),
        }
    }

    pub fn gamma_apply(&self, x: &Word) -> Result<Word> {
        self.check_word(x)?;
        Word::new(self.gamma_raw(x.value()), self.params.n)
    }

    pub fn s_apply(&self, x: &Word) -> Result<Word> {
        self.check_word(x)?;
        Word::new(self.s_raw(x.value()), self.params.n)
    }

    pub fn sigma_apply(&self, st: &State) -> Result<State> {
        self.check_state(st)?;
        Ok(self.wrap(self.sigma_raw(st.raw())))
    }

    pub fn sigma_inverse_apply(&self, st: &State) -> Result<State> {
        self.check_state(st)?;
        Ok(self.wrap(self.sigma_inverse_raw(st.raw())))
    }

    pub fn rho_apply(&self, k: &State, st: &State) -> Result<State> {
        self.check_state(k)?;
        self.check_state(st)?;
        Ok(self.wrap(self.rho_raw(k.raw(), st.raw())))
    }

    pub fn gost_round(&self, k: &Word, st: &State) -> Result<State> {
        self.check_word(k)?;
        self.check_state(st)?;
        Ok(self.wrap(self.gost_round_raw(k.value(), st.raw())))
    }

    pub fn generalized_round(&self, k: &State, h: &State, st: &State) -> Result<State> {
        self.check_state(k)?;
        self.check_state(h)?;
        self.check_state(st)?;
        Ok(self.wrap(self.generalized_round_raw(k.raw(), h.raw(), st.raw())))
    }

    pub fn generalized_round_inverse(&self, k: &State, h: &State, st: &State) -> Result<State> {
        self.check_state(k)?;
        self.check_state(h)?;
        self.check_state(st)?;
        Ok(self.wrap(self.generalized_round_inverse_raw(k.raw(), h.raw(), st.raw())))
    }
}

/// Outcome of checking a spec against the theorem's hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub params: CipherParams,
    pub conforming: bool,
    /// `None` when the spec carries no S-boxes.
    pub bijective: Option<Vec<bool>>,
    pub delta_at_least_4: bool,
    pub m_at_least_2: bool,
    pub real_gost: bool,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn all_bijective(&self) -> Option<bool> {
        self.bijective.as_ref().map(|b| b.iter().all(|&x| x))
    }

    /// All hypotheses of the main theorem hold.
    pub fn hypotheses_hold(&self) -> bool {
        self.conforming && self.all_bijective() == Some(true) && self.delta_at_least_4 && self.m_at_least_2
    }

    pub fn summary(&self) -> String {
        let mut parts = vec![if self.conforming {
            "conforming".to_string()
        } else {
            "non-conforming".to_string()
        }];
        if self.real_gost {
            parts.push("real-GOST parameters".into());
        }
        match self.all_bijective() {
            Some(true) => parts.push("bijective S-boxes".into()),
            Some(false) => parts.push("non-bijective S-boxes".into()),
            None => {}
        }
        parts.join("; ")
    }
}

/// Checks `n = delta m`, conformance of `r`, bijectivity of each table and
/// the theorem-scope flags. Violations become warnings, never errors: tables
/// that are structurally broken are rejected earlier, by [`SBoxSet::new`].
pub fn validate_spec(params: &CipherParams, sboxes: Option<&SBoxSet>) -> Result<ValidationReport> {
    if let Some(s) = sboxes {
        if s.m() != params.m || s.delta() != params.delta {
            return Err(Error::InvalidParams(format!(
                "{} S-boxes of width {} for delta = {}, m = {}",
                s.delta(),
                s.m(),
                params.delta,
                params.m
            )));
        }
    }
    let bijective = sboxes.map(SBoxSet::bijective);
    let mut warnings = Vec::new();
    let conforming = params.conforming();
    if !conforming {
        warnings.push(format!(
            "rotation extent r = {} outside [{}, {}]",
            params.r,
            params.m,
            (params.delta - 1) * params.m
        ));
    }
    if let Some(b) = &bijective {
        for (j, ok) in b.iter().enumerate() {
            if !ok {
                warnings.push(format!("S-box {} is not bijective", j + 1));
            }
        }
    }
    if params.delta < 4 {
        warnings.push(format!("delta = {} < 4", params.delta));
    }
    if params.m < 2 {
        warnings.push(format!("m = {} < 2", params.m));
    }
    Ok(ValidationReport {
        params: *params,
        conforming,
        bijective,
        delta_at_least_4: params.delta >= 4,
        m_at_least_2: params.m >= 2,
        real_gost: params.is_real_gost(),
        warnings,
    })
}
