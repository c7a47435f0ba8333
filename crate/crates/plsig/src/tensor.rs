//! Truncated tensor series with exact rational coefficients.
//!
//! A [`TruncatedTensor`] is a sparse element of `⊕_{k≤N} V^{⊗k}` for
//! `V = ℚ^dim`, keyed by index words over `{0, …, dim−1}`. The path signature
//! of a piecewise linear path is the ordered product of segment exponentials
//! `exp(v) = Σ v^{⊗k}/k!` over the letters of its minimal representative.

use crate::plpath::PlWord;
use crate::rat::{factorial, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Index word into `V^{⊗k}`: a sequence of letters in `0..dim`.
pub type Word = Vec<u8>;

/// Sparse truncated tensor series. Only nonzero coefficients are stored;
/// iteration order over components is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedTensor {
    dim: usize,
    level: usize,
    coeffs: BTreeMap<Word, Rat>,
}

impl TruncatedTensor {
    pub fn zero(dim: usize, level: usize) -> Self {
        TruncatedTensor {
            dim,
            level,
            coeffs: BTreeMap::new(),
        }
    }

    /// The multiplicative unit `1`.
    pub fn one(dim: usize, level: usize) -> Self {
        let mut t = Self::zero(dim, level);
        t.coeffs.insert(Vec::new(), Rat::one());
        t
    }

    /// A single basis word with coefficient `c`.
    pub fn monomial(dim: usize, level: usize, word: &[u8], c: Rat) -> Self {
        assert!(word.iter().all(|&i| (i as usize) < dim));
        let mut t = Self::zero(dim, level);
        if word.len() <= level && !c.is_zero() {
            t.coeffs.insert(word.to_vec(), c);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeff(&self, word: &[u8]) -> Rat {
        self.coeffs.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[])
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.level != other.level {
            return Err(Error::InvalidInput(format!(
                "level mismatch: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    fn insert(&mut self, word: Word, c: Rat) {
        if word.len() > self.level || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.insert(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.level);
        }
        TruncatedTensor {
            dim: self.dim,
            level: self.level,
            coeffs: self.coeffs.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Graded truncated concatenation product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.dim, self.level);
        for (wa, ca) in &self.coeffs {
            if wa.len() > self.level {
                continue;
            }
            for (wb, cb) in &other.coeffs {
                if wa.len() + wb.len() > self.level {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.insert(w, ca * cb);
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab − ba`, truncated.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Homogeneous degree-`k` part.
    pub fn degree_component(&self, k: usize) -> Self {
        TruncatedTensor {
            dim: self.dim,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Multiplicative inverse via the geometric series on the nilpotent part.
    /// Requires a nonzero constant term.
    pub fn tensor_inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::BadConstantTerm);
        }
        let cinv = c.recip();
        // g = c(1 + n) with n nilpotent; g⁻¹ = c⁻¹ Σ (−n)^k
        let mut n = self.scale(&cinv);
        n.coeffs.remove(&Vec::new());
        let mut acc = Self::one(self.dim, self.level);
        let mut pow = Self::one(self.dim, self.level);
        for _ in 0..self.level {
            pow = pow.mul(&n)?.scale(&-Rat::one());
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow)?;
        }
        Ok(acc.scale(&cinv))
    }

    /// Truncated logarithm (Mercator series). Requires constant term `1`.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != Rat::one() {
            return Err(Error::BadConstantTerm);
        }
        let mut n = self.clone();
        n.coeffs.remove(&Vec::new());
        let mut acc = Self::zero(self.dim, self.level);
        let mut pow = Self::one(self.dim, self.level);
        for k in 1..=self.level {
            pow = pow.mul(&n)?;
            if pow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&pow.scale(&(sign / crate::rat::rat_int(k as i64))))?;
        }
        Ok(acc)
    }

    /// Truncated exponential. Requires constant term `0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm);
        }
        let mut acc = Self::one(self.dim, self.level);
        let mut pow = Self::one(self.dim, self.level);
        for k in 1..=self.level {
            pow = pow.mul(self)?;
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow.scale(&factorial(k as u64).recip()))?;
        }
        Ok(acc)
    }

    /// Dynkin right-bracketing test for membership in the free Lie algebra:
    /// an element with zero constant term is a Lie series iff each degree-`k`
    /// component `x_k` satisfies `D(x_k) = k·x_k`, where `D` maps the word
    /// `i₁…i_k` to the right-nested bracket `[e_{i₁}, […, [e_{i_{k−1}}, e_{i_k}]…]]`.
    pub fn is_lie(&self) -> Result<bool> {
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm);
        }
        for k in 1..=self.max_degree() {
            let comp = self.degree_component(k);
            if comp.is_zero() {
                continue;
            }
            let mut mapped = Self::zero(self.dim, self.level);
            for (w, c) in &comp.coeffs {
                mapped = mapped.add(&dynkin_word(self.dim, self.level, w).scale(c))?;
            }
            if mapped != comp.scale(&crate::rat::rat_int(k as i64)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Right-nested bracketing of a single word.
fn dynkin_word(dim: usize, level: usize, w: &[u8]) -> TruncatedTensor {
    match w.len() {
        0 => TruncatedTensor::zero(dim, level),
        1 => TruncatedTensor::monomial(dim, level, w, Rat::one()),
        _ => {
            let head = TruncatedTensor::monomial(dim, level, &w[..1], Rat::one());
            let rest = dynkin_word(dim, level, &w[1..]);
            head.bracket(&rest).expect("compatible")
        }
    }
}

/// Segment exponential `exp(v) = Σ_{k≤N} v^{⊗k}/k!`.
pub fn exp_segment(v: &crate::linalg::RatVec, level: usize) -> TruncatedTensor {
    let dim = v.dim();
    let mut lin = TruncatedTensor::zero(dim, level);
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            lin.insert(vec![i as u8], c.clone());
        }
    }
    lin.exp().expect("zero constant term")
}

/// Path signature of a piecewise linear path: the ordered product of segment
/// exponentials over the minimal representative. Invariant under the choice
/// of representative.
pub fn path_signature(w: &PlWord, level: usize) -> TruncatedTensor {
    let mut acc = TruncatedTensor::one(w.dim(), level);
    for letter in w.reduce().letters() {
        acc = acc.mul(&exp_segment(letter, level)).expect("compatible");
    }
    acc
}
