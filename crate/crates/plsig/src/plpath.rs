//! The group of piecewise linear paths.
//!
//! A path is a word of edge vectors in `V = ℚ^dim`, up to the relations
//!
//! * `(v, w) ~ (v + w)` when `v` and `w` are linearly dependent,
//! * `(0) ~ ∅`.
//!
//! Rewriting by these relations is confluent and strictly shortens words, so
//! every element has a unique *minimal representative*: a word with no zero
//! letters in which every consecutive pair of letters is linearly
//! independent. Two words represent the same group element iff their minimal
//! forms are identical, which is what [`PlWord::equivalent`] checks.

use crate::geom::Triangle;
use crate::linalg::{self, RatVec};
use crate::{Error, Result};

/// A word of edge vectors representing a piecewise linear path from the
/// origin. The letter list is kept as given; use [`PlWord::reduce`] for the
/// minimal representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlWord {
    dim: usize,
    letters: Vec<RatVec>,
}

impl PlWord {
    pub fn new(dim: usize, letters: Vec<RatVec>) -> Result<Self> {
        for l in &letters {
            if l.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: l.dim(),
                });
            }
        }
        Ok(PlWord { dim, letters })
    }

    pub fn empty(dim: usize) -> Self {
        PlWord {
            dim,
            letters: Vec::new(),
        }
    }

    /// Single-letter word, or the empty word for a zero vector.
    pub fn segment(v: RatVec) -> Self {
        let dim = v.dim();
        if v.is_zero() {
            Self::empty(dim)
        } else {
            PlWord {
                dim,
                letters: vec![v],
            }
        }
    }

    pub fn from_i64(dim: usize, letters: &[&[i64]]) -> Self {
        PlWord::new(
            dim,
            letters.iter().map(|l| RatVec::from_i64(l)).collect(),
        )
        .expect("consistent dims")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn letters(&self) -> &[RatVec] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The unique minimal representative. Leftmost-innermost rewriting: each
    /// incoming letter is merged with the top of a stack while dependent;
    /// zero letters are dropped. Confluence makes the rewrite order
    /// irrelevant, so a single left-to-right pass with local restarts
    /// suffices.
    pub fn reduce(&self) -> PlWord {
        let mut stack: Vec<RatVec> = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            if letter.is_zero() {
                continue;
            }
            let mut cur = letter.clone();
            loop {
                match stack.last() {
                    Some(top) if linalg::linearly_dependent(top, &cur) => {
                        let top = stack.pop().unwrap();
                        cur = &top + &cur;
                        if cur.is_zero() {
                            break;
                        }
                    }
                    _ => {
                        stack.push(cur);
                        break;
                    }
                }
            }
        }
        PlWord {
            dim: self.dim,
            letters: stack,
        }
    }

    pub fn is_minimal(&self) -> bool {
        if self.letters.iter().any(RatVec::is_zero) {
            return false;
        }
        self.letters
            .windows(2)
            .all(|w| !linalg::linearly_dependent(&w[0], &w[1]))
    }

    /// Group product, returned reduced.
    pub fn concat(&self, other: &PlWord) -> Result<PlWord> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(PlWord {
            dim: self.dim,
            letters,
        }
        .reduce())
    }

    /// Group inverse: `(v₁,…,v_k)⁻¹ = (−v_k,…,−v₁)`.
    pub fn inverse(&self) -> PlWord {
        PlWord {
            dim: self.dim,
            letters: self.letters.iter().rev().map(|v| -v).collect(),
        }
    }

    /// Endpoint of the path: the sum of the letters.
    pub fn endpoint(&self) -> RatVec {
        let mut acc = RatVec::zero(self.dim);
        for l in &self.letters {
            acc = &acc + l;
        }
        acc
    }

    /// Partial sums `0 = p̂₀, p̂₁, …, p̂_k` of the letters as given.
    pub fn partial_sums(&self) -> Vec<RatVec> {
        let mut acc = RatVec::zero(self.dim);
        let mut out = vec![acc.clone()];
        for l in &self.letters {
            acc = &acc + l;
            out.push(acc.clone());
        }
        out
    }

    /// Echelon basis of the span of the minimal representative's letters.
    pub fn span_basis(&self) -> Vec<RatVec> {
        linalg::rref(&self.reduce().letters).0
    }

    pub fn span_dim(&self) -> usize {
        self.span_basis().len()
    }

    pub fn is_loop(&self) -> bool {
        self.endpoint().is_zero()
    }

    /// A planar loop: a loop whose span has dimension at most two.
    pub fn is_planar_loop(&self) -> bool {
        self.is_loop() && self.span_dim() <= 2
    }

    /// Same group element?
    pub fn equivalent(&self, other: &PlWord) -> bool {
        self.dim == other.dim && self.reduce().letters == other.reduce().letters
    }

    /// Fan factorization of a loop into triangles `[0, p̂ᵢ, p̂ᵢ₊₁]` over the
    /// minimal representative's partial sums, degenerate ones omitted. The
    /// signed soup of these triangles realizes the cone of the loop.
    pub fn triangle_fan(&self) -> Result<Vec<Triangle>> {
        if !self.is_loop() {
            return Err(Error::NotALoop);
        }
        let min = self.reduce();
        let sums = min.partial_sums();
        let k = min.len();
        let mut out = Vec::new();
        if k < 3 {
            return Ok(out); // empty loop (minimal loops have length 0 or ≥ 3)
        }
        let origin = RatVec::zero(self.dim);
        for i in 1..k - 1 {
            let t = Triangle::new(origin.clone(), sums[i].clone(), sums[i + 1].clone());
            if !t.is_degenerate() {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// Image under a linear map given by rows (one row per output
    /// coordinate), returned reduced.
    pub fn apply_linear_map(&self, rows: &[RatVec]) -> Result<PlWord> {
        for row in rows {
            if row.dim() != self.dim {
                return Err(Error::DimMismatch {
                    expected: self.dim,
                    found: row.dim(),
                });
            }
        }
        let letters = self
            .letters
            .iter()
            .map(|l| linalg::apply_matrix(rows, l))
            .collect();
        Ok(PlWord {
            dim: rows.len(),
            letters,
        }
        .reduce())
    }
}

/// The triangular loop `η(v, u) = (v, u−v, −u)`, reduced.
pub fn triangle_loop(v: &RatVec, u: &RatVec) -> PlWord {
    PlWord {
        dim: v.dim(),
        letters: vec![v.clone(), u - v, -u],
    }
    .reduce()
}

/// Boundary loop of a triangle conjugated to the origin is not taken here;
/// this is the loop of edge vectors based at `t.p0`.
pub fn triangle_boundary_loop(t: &Triangle) -> PlWord {
    PlWord {
        dim: t.dim(),
        letters: vec![
            &t.p1 - &t.p0,
            &t.p2 - &t.p1,
            &t.p0 - &t.p2,
        ],
    }
    .reduce()
}

/// Embedding of a free group word. `images[a]` is the vector assigned to
/// alphabet letter `a`; the images must be pairwise independent and nonzero.
/// The word is a list of `(letter, exponent)` pairs.
pub fn free_group_embed(images: &[RatVec], word: &[(usize, i64)]) -> Result<PlWord> {
    let dim = images
        .first()
        .map(RatVec::dim)
        .ok_or_else(|| Error::InvalidInput("empty alphabet".into()))?;
    for v in images {
        if v.is_zero() {
            return Err(Error::InvalidInput("zero image vector".into()));
        }
    }
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if linalg::linearly_dependent(&images[i], &images[j]) {
                return Err(Error::InvalidInput(
                    "alphabet images must be pairwise independent".into(),
                ));
            }
        }
    }
    // reduce the free-group word first
    let mut reduced: Vec<(usize, i64)> = Vec::new();
    for &(a, n) in word {
        if a >= images.len() {
            return Err(Error::InvalidInput("letter out of range".into()));
        }
        if n == 0 {
            continue;
        }
        match reduced.last_mut() {
            Some((b, m)) if *b == a => {
                *m += n;
                if *m == 0 {
                    reduced.pop();
                }
            }
            _ => reduced.push((a, n)),
        }
    }
    let letters = reduced
        .iter()
        .map(|&(a, n)| images[a].scale(&crate::rat::rat_int(n)))
        .collect();
    Ok(PlWord { dim, letters }.reduce())
}
