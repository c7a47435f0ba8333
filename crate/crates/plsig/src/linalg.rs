//! Exact rational vectors and Gaussian elimination.
//!
//! Deterministic by construction: reduced row echelon form always eliminates
//! in column order, so echelon bases, pivot solutions and kernel bases are
//! reproducible across runs and platforms.

use crate::rat::Rat;
use crate::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

/// A vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(pub Vec<Rat>);

impl RatVec {
    pub fn zero(dim: usize) -> Self {
        RatVec(vec![Rat::zero(); dim])
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RatVec(entries.iter().map(|&n| crate::rat::rat_int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatVec(self.0.iter().map(|x| x * c).collect())
    }

    /// Componentwise `self + c·other`.
    pub fn add_scaled(&self, c: &Rat, other: &Self) -> Self {
        RatVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::rat::format_rat(x))?;
        }
        write!(f, ")")
    }
}

/// Two vectors are linearly dependent iff all 2×2 minors vanish
/// (zero vectors are dependent on everything).
pub fn linearly_dependent(a: &RatVec, b: &RatVec) -> bool {
    debug_assert_eq!(a.dim(), b.dim());
    if a.is_zero() || b.is_zero() {
        return true;
    }
    let n = a.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            if &a.0[i] * &b.0[j] != &a.0[j] * &b.0[i] {
                return false;
            }
        }
    }
    true
}

/// Reduced row echelon form of the rows. Returns the nonzero rows together
/// with their pivot columns (strictly increasing). Elimination proceeds in
/// column order, so the result is canonical for the row space.
pub fn rref(rows: &[RatVec]) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.0.clone()).collect();
    let ncols = rows.first().map_or(0, RatVec::dim);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m.into_iter().map(RatVec).collect(), pivots)
}

/// Rank of the span of the given vectors (exact Gaussian elimination).
/// All vectors must share a dimension.
pub fn span_dim(vs: &[RatVec]) -> Result<usize> {
    if let Some(first) = vs.first() {
        for v in vs {
            if v.dim() != first.dim() {
                return Err(Error::DimMismatch {
                    expected: first.dim(),
                    found: v.dim(),
                });
            }
        }
    }
    Ok(rref(vs).0.len())
}

/// Solves `A x = b` where `a_rows` are the rows of `A`. Returns the pivot
/// solution (free variables set to zero), or `None` when inconsistent.
pub fn solve_linear(a_rows: &[RatVec], b: &RatVec) -> Option<RatVec> {
    assert_eq!(a_rows.len(), b.dim(), "row count must match rhs length");
    let ncols = a_rows.first().map_or(0, RatVec::dim);
    // eliminate on the augmented matrix
    let augmented: Vec<RatVec> = a_rows
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut v = row.0.clone();
            v.push(bi.clone());
            RatVec(v)
        })
        .collect();
    let (rows, pivots) = rref(&augmented);
    let mut x = vec![Rat::zero(); ncols];
    for (row, &p) in rows.iter().zip(&pivots) {
        if p == ncols {
            return None; // pivot in the augmented column: inconsistent
        }
        x[p] = row.0[ncols].clone();
    }
    Some(RatVec(x))
}

/// Basis of `ker A` in reduced echelon form, one vector per free column, in
/// column order. `ncols` fixes the domain dimension (needed when `A` has no
/// rows).
pub fn kernel_basis(a_rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let (rows, pivots) = rref(a_rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row.0[free].clone();
        }
        basis.push(RatVec(v));
    }
    basis
}

/// Applies a linear map given by rows (one row per output coordinate).
pub fn apply_matrix(rows: &[RatVec], v: &RatVec) -> RatVec {
    RatVec(
        rows.iter()
            .map(|row| {
                debug_assert_eq!(row.dim(), v.dim());
                row.iter()
                    .zip(v.iter())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect(),
    )
}
