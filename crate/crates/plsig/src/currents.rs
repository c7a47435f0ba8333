//! Polynomial differential forms and currents, with exact integration of
//! monomial 2-forms over triangle soups.
//!
//! A grade-`m` current is a sparse element of `S(V) ⊗ Λ^m V` in the monomial
//! basis `e^α ⊗ e_I` (`I` strictly increasing); a grade-`m` form lives in
//! `S(V^*) ⊗ Λ^m V^*` with basis `z^β dz_J`. The weight of a key is
//! `|α| + m`. The equivariant pairing is
//!
//! `⟨e^α ⊗ e_I, z^β dz_J⟩ = (−1)^{m(m−1)/2} α! δ_{α,β} δ_{I,J}`.
//!
//! The codifferential `∂`, the operator `e` dual to contraction with the
//! Euler field, and `ℓ = e∂ + ∂e` (multiplication by minus the weight on a
//! weight-graded piece) give the complementary projections onto closed
//! currents and onto `ker e`.

use crate::geom::Triangle;
use crate::rat::{multi_factorial, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Exponent vector of a monomial in `S(V)`, length = ambient dimension.
pub type MultiIdx = Vec<u32>;

/// Key of a sparse current/form component: `(α, I)` with `I` strictly
/// increasing and 0-based.
pub type Key = (MultiIdx, Vec<u8>);

fn key_weight(k: &Key) -> usize {
    k.0.iter().map(|&a| a as usize).sum::<usize>() + k.1.len()
}

/// Inserts index `i` into the strictly increasing list `is`, returning the
/// permutation sign, or `None` when `i` already occurs.
fn wedge_insert(i: u8, is: &[u8]) -> Option<(i8, Vec<u8>)> {
    if is.contains(&i) {
        return None;
    }
    let pos = is.iter().take_while(|&&j| j < i).count();
    let mut out = Vec::with_capacity(is.len() + 1);
    out.extend_from_slice(&is[..pos]);
    out.push(i);
    out.extend_from_slice(&is[pos..]);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((sign, out))
}

macro_rules! graded_sparse {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            dim: usize,
            grade: usize,
            coeffs: BTreeMap<Key, Rat>,
        }

        impl $name {
            pub fn zero(dim: usize, grade: usize) -> Self {
                $name {
                    dim,
                    grade,
                    coeffs: BTreeMap::new(),
                }
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            pub fn grade(&self) -> usize {
                self.grade
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn coeff(&self, key: &Key) -> Rat {
                self.coeffs.get(key).cloned().unwrap_or_else(Rat::zero)
            }

            pub fn iter(&self) -> impl Iterator<Item = (&Key, &Rat)> {
                self.coeffs.iter()
            }

            pub fn insert(&mut self, key: Key, c: Rat) {
                debug_assert_eq!(key.0.len(), self.dim);
                debug_assert_eq!(key.1.len(), self.grade);
                debug_assert!(key.1.windows(2).all(|w| w[0] < w[1]));
                if c.is_zero() {
                    return;
                }
                use std::collections::btree_map::Entry;
                match self.coeffs.entry(key) {
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
                if self.dim != other.dim || self.grade != other.grade {
                    return Err(Error::InvalidInput("grade or dim mismatch".into()));
                }
                let mut out = self.clone();
                for (k, c) in &other.coeffs {
                    out.insert(k.clone(), c.clone());
                }
                Ok(out)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.scale(&-Rat::one()))
            }

            pub fn scale(&self, c: &Rat) -> Self {
                if c.is_zero() {
                    return Self::zero(self.dim, self.grade);
                }
                $name {
                    dim: self.dim,
                    grade: self.grade,
                    coeffs: self
                        .coeffs
                        .iter()
                        .map(|(k, x)| (k.clone(), x * c))
                        .collect(),
                }
            }

            /// Component of homogeneous weight `r`.
            pub fn weight_component(&self, r: usize) -> Self {
                $name {
                    dim: self.dim,
                    grade: self.grade,
                    coeffs: self
                        .coeffs
                        .iter()
                        .filter(|(k, _)| key_weight(k) == r)
                        .map(|(k, c)| (k.clone(), c.clone()))
                        .collect(),
                }
            }

            pub fn max_weight(&self) -> usize {
                self.coeffs.keys().map(key_weight).max().unwrap_or(self.grade)
            }

            /// Drops all components of weight above `w`.
            pub fn truncate_weight(&self, w: usize) -> Self {
                $name {
                    dim: self.dim,
                    grade: self.grade,
                    coeffs: self
                        .coeffs
                        .iter()
                        .filter(|(k, _)| key_weight(k) <= w)
                        .map(|(k, c)| (k.clone(), c.clone()))
                        .collect(),
                }
            }
        }
    };
}

graded_sparse!(PolyCurrent);
graded_sparse!(PolyForm);

impl PolyCurrent {
    /// Multiplication by a vector in the symmetric-algebra factor.
    pub fn mul_vector(&self, v: &crate::linalg::RatVec) -> PolyCurrent {
        let mut out = PolyCurrent::zero(self.dim, self.grade);
        for (key, c) in &self.coeffs {
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                let mut alpha = key.0.clone();
                alpha[i] += 1;
                out.insert((alpha, key.1.clone()), c * vi);
            }
        }
        out
    }
}

/// The equivariant pairing of a grade-`m` current with a grade-`m` form.
pub fn pairing(c: &PolyCurrent, f: &PolyForm) -> Result<Rat> {
    if c.grade != f.grade {
        return Err(Error::InvalidInput(format!(
            "pairing grade mismatch: {} vs {}",
            c.grade, f.grade
        )));
    }
    if c.dim != f.dim {
        return Err(Error::DimMismatch {
            expected: c.dim,
            found: f.dim,
        });
    }
    let m = c.grade;
    let sign = if (m * (m - 1) / 2) % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    };
    let mut acc = Rat::zero();
    // iterate over the smaller map
    let (small, big_c, big_f) = if c.coeffs.len() <= f.coeffs.len() {
        (true, c, f)
    } else {
        (false, c, f)
    };
    if small {
        for (k, x) in big_c.iter() {
            if let Some(y) = big_f.coeffs.get(k) {
                acc += x * y * multi_factorial(&k.0);
            }
        }
    } else {
        for (k, y) in big_f.iter() {
            if let Some(x) = big_c.coeffs.get(k) {
                acc += x * y * multi_factorial(&k.0);
            }
        }
    }
    Ok(acc * sign)
}

/// Exterior derivative of a polynomial form.
pub fn exterior_d(f: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero(f.dim, f.grade + 1);
    for ((beta, js), c) in f.iter() {
        for i in 0..f.dim {
            let b = beta[i];
            if b == 0 {
                continue;
            }
            if let Some((sign, new_js)) = wedge_insert(i as u8, js) {
                let mut new_beta = beta.clone();
                new_beta[i] -= 1;
                let factor = Rat::from_integer(b.into())
                    * if sign > 0 { Rat::one() } else { -Rat::one() };
                out.insert((new_beta, new_js), c * factor);
            }
        }
    }
    out
}

/// Codifferential: the dual of `d` under the pairing,
/// `⟨∂α, ω⟩ = (−1)^m ⟨α, dω⟩`. On basis currents:
/// `∂(e^α ⊗ e_{i₁}∧…∧e_{i_m}) = Σ_p (−1)^p e^{α+e_{i_p}} ⊗ e_{i₁}∧…∧ê_{i_p}∧…`.
pub fn codifferential(c: &PolyCurrent) -> PolyCurrent {
    assert!(c.grade >= 1, "codifferential needs grade >= 1");
    let mut out = PolyCurrent::zero(c.dim, c.grade - 1);
    for ((alpha, is), x) in c.iter() {
        for (p, &i) in is.iter().enumerate() {
            let mut new_alpha = alpha.clone();
            new_alpha[i as usize] += 1;
            let mut new_is = is.clone();
            new_is.remove(p);
            let sign = if (p + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
            out.insert((new_alpha, new_is), x * sign);
        }
    }
    out
}

/// The operator dual to contraction with the Euler vector field:
/// `e(u₁⋯u_r ⊗ v₁∧…) = Σᵢ u₁⋯ûᵢ⋯u_r ⊗ uᵢ∧v₁∧…`.
pub fn e_op(c: &PolyCurrent) -> PolyCurrent {
    let mut out = PolyCurrent::zero(c.dim, c.grade + 1);
    for ((alpha, is), x) in c.iter() {
        for i in 0..c.dim {
            let a = alpha[i];
            if a == 0 {
                continue;
            }
            if let Some((sign, new_is)) = wedge_insert(i as u8, is) {
                let mut new_alpha = alpha.clone();
                new_alpha[i] -= 1;
                let factor = Rat::from_integer(a.into())
                    * if sign > 0 { Rat::one() } else { -Rat::one() };
                out.insert((new_alpha, new_is), x * factor);
            }
        }
    }
    out
}

/// `ℓ = e∘∂ + ∂∘e`: acts on a weight-`r` graded piece by `−r`.
pub fn ell(c: &PolyCurrent) -> PolyCurrent {
    let mut out = e_op(&codifferential(c));
    out = out.add(&codifferential(&e_op(c))).expect("same shape");
    out
}

/// Projection onto closed currents (`ker ∂`): `ℓ⁻¹ ∂ e`, weight by weight.
/// Requires every component to have positive weight.
pub fn project_closed(c: &PolyCurrent) -> PolyCurrent {
    apply_ell_inverse(&codifferential(&e_op(c)), c.dim, c.grade)
}

/// Projection onto `ker e`: `ℓ⁻¹ e ∂`, weight by weight.
pub fn project_ker_e(c: &PolyCurrent) -> PolyCurrent {
    apply_ell_inverse(&e_op(&codifferential(c)), c.dim, c.grade)
}

fn apply_ell_inverse(c: &PolyCurrent, dim: usize, grade: usize) -> PolyCurrent {
    let mut out = PolyCurrent::zero(dim, grade);
    for (k, x) in c.iter() {
        let r = key_weight(k);
        assert!(r > 0, "ell inverse needs positive weight");
        out.insert(k.clone(), x * -Rat::new(1.into(), (r as i64).into()));
    }
    out
}

/// A formal sum of oriented triangles with signs. Degenerate triangles
/// contribute zero to every integral and may be present.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangleSoup(pub Vec<(Triangle, i8)>);

impl TriangleSoup {
    pub fn new() -> Self {
        TriangleSoup(Vec::new())
    }

    pub fn push(&mut self, t: Triangle, sign: i8) {
        debug_assert!(sign == 1 || sign == -1);
        self.0.push((t, sign));
    }

    pub fn extend(&mut self, other: TriangleSoup) {
        self.0.extend(other.0);
    }

    pub fn negated(&self) -> TriangleSoup {
        TriangleSoup(self.0.iter().map(|(t, s)| (t.clone(), -s)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Exactly checks that the signed boundary edge chain cancels. Edges are
    /// compared geometrically: on each supporting line, the signed elementary
    /// intervals between consecutive breakpoints must sum to zero, so
    /// mismatched subdivisions of the same segment cancel correctly.
    pub fn is_closed(&self) -> bool {
        use crate::geom::AffineLine;
        // (canonical line) -> list of (t0, t1, sign) intervals
        let mut by_line: BTreeMap<AffineLine, Vec<(Rat, Rat, i64)>> = BTreeMap::new();
        for (t, s) in &self.0 {
            if t.is_degenerate() {
                // degenerate triangles are zero currents; their formal
                // boundaries still cancel in the geometric sense only when
                // collinear. Treat the three (possibly collinear) edges alike.
            }
            let vs = [&t.p0, &t.p1, &t.p2];
            for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                let (pa, pb) = (vs[a], vs[b]);
                if pa == pb {
                    continue;
                }
                let line = AffineLine::through(pa, pb).expect("distinct points");
                let ta = line.param_of(pa).expect("on line");
                let tb = line.param_of(pb).expect("on line");
                let entry = by_line.entry(line).or_default();
                if ta <= tb {
                    entry.push((ta, tb, *s as i64));
                } else {
                    entry.push((tb, ta, -(*s as i64)));
                }
            }
        }
        for (_, intervals) in by_line {
            let mut cuts: Vec<&Rat> = intervals
                .iter()
                .flat_map(|(a, b, _)| [a, b])
                .collect();
            cuts.sort();
            cuts.dedup();
            for w in cuts.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let mut mult = 0i64;
                for (a, b, s) in &intervals {
                    if a <= lo && hi <= b {
                        mult += s;
                    }
                }
                if mult != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact `∫_t z^α dz_i ∧ dz_j` with the orientation given by the vertex
/// order of `t`. Computed by affine pullback to the standard simplex,
/// multinomial expansion, and the moment formula
/// `∫_{s,u≥0, s+u≤1} s^a u^b ds du = a! b! / (a+b+2)!`.
pub fn triangle_integral(t: &Triangle, alpha: &[u32], i: usize, j: usize) -> Rat {
    debug_assert!(i < j);
    let e1 = t.edge1();
    let e2 = t.edge2();
    // pullback of dz_i ∧ dz_j
    let jac = &e1[i] * &e2[j] - &e1[j] * &e2[i];
    if jac.is_zero() {
        return Rat::zero();
    }
    // expand Π_k (p0_k + s·e1_k + u·e2_k)^{α_k} as a polynomial in (s, u)
    let mut poly: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    poly.insert((0, 0), Rat::one());
    for (k, &ak) in alpha.iter().enumerate() {
        if ak == 0 {
            continue;
        }
        let factor = trinomial_power(&t.p0[k], &e1[k], &e2[k], ak);
        poly = poly_mul(&poly, &factor);
    }
    let mut acc = Rat::zero();
    for ((a, b), c) in poly {
        acc += c * simplex_moment(a, b);
    }
    acc * jac
}

/// `(c0 + c1·s + c2·u)^n` as a sparse polynomial in `(s, u)`.
fn trinomial_power(c0: &Rat, c1: &Rat, c2: &Rat, n: u32) -> BTreeMap<(u32, u32), Rat> {
    let mut acc: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    acc.insert((0, 0), Rat::one());
    let mut lin: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    if !c0.is_zero() {
        lin.insert((0, 0), c0.clone());
    }
    if !c1.is_zero() {
        lin.insert((1, 0), c1.clone());
    }
    if !c2.is_zero() {
        lin.insert((0, 1), c2.clone());
    }
    for _ in 0..n {
        acc = poly_mul(&acc, &lin);
    }
    acc
}

fn poly_mul(
    a: &BTreeMap<(u32, u32), Rat>,
    b: &BTreeMap<(u32, u32), Rat>,
) -> BTreeMap<(u32, u32), Rat> {
    let mut out: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    for ((s1, u1), c1) in a {
        for ((s2, u2), c2) in b {
            let key = (s1 + s2, u1 + u2);
            let v = c1 * c2;
            let slot = out.entry(key).or_insert_with(Rat::zero);
            *slot += v;
            if slot.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

/// `∫_{s,u≥0, s+u≤1} s^a u^b ds du = a! b! / (a+b+2)!`.
fn simplex_moment(a: u32, b: u32) -> Rat {
    crate::rat::factorial(a as u64) * crate::rat::factorial(b as u64)
        / crate::rat::factorial(a as u64 + b as u64 + 2)
}

/// Enumerates all multi-indices over `dim` variables with `|α| ≤ max_total`,
/// in lexicographic order.
pub fn multi_indices(dim: usize, max_total: u32) -> Vec<MultiIdx> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    fn go(cur: &mut MultiIdx, pos: usize, left: u32, out: &mut Vec<MultiIdx>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            go(cur, pos + 1, left - v, out);
        }
        cur[pos] = 0;
    }
    go(&mut cur, 0, max_total, &mut out);
    out.sort();
    out.dedup();
    out
}

/// The current of a signed triangle soup up to the given weight:
/// coefficient of `e^α ⊗ eᵢ∧e_j` is `(1/α!) Σ ± ∫ z^α dzᵢ∧dz_j` — the
/// normalization is baked in, so the stored numbers are coefficients in the
/// monomial basis. Parallelizes over keys.
pub fn soup_current(soup: &TriangleSoup, dim: usize, max_weight: usize) -> PolyCurrent {
    let mut keys: Vec<(MultiIdx, u8, u8)> = Vec::new();
    if max_weight >= 2 {
        for alpha in multi_indices(dim, (max_weight - 2) as u32) {
            for i in 0..dim {
                for j in (i + 1)..dim {
                    keys.push((alpha.clone(), i as u8, j as u8));
                }
            }
        }
    }
    let entries: Vec<(Key, Rat)> = keys
        .par_iter()
        .filter_map(|(alpha, i, j)| {
            let mut acc = Rat::zero();
            for (t, s) in &soup.0 {
                let v = triangle_integral(t, alpha, *i as usize, *j as usize);
                if *s > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            if acc.is_zero() {
                None
            } else {
                let c = acc / multi_factorial(alpha);
                Some(((alpha.clone(), vec![*i, *j]), c))
            }
        })
        .collect();
    let mut out = PolyCurrent::zero(dim, 2);
    for (k, c) in entries {
        out.insert(k, c);
    }
    out
}

/// Translation of a (soup-style) current by `a`: the binomial shift
/// `v'_β = Σ_{γ≤β} (a^{β−γ}/(β−γ)!) v_γ`, truncated at `max_weight`.
/// Agrees with recomputing [`soup_current`] on the translated soup.
pub fn translate_current(c: &PolyCurrent, a: &crate::linalg::RatVec, max_weight: usize) -> PolyCurrent {
    let dim = c.dim();
    let mut out = PolyCurrent::zero(dim, c.grade());
    for ((beta, is), x) in c.iter() {
        let w = key_weight(&(beta.clone(), is.clone()));
        if w > max_weight {
            continue;
        }
        let room = (max_weight - w) as u32;
        for gamma in multi_indices(dim, room) {
            // a^γ / γ!
            let mut factor = Rat::one();
            let mut nonzero = true;
            for (k, &g) in gamma.iter().enumerate() {
                if g == 0 {
                    continue;
                }
                if a[k].is_zero() {
                    nonzero = false;
                    break;
                }
                let mut p = Rat::one();
                for _ in 0..g {
                    p *= &a[k];
                }
                factor *= p / crate::rat::factorial(g as u64);
            }
            if !nonzero {
                continue;
            }
            let new_alpha: MultiIdx = beta.iter().zip(&gamma).map(|(b, g)| b + g).collect();
            out.insert((new_alpha, is.clone()), x * factor);
        }
    }
    out
}

/// Basis element `γ_{q,ijk} = −e_{q₁}⋯e_{q_r} ⊗ eᵢ∧e_j∧e_k` of the grade-3
/// currents (indices 0-based, `q₁ ≥ … ≥ q_r ≥ i < j < k`).
pub fn basis_gamma(dim: usize, q: &[u8], i: u8, j: u8, k: u8) -> Result<PolyCurrent> {
    check_hook_index(dim, q, i, j, k)?;
    let mut alpha = vec![0u32; dim];
    for &s in q {
        alpha[s as usize] += 1;
    }
    let mut out = PolyCurrent::zero(dim, 3);
    out.insert((alpha, vec![i, j, k]), -Rat::one());
    Ok(out)
}

/// Basis element `ω_{q,ijk} = (z^α/α!) dz_j∧dz_k` of the grade-2 forms,
/// where `α` counts the indices of `(q, i)`.
pub fn basis_omega(dim: usize, q: &[u8], i: u8, j: u8, k: u8) -> Result<PolyForm> {
    check_hook_index(dim, q, i, j, k)?;
    let mut alpha = vec![0u32; dim];
    for &s in q {
        alpha[s as usize] += 1;
    }
    alpha[i as usize] += 1;
    let c = multi_factorial(&alpha).recip();
    let mut out = PolyForm::zero(dim, 2);
    out.insert((alpha, vec![j, k]), c);
    Ok(out)
}

fn check_hook_index(dim: usize, q: &[u8], i: u8, j: u8, k: u8) -> Result<()> {
    let ok_range = (i as usize) < dim && (j as usize) < dim && (k as usize) < dim
        && q.iter().all(|&s| (s as usize) < dim);
    let ok_order = i < j && j < k
        && q.windows(2).all(|w| w[0] >= w[1])
        && q.last().is_none_or(|&last| last >= i);
    if ok_range && ok_order {
        Ok(())
    } else {
        Err(Error::IndexOrder(format!("q={q:?}, ijk=({i},{j},{k})")))
    }
}

/// All hook index data `(q, (i,j,k))` of weight `|q| + 3 = r` in the given
/// dimension, in deterministic order. These enumerate a basis of the closed
/// grade-2 currents (equivalently closed 3-forms) of weight `r`.
pub fn hook_indices(dim: usize, weight: usize) -> Vec<(Vec<u8>, (u8, u8, u8))> {
    let mut out = Vec::new();
    if weight < 3 || dim < 3 {
        return out;
    }
    let r = weight - 3;
    let mut triples = Vec::new();
    for i in 0..dim as u8 {
        for j in (i + 1)..dim as u8 {
            for k in (j + 1)..dim as u8 {
                triples.push((i, j, k));
            }
        }
    }
    // non-increasing words q of length r with q_last ≥ i
    fn gen_q(dim: u8, len: usize, min_last: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let hi = cur.last().copied().unwrap_or(dim - 1);
        for v in (min_last..=hi).rev() {
            cur.push(v);
            gen_q(dim, len, min_last, cur, out);
            cur.pop();
        }
    }
    for (i, j, k) in triples {
        let mut qs = Vec::new();
        gen_q(dim as u8, r, i, &mut Vec::new(), &mut qs);
        qs.sort();
        for q in qs {
            out.push((q, (i, j, k)));
        }
    }
    out
}

/// The pairing of closed currents with closed forms:
/// `⟨∂₃γ, dω⟩_cl = ⟨γ, dω⟩₃` for a grade-3 current `γ` and grade-2 form `ω`.
pub fn closed_pairing(gamma3: &PolyCurrent, omega2: &PolyForm) -> Result<Rat> {
    pairing(gamma3, &exterior_d(omega2))
}

/// `⟨c, ψ⟩_cl` for a closed grade-2 current `c` and a closed 3-form `ψ = dη`:
/// equals `−⟨c, η⟩₂`, independent of the primitive `η`.
pub fn closed_pairing_with_primitive(c: &PolyCurrent, eta2: &PolyForm) -> Result<Rat> {
    Ok(-pairing(c, eta2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatVec;
    use crate::rat::{rat, rat_int};
    use num::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(e: &[i64]) -> RatVec {
        RatVec::from_i64(e)
    }

    fn current(dim: usize, grade: usize, entries: &[(&[u32], &[u8], Rat)]) -> PolyCurrent {
        let mut c = PolyCurrent::zero(dim, grade);
        for (a, is, x) in entries {
            c.insert((a.to_vec(), is.to_vec()), x.clone());
        }
        c
    }

    fn form(dim: usize, grade: usize, entries: &[(&[u32], &[u8], Rat)]) -> PolyForm {
        let mut f = PolyForm::zero(dim, grade);
        for (a, is, x) in entries {
            f.insert((a.to_vec(), is.to_vec()), x.clone());
        }
        f
    }

    #[test]
    fn pairing_examples() {
        // ⟨e₁²⊗e₁∧e₂, z₁² dz₁∧dz₂⟩ = −2 (m=2 sign −1, α! = 2)
        let c = current(2, 2, &[(&[2, 0], &[0, 1], rat_int(1))]);
        let f = form(2, 2, &[(&[2, 0], &[0, 1], rat_int(1))]);
        assert_eq!(pairing(&c, &f).unwrap(), rat_int(-2));
        // mismatched monomials pair to zero
        let g = form(2, 2, &[(&[1, 1], &[0, 1], rat_int(1))]);
        assert_eq!(pairing(&c, &g).unwrap(), rat_int(0));
        // ⟨e₁⊗e₁∧e₂∧e₃, z₁ dz₁∧dz₂∧dz₃⟩ = −1 (m=3 sign (−1)³, α! = 1)
        let c3 = current(3, 3, &[(&[1, 0, 0], &[0, 1, 2], rat_int(1))]);
        let f3 = form(3, 3, &[(&[1, 0, 0], &[0, 1, 2], rat_int(1))]);
        assert_eq!(pairing(&c3, &f3).unwrap(), rat_int(-1));
        // grade mismatch is an error
        assert!(pairing(&c3, &f).is_err());
    }

    #[test]
    fn e_op_examples() {
        // e(e₁ ⊗ e₂∧e₃) = 1 ⊗ e₁∧e₂∧e₃
        let c = current(3, 2, &[(&[1, 0, 0], &[1, 2], rat_int(1))]);
        let e = e_op(&c);
        assert_eq!(e.coeff(&(vec![0, 0, 0], vec![0, 1, 2])), rat_int(1));
        assert_eq!(e.iter().count(), 1);
    }

    #[test]
    fn ell_is_minus_weight() {
        // on any weight-3 grade-2 basis current
        let c = current(3, 2, &[(&[1, 0, 0], &[0, 1], rat_int(1))]);
        assert_eq!(ell(&c), c.scale(&rat_int(-3)));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let mut c = PolyCurrent::zero(3, 2);
            for _ in 0..rng.gen_range(1..4) {
                let alpha: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let i = rng.gen_range(0..2u8);
                let j = rng.gen_range(i + 1..3u8);
                c.insert((alpha, vec![i, j]), rat_int(rng.gen_range(-3..=3)));
            }
            let want: PolyCurrent = {
                let mut acc = PolyCurrent::zero(3, 2);
                for r in 2..=c.max_weight() {
                    acc = acc
                        .add(&c.weight_component(r).scale(&rat_int(-(r as i64))))
                        .unwrap();
                }
                acc
            };
            assert_eq!(ell(&c), want);
        }
    }

    #[test]
    fn complexes_square_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let mut c = PolyCurrent::zero(3, 2);
            let mut f = PolyForm::zero(3, 1);
            for _ in 0..3 {
                let alpha: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let i = rng.gen_range(0..2u8);
                let j = rng.gen_range(i + 1..3u8);
                c.insert((alpha.clone(), vec![i, j]), rat_int(rng.gen_range(-3..=3)));
                f.insert((alpha, vec![i]), rat_int(rng.gen_range(-3..=3)));
            }
            assert!(codifferential(&codifferential(&c)).is_zero(), "∂² ≠ 0");
            assert!(e_op(&e_op(&c)).is_zero(), "e² ≠ 0");
            assert!(exterior_d(&exterior_d(&f)).is_zero(), "d² ≠ 0");
            // duality ⟨∂c, f⟩ = (−1)^m ⟨c, df⟩ with m = grade of c
            let lhs = pairing(&codifferential(&c), &f).unwrap();
            let rhs = pairing(&c, &exterior_d(&f)).unwrap();
            assert_eq!(lhs, rhs); // m = 2
        }
    }

    #[test]
    fn projections_are_complementary() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let mut c = PolyCurrent::zero(3, 2);
            for _ in 0..4 {
                let alpha: Vec<u32> = (0..3).map(|_| rng.gen_range(0..2)).collect();
                let i = rng.gen_range(0..2u8);
                let j = rng.gen_range(i + 1..3u8);
                c.insert((alpha, vec![i, j]), rat_int(rng.gen_range(-2..=2)));
            }
            let pc = project_closed(&c);
            let pk = project_ker_e(&c);
            assert_eq!(pc.add(&pk).unwrap(), c);
            assert!(codifferential(&pc).is_zero());
            assert!(e_op(&pk).is_zero());
            // idempotence and preservation of the parts
            assert_eq!(project_closed(&pc), pc);
            assert_eq!(project_ker_e(&pk), pk);
        }
        // c already closed is fixed; c in the image of e is fixed by the
        // ker-e projection (e² = 0)
        let gamma = current(3, 1, &[(&[1, 1, 0], &[2], rat_int(1))]);
        let c = e_op(&gamma);
        assert_eq!(project_ker_e(&c), c);
    }

    #[test]
    fn triangle_integral_examples() {
        let std2 = Triangle::new(v(&[0, 0]), v(&[1, 0]), v(&[0, 1]));
        // area
        assert_eq!(triangle_integral(&std2, &[0, 0], 0, 1), rat(1, 2));
        // ∫ z₁ dz₁∧dz₂ over the standard simplex = 1/6 (moment a=1, b=0)
        assert_eq!(triangle_integral(&std2, &[1, 0], 0, 1), rat(1, 6));
        // reversed vertex order negates
        let rev = Triangle::new(v(&[0, 0]), v(&[0, 1]), v(&[1, 0]));
        assert_eq!(triangle_integral(&rev, &[1, 0], 0, 1), rat(-1, 6));
        // degenerate triangle integrates to zero
        let degenerate = Triangle::new(v(&[0, 0]), v(&[1, 1]), v(&[2, 2]));
        assert_eq!(triangle_integral(&degenerate, &[0, 0], 0, 1), rat_int(0));
    }

    #[test]
    fn soup_cancellation_and_closedness() {
        let t = Triangle::new(v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]));
        let mut soup = TriangleSoup::new();
        soup.push(t.clone(), 1);
        soup.push(t, -1);
        assert!(soup_current(&soup, 3, 5).is_zero());
        assert!(soup.is_closed());
    }

    #[test]
    fn tetrahedron_divergence() {
        // outward-ish boundary of [0, e₁, e₂, e₃]
        let o = v(&[0, 0, 0]);
        let a = v(&[1, 0, 0]);
        let b = v(&[0, 1, 0]);
        let c = v(&[0, 0, 1]);
        let mut soup = TriangleSoup::new();
        soup.push(Triangle::new(o.clone(), b.clone(), a.clone()), 1);
        soup.push(Triangle::new(o.clone(), a.clone(), c.clone()), 1);
        soup.push(Triangle::new(o.clone(), c.clone(), b.clone()), 1);
        soup.push(Triangle::new(a.clone(), b.clone(), c.clone()), 1);
        assert!(soup.is_closed());
        let gamma = soup_current(&soup, 3, 3);
        // closed soups have zero weight-2 component (dzᵢ∧dz_j is exact)
        assert!(gamma.weight_component(2).is_zero());
        // (1/1!)·∫ z₁ dz₂∧dz₃ = ± volume = ± 1/6
        let coeff = gamma.coeff(&(vec![1, 0, 0], vec![1, 2]));
        assert_eq!(coeff.clone().abs(), rat(1, 6));
        // the soup current is closed
        assert!(codifferential(&gamma).is_zero());
    }

    #[test]
    fn translate_matches_translated_soup() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let t = Triangle::new(
                RatVec((0..3).map(|_| rat_int(rng.gen_range(-2..=2))).collect()),
                RatVec((0..3).map(|_| rat_int(rng.gen_range(-2..=2))).collect()),
                RatVec((0..3).map(|_| rat_int(rng.gen_range(-2..=2))).collect()),
            );
            let a = RatVec((0..3).map(|_| rat_int(rng.gen_range(-2..=2))).collect());
            let mut soup = TriangleSoup::new();
            soup.push(t.clone(), 1);
            let mut translated = TriangleSoup::new();
            translated.push(t.translate(&a), 1);
            let lhs = translate_current(&soup_current(&soup, 3, 5), &a, 5);
            let rhs = soup_current(&translated, 3, 5);
            assert_eq!(lhs, rhs);
            // identity and group action
            let c = soup_current(&soup, 3, 5);
            assert_eq!(translate_current(&c, &RatVec::zero(3), 5), c);
            let there = translate_current(&c, &a, 5);
            let back = translate_current(&there, &(-&a), 5);
            // truncation loses nothing here because weight cap is shared
            assert_eq!(back.truncate_weight(5), c.truncate_weight(5));
        }
    }

    #[test]
    fn dual_bases_weightmatrix() {
        // ⟨∂₃γ_{q,ijk}, dω_{p,abc}⟩ = δ for all weight-4 data in dim 3
        for w in 3..=4 {
            let idx = hook_indices(3, w);
            assert!(!idx.is_empty());
            for (qa, (i1, j1, k1)) in &idx {
                let g = basis_gamma(3, qa, *i1, *j1, *k1).unwrap();
                for (qb, (i2, j2, k2)) in &idx {
                    let o = basis_omega(3, qb, *i2, *j2, *k2).unwrap();
                    let val = closed_pairing(&g, &o).unwrap();
                    let expect = if qa == qb && (i1, j1, k1) == (i2, j2, k2) {
                        rat_int(1)
                    } else {
                        rat_int(0)
                    };
                    assert_eq!(val, expect, "q={qa:?} ijk=({i1},{j1},{k1}) vs q={qb:?} ({i2},{j2},{k2})");
                }
            }
        }
        // index-order violations are rejected
        assert!(basis_gamma(3, &[0, 1], 0, 1, 2).is_err()); // q not non-increasing
        assert!(basis_gamma(3, &[], 1, 0, 2).is_err()); // i ≥ j
        assert!(basis_omega(3, &[0], 1, 2, 2).is_err()); // q_last < i
    }

    #[test]
    fn closed_soup_currents_are_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            // boundary of a translated tetrahedron
            let shift = RatVec((0..3).map(|_| rat_int(rng.gen_range(-2..=2))).collect());
            let pts: Vec<RatVec> = vec![
                v(&[0, 0, 0]),
                v(&[1, 0, 0]),
                v(&[0, 2, 0]),
                v(&[0, 0, 1]),
            ]
            .into_iter()
            .map(|p| &p + &shift)
            .collect();
            let mut soup = TriangleSoup::new();
            soup.push(Triangle::new(pts[0].clone(), pts[2].clone(), pts[1].clone()), 1);
            soup.push(Triangle::new(pts[0].clone(), pts[1].clone(), pts[3].clone()), 1);
            soup.push(Triangle::new(pts[0].clone(), pts[3].clone(), pts[2].clone()), 1);
            soup.push(Triangle::new(pts[1].clone(), pts[2].clone(), pts[3].clone()), 1);
            assert!(soup.is_closed());
            let gamma = soup_current(&soup, 3, 6);
            assert!(codifferential(&gamma).is_zero());
            assert!(gamma.weight_component(2).is_zero());
        }
    }
}
