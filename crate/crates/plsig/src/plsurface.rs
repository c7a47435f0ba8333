//! Kite words: the group of piecewise linear surfaces.
//!
//! A kite is a tail path together with a planar loop; a kite word is an
//! ordered product of signed kites. The boundary map sends a kite to the
//! conjugated loop `w ⋄ b^± ⋄ w⁻¹`. The surface signature of a kite word has
//! two components: the path signature of its boundary, and the current of
//! the closed triangle soup obtained by coning off the boundary.
//!
//! Kites store a sign rather than expanding inverses into reversed loops —
//! `(w, b)⁻¹ = (w, b⁻¹)`, so the two forms are interchangeable.

use crate::currents::{codifferential, soup_current, PolyCurrent, TriangleSoup};
use crate::linalg::RatVec;
use crate::plpath::PlWord;
use crate::tensor::{path_signature, TruncatedTensor};
use crate::{Error, Result};

/// A signed kite: tail path, planar loop, word exponent ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kite {
    pub tail: PlWord,
    pub loop_word: PlWord,
    pub sign: i8,
}

impl Kite {
    pub fn new(tail: PlWord, loop_word: PlWord) -> Result<Self> {
        Self::signed(tail, loop_word, 1)
    }

    pub fn signed(tail: PlWord, loop_word: PlWord, sign: i8) -> Result<Self> {
        if tail.dim() != loop_word.dim() {
            return Err(Error::DimMismatch {
                expected: tail.dim(),
                found: loop_word.dim(),
            });
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidInput("kite sign must be ±1".into()));
        }
        if !loop_word.is_loop() {
            return Err(Error::NotALoop);
        }
        if !loop_word.is_planar_loop() {
            return Err(Error::NotPlanar);
        }
        Ok(Kite {
            tail,
            loop_word,
            sign,
        })
    }

    pub fn dim(&self) -> usize {
        self.tail.dim()
    }

    /// The loop with the sign applied.
    pub fn effective_loop(&self) -> PlWord {
        if self.sign > 0 {
            self.loop_word.clone()
        } else {
            self.loop_word.inverse()
        }
    }

    pub fn inverse(&self) -> Kite {
        Kite {
            tail: self.tail.clone(),
            loop_word: self.loop_word.clone(),
            sign: -self.sign,
        }
    }

    /// `w ⋄ b^± ⋄ w⁻¹`, reduced.
    pub fn boundary(&self) -> PlWord {
        self.tail
            .concat(&self.effective_loop())
            .and_then(|p| p.concat(&self.tail.inverse()))
            .expect("same dim")
    }

    /// The identity kite has an empty reduced loop.
    pub fn is_identity(&self) -> bool {
        self.loop_word.reduce().is_empty()
    }
}

/// An ordered word of signed kites, composed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KiteWord {
    dim: usize,
    kites: Vec<Kite>,
}

impl KiteWord {
    pub fn identity(dim: usize) -> Self {
        KiteWord {
            dim,
            kites: Vec::new(),
        }
    }

    pub fn new(dim: usize, kites: Vec<Kite>) -> Result<Self> {
        for k in &kites {
            if k.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: k.dim(),
                });
            }
        }
        Ok(KiteWord { dim, kites })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kites(&self) -> &[Kite] {
        &self.kites
    }

    pub fn len(&self) -> usize {
        self.kites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kites.is_empty()
    }

    /// Concatenation of kite lists.
    pub fn mul(&self, other: &KiteWord) -> Result<KiteWord> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut kites = self.kites.clone();
        kites.extend(other.kites.iter().cloned());
        Ok(KiteWord {
            dim: self.dim,
            kites,
        })
    }

    /// Reversed order with flipped loop signs.
    pub fn inv(&self) -> KiteWord {
        KiteWord {
            dim: self.dim,
            kites: self.kites.iter().rev().map(Kite::inverse).collect(),
        }
    }

    /// Action of a path: prepends `x` to every tail.
    pub fn act(&self, x: &PlWord) -> Result<KiteWord> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let kites = self
            .kites
            .iter()
            .map(|k| {
                Ok(Kite {
                    tail: x.concat(&k.tail)?,
                    loop_word: k.loop_word.clone(),
                    sign: k.sign,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KiteWord {
            dim: self.dim,
            kites,
        })
    }

    /// Diagnostic validation: planarity of loops, loop closure, dims.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, k) in self.kites.iter().enumerate() {
            if k.dim() != self.dim {
                out.push(format!("kite {i}: dimension {} != {}", k.dim(), self.dim));
            }
            if !k.loop_word.is_loop() {
                out.push(format!("kite {i}: loop has nonzero endpoint"));
            } else if !k.loop_word.is_planar_loop() {
                out.push(format!("kite {i}: loop span exceeds dimension 2"));
            }
            if k.sign != 1 && k.sign != -1 {
                out.push(format!("kite {i}: sign {} is not ±1", k.sign));
            }
        }
        out
    }
}

/// Boundary of a kite word: the reduced product of kite boundaries.
pub fn boundary_delta(x: &KiteWord) -> PlWord {
    let mut acc = PlWord::empty(x.dim());
    for k in x.kites() {
        acc = acc.concat(&k.boundary()).expect("same dim");
    }
    acc
}

/// Fan triangulation of a kite: the fan triangles of its loop, translated by
/// the tail endpoint, each carrying the kite's sign. Degenerate triangles
/// are dropped.
pub fn triangulate_kite(k: &Kite) -> Result<TriangleSoup> {
    let fan = k.loop_word.triangle_fan()?;
    let shift = k.tail.endpoint();
    let mut soup = TriangleSoup::new();
    for t in fan {
        soup.push(t.translate(&shift), k.sign);
    }
    Ok(soup)
}

/// The closed soup of a kite word: all kite fans plus the cone fan of the
/// boundary with negated signs. The result always has a cancelling boundary
/// edge chain.
pub fn closed_soup(x: &KiteWord) -> TriangleSoup {
    let mut soup = TriangleSoup::new();
    for k in x.kites() {
        soup.extend(triangulate_kite(k).expect("validated kite"));
    }
    let boundary = boundary_delta(x);
    for t in boundary.triangle_fan().expect("boundary is a loop") {
        soup.push(t, -1);
    }
    soup
}

/// The two-component surface signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSignature {
    /// Path signature of the boundary, truncated at the tensor level.
    pub boundary: TruncatedTensor,
    /// Closed current of the coned-off surface, up to the weight cap.
    pub gamma: PolyCurrent,
}

/// Signature of a kite word: boundary path signature at tensor level `level`
/// and the soup current of the coned-off surface up to `max_weight`.
pub fn surface_signature(x: &KiteWord, level: usize, max_weight: usize) -> SurfaceSignature {
    let boundary = path_signature(&boundary_delta(x), level);
    let gamma = soup_current(&closed_soup(x), x.dim(), max_weight);
    debug_assert!(codifferential(&gamma).is_zero(), "gamma must be closed");
    SurfaceSignature { boundary, gamma }
}

/// The suspension soup: the cone fan of `b` translated by `a`, minus the
/// cone fan of `(a) ⋄ b ⋄ (−a)`. Measures how translating a cone differs
/// from coning the translated loop; always a closed soup.
pub fn suspension_soup(a: &RatVec, b: &PlWord) -> Result<TriangleSoup> {
    if !b.is_loop() {
        return Err(Error::NotALoop);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            expected: b.dim(),
            found: a.dim(),
        });
    }
    let mut soup = TriangleSoup::new();
    for t in b.triangle_fan()? {
        soup.push(t.translate(a), 1);
    }
    let conj = PlWord::segment(a.clone())
        .concat(b)?
        .concat(&PlWord::segment(-a))?;
    for t in conj.triangle_fan()? {
        soup.push(t, -1);
    }
    Ok(soup)
}

/// Greedy best-effort simplification by the local moves: dropping identity
/// kites, peeling conjugating prefixes off loops into tails, merging
/// adjacent kites whose composite loop stays planar, and collapsing
/// conjugation triples via the Peiffer identity. Sound (the class in the
/// surface group is preserved) but deliberately not complete.
pub fn local_simplify(x: &KiteWord, budget: usize) -> KiteWord {
    let mut kites: Vec<Kite> = x.kites().to_vec();
    let mut moves = 0usize;
    let dim = x.dim();

    let mut changed = true;
    while changed && moves < budget {
        changed = false;

        // canonicalize: reduce tails and loops, peel conjugating prefixes
        let mut next: Vec<Kite> = Vec::with_capacity(kites.len());
        for k in &kites {
            if moves >= budget {
                next.push(k.clone());
                continue;
            }
            let mut tail = k.tail.reduce();
            let mut lw = k.loop_word.reduce();
            // peel (w, x⋄b⋄x⁻¹) → (w⋄x, b) while the first and last letters
            // are colinear: with x = −l_n the remaining loop is
            // (l₁+l_n, l₂, …, l_{n−1}), strictly shorter, and its span stays
            // inside the original loop's plane
            loop {
                let letters = lw.letters();
                let n = letters.len();
                if n < 2 || !crate::linalg::linearly_dependent(&letters[0], &letters[n - 1]) {
                    break;
                }
                let x_step = PlWord::segment(-&letters[n - 1]);
                tail = tail.concat(&x_step).expect("same dim");
                let mut rest = vec![&letters[0] + &letters[n - 1]];
                rest.extend_from_slice(&letters[1..n - 1]);
                lw = PlWord::new(dim, rest).expect("same dim").reduce();
                moves += 1;
                changed = true;
            }
            if lw.is_empty() {
                moves += 1;
                changed = true;
                continue; // identity kite dropped
            }
            let new_kite = Kite {
                tail,
                loop_word: lw,
                sign: k.sign,
            };
            if new_kite != *k {
                changed = true;
            }
            next.push(new_kite);
        }
        kites = next;

        // adjacent merge: (w₁,b₁)(w₂,b₂) → (w₁, b₁ ⋄ u b₂ u⁻¹) when the
        // composite loop is planar, with u = w₁⁻¹ ⋄ w₂
        let mut i = 0;
        while i + 1 < kites.len() && moves < budget {
            let a = &kites[i];
            let b = &kites[i + 1];
            let u = a.tail.inverse().concat(&b.tail).expect("same dim");
            let composite = a
                .effective_loop()
                .concat(&u)
                .and_then(|p| p.concat(&b.effective_loop()))
                .and_then(|p| p.concat(&u.inverse()))
                .expect("same dim");
            if composite.is_planar_loop() {
                let merged = Kite {
                    tail: a.tail.clone(),
                    loop_word: composite,
                    sign: 1,
                };
                kites.splice(i..i + 2, std::iter::once(merged));
                moves += 1;
                changed = true;
                if i > 0 {
                    i -= 1;
                }
            } else {
                i += 1;
            }
        }

        // Peiffer collapse: K ⋄ L ⋄ K⁻¹ → δ(K) ▷ L
        let mut i = 0;
        while i + 2 < kites.len() && moves < budget {
            let k = &kites[i];
            let l = &kites[i + 1];
            let kinv = &kites[i + 2];
            let is_inverse_pair = k.tail.equivalent(&kinv.tail)
                && k.loop_word.equivalent(&kinv.loop_word)
                && k.sign == -kinv.sign;
            if is_inverse_pair {
                let acted = Kite {
                    tail: k.boundary().concat(&l.tail).expect("same dim"),
                    loop_word: l.loop_word.clone(),
                    sign: l.sign,
                };
                kites.splice(i..i + 3, std::iter::once(acted));
                moves += 1;
                changed = true;
            } else {
                i += 1;
            }
        }
    }

    KiteWord { dim, kites }
}
