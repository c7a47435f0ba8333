//! Exact decision of equality in the group of piecewise linear surfaces.
//!
//! Two kite words are equal — the surfaces are thinly homotopic — iff their
//! boundaries have the same minimal word and the difference word `X ⋄ Y⁻¹`
//! has zero chain over a compatible representative. The chain criterion is
//! exact and needs no truncation; truncated signatures are attached to the
//! report for interpretability only.

use crate::linalg::RatVec;
use crate::plpath::PlWord;
use crate::plsurface::{
    boundary_delta, surface_signature, Kite, KiteWord, SurfaceSignature,
};
use crate::rat::rat_int;
use crate::triangulate::{chain, compatible_representative, Chain2};
use crate::{Error, Result};
use crate::geom::Triangle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
}

/// A cited reason for a `NotEqual` verdict.
#[derive(Clone, Debug)]
pub enum Witness {
    /// The boundary minimal words differ.
    BoundaryMismatch,
    /// A face of the compatible complex with nonzero signed multiplicity.
    NonzeroFace { face: Triangle, multiplicity: i64 },
}

/// The machine-checkable outcome of a decision.
#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub verdict: Verdict,
    /// Minimal boundary words of the two inputs.
    pub boundary_x: PlWord,
    pub boundary_y: PlWord,
    /// The chain of `X ⋄ Y⁻¹`, when the boundary check passed.
    pub chain: Option<Chain2>,
    pub witness: Option<Witness>,
    /// Truncated signature of `X ⋄ Y⁻¹`, for interpretation.
    pub signature: SurfaceSignature,
}

/// Truncation levels used for the report's signature excerpt.
pub const REPORT_TENSOR_LEVEL: usize = 3;
pub const REPORT_WEIGHT_CAP: usize = 4;

/// Decides whether two kite words are equal in the surface group.
pub fn thin_equiv(x: &KiteWord, y: &KiteWord) -> Result<DecisionReport> {
    if x.dim() != y.dim() {
        return Err(Error::DimMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    let bx = boundary_delta(x);
    let by = boundary_delta(y);
    let z = x.mul(&y.inv())?;
    let signature = surface_signature(&z, REPORT_TENSOR_LEVEL, REPORT_WEIGHT_CAP);
    if !bx.equivalent(&by) {
        return Ok(DecisionReport {
            verdict: Verdict::NotEqual,
            boundary_x: bx,
            boundary_y: by,
            chain: None,
            witness: Some(Witness::BoundaryMismatch),
            signature,
        });
    }
    let rep = compatible_representative(&z)?;
    let ch = chain(&rep.mapping);
    if ch.is_empty() {
        Ok(DecisionReport {
            verdict: Verdict::Equal,
            boundary_x: bx,
            boundary_y: by,
            chain: Some(ch),
            witness: None,
            signature,
        })
    } else {
        let (&face, &multiplicity) = ch.iter().next().unwrap();
        Ok(DecisionReport {
            verdict: Verdict::NotEqual,
            boundary_x: bx,
            boundary_y: by,
            witness: Some(Witness::NonzeroFace {
                face: rep.plsc.face_triangle(face),
                multiplicity,
            }),
            chain: Some(ch),
            signature,
        })
    }
}

/// Decides thin null-homotopy: equality with the identity word.
pub fn is_null(x: &KiteWord) -> Result<DecisionReport> {
    thin_equiv(x, &KiteWord::identity(x.dim()))
}

/// Named example surfaces. `seed` only matters for the `random_*` families.
pub fn gen_example(name: &str, seed: u64) -> Result<KiteWord> {
    match name {
        "fold" => Ok(fold_word()),
        "peiffer" => Ok(peiffer_word()),
        "tetrahedron" => Ok(tetrahedron_word()),
        "antipodal" => Ok(antipodal_word()),
        "random_null" => Ok(random_null(seed)),
        "random_nonnull" => Ok(random_nonnull(seed)),
        _ => Err(Error::InvalidInput(format!("unknown example {name:?}"))),
    }
}

fn v(e: &[i64]) -> RatVec {
    RatVec::from_i64(e)
}

fn tri_loop(a: &RatVec, b: &RatVec, c: &RatVec) -> PlWord {
    PlWord::new(a.dim(), vec![b - a, c - b, a - c]).expect("same dim")
}

/// A fold: a kite followed by its inverse.
fn fold_word() -> KiteWord {
    let b = PlWord::from_i64(3, &[&[0, 1, 0], &[0, 0, 1], &[0, -1, 0], &[0, 0, -1]]);
    let w = PlWord::from_i64(3, &[&[1, 0, 0]]);
    let k = Kite::new(w, b).expect("planar loop");
    KiteWord::new(3, vec![k.clone(), k.inverse()]).expect("same dim")
}

/// The null word `E₁ ⋄ E₂ ⋄ E₁⁻¹ ⋄ (δ(E₁) ▷ E₂)⁻¹` relating the two sides
/// of the Peiffer identity.
fn peiffer_word() -> KiteWord {
    let e1 = Kite::new(
        PlWord::empty(3),
        tri_loop(&v(&[0, 0, 0]), &v(&[1, 0, 0]), &v(&[0, 1, 0])),
    )
    .expect("planar");
    let e2 = Kite::new(
        PlWord::from_i64(3, &[&[0, 0, 1]]),
        tri_loop(&v(&[0, 0, 0]), &v(&[0, 2, 0]), &v(&[0, 0, 2])),
    )
    .expect("planar");
    let left = KiteWord::new(3, vec![e1.clone(), e2.clone(), e1.inverse()]).expect("dim");
    let e1w = KiteWord::new(3, vec![e1]).expect("dim");
    let right = KiteWord::new(3, vec![e2])
        .expect("dim")
        .act(&boundary_delta(&e1w))
        .expect("dim");
    left.mul(&right.inv()).expect("dim")
}

/// Combinatorial shelling of a closed oriented triangulated surface into a
/// kite word with empty boundary. `faces` are oriented vertex triples over
/// abstract vertex ids, consistently oriented (each edge used once in each
/// direction); `point` realizes abstract vertices in `V`. The basepoint's
/// image must be the origin.
fn shell_closed_surface(faces: &[[usize; 3]], point: &[RatVec], base: usize) -> KiteWord {
    use std::collections::{BTreeSet, HashMap, HashSet};
    let dim = point[0].dim();
    assert!(point[base].is_zero(), "basepoint must map to the origin");

    // pick the starting face at the basepoint and rotate it to start there
    let first = faces
        .iter()
        .position(|f| f.contains(&base))
        .expect("basepoint on the surface");
    let rot = |f: &[usize; 3], start: usize| -> [usize; 3] {
        let p = f.iter().position(|&x| x == start).unwrap();
        [f[p], f[(p + 1) % 3], f[(p + 2) % 3]]
    };
    let tau0 = rot(&faces[first], base);

    // the remaining faces form a disk whose boundary is ∂τ₀ reversed
    let mut region: BTreeSet<usize> = (0..faces.len()).filter(|&i| i != first).collect();
    let mut beta: Vec<usize> = vec![tau0[0], tau0[2], tau0[1], tau0[0]];

    let disk_check = |region: &BTreeSet<usize>| -> bool {
        if region.is_empty() {
            return true;
        }
        let mut vs: HashSet<usize> = HashSet::new();
        let mut es: HashSet<(usize, usize)> = HashSet::new();
        for &f in region {
            let [a, b, c] = faces[f];
            vs.extend([a, b, c]);
            for (p, q) in [(a, b), (b, c), (a, c)] {
                es.insert((p.min(q), p.max(q)));
            }
        }
        if vs.len() as i64 - es.len() as i64 + region.len() as i64 != 1 {
            return false;
        }
        let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &f in region {
            let [a, b, c] = faces[f];
            for (p, q) in [(a, b), (b, c), (a, c)] {
                edge_faces.entry((p.min(q), p.max(q))).or_default().push(f);
            }
        }
        let mut seen = HashSet::new();
        let start = *region.iter().next().unwrap();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(f) = stack.pop() {
            let [a, b, c] = faces[f];
            for (p, q) in [(a, b), (b, c), (a, c)] {
                for &g in &edge_faces[&(p.min(q), p.max(q))] {
                    if seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        seen.len() == region.len()
    };

    let free_reduce = |path: &mut Vec<usize>| loop {
        let mut changed = false;
        let mut i = 0;
        while i + 2 < path.len() {
            if path[i] == path[i + 2] {
                path.drain(i + 1..i + 3);
                changed = true;
                if i > 0 {
                    i -= 1;
                }
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    };

    let mut kites: Vec<Kite> = Vec::new();
    // the starting face as a kite at the basepoint
    kites.push(
        Kite::new(
            PlWord::empty(dim),
            tri_loop(&point[tau0[0]], &point[tau0[1]], &point[tau0[2]]),
        )
        .expect("nondegenerate face"),
    );
    // peel the disk: invert the boundary word one face at a time
    while !region.is_empty() {
        let beta_edges: Vec<(usize, usize)> = beta.windows(2).map(|w| (w[0], w[1])).collect();
        let mut chosen = None;
        'search: for &f in &region {
            let [a, b, c] = faces[f];
            // the region's boundary traverses edges as its own faces use
            // them, so a face is adjacent when one of its directed edges
            // lies on beta
            let dir_edges = [(a, b), (b, c), (c, a)];
            for (pos, be) in beta_edges.iter().enumerate() {
                if dir_edges.contains(be) {
                    let mut rest = region.clone();
                    rest.remove(&f);
                    if disk_check(&rest) {
                        chosen = Some((f, pos));
                        break 'search;
                    }
                }
            }
        }
        let (f, pos) = chosen.expect("closed surface shelling found no face");
        let (u, vv) = beta_edges[pos];
        let [a, b, c] = faces[f];
        let w = if (a, b) == (u, vv) {
            c
        } else if (b, c) == (u, vv) {
            a
        } else {
            b
        };
        // kite: prefix path to u, loop = the face's own cycle (u → vv → w);
        // removing the face replaces (u→vv) on the boundary with (u→w)(w→vv)
        let prefix: Vec<RatVec> = beta[..=pos]
            .windows(2)
            .map(|e| &point[e[1]] - &point[e[0]])
            .collect();
        kites.push(
            Kite::new(
                PlWord::new(dim, prefix).expect("dim"),
                tri_loop(&point[u], &point[vv], &point[w]),
            )
            .expect("nondegenerate face"),
        );
        beta.splice(pos + 1..pos + 1, [w]);
        free_reduce(&mut beta);
        region.remove(&f);
    }
    assert_eq!(beta, vec![tau0[0]], "shelling left a boundary residue");

    let word = KiteWord::new(dim, kites).expect("dim");
    assert!(
        boundary_delta(&word).is_empty(),
        "closed-surface word has nontrivial boundary"
    );
    word
}

/// The boundary of the standard tetrahedron `[0, e₁, e₂, e₃]` as a kite
/// word with trivial boundary, ordered by shelling.
fn tetrahedron_word() -> KiteWord {
    let pts = vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
    // outward-oriented faces of the boundary sphere
    let faces = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
    shell_closed_surface(&faces, &pts, 0)
}

/// The icosahedral antipodal double cover: the 20 faces of an abstract
/// icosahedron with antipodal vertex pairs mapped to 6 points in `ℚ³`. The
/// antipodal map reverses orientation, so every image triangle is covered
/// twice with opposite signs: the word is thinly null homotopic even though
/// no local fold cancellation exists.
fn antipodal_word() -> KiteWord {
    // abstract icosahedron: 12 vertices, 20 outward-oriented faces, with
    // vertex i and 11−i antipodal
    const FACES: [[usize; 3]; 20] = [
        [0, 2, 1],
        [0, 1, 3],
        [0, 4, 2],
        [0, 3, 6],
        [0, 6, 4],
        [1, 2, 5],
        [1, 7, 3],
        [1, 5, 7],
        [2, 4, 8],
        [2, 8, 5],
        [3, 9, 6],
        [3, 7, 9],
        [4, 6, 10],
        [4, 10, 8],
        [5, 11, 7],
        [5, 8, 11],
        [6, 9, 10],
        [7, 11, 9],
        [8, 10, 11],
        [9, 11, 10],
    ];
    // pair labels: vertex i and 11−i share label min(i, 11−i)
    let images = [
        v(&[0, 0, 0]),
        v(&[2, 0, 0]),
        v(&[0, 2, 0]),
        v(&[0, 0, 2]),
        v(&[2, 3, 1]),
        v(&[3, 1, 2]),
    ];
    let point: Vec<RatVec> = (0..12)
        .map(|i| images[i.min(11 - i)].clone())
        .collect();
    // genericity: every used image triangle is nondegenerate
    for f in &FACES {
        let t = Triangle::new(
            point[f[0]].clone(),
            point[f[1]].clone(),
            point[f[2]].clone(),
        );
        assert!(!t.is_degenerate(), "degenerate image face {f:?}");
    }
    let word = shell_closed_surface(&FACES, &point, 0);
    assert_eq!(word.len(), 20);
    word
}

fn random_rat_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> RatVec {
    RatVec((0..dim).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect())
}

fn random_planar_kite(rng: &mut ChaCha8Rng, dim: usize) -> Kite {
    loop {
        let a = random_rat_vec(rng, dim, 2);
        let b = random_rat_vec(rng, dim, 2);
        let lw = crate::plpath::triangle_loop(&a, &b);
        if lw.reduce().is_empty() || !lw.is_planar_loop() {
            continue;
        }
        let tail_len = rng.gen_range(0..=1);
        let tail = PlWord::new(
            dim,
            (0..tail_len).map(|_| random_rat_vec(rng, dim, 2)).collect(),
        )
        .expect("dim");
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        return Kite::signed(tail, lw, sign).expect("valid");
    }
}

/// A null word: the identity scrambled by random fold insertions, loop
/// conjugations (the PL1.3 move in reverse) and Peiffer conjugations.
pub fn random_null(seed: u64) -> KiteWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(2).wrapping_add(1));
    let dim = 3;
    let mut word = KiteWord::identity(dim);
    let moves = rng.gen_range(2..=4);
    for _ in 0..moves {
        match rng.gen_range(0..4) {
            0 => {
                // insert a fold pair at a random position
                let k = random_planar_kite(&mut rng, dim);
                let pos = rng.gen_range(0..=word.len());
                let mut kites = word.kites().to_vec();
                kites.splice(pos..pos, [k.clone(), k.inverse()]);
                word = KiteWord::new(dim, kites).expect("dim");
            }
            1 => {
                // (w, b) → (w ⋄ x⁻¹, x ⋄ b ⋄ x⁻¹) with x in the loop's span
                if word.is_empty() {
                    continue;
                }
                let pos = rng.gen_range(0..word.len());
                let mut kites = word.kites().to_vec();
                let k = &kites[pos];
                let span = k.loop_word.span_basis();
                if span.is_empty() {
                    continue;
                }
                let x = PlWord::segment(span[rng.gen_range(0..span.len())].clone());
                let new_loop = x
                    .concat(&k.loop_word)
                    .and_then(|p| p.concat(&x.inverse()))
                    .expect("dim");
                kites[pos] = Kite::signed(
                    k.tail.concat(&x.inverse()).expect("dim"),
                    new_loop,
                    k.sign,
                )
                .expect("stays planar");
                word = KiteWord::new(dim, kites).expect("dim");
            }
            2 => {
                // Peiffer: replace kite L with K ⋄ (δ(K)⁻¹ ▷ L) ⋄ K⁻¹
                if word.is_empty() {
                    continue;
                }
                let pos = rng.gen_range(0..word.len());
                let mut kites = word.kites().to_vec();
                let l = kites[pos].clone();
                let k = random_planar_kite(&mut rng, dim);
                let dk_inv = k.boundary().inverse();
                let moved = Kite::signed(
                    dk_inv.concat(&l.tail).expect("dim"),
                    l.loop_word.clone(),
                    l.sign,
                )
                .expect("valid");
                kites.splice(pos..pos + 1, [k.clone(), moved, k.inverse()]);
                word = KiteWord::new(dim, kites).expect("dim");
            }
            _ => {
                // split (w, b) → (w, b ⋄ c)(w, c⁻¹) for a loop c in b's plane
                if word.is_empty() {
                    continue;
                }
                let pos = rng.gen_range(0..word.len());
                let mut kites = word.kites().to_vec();
                let k = kites[pos].clone();
                let span = k.loop_word.span_basis();
                if span.len() < 2 {
                    continue;
                }
                let c = crate::plpath::triangle_loop(&span[0], &span[1]);
                let first = Kite::signed(
                    k.tail.clone(),
                    k.effective_loop().concat(&c).expect("dim"),
                    1,
                )
                .expect("same plane");
                let second = Kite::signed(k.tail.clone(), c.inverse(), 1).expect("planar");
                kites.splice(pos..pos + 1, [first, second]);
                word = KiteWord::new(dim, kites).expect("dim");
            }
        }
    }
    word
}

/// A word that is not null: one or two kites whose loops enclose seed-dependent
/// areas, so words from different seeds are pairwise distinct.
pub fn random_nonnull(seed: u64) -> KiteWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(2));
    let dim = 3;
    // seed-dependent plane tilt and area keep distinct seeds distinct
    let tilt = (seed % 5) as i64;
    let area = 1 + (seed % 7) as i64;
    let a = v(&[1, 0, tilt]);
    let b = v(&[0, area, 1]);
    let first = Kite::new(
        PlWord::new(3, vec![random_rat_vec(&mut rng, dim, 1)]).expect("dim"),
        crate::plpath::triangle_loop(&a, &b),
    )
    .expect("planar");
    let mut kites = vec![first];
    if seed % 2 == 1 {
        kites.push(random_planar_kite(&mut rng, dim));
    }
    KiteWord::new(dim, kites).expect("dim")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plsurface::local_simplify;
    use num::Signed;

    #[test]
    fn fold_is_null() {
        assert_eq!(fold_word().len(), 2);
        let report = is_null(&fold_word()).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
        assert!(report.chain.unwrap().is_empty());
        assert_eq!(
            report.signature.boundary,
            crate::tensor::TruncatedTensor::one(3, REPORT_TENSOR_LEVEL)
        );
    }

    #[test]
    fn identity_is_null() {
        let report = is_null(&KiteWord::identity(3)).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
    }

    #[test]
    fn single_kite_is_not_null() {
        // the boundary check fires first for an open kite
        let k = Kite::new(
            PlWord::empty(3),
            tri_loop(&v(&[0, 0, 0]), &v(&[1, 0, 0]), &v(&[0, 1, 0])),
        )
        .unwrap();
        let report = is_null(&KiteWord::new(3, vec![k.clone()]).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::NotEqual);
        assert!(matches!(report.witness, Some(Witness::BoundaryMismatch)));
        // a closed single-face difference yields a face witness of
        // multiplicity ±1: compare the tetrahedron against itself with one
        // face replaced by a fold-free deformation... simplest closed case:
        // tetrahedron word (chain witness tested separately)
        let x = tetrahedron_word();
        let report = is_null(&x).unwrap();
        match report.witness {
            Some(Witness::NonzeroFace { multiplicity, .. }) => {
                assert_eq!(multiplicity.abs(), 1)
            }
            other => panic!("expected face witness, got {other:?}"),
        }
    }

    #[test]
    fn peiffer_sides_are_equal() {
        let report = is_null(&peiffer_word()).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
    }

    #[test]
    fn tetrahedron_is_not_null() {
        let x = tetrahedron_word();
        assert_eq!(x.len(), 4);
        assert!(boundary_delta(&x).is_empty());
        let report = is_null(&x).unwrap();
        assert_eq!(report.verdict, Verdict::NotEqual);
        assert!(report.chain.is_some());
        // gamma weight-3 coefficient of e₁⊗e₂∧e₃ is ±1/6
        let sig = surface_signature(&x, 3, 3);
        let c = sig.gamma.coeff(&(vec![1, 0, 0], vec![1, 2]));
        assert_eq!(c.abs(), crate::rat::rat(1, 6));
    }

    #[test]
    fn boundary_mismatch_witness() {
        let k = Kite::new(
            PlWord::empty(3),
            tri_loop(&v(&[0, 0, 0]), &v(&[1, 0, 0]), &v(&[0, 1, 0])),
        )
        .unwrap();
        let x = KiteWord::new(3, vec![k]).unwrap();
        let report = thin_equiv(&x, &KiteWord::identity(3)).unwrap();
        assert_eq!(report.verdict, Verdict::NotEqual);
        assert!(matches!(report.witness, Some(Witness::BoundaryMismatch)));
    }

    #[test]
    fn blocked_peiffer_pair_stumps_greedy_but_decides_equal() {
        // conjugating a two-kite word: E₁ (A B) E₁⁻¹ equals
        // (δE₁ ▷ A)(δE₁ ▷ B), but the greedy simplifier's moves never fire —
        // no adjacent sandwich, no coplanar merge
        let e1 = Kite::new(
            PlWord::empty(3),
            tri_loop(&v(&[0, 0, 0]), &v(&[1, 0, 0]), &v(&[0, 1, 0])),
        )
        .unwrap();
        let a = Kite::new(
            PlWord::empty(3),
            tri_loop(&v(&[0, 0, 0]), &v(&[0, 2, 0]), &v(&[0, 0, 2])),
        )
        .unwrap();
        let b = Kite::new(
            PlWord::empty(3),
            tri_loop(&v(&[0, 0, 0]), &v(&[1, 0, 0]), &v(&[0, 0, 1])),
        )
        .unwrap();
        let e1w = KiteWord::new(3, vec![e1.clone()]).unwrap();
        let ab = KiteWord::new(3, vec![a, b]).unwrap();
        let conj = e1w.mul(&ab).unwrap().mul(&e1w.inv()).unwrap();
        let acted = ab.act(&boundary_delta(&e1w)).unwrap();
        let word = conj.mul(&acted.inv()).unwrap();
        let stuck = crate::plsurface::local_simplify(&word, 10_000);
        assert_eq!(stuck.len(), word.len(), "greedy unexpectedly made progress");
        let report = is_null(&word).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
    }

    #[test]
    fn equal_verdicts_imply_equal_truncated_signatures() {
        // the equal-direction implication holds unconditionally at N = 4,
        // N_w = 6; a chain witness not visible at N_w is logged, not failed
        for seed in 0..5 {
            let x = random_null(seed);
            let report = is_null(&x).unwrap();
            assert_eq!(report.verdict, Verdict::Equal);
            let sig = surface_signature(&x, 4, 6);
            assert_eq!(
                sig.boundary,
                crate::tensor::TruncatedTensor::one(3, 4)
            );
            assert!(sig.gamma.is_zero());
        }
        for seed in 0..5u64 {
            let x = random_nonnull(2 * seed);
            let y = random_nonnull(2 * seed + 1);
            let report = thin_equiv(&x, &y).unwrap();
            assert_eq!(report.verdict, Verdict::NotEqual);
            if matches!(report.witness, Some(Witness::NonzeroFace { .. })) {
                let z = x.mul(&y.inv()).unwrap();
                let sig = surface_signature(&z, 4, 6);
                if sig.gamma.is_zero() {
                    println!(
                        "note: chain witness for pair {seed} not visible at weight ≤ 6"
                    );
                }
            }
        }
    }

    #[test]
    fn random_null_words_decide_equal() {
        for seed in 0..8 {
            let x = random_null(seed);
            let report = is_null(&x).unwrap();
            assert_eq!(report.verdict, Verdict::Equal, "seed {seed}: {x:?}");
        }
    }

    #[test]
    fn random_nonnull_words_decide_not_equal() {
        for seed in 0..6 {
            let x = random_nonnull(seed);
            let report = is_null(&x).unwrap();
            assert_eq!(report.verdict, Verdict::NotEqual, "seed {seed}");
        }
    }

    #[test]
    fn distinct_nonnull_pairs_separate() {
        for k in 0..4u64 {
            let x = random_nonnull(2 * k);
            let y = random_nonnull(2 * k + 1);
            let report = thin_equiv(&x, &y).unwrap();
            assert_eq!(report.verdict, Verdict::NotEqual, "pair {k}");
            assert!(report.witness.is_some());
        }
    }

    #[test]
    fn antipodal_word_shape() {
        let x = antipodal_word();
        assert_eq!(x.len(), 20);
        assert!(boundary_delta(&x).is_empty());
        // gamma vanishes exactly (image faces cancel in antipodal pairs)
        let sig = surface_signature(&x, 2, 6);
        assert!(sig.gamma.is_zero());
        // greedy local simplification does not reach the identity
        let simplified = local_simplify(&x, 10_000);
        assert!(!simplified.is_empty());
    }

    #[test]
    fn antipodal_is_null() {
        let x = antipodal_word();
        let report = is_null(&x).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
    }

    #[test]
    fn kite_equals_its_fan_factorization() {
        // a square kite equals the word of its two fan-triangle kites, in
        // two and three dimensions
        for dim in [2usize, 3] {
            let square = {
                let mut e1 = vec![0i64; dim];
                e1[0] = 1;
                let mut e2 = vec![0i64; dim];
                e2[1] = 1;
                let m1: Vec<i64> = e1.iter().map(|v| -v).collect();
                let m2: Vec<i64> = e2.iter().map(|v| -v).collect();
                PlWord::from_i64(dim, &[&e1, &e2, &m1, &m2])
            };
            let whole = KiteWord::new(
                dim,
                vec![Kite::new(PlWord::empty(dim), square.clone()).unwrap()],
            )
            .unwrap();
            let fan_kites = crate::triangulate::triangulated_representative(&whole)
                .into_iter()
                .map(|tk| tk.to_kite())
                .collect::<Vec<_>>();
            assert_eq!(fan_kites.len(), 2);
            let fan = KiteWord::new(dim, fan_kites).unwrap();
            let report = thin_equiv(&whole, &fan).unwrap();
            assert_eq!(report.verdict, Verdict::Equal, "dim {dim}");
        }
    }

    #[test]
    fn tail_loop_exchange_is_equal() {
        // (w, x ⋄ b ⋄ x⁻¹) equals (w ⋄ x, b) when x lies in the loop's plane
        let b = tri_loop(&v(&[0, 0, 0]), &v(&[2, 0, 0]), &v(&[0, 2, 0]));
        let x = PlWord::from_i64(3, &[&[1, 1, 0]]);
        let w = PlWord::from_i64(3, &[&[0, 0, 1]]);
        let conj_loop = x.concat(&b).unwrap().concat(&x.inverse()).unwrap();
        let lhs = KiteWord::new(3, vec![Kite::new(w.clone(), conj_loop).unwrap()]).unwrap();
        let rhs = KiteWord::new(
            3,
            vec![Kite::new(w.concat(&x).unwrap(), b).unwrap()],
        )
        .unwrap();
        let report = thin_equiv(&lhs, &rhs).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
    }

    #[test]
    fn unknown_example_rejected() {
        assert!(gen_example("nope", 0).is_err());
    }

    #[test]
    fn move_closure_small() {
        // applying extra moves to a null word keeps it equal
        for seed in 0..4 {
            let x = random_null(seed);
            let y = random_null(seed + 1000);
            let both = x.mul(&y).unwrap();
            let report = is_null(&both).unwrap();
            assert_eq!(report.verdict, Verdict::Equal);
        }
    }
}
