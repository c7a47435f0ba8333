//! Built-in verification suites behind `plsig selfcheck`.
//!
//! Three exact suites at fixed sizes: the dual-basis Kronecker matrix for
//! closed currents against closed forms, the abelianized-curvature identity,
//! and the crossed-module axioms in the Peiffer quotient on seeded random
//! inputs.

use crate::currents::{basis_gamma, basis_omega, closed_pairing, hook_indices};
use crate::xlie::{
    abelianized_curvature_matrix, act, bracket, delta, QuotientContext,
};
use crate::rat::rat_int;
use crate::tensor::TruncatedTensor;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs all suites; returns `(name, passed)` per suite.
pub fn run() -> Vec<(String, bool)> {
    vec![
        ("dual-basis kronecker (dim 3, weights 3..=6)".into(), dual_basis(3, 6)),
        ("abelianized curvature identity (dim 3, weights 3..=5)".into(), curvature(3, 5)),
        ("peiffer quotient axioms (dim 3, level 5, 40 samples)".into(), peiffer_axioms(40)),
    ]
}

fn dual_basis(dim: usize, max_weight: usize) -> bool {
    for w in 3..=max_weight {
        let idx = hook_indices(dim, w);
        for (qa, (i1, j1, k1)) in &idx {
            let Ok(g) = basis_gamma(dim, qa, *i1, *j1, *k1) else {
                return false;
            };
            for (qb, (i2, j2, k2)) in &idx {
                let Ok(o) = basis_omega(dim, qb, *i2, *j2, *k2) else {
                    return false;
                };
                let Ok(val) = closed_pairing(&g, &o) else {
                    return false;
                };
                let expect = if qa == qb && (i1, j1, k1) == (i2, j2, k2) {
                    rat_int(1)
                } else {
                    rat_int(0)
                };
                if val != expect {
                    return false;
                }
            }
        }
    }
    true
}

fn curvature(dim: usize, max_weight: usize) -> bool {
    let ctx = QuotientContext::build(dim, max_weight);
    for r in 3..=max_weight {
        let Ok(m) = abelianized_curvature_matrix(&ctx, r) else {
            return false;
        };
        let n = hook_indices(dim, r).len();
        if m.len() != n {
            return false;
        }
        for (u, row) in m.iter().enumerate() {
            for (v, entry) in row.iter().enumerate() {
                let want = if u == v { rat_int(1) } else { rat_int(0) };
                if *entry != want {
                    return false;
                }
            }
        }
    }
    true
}

fn peiffer_axioms(samples: usize) -> bool {
    let dim = 3;
    let ctx = QuotientContext::build(dim, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random_k1 = |rng: &mut ChaCha8Rng, max_weight: usize| {
        let mut raw = std::collections::BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            let w = rng.gen_range(2..=max_weight);
            let word: Vec<u8> = (0..w - 2).map(|_| rng.gen_range(0..dim as u8)).collect();
            let i = rng.gen_range(0..(dim - 1) as u8);
            let j = rng.gen_range(i + 1..dim as u8);
            let c = rat_int(rng.gen_range(-2..=2));
            if !c.is_zero() {
                *raw.entry((word, (i, j))).or_insert_with(num::BigRational::zero) += c;
            }
        }
        ctx.project_raw(&raw).expect("valid monomials")
    };
    let random_lie = |rng: &mut ChaCha8Rng, ctx: &QuotientContext, max_deg: usize| {
        let mut acc = TruncatedTensor::zero(dim, ctx.level());
        for _ in 0..rng.gen_range(1..=2) {
            let deg = rng.gen_range(1..=max_deg);
            let word: Vec<u8> = (0..deg).map(|_| rng.gen_range(0..dim as u8)).collect();
            let mut t = TruncatedTensor::monomial(dim, ctx.level(), &[word[deg - 1]], num::BigRational::one());
            for &l in word[..deg - 1].iter().rev() {
                let el = TruncatedTensor::monomial(dim, ctx.level(), &[l], num::BigRational::one());
                t = el.bracket(&t).expect("compatible");
            }
            acc = acc.add(&t.scale(&rat_int(rng.gen_range(-2..=2)))).expect("compatible");
        }
        acc
    };
    for _ in 0..samples {
        let a = random_k1(&mut rng, 3);
        let b = random_k1(&mut rng, 3);
        let x = random_lie(&mut rng, &ctx, 2);
        // δ(x ▷ A) = [x, δA]
        let Ok(xa) = act(&ctx, &x, &a) else { return false };
        if delta(&ctx, &xa) != x.bracket(&delta(&ctx, &a)).expect("compatible") {
            return false;
        }
        // Peiffer: δ(A) ▷ B = −δ(B) ▷ A (both equal [A, B])
        let Ok(ab) = act(&ctx, &delta(&ctx, &a), &b) else { return false };
        let Ok(ba) = act(&ctx, &delta(&ctx, &b), &a) else { return false };
        if ab != ba.scale(&rat_int(-1)) {
            return false;
        }
        // Jacobi
        let c = random_k1(&mut rng, 2);
        let t1 = bracket(&ctx, &a, &bracket(&ctx, &b, &c).expect("ok")).expect("ok");
        let t2 = bracket(&ctx, &b, &bracket(&ctx, &c, &a).expect("ok")).expect("ok");
        let t3 = bracket(&ctx, &c, &bracket(&ctx, &a, &b).expect("ok")).expect("ok");
        if !t1.add(&t2).expect("ok").add(&t3).expect("ok").is_zero() {
            return false;
        }
    }
    true
}
