//! The free crossed module of Lie algebras, truncated by weight.
//!
//! ```text
//! cargo run --release --example crossed_module
//! ```

use plsig::currents::{codifferential, hook_indices};
use plsig::xlie::{
    abelianized_curvature_matrix, act, b_basis, delta, psi, psi_inv, rho, QuotientContext,
};
use plsig::rat::{format_rat, rat_int};
use plsig::tensor::TruncatedTensor;

fn main() {
    // materialize the Peiffer quotient (T(V) ⊗ Λ²V)/Pf per weight
    let ctx = QuotientContext::build(3, 5);
    println!("Peiffer quotient over ℚ³ up to weight 5:");
    for w in 2..=5 {
        println!(
            "  weight {w}: quotient dim {:>3}, ker δ dim {:>2} = closed-current dim {:>2}",
            ctx.quotient_dim(w),
            ctx.kernel_dim(w),
            hook_indices(3, w).len()
        );
    }

    // the B basis of ker δ maps to boundary currents under the
    // abelianization ρ
    let b = b_basis(&ctx, &[], 0, 1, 2).unwrap();
    assert!(delta(&ctx, &b).is_zero());
    println!("\nδ(B_123) = 0 and ρ(B_123) has components:");
    for (key, c) in rho(&ctx, &b).iter() {
        println!("  {:?} -> {}", key, format_rat(c));
    }

    // the splitting Ψ: quotient ≅ closed currents ⊕ LCS₂, with inverse
    let e1 = TruncatedTensor::monomial(3, 5, &[0], rat_int(1));
    let a = act(&ctx, &e1, &b).unwrap();
    let (gamma, y) = psi(&ctx, &a).unwrap();
    assert!(codifferential(&gamma).is_zero());
    let back = psi_inv(&ctx, &gamma, &y).unwrap();
    assert_eq!(back, a);
    println!("\nΨ splits e1 ▷ B_123 into a closed current ({} terms) and δ-part ({} terms); Ψ⁻¹∘Ψ = id",
        gamma.iter().count(), y.iter().count());

    // the abelianized curvature acts as the identity on closed 3-forms,
    // weight by weight
    println!("\nabelianized curvature components:");
    for r in 3..=5 {
        let m = abelianized_curvature_matrix(&ctx, r).unwrap();
        let is_identity = m.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| *e == if i == j { rat_int(1) } else { rat_int(0) })
        });
        println!("  weight {r}: {}×{} matrix, identity: {is_identity}", m.len(), m.len());
        assert!(is_identity);
    }
}
