//! Kite words and the two-component surface signature.
//!
//! ```text
//! cargo run --release --example surface_signatures
//! ```

use plsig::currents::codifferential;
use plsig::decide;
use plsig::doc::current_key;
use plsig::plpath::PlWord;
use plsig::plsurface::{boundary_delta, surface_signature, Kite, KiteWord};
use plsig::rat::format_rat;

fn main() {
    // a kite: a tail path plus a planar loop; the kite's boundary is the
    // conjugated loop
    let tail = PlWord::from_i64(3, &[&[0, 0, 1]]);
    let square = PlWord::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 0], &[0, -1, 0]]);
    let kite = Kite::new(tail, square).unwrap();
    println!("kite boundary: {:?}", kite.boundary().letters());

    // the signature of a kite word: boundary path signature + closed current
    let word = KiteWord::new(3, vec![kite.clone(), kite.inverse()]).unwrap();
    let sig = surface_signature(&word, 3, 5);
    println!(
        "fold word: boundary signature is 1: {}, gamma = 0: {}",
        sig.boundary == plsig::tensor::TruncatedTensor::one(3, 3),
        sig.gamma.is_zero()
    );

    // the tetrahedron boundary: trivial path boundary, nontrivial current
    let tetra = decide::gen_example("tetrahedron", 0).unwrap();
    assert!(boundary_delta(&tetra).is_empty());
    let sig = surface_signature(&tetra, 3, 5);
    println!("\ntetrahedron boundary word ({} kites):", tetra.len());
    println!(
        "  boundary component = {} (the identity series)",
        format_rat(&sig.boundary.coeff(&[]))
    );
    println!("  gamma components up to weight 5:");
    for ((alpha, wedge), c) in sig.gamma.iter() {
        println!("    {} -> {}", current_key(alpha, wedge), format_rat(c));
    }
    // the weight-3 coefficient of e1 ⊗ e2∧e3 is the enclosed volume, by the
    // divergence theorem
    println!(
        "  volume via divergence theorem: {}",
        format_rat(&sig.gamma.coeff(&(vec![1, 0, 0], vec![1, 2])))
    );
    // soup currents of closed surfaces are always closed
    assert!(codifferential(&sig.gamma).is_zero());
    println!("  gamma is a closed current");
}
