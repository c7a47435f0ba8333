//! Piecewise linear paths and their signatures.
//!
//! ```text
//! cargo run --release --example path_signatures
//! ```

use plsig::linalg::RatVec;
use plsig::plpath::PlWord;
use plsig::rat::format_rat;
use plsig::tensor::{exp_segment, path_signature};

fn main() {
    // a word of edge vectors; reduce() computes the unique minimal
    // representative (no zero letters, consecutive letters independent)
    let wandering = PlWord::from_i64(
        2,
        &[&[1, 0], &[2, 0], &[0, 1], &[0, -1], &[3, 1], &[-3, -1]],
    );
    println!("word:    {:?}", wandering.letters());
    println!("minimal: {:?}", wandering.reduce().letters());

    // the signature of a segment is the tensor exponential
    let seg = exp_segment(&RatVec::from_i64(&[1, 0]), 3);
    println!("\nexp(e1) up to level 3:");
    for (word, coeff) in seg.iter() {
        println!("  {:?} -> {}", word, format_rat(coeff));
    }

    // the square loop encloses unit area: the antisymmetric degree-2 part
    // of its signature is the area bivector
    let square = PlWord::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
    let sig = path_signature(&square, 2);
    let a12 = sig.coeff(&[0, 1]);
    let a21 = sig.coeff(&[1, 0]);
    println!("\nsquare loop: coeff(e1 e2) = {}, coeff(e2 e1) = {}", a12, a21);
    println!("enclosed area = {}", format_rat(&((a12 - a21) / plsig::rat::rat_int(2))));

    // Chen's identity: signatures are multiplicative under concatenation
    let a = PlWord::from_i64(2, &[&[1, 1], &[0, 2]]);
    let b = PlWord::from_i64(2, &[&[2, -1], &[1, 0]]);
    let lhs = path_signature(&a.concat(&b).unwrap(), 4);
    let rhs = path_signature(&a, 4).mul(&path_signature(&b, 4)).unwrap();
    assert_eq!(lhs, rhs);
    println!("\nChen identity holds for a ⋄ b at level 4 ({} terms)", lhs.iter().count());

    // the logarithm of a signature is a Lie series; for loops its degree-1
    // part vanishes
    let log = path_signature(&square, 4).log().unwrap();
    assert!(log.is_lie().unwrap());
    assert!(log.degree_component(1).is_zero());
    println!("log of the square-loop signature is a Lie element with zero degree-1 part");
}
