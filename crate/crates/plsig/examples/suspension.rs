//! The suspension: how translating a loop's cone differs from coning the
//! translated loop, geometrically and algebraically.
//!
//! ```text
//! cargo run --release --example suspension
//! ```

use plsig::currents::{codifferential, soup_current, translate_current};
use plsig::xlie::{suspension_group, suspension_s, QuotientContext};
use plsig::linalg::RatVec;
use plsig::plpath::PlWord;
use plsig::plsurface::{boundary_delta, closed_soup, suspension_soup, Kite, KiteWord};
use plsig::tensor::path_signature;

fn main() {
    let square = PlWord::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 0], &[0, -1, 0]]);
    let lift = RatVec::from_i64(&[0, 0, 1]);

    // the geometric suspension: cone of the translated loop vs translated
    // cone; a closed prism-like soup
    let soup = suspension_soup(&lift, &square).unwrap();
    println!("suspension soup of the unit square along e3: {} signed triangles, closed: {}",
        soup.len(), soup.is_closed());
    let geo = soup_current(&soup, 3, 5);
    assert!(codifferential(&geo).is_zero());

    // the action identity: translating a surface splits into a translation
    // of its current plus the suspension of its boundary
    let kite = Kite::new(PlWord::empty(3), square.clone()).unwrap();
    let word = KiteWord::new(3, vec![kite]).unwrap();
    let tail = PlWord::from_i64(3, &[&[0, 0, 1]]);
    let acted = word.act(&tail).unwrap();
    let lhs = soup_current(&closed_soup(&acted), 3, 5);
    let rhs = translate_current(&soup_current(&closed_soup(&word), 3, 5), &lift, 5)
        .add(&soup_current(
            &suspension_soup(&lift, &boundary_delta(&word)).unwrap(),
            3,
            5,
        ))
        .unwrap();
    assert_eq!(lhs, rhs);
    println!("action identity verified exactly at weights ≤ 5");

    // algebraically, the geometric suspension is the group-level suspension
    // ρ(Σ (v▷)^k 𝔠(y)/k! − 𝔠(e^{ad v} y)); its linearization in v is the
    // Lie-level map 𝔰(v, y) = ℓ⁻¹∂e(v·ρ(𝔠(y)))
    let ctx = QuotientContext::build(3, 5);
    let y = path_signature(&square, 5).log().unwrap();
    let group = suspension_group(&ctx, &lift, &y).unwrap().truncate_weight(5);
    assert_eq!(group, geo);
    println!("group-level algebraic suspension matches the soup current exactly");

    let lie = suspension_s(&ctx, &lift, &y).unwrap();
    assert!(codifferential(&lie).is_zero());
    let y2 = y.degree_component(2);
    let first_order = suspension_s(&ctx, &lift, &y2).unwrap().weight_component(3);
    let group_w3 = suspension_group(&ctx, &lift, &y2)
        .unwrap()
        .weight_component(3);
    assert_eq!(first_order, group_w3);
    println!("Lie-level suspension 𝔰 agrees with the group level to first order");
}
