//! Deciding thin homotopy equivalence of piecewise linear surfaces.
//!
//! ```text
//! cargo run --release --example thin_homotopy
//! ```

use plsig::decide::{self, Verdict, Witness};
use plsig::plsurface::{boundary_delta, local_simplify};

fn describe(name: &str, report: &plsig::decide::DecisionReport) {
    let verdict = match report.verdict {
        Verdict::Equal => "EQUAL",
        Verdict::NotEqual => "NOT EQUAL",
    };
    print!("{name}: {verdict}");
    match &report.witness {
        Some(Witness::BoundaryMismatch) => print!(" (boundaries differ)"),
        Some(Witness::NonzeroFace { multiplicity, .. }) => {
            print!(" (witness face with multiplicity {multiplicity})")
        }
        None => {}
    }
    println!();
}

fn main() {
    // local cancellations: a fold is null
    let fold = decide::gen_example("fold", 0).unwrap();
    describe("fold vs identity", &decide::is_null(&fold).unwrap());

    // the Peiffer identity relates conjugation to the boundary action; the
    // difference word is null even though it has four kites
    let peiffer = decide::gen_example("peiffer", 0).unwrap();
    describe("peiffer difference vs identity", &decide::is_null(&peiffer).unwrap());

    // the tetrahedron boundary is closed but NOT null: it encloses volume
    let tetra = decide::gen_example("tetrahedron", 0).unwrap();
    describe("tetrahedron vs identity", &decide::is_null(&tetra).unwrap());

    // the flagship nonlocal example: the icosahedral antipodal double cover.
    // Every image face is covered twice with opposite orientations, so the
    // surface is thinly null homotopic — but no sequence of greedy local
    // moves discovers this
    let anti = decide::gen_example("antipodal", 0).unwrap();
    println!(
        "\nantipodal double cover: {} kites, boundary trivial: {}",
        anti.len(),
        boundary_delta(&anti).is_empty()
    );
    let simplified = local_simplify(&anti, 10_000);
    println!(
        "greedy local simplification with budget 10000 leaves {} kites",
        simplified.len()
    );
    describe("antipodal vs identity", &decide::is_null(&anti).unwrap());

    // scrambled null words come back EQUAL; distinct kite words separate
    let null = decide::gen_example("random_null", 7).unwrap();
    describe("scrambled null word (seed 7)", &decide::is_null(&null).unwrap());
    let a = decide::gen_example("random_nonnull", 4).unwrap();
    let b = decide::gen_example("random_nonnull", 5).unwrap();
    describe("two distinct random words", &decide::thin_equiv(&a, &b).unwrap());
}
