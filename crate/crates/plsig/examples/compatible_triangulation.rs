//! Refining edges and triangles into a compatible simplicial complex.
//!
//! ```text
//! cargo run --release --example compatible_triangulation
//! ```

use plsig::geom::Triangle;
use plsig::linalg::RatVec;
use plsig::triangulate::{compatible_triangulation, verify_compatible_triangulation};

fn v(e: &[i64]) -> RatVec {
    RatVec::from_i64(e)
}

fn show(name: &str, edges: &[(RatVec, RatVec)], tris: &[Triangle]) {
    let plsc = compatible_triangulation(edges, tris).unwrap();
    println!(
        "{name}: {} vertices, {} edges, {} faces",
        plsc.vertices().len(),
        plsc.edges().len(),
        plsc.faces().len()
    );
    assert!(plsc.is_compatible());
    verify_compatible_triangulation(edges, tris, &plsc).unwrap();
    println!("  compatible; containment, area and length conservation verified exactly");
}

fn main() {
    // two overlapping coplanar triangles: the overlap region is tiled once,
    // each input triangle is a union of output faces
    show(
        "overlapping coplanar triangles",
        &[],
        &[
            Triangle::new(v(&[0, 0]), v(&[4, 0]), v(&[0, 4])),
            Triangle::new(v(&[1, 1]), v(&[5, 1]), v(&[1, 5])),
        ],
    );

    // a segment piercing a triangle transversally: the piercing point
    // becomes a vertex and splits both the segment and the triangle
    show(
        "triangle pierced by a segment",
        &[(v(&[1, 1, -1]), v(&[1, 1, 1]))],
        &[Triangle::new(v(&[0, 0, 0]), v(&[4, 0, 0]), v(&[0, 4, 0]))],
    );

    // two triangles crossing in space: both are subdivided along the
    // intersection segment of their supporting planes
    show(
        "crossing triangles in 3-space",
        &[],
        &[
            Triangle::new(v(&[0, 0, 0]), v(&[4, 0, 0]), v(&[0, 4, 0])),
            Triangle::new(v(&[1, 1, -2]), v(&[3, 1, 2]), v(&[1, 3, 2])),
        ],
    );
}
