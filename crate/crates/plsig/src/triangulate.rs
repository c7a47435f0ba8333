//! Piecewise linear simplicial complexes and compatible triangulations.
//!
//! A [`Plsc`] is a finite ordered simplicial complex with vertices in `V`;
//! it is *compatible* when any two simplices meet in a common subsimplex (or
//! not at all). [`compatible_triangulation`] refines a collection of edges
//! and triangles into a compatible complex by a deterministic line-arrangement
//! subdivision: planes and lines are collected (including all plane-plane
//! intersection lines), every input polygon is split along every line of its
//! plane, and each resulting convex cell is triangulated using all
//! arrangement vertices on its boundary.
//!
//! [`compatible_representative`] rewrites a kite word over the faces of such
//! a refinement; the per-kite disk factorization peels faces off the
//! triangulated triangle one at a time, rewriting the boundary word
//! `∂D = (A ⋄ ∂τ ⋄ A⁻¹) ⋄ ∂D′`, and asserts the boundary identity at every
//! step's end.

use crate::geom::{
    self, plane_of_triangle, point_in_open_segment, point_in_open_triangle, point_in_triangle,
    point_on_segment, AffineLine, AffinePlane, SegSeg, Triangle,
};
use crate::linalg::RatVec;
use crate::plpath::PlWord;
use crate::plsurface::{Kite, KiteWord};
use crate::rat::{sign, Rat};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

/// An ordered piecewise linear simplicial complex. Vertices are stored in
/// global lexicographic coordinate order; simplices are index tuples sorted
/// by that order, which fixes the reference orientation of every face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plsc {
    dim: usize,
    vertices: Vec<RatVec>,
    edges: Vec<(usize, usize)>,
    faces: Vec<(usize, usize, usize)>,
}

impl Plsc {
    /// Builds a complex from realized simplices, deduplicating and closing
    /// under faces. Degenerate triangles are rejected.
    pub fn from_simplices(
        dim: usize,
        points: &[RatVec],
        edges: &[(RatVec, RatVec)],
        faces: &[Triangle],
    ) -> Result<Plsc> {
        let mut vertex_set: BTreeSet<RatVec> = points.iter().cloned().collect();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput("degenerate 1-simplex".into()));
            }
            vertex_set.insert(a.clone());
            vertex_set.insert(b.clone());
        }
        for t in faces {
            if t.is_degenerate() {
                return Err(Error::DegenerateTriangle);
            }
            vertex_set.insert(t.p0.clone());
            vertex_set.insert(t.p1.clone());
            vertex_set.insert(t.p2.clone());
        }
        let vertices: Vec<RatVec> = vertex_set.into_iter().collect();
        for v in &vertices {
            if v.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        let index: HashMap<&RatVec, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (a, b) in edges {
            let (i, j) = (index[a], index[b]);
            edge_set.insert((i.min(j), i.max(j)));
        }
        let mut face_set: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        for t in faces {
            let mut ids = [index[&t.p0], index[&t.p1], index[&t.p2]];
            ids.sort_unstable();
            face_set.insert((ids[0], ids[1], ids[2]));
            edge_set.insert((ids[0], ids[1]));
            edge_set.insert((ids[0], ids[2]));
            edge_set.insert((ids[1], ids[2]));
        }
        Ok(Plsc {
            dim,
            vertices,
            edges: edge_set.into_iter().collect(),
            faces: face_set.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[(usize, usize, usize)] {
        &self.faces
    }

    pub fn vertex(&self, i: usize) -> &RatVec {
        &self.vertices[i]
    }

    pub fn vertex_id(&self, p: &RatVec) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn face_triangle(&self, f: usize) -> Triangle {
        let (a, b, c) = self.faces[f];
        Triangle::new(
            self.vertices[a].clone(),
            self.vertices[b].clone(),
            self.vertices[c].clone(),
        )
    }

    pub fn edge_segment(&self, e: usize) -> (RatVec, RatVec) {
        let (a, b) = self.edges[e];
        (self.vertices[a].clone(), self.vertices[b].clone())
    }

    fn bbox(&self, pts: &[usize]) -> (Vec<Rat>, Vec<Rat>) {
        let mut lo = self.vertices[pts[0]].0.clone();
        let mut hi = lo.clone();
        for &p in &pts[1..] {
            for (k, c) in self.vertices[p].0.iter().enumerate() {
                if c < &lo[k] {
                    lo[k] = c.clone();
                }
                if c > &hi[k] {
                    hi[k] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    /// Exactly decides compatibility: every pair of simplices meets in the
    /// realization of their common vertex set, or not at all. Bounding-box
    /// pruning keeps the pair count manageable.
    pub fn is_compatible(&self) -> bool {
        let edge_boxes: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| self.bbox(&[a, b]))
            .collect();
        let face_boxes: Vec<_> = self
            .faces
            .iter()
            .map(|&(a, b, c)| self.bbox(&[a, b, c]))
            .collect();
        let boxes_meet = |x: &(Vec<Rat>, Vec<Rat>), y: &(Vec<Rat>, Vec<Rat>)| {
            x.0.iter()
                .zip(&y.1)
                .all(|(lo, hi)| lo <= hi)
                && y.0.iter().zip(&x.1).all(|(lo, hi)| lo <= hi)
        };

        // vertex vs edge: a vertex on an edge must be one of its endpoints
        for (v, p) in self.vertices.iter().enumerate() {
            for &(a, b) in &self.edges {
                if v == a || v == b {
                    continue;
                }
                if point_on_segment(p, &self.vertices[a], &self.vertices[b]) {
                    return false;
                }
            }
            for (fi, &(a, b, c)) in self.faces.iter().enumerate() {
                if v == a || v == b || v == c {
                    continue;
                }
                if point_in_triangle(p, &self.face_triangle(fi)) {
                    return false;
                }
            }
        }

        // edge vs edge
        for i in 0..self.edges.len() {
            for j in (i + 1)..self.edges.len() {
                if !boxes_meet(&edge_boxes[i], &edge_boxes[j]) {
                    continue;
                }
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                let shared: Vec<usize> = [a, b].iter().filter(|x| [c, d].contains(x)).copied().collect();
                let isect = geom::segment_intersection(
                    &self.vertices[a],
                    &self.vertices[b],
                    &self.vertices[c],
                    &self.vertices[d],
                );
                let ok = match (shared.len(), &isect) {
                    (0, SegSeg::Empty) => true,
                    (1, SegSeg::Point(p)) => *p == self.vertices[shared[0]],
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }

        // edge vs face and face vs face
        for (ei, &(a, b)) in self.edges.iter().enumerate() {
            for (fi, &(x, y, z)) in self.faces.iter().enumerate() {
                if !boxes_meet(&edge_boxes[ei], &face_boxes[fi]) {
                    continue;
                }
                let shared: Vec<usize> = [a, b]
                    .iter()
                    .filter(|v| [x, y, z].contains(v))
                    .copied()
                    .collect();
                if shared.len() == 2 {
                    continue; // the edge is an edge of the face
                }
                let tri = self.face_triangle(fi);
                let isect =
                    segment_triangle_intersection(&self.vertices[a], &self.vertices[b], &tri);
                let ok = match (shared.len(), &isect) {
                    (0, Isect::Empty) => true,
                    (1, Isect::Point(p)) => *p == self.vertices[shared[0]],
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        for i in 0..self.faces.len() {
            for j in (i + 1)..self.faces.len() {
                if !boxes_meet(&face_boxes[i], &face_boxes[j]) {
                    continue;
                }
                let (a, b, c) = self.faces[i];
                let (x, y, z) = self.faces[j];
                let shared: Vec<usize> = [a, b, c]
                    .iter()
                    .filter(|v| [x, y, z].contains(v))
                    .copied()
                    .collect();
                let t1 = self.face_triangle(i);
                let t2 = self.face_triangle(j);
                let isect = triangle_triangle_intersection(&t1, &t2);
                let ok = match (shared.len(), &isect) {
                    (0, Isect::Empty) => true,
                    (1, Isect::Point(p)) => *p == self.vertices[shared[0]],
                    (2, Isect::Segment(p, q)) => {
                        let s0 = &self.vertices[shared[0]];
                        let s1 = &self.vertices[shared[1]];
                        (p == s0 && q == s1) || (p == s1 && q == s0)
                    }
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Categorized exact intersection of realized simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isect {
    Empty,
    Point(RatVec),
    Segment(RatVec, RatVec),
    Region(Vec<RatVec>),
}

/// Intersection of a closed segment with a closed nondegenerate triangle.
pub fn segment_triangle_intersection(a: &RatVec, b: &RatVec, t: &Triangle) -> Isect {
    let h = plane_of_triangle(t).expect("nondegenerate");
    let d = b - a;
    let a_on = h.contains_point(a);
    let b_on = h.contains_point(b);
    if a_on && b_on {
        // coplanar: clip the segment parameter interval to the triangle
        let line = if d.is_zero() {
            return if point_in_triangle(a, t) {
                Isect::Point(a.clone())
            } else {
                Isect::Empty
            };
        } else {
            AffineLine::new(a, &d).unwrap()
        };
        let _ = line;
        // clip [0,1] against the three edge half-planes in chart coords
        let (ax, ay) = h.chart(a).unwrap();
        let (bx, by) = h.chart(b).unwrap();
        let tri2: Vec<(Rat, Rat)> = t
            .vertices()
            .iter()
            .map(|p| h.chart(p).unwrap())
            .collect();
        let orient = planar::polygon_signed_area2(&tri2);
        let tri2: Vec<(Rat, Rat)> = if orient.is_negative() {
            tri2.into_iter().rev().collect()
        } else {
            tri2
        };
        let mut lo = Rat::zero();
        let mut hi = Rat::one();
        for k in 0..3 {
            let p = &tri2[k];
            let q = &tri2[(k + 1) % 3];
            // inside = left of (p→q); f(t) = cross(q−p, A+t·(B−A) − p)
            let f0 = planar::cross(&(q.0.clone() - &p.0), &(q.1.clone() - &p.1), &(ax.clone() - &p.0), &(ay.clone() - &p.1));
            let f1 = planar::cross(&(q.0.clone() - &p.0), &(q.1.clone() - &p.1), &(bx.clone() - &p.0), &(by.clone() - &p.1));
            let df = &f1 - &f0;
            if df.is_zero() {
                if f0.is_negative() {
                    return Isect::Empty;
                }
            } else {
                let root = -&f0 / &df;
                if df.is_positive() {
                    if root > lo {
                        lo = root;
                    }
                } else if root < hi {
                    hi = root;
                }
            }
            if lo > hi {
                return Isect::Empty;
            }
        }
        let pa = a.add_scaled(&lo, &d);
        let pb = a.add_scaled(&hi, &d);
        if lo > hi {
            Isect::Empty
        } else if pa == pb {
            Isect::Point(pa)
        } else {
            Isect::Segment(pa, pb)
        }
    } else if a_on || b_on || !h.contains_direction(&d) {
        // transversal (or touching): at most one point on the plane
        if d.is_zero() {
            return Isect::Empty;
        }
        let line = AffineLine::new(a, &d).unwrap();
        match geom::line_plane_point(&line, &h) {
            Some(p) => {
                if point_on_segment(&p, a, b) && point_in_triangle(&p, t) {
                    Isect::Point(p)
                } else {
                    Isect::Empty
                }
            }
            None => Isect::Empty,
        }
    } else {
        Isect::Empty // parallel, off the plane
    }
}

/// Intersection of two closed nondegenerate triangles.
pub fn triangle_triangle_intersection(t1: &Triangle, t2: &Triangle) -> Isect {
    let h1 = plane_of_triangle(t1).expect("nondegenerate");
    let h2 = plane_of_triangle(t2).expect("nondegenerate");
    if h1 == h2 {
        // coplanar: convex clip in chart coordinates
        let poly1: Vec<(Rat, Rat)> = t1.vertices().iter().map(|p| h1.chart(p).unwrap()).collect();
        let poly2: Vec<(Rat, Rat)> = t2.vertices().iter().map(|p| h1.chart(p).unwrap()).collect();
        let clipped = planar::convex_clip(&planar::ccw(poly1), &planar::ccw(poly2));
        let hull = planar::canonical_hull(&clipped);
        match hull.len() {
            0 => Isect::Empty,
            1 => Isect::Point(h1.unchart(&hull[0].0, &hull[0].1)),
            2 => Isect::Segment(
                h1.unchart(&hull[0].0, &hull[0].1),
                h1.unchart(&hull[1].0, &hull[1].1),
            ),
            _ => Isect::Region(
                hull.into_iter()
                    .map(|(x, y)| h1.unchart(&x, &y))
                    .collect(),
            ),
        }
    } else {
        match geom::plane_plane_line(&h1, &h2) {
            Some(line) => {
                let i1 = clip_triangle_to_line(t1, &line);
                let i2 = clip_triangle_to_line(t2, &line);
                match (i1, i2) {
                    (Some((a1, b1)), Some((a2, b2))) => {
                        let lo = if a1 >= a2 { a1 } else { a2 };
                        let hi = if b1 <= b2 { b1 } else { b2 };
                        if lo > hi {
                            Isect::Empty
                        } else if lo == hi {
                            Isect::Point(line.point_at(&lo))
                        } else {
                            Isect::Segment(line.point_at(&lo), line.point_at(&hi))
                        }
                    }
                    _ => Isect::Empty,
                }
            }
            None => {
                // parallel planes or point intersection (dim ≥ 4)
                match geom::plane_plane_point(&h1, &h2) {
                    Some(p) => {
                        if point_in_triangle(&p, t1) && point_in_triangle(&p, t2) {
                            Isect::Point(p)
                        } else {
                            Isect::Empty
                        }
                    }
                    None => Isect::Empty,
                }
            }
        }
    }
}

/// Parameter interval of `t ∩ line` along the line, when nonempty.
fn clip_triangle_to_line(t: &Triangle, line: &AffineLine) -> Option<(Rat, Rat)> {
    let mut params: Vec<Rat> = Vec::new();
    let vs = t.vertices();
    for k in 0..3 {
        let (p, q) = (vs[k], vs[(k + 1) % 3]);
        // intersect the edge [p,q] with the full line
        let d = q - p;
        if d.is_zero() {
            continue;
        }
        if crate::linalg::linearly_dependent(&d, &line.dir) {
            if line.contains_point(p) {
                params.push(line.param_of(p).unwrap());
                params.push(line.param_of(q).unwrap());
            }
            continue;
        }
        let n = p.dim();
        let rows: Vec<RatVec> = (0..n)
            .map(|i| RatVec(vec![d.0[i].clone(), -line.dir.0[i].clone()]))
            .collect();
        let rhs = &line.base - p;
        if let Some(st) = crate::linalg::solve_linear(&rows, &rhs) {
            let s = &st.0[0];
            if !s.is_negative() && *s <= Rat::one() {
                let pt = p.add_scaled(s, &d);
                params.push(line.param_of(&pt).unwrap());
            }
        }
    }
    if params.is_empty() {
        return None;
    }
    params.sort();
    Some((params.first().unwrap().clone(), params.last().unwrap().clone()))
}

mod planar {
    //! Exact 2D helpers in plane-chart coordinates.
    use super::*;

    pub type P2 = (Rat, Rat);

    pub fn cross(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
        ax * by - ay * bx
    }

    /// Orientation of the triple `(a, b, c)`.
    pub fn orient(a: &P2, b: &P2, c: &P2) -> i8 {
        let v = cross(
            &(b.0.clone() - &a.0),
            &(b.1.clone() - &a.1),
            &(c.0.clone() - &a.0),
            &(c.1.clone() - &a.1),
        );
        sign(&v)
    }

    pub fn polygon_signed_area2(poly: &[P2]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..poly.len() {
            let a = &poly[i];
            let b = &poly[(i + 1) % poly.len()];
            acc += &a.0 * &b.1 - &a.1 * &b.0;
        }
        acc
    }

    /// Reorients a polygon counterclockwise.
    pub fn ccw(poly: Vec<P2>) -> Vec<P2> {
        if polygon_signed_area2(&poly).is_negative() {
            poly.into_iter().rev().collect()
        } else {
            poly
        }
    }

    /// Sutherland–Hodgman clip of convex `subject` by convex CCW `clip`.
    pub fn convex_clip(subject: &[P2], clip: &[P2]) -> Vec<P2> {
        let mut out: Vec<P2> = subject.to_vec();
        for k in 0..clip.len() {
            if out.is_empty() {
                break;
            }
            let p = clip[k].clone();
            let q = clip[(k + 1) % clip.len()].clone();
            let input = out;
            out = Vec::new();
            for i in 0..input.len() {
                let cur = input[i].clone();
                let nxt = input[(i + 1) % input.len()].clone();
                let side_cur = orient(&p, &q, &cur);
                let side_nxt = orient(&p, &q, &nxt);
                if side_cur >= 0 {
                    out.push(cur.clone());
                }
                if side_cur * side_nxt < 0 {
                    // edge crosses the clip line
                    let f0 = cross(
                        &(q.0.clone() - &p.0),
                        &(q.1.clone() - &p.1),
                        &(cur.0.clone() - &p.0),
                        &(cur.1.clone() - &p.1),
                    );
                    let f1 = cross(
                        &(q.0.clone() - &p.0),
                        &(q.1.clone() - &p.1),
                        &(nxt.0.clone() - &p.0),
                        &(nxt.1.clone() - &p.1),
                    );
                    let t = &f0 / (&f0 - &f1);
                    let x = &cur.0 + (&nxt.0 - &cur.0) * &t;
                    let y = &cur.1 + (&nxt.1 - &cur.1) * &t;
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Canonical convex hull of a point multiset: deduplicated extreme
    /// points in CCW order starting at the lexicographic minimum; collinear
    /// sets reduce to their two extremes (or one point).
    pub fn canonical_hull(points: &[P2]) -> Vec<P2> {
        let mut pts: Vec<P2> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return pts;
        }
        // Andrew's monotone chain with strict turns
        let mut lower: Vec<P2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<P2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        if lower.len() == pts.len() && upper.len() == pts.len() && pts.len() >= 2 {
            // all collinear
            return vec![pts.first().unwrap().clone(), pts.last().unwrap().clone()];
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            // collinear degenerate
            let mut ends = vec![pts.first().unwrap().clone(), pts.last().unwrap().clone()];
            ends.dedup();
            return ends;
        }
        lower
    }

    /// A 2D line `a·x + b·y = c`, canonicalized.
    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    pub struct Line2 {
        pub a: Rat,
        pub b: Rat,
        pub c: Rat,
    }

    impl Line2 {
        pub fn through(p: &P2, q: &P2) -> Option<Line2> {
            if p == q {
                return None;
            }
            let a = &q.1 - &p.1;
            let b = &p.0 - &q.0;
            let c = &a * &p.0 + &b * &p.1;
            Some(Line2::normalized(a, b, c))
        }

        fn normalized(a: Rat, b: Rat, c: Rat) -> Line2 {
            let lead = if !a.is_zero() { a.clone() } else { b.clone() };
            Line2 {
                a: &a / &lead,
                b: &b / &lead,
                c: &c / &lead,
            }
        }

        pub fn eval(&self, p: &P2) -> Rat {
            &self.a * &p.0 + &self.b * &p.1 - &self.c
        }
    }

    /// Splits a convex polygon by a line into the two closed sides.
    pub fn split_polygon(poly: &[P2], line: &Line2) -> (Vec<P2>, Vec<P2>) {
        let sides: Vec<i8> = poly.iter().map(|p| sign(&line.eval(p))).collect();
        if sides.iter().all(|&s| s >= 0) {
            return (poly.to_vec(), Vec::new());
        }
        if sides.iter().all(|&s| s <= 0) {
            return (Vec::new(), poly.to_vec());
        }
        let mut pos: Vec<P2> = Vec::new();
        let mut neg: Vec<P2> = Vec::new();
        let n = poly.len();
        for i in 0..n {
            let cur = &poly[i];
            let nxt = &poly[(i + 1) % n];
            let s_cur = sides[i];
            let s_nxt = sides[(i + 1) % n];
            if s_cur >= 0 {
                pos.push(cur.clone());
            }
            if s_cur <= 0 {
                neg.push(cur.clone());
            }
            if s_cur * s_nxt < 0 {
                let f0 = line.eval(cur);
                let f1 = line.eval(nxt);
                let t = &f0 / (&f0 - &f1);
                let x = &cur.0 + (&nxt.0 - &cur.0) * &t;
                let y = &cur.1 + (&nxt.1 - &cur.1) * &t;
                pos.push((x.clone(), y.clone()));
                neg.push((x, y));
            }
        }
        (pos, neg)
    }

    /// Canonical form of a convex cell: CCW, starting at the lexicographic
    /// least vertex, consecutive duplicates removed. Returns `None` for
    /// cells with fewer than 3 distinct vertices or zero area.
    pub fn canonical_cell(poly: &[P2]) -> Option<Vec<P2>> {
        let mut cleaned: Vec<P2> = Vec::new();
        for p in poly {
            if cleaned.last() != Some(p) {
                cleaned.push(p.clone());
            }
        }
        while cleaned.len() > 1 && cleaned.first() == cleaned.last() {
            cleaned.pop();
        }
        if cleaned.len() < 3 {
            return None;
        }
        let area = polygon_signed_area2(&cleaned);
        if area.is_zero() {
            return None;
        }
        let cleaned = ccw(cleaned);
        let start = cleaned
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.cmp(b))
            .map(|(i, _)| i)
            .unwrap();
        let rotated: Vec<P2> = cleaned[start..]
            .iter()
            .chain(cleaned[..start].iter())
            .cloned()
            .collect();
        Some(rotated)
    }

    pub fn point_on_seg2(p: &P2, a: &P2, b: &P2) -> bool {
        if orient(a, b, p) != 0 {
            return false;
        }
        let within = |x: &Rat, lo: &Rat, hi: &Rat| {
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            x >= lo && x <= hi
        };
        within(&p.0, &a.0, &b.0) && within(&p.1, &a.1, &b.1)
    }

    /// All boundary vertices of a canonical convex cell: the corners plus
    /// the given extra vertices lying on its edges, in cyclic order.
    pub fn boundary_cycle(cell: &[P2], extra: &[P2]) -> Vec<P2> {
        let n = cell.len();
        let mut out: Vec<P2> = Vec::new();
        for i in 0..n {
            let a = &cell[i];
            let b = &cell[(i + 1) % n];
            out.push(a.clone());
            let mut on_edge: Vec<&P2> = extra
                .iter()
                .filter(|p| *p != a && *p != b && point_on_seg2(p, a, b))
                .collect();
            // sort along the edge
            on_edge.sort_by(|p, q| {
                let key = |r: &P2| {
                    if a.0 != b.0 {
                        (&r.0 - &a.0) / (&b.0 - &a.0)
                    } else {
                        (&r.1 - &a.1) / (&b.1 - &a.1)
                    }
                };
                key(p).cmp(&key(q))
            });
            out.extend(on_edge.into_iter().cloned());
        }
        out
    }

    /// Ear-clipping triangulation of a convex cell with collinear boundary
    /// vertices. Deterministic: always clips the lexicographically least
    /// eligible ear. Every returned triangle is nondegenerate and its chords
    /// carry no boundary vertices.
    pub fn ear_clip(cycle: &[P2]) -> Vec<[P2; 3]> {
        let mut w: Vec<P2> = cycle.to_vec();
        let mut out = Vec::new();
        while w.len() > 3 {
            let n = w.len();
            let mut best: Option<usize> = None;
            for t in 0..n {
                let a = &w[(t + n - 1) % n];
                let u = &w[t];
                let b = &w[(t + 1) % n];
                if orient(a, u, b) <= 0 {
                    continue;
                }
                // the closed ear triangle must contain no other cycle vertex
                let blocked = w.iter().enumerate().any(|(s, p)| {
                    s != t
                        && s != (t + n - 1) % n
                        && s != (t + 1) % n
                        && orient(a, u, p) >= 0
                        && orient(u, b, p) >= 0
                        && orient(b, a, p) >= 0
                });
                if blocked {
                    continue;
                }
                match best {
                    None => best = Some(t),
                    Some(cur) => {
                        if w[t] < w[cur] {
                            best = Some(t);
                        }
                    }
                }
            }
            let t = best.expect("convex cell always has an ear");
            let a = w[(t + n - 1) % n].clone();
            let u = w[t].clone();
            let b = w[(t + 1) % n].clone();
            out.push([a, u, b]);
            w.remove(t);
        }
        if w.len() == 3 && orient(&w[0], &w[1], &w[2]) != 0 {
            out.push([w[0].clone(), w[1].clone(), w[2].clone()]);
        } else if w.len() == 3 {
            panic!("degenerate remainder in ear clipping");
        }
        out
    }
}

/// A compatible triangulation of a set of edges and triangles, per the
/// arrangement construction: supporting planes, boundary/edge/intersection
/// lines, all pairwise intersection vertices, one extra line through every
/// stray vertex, then per-cell triangulation.
pub fn compatible_triangulation(
    input_edges: &[(RatVec, RatVec)],
    input_tris: &[Triangle],
) -> Result<Plsc> {
    let dim = input_edges
        .first()
        .map(|(a, _)| a.dim())
        .or_else(|| input_tris.first().map(Triangle::dim))
        .unwrap_or(0);
    if dim == 0 {
        return Plsc::from_simplices(0, &[], &[], &[]);
    }
    for (a, b) in input_edges {
        if a == b {
            return Err(Error::InvalidInput("degenerate input edge".into()));
        }
    }
    for t in input_tris {
        if t.is_degenerate() {
            return Err(Error::DegenerateTriangle);
        }
    }

    // Step 1: supporting planes
    let mut planes: BTreeSet<AffinePlane> = BTreeSet::new();
    for t in input_tris {
        planes.insert(plane_of_triangle(t)?);
    }
    // Step 2: lines — polygon boundary lines, edge lines, plane-plane lines
    let mut lines: BTreeSet<AffineLine> = BTreeSet::new();
    for t in input_tris {
        let vs = t.vertices();
        for k in 0..3 {
            lines.insert(AffineLine::through(vs[k], vs[(k + 1) % 3])?);
        }
    }
    for (a, b) in input_edges {
        lines.insert(AffineLine::through(a, b)?);
    }
    let plane_list: Vec<AffinePlane> = planes.iter().cloned().collect();
    for i in 0..plane_list.len() {
        for j in (i + 1)..plane_list.len() {
            if let Some(l) = geom::plane_plane_line(&plane_list[i], &plane_list[j]) {
                lines.insert(l);
            }
        }
    }

    // Step 3 + stray fixing, iterated to a fixed point
    let mut vertices: BTreeSet<RatVec> = BTreeSet::new();
    for (a, b) in input_edges {
        vertices.insert(a.clone());
        vertices.insert(b.clone());
    }
    for t in input_tris {
        for v in t.vertices() {
            vertices.insert(v.clone());
        }
    }
    loop {
        // all pairwise intersection vertices
        let line_list: Vec<AffineLine> = lines.iter().cloned().collect();
        for i in 0..line_list.len() {
            for j in (i + 1)..line_list.len() {
                if let Some(p) = geom::line_line_point(&line_list[i], &line_list[j]) {
                    vertices.insert(p);
                }
            }
        }
        for l in &line_list {
            for h in &plane_list {
                if let Some(p) = geom::line_plane_point(l, h) {
                    vertices.insert(p);
                }
            }
        }
        for i in 0..plane_list.len() {
            for j in (i + 1)..plane_list.len() {
                if let Some(p) = geom::plane_plane_point(&plane_list[i], &plane_list[j]) {
                    vertices.insert(p);
                }
            }
        }
        // stray vertices: in some plane but on no line of that plane
        let mut added = false;
        for h in &plane_list {
            let plane_lines: Vec<&AffineLine> = lines
                .iter()
                .filter(|l| h.contains_point(&l.base) && h.contains_direction(&l.dir))
                .collect();
            let in_plane: Vec<&RatVec> = vertices.iter().filter(|p| h.contains_point(p)).collect();
            let mut new_lines: Vec<AffineLine> = Vec::new();
            for p in &in_plane {
                if plane_lines.iter().any(|l| l.contains_point(p))
                    || new_lines.iter().any(|l| l.contains_point(p))
                {
                    continue;
                }
                // line through p in a generic direction of the plane: try
                // dir1, dir2, then dir1 + k·dir2 until it avoids every other
                // arrangement vertex of the plane
                let mut dir_candidates: Vec<RatVec> = vec![h.dir2.clone(), h.dir1.clone()];
                let mut k = 1i64;
                let chosen = loop {
                    let cand = match dir_candidates.pop() {
                        Some(d) => d,
                        None => {
                            let d = h
                                .dir1
                                .add_scaled(&crate::rat::rat_int(k), &h.dir2);
                            k += 1;
                            d
                        }
                    };
                    let l = AffineLine::new(p, &cand)?;
                    let hits_other = in_plane
                        .iter()
                        .any(|q| *q != *p && l.contains_point(q));
                    if !hits_other {
                        break l;
                    }
                };
                new_lines.push(chosen);
            }
            for l in new_lines {
                if lines.insert(l) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    // elementary edge segments covering the input edges
    let mut out_edges: Vec<(RatVec, RatVec)> = Vec::new();
    let vertex_list: Vec<RatVec> = vertices.iter().cloned().collect();
    for l in &lines {
        let mut params: Vec<Rat> = vertex_list
            .iter()
            .filter(|p| l.contains_point(p))
            .map(|p| l.param_of(p).unwrap())
            .collect();
        params.sort();
        params.dedup();
        for w in params.windows(2) {
            let a = l.point_at(&w[0]);
            let b = l.point_at(&w[1]);
            let mid = a.add_scaled(&crate::rat::rat(1, 2), &(&b - &a));
            let covers = input_edges
                .iter()
                .any(|(ea, eb)| point_in_open_segment(&mid, ea, eb));
            if covers {
                out_edges.push((a, b));
            }
        }
    }

    // per-plane cell subdivision and triangulation
    let mut out_faces: BTreeSet<Vec<RatVec>> = BTreeSet::new();
    for h in &plane_list {
        let plane_lines2: Vec<planar::Line2> = lines
            .iter()
            .filter(|l| h.contains_point(&l.base) && h.contains_direction(&l.dir))
            .filter_map(|l| {
                let p = h.chart(&l.base)?;
                let q = h.chart(&l.point_at(&Rat::one()))?;
                planar::Line2::through(&p, &q)
            })
            .collect();
        let plane_vertices2: Vec<planar::P2> = vertex_list
            .iter()
            .filter_map(|p| h.chart(p))
            .collect();
        for t in input_tris.iter().filter(|t| &plane_of_triangle(t).unwrap() == h) {
            let tri2: Vec<planar::P2> = t.vertices().iter().map(|p| h.chart(p).unwrap()).collect();
            let mut cells: Vec<Vec<planar::P2>> = vec![planar::ccw(tri2)];
            for line in &plane_lines2 {
                let mut next = Vec::new();
                for cell in cells {
                    let (pos, neg) = planar::split_polygon(&cell, line);
                    for side in [pos, neg] {
                        if let Some(c) = planar::canonical_cell(&side) {
                            next.push(c);
                        }
                    }
                }
                cells = next;
            }
            for cell in cells {
                let cycle = planar::boundary_cycle(&cell, &plane_vertices2);
                for tri in planar::ear_clip(&cycle) {
                    let pts: Vec<RatVec> = tri
                        .iter()
                        .map(|(x, y)| h.unchart(x, y))
                        .collect();
                    let mut sorted = pts.clone();
                    sorted.sort();
                    out_faces.insert(sorted);
                }
            }
        }
    }

    let face_tris: Vec<Triangle> = out_faces
        .iter()
        .map(|pts| Triangle::new(pts[0].clone(), pts[1].clone(), pts[2].clone()))
        .collect();
    Plsc::from_simplices(dim, &[], &out_edges, &face_tris)
}

/// Postcondition checker for [`compatible_triangulation`]: compatibility,
/// the containment conditions, exact area conservation per input triangle
/// and exact length conservation per input edge (including triangle
/// boundary edges).
pub fn verify_compatible_triangulation(
    input_edges: &[(RatVec, RatVec)],
    input_tris: &[Triangle],
    plsc: &Plsc,
) -> std::result::Result<(), String> {
    if !plsc.is_compatible() {
        return Err("output complex is not compatible".into());
    }
    // (1) an output 1-simplex whose interior meets an input edge interior is contained in it
    for e in 0..plsc.edges.len() {
        let (a, b) = plsc.edge_segment(e);
        for (ea, eb) in input_edges {
            let meets = match geom::segment_intersection(&a, &b, ea, eb) {
                SegSeg::Empty => false,
                SegSeg::Point(p) => point_in_open_segment(&p, &a, &b) && point_in_open_segment(&p, ea, eb),
                SegSeg::Overlap(p, q) => {
                    let mid = p.add_scaled(&crate::rat::rat(1, 2), &(&q - &p));
                    point_in_open_segment(&mid, &a, &b) && point_in_open_segment(&mid, ea, eb)
                        || (p != q)
                }
            };
            if meets && !(point_on_segment(&a, ea, eb) && point_on_segment(&b, ea, eb)) {
                return Err(format!("edge {e} crosses an input edge without containment"));
            }
        }
    }
    // (2) an output face whose interior meets an input triangle interior is contained in it
    for f in 0..plsc.faces.len() {
        let tri = plsc.face_triangle(f);
        for t in input_tris {
            if open_interiors_meet(&tri, t) && !triangle_inside(&tri, t) {
                return Err(format!("face {f} crosses an input triangle without containment"));
            }
        }
        // (3) every face is contained in some input triangle
        if !input_tris.iter().any(|t| triangle_inside(&tri, t)) {
            return Err(format!("face {f} lies in no input triangle"));
        }
    }
    // (3) union: exact area accounting per input triangle
    for (ti, t) in input_tris.iter().enumerate() {
        let h = plane_of_triangle(t).map_err(|e| e.to_string())?;
        let target = geom::chart_area2(t, &h).map_err(|e| e.to_string())?.abs();
        let mut acc = Rat::zero();
        for f in 0..plsc.faces.len() {
            let tri = plsc.face_triangle(f);
            if triangle_inside(&tri, t) {
                acc += geom::chart_area2(&tri, &h).map_err(|e| e.to_string())?.abs();
            }
        }
        if acc != target {
            return Err(format!(
                "area not conserved for input triangle {ti}: {acc} vs {target}"
            ));
        }
    }
    // (4) edge coverage: input edges and triangle boundary edges are unions
    // of output 1-simplices; exact length accounting in line parameters
    let mut targets: Vec<(RatVec, RatVec)> = input_edges.to_vec();
    for t in input_tris {
        let vs = t.vertices();
        for k in 0..3 {
            targets.push((vs[k].clone(), vs[(k + 1) % 3].clone()));
        }
    }
    for (k, (ea, eb)) in targets.iter().enumerate() {
        let line = AffineLine::through(ea, eb).map_err(|e| e.to_string())?;
        let ta = line.param_of(ea).unwrap();
        let tb = line.param_of(eb).unwrap();
        let target = (&tb - &ta).abs();
        let mut acc = Rat::zero();
        for e in 0..plsc.edges.len() {
            let (a, b) = plsc.edge_segment(e);
            if point_on_segment(&a, ea, eb) && point_on_segment(&b, ea, eb) {
                let pa = line.param_of(&a).unwrap();
                let pb = line.param_of(&b).unwrap();
                acc += (&pb - &pa).abs();
            }
        }
        if acc != target {
            return Err(format!("edge {k} not covered: {acc} vs {target}"));
        }
    }
    Ok(())
}

fn triangle_inside(inner: &Triangle, outer: &Triangle) -> bool {
    inner
        .vertices()
        .iter()
        .all(|p| point_in_triangle(p, outer))
}

fn open_interiors_meet(t1: &Triangle, t2: &Triangle) -> bool {
    match triangle_triangle_intersection(t1, t2) {
        Isect::Empty | Isect::Point(_) => false,
        Isect::Segment(p, q) => {
            let mid = p.add_scaled(&crate::rat::rat(1, 2), &(&q - &p));
            point_in_open_triangle(&mid, t1) && point_in_open_triangle(&mid, t2)
        }
        Isect::Region(pts) => {
            // positive 2D area: interiors meet
            let h = plane_of_triangle(t1).expect("nondegenerate");
            let poly: Vec<planar::P2> = pts.iter().map(|p| h.chart(p).unwrap()).collect();
            !planar::polygon_signed_area2(&poly).is_zero()
        }
    }
}

/// A marked triangular kite: tail letters as given, plus an oriented
/// triangle traversed `p0 → p1 → p2` (the loop's basepoint is `p0`).
#[derive(Clone, Debug)]
pub struct TriKite {
    pub tail: Vec<RatVec>,
    pub tri: Triangle,
}

impl TriKite {
    pub fn loop_word(&self) -> PlWord {
        PlWord::new(
            self.tri.dim(),
            vec![
                &self.tri.p1 - &self.tri.p0,
                &self.tri.p2 - &self.tri.p1,
                &self.tri.p0 - &self.tri.p2,
            ],
        )
        .expect("same dim")
    }

    pub fn to_kite(&self) -> Kite {
        Kite::new(
            PlWord::new(self.tri.dim(), self.tail.clone()).expect("same dim"),
            self.loop_word(),
        )
        .expect("triangular loops are planar")
    }
}

/// Fan-splits a kite word into marked triangular kites (signs expanded into
/// loop orientation). Identity kites disappear.
pub fn triangulated_representative(x: &KiteWord) -> Vec<TriKite> {
    let mut out = Vec::new();
    for kite in x.kites() {
        let lw = kite.effective_loop().reduce();
        let sums = lw.partial_sums();
        let k = lw.len();
        if k < 3 {
            continue;
        }
        let base = kite.tail.endpoint();
        for r in 1..k - 1 {
            let p0 = base.clone();
            let p1 = &base + &sums[r];
            let p2 = &base + &sums[r + 1];
            let t = Triangle::new(p0, p1, p2);
            if t.is_degenerate() {
                continue;
            }
            out.push(TriKite {
                tail: kite.tail.letters().to_vec(),
                tri: t,
            });
        }
    }
    out
}

/// The simplex mapping: one entry per triangular kite of a compatible
/// representative, giving its face and the orientation sign (`+1` iff the
/// kite's loop traversal matches the face's vertex-order orientation).
pub type SimplexMapping = Vec<(usize, usize, i8)>;

/// The signed face chain induced by a simplex mapping.
pub type Chain2 = BTreeMap<usize, i64>;

pub fn chain(mapping: &SimplexMapping) -> Chain2 {
    let mut out = Chain2::new();
    for &(_, face, s) in mapping {
        let slot = out.entry(face).or_insert(0);
        *slot += s as i64;
        if *slot == 0 {
            out.remove(&face);
        }
    }
    out
}

/// The complex of a triangulated representative (tail edges plus kite
/// triangles), with provenance: which face realizes each triangular kite and
/// with which orientation sign.
pub fn build_plsc(x: &KiteWord) -> Result<(Plsc, SimplexMapping)> {
    let kites = triangulated_representative(x);
    build_plsc_from_trikites(x.dim(), &kites)
}

fn build_plsc_from_trikites(dim: usize, kites: &[TriKite]) -> Result<(Plsc, SimplexMapping)> {
    let mut points = vec![RatVec::zero(dim)];
    let mut edges: Vec<(RatVec, RatVec)> = Vec::new();
    let mut faces: Vec<Triangle> = Vec::new();
    for k in kites {
        let mut acc = RatVec::zero(dim);
        for l in &k.tail {
            if l.is_zero() {
                continue;
            }
            let next = &acc + l;
            edges.push((acc.clone(), next.clone()));
            acc = next;
        }
        points.push(acc);
        faces.push(k.tri.clone());
    }
    let plsc = Plsc::from_simplices(dim, &points, &edges, &faces)?;
    let mut mapping = SimplexMapping::new();
    for (i, k) in kites.iter().enumerate() {
        let ids = {
            let a = plsc.vertex_id(&k.tri.p0).expect("vertex present");
            let b = plsc.vertex_id(&k.tri.p1).expect("vertex present");
            let c = plsc.vertex_id(&k.tri.p2).expect("vertex present");
            let mut s = [a, b, c];
            s.sort_unstable();
            (s[0], s[1], s[2])
        };
        let face = plsc
            .faces
            .binary_search(&ids)
            .expect("face present");
        let h = plane_of_triangle(&k.tri)?;
        let s_kite = geom::canonical_orientation_sign(&k.tri, &h)?;
        let s_face = geom::canonical_orientation_sign(&plsc.face_triangle(face), &h)?;
        mapping.push((i, face, s_kite * s_face));
    }
    Ok((plsc, mapping))
}

/// A compatible representative of a kite word: an equal kite word all of
/// whose kites are triangular kites over the faces of a compatible complex,
/// with tails running along the 1-skeleton, together with the complex and
/// the simplex mapping.
pub struct CompatibleRep {
    pub word: KiteWord,
    pub plsc: Plsc,
    pub mapping: SimplexMapping,
}

pub fn compatible_representative(x: &KiteWord) -> Result<CompatibleRep> {
    let dim = x.dim();
    let kites = triangulated_representative(x);
    // inputs for the refinement: tail edges and kite triangles
    let mut input_edges: Vec<(RatVec, RatVec)> = Vec::new();
    let mut input_tris: Vec<Triangle> = Vec::new();
    for k in &kites {
        let mut acc = RatVec::zero(dim);
        for l in &k.tail {
            if l.is_zero() {
                continue;
            }
            let next = &acc + l;
            input_edges.push((acc.clone(), next.clone()));
            acc = next;
        }
        input_tris.push(k.tri.clone());
    }
    let mut refined = compatible_triangulation(&input_edges, &input_tris)?;
    if refined.vertices.is_empty() {
        // the dimension cannot be inferred from an empty arrangement
        refined = Plsc::from_simplices(dim, &[], &[], &[])?;
    }

    let mut out_kites: Vec<Kite> = Vec::new();
    let mut mapping = SimplexMapping::new();
    for k in &kites {
        // tails subdivided along the refined skeleton
        let mut new_tail: Vec<RatVec> = Vec::new();
        let mut acc = RatVec::zero(dim);
        for l in &k.tail {
            if l.is_zero() {
                continue;
            }
            let next = &acc + l;
            for step in subdivide_segment(&refined, &acc, &next) {
                new_tail.push(step);
            }
            acc = next;
        }
        let factors = peel_disk(&refined, &k.tri)?;
        for piece in factors {
            let mut tail_letters = new_tail.clone();
            tail_letters.extend(piece.prefix);
            let kite_index = out_kites.len();
            out_kites.push(
                Kite::new(
                    PlWord::new(dim, tail_letters)?,
                    triangle_traversal_loop(&piece.tri),
                )
                .expect("triangular loops are planar"),
            );
            mapping.push((kite_index, piece.face, piece.sign));
        }
    }
    let word = KiteWord::new(dim, out_kites)?;
    // boundary identity: the representative equals the original in PL₀
    let lhs = crate::plsurface::boundary_delta(&word);
    let rhs = crate::plsurface::boundary_delta(x);
    assert!(
        lhs.equivalent(&rhs),
        "compatible representative changed the boundary"
    );
    Ok(CompatibleRep {
        word,
        plsc: refined,
        mapping,
    })
}

fn triangle_traversal_loop(t: &Triangle) -> PlWord {
    PlWord::new(
        t.dim(),
        vec![&t.p1 - &t.p0, &t.p2 - &t.p1, &t.p0 - &t.p2],
    )
    .expect("same dim")
}

/// Letters of the subdivided segment from `a` to `b` along the refined
/// complex's vertices.
fn subdivide_segment(plsc: &Plsc, a: &RatVec, b: &RatVec) -> Vec<RatVec> {
    let d = b - a;
    let mut on: Vec<(Rat, &RatVec)> = Vec::new();
    let line = AffineLine::through(a, b).expect("distinct");
    for v in &plsc.vertices {
        if point_on_segment(v, a, b) {
            on.push((line.param_of(v).unwrap(), v));
        }
    }
    let ta = line.param_of(a).unwrap();
    let tb = line.param_of(b).unwrap();
    if ta <= tb {
        on.sort_by(|x, y| x.0.cmp(&y.0));
    } else {
        on.sort_by(|x, y| y.0.cmp(&x.0));
    }
    debug_assert!(on.first().map(|(_, v)| *v == a).unwrap_or(false));
    debug_assert!(on.last().map(|(_, v)| *v == b).unwrap_or(false));
    let mut out = Vec::new();
    for w in on.windows(2) {
        out.push(w[1].1 - w[0].1);
    }
    if out.is_empty() {
        out.push(d);
    }
    out
}

struct PeelPiece {
    /// Path letters from the kite triangle's basepoint to the face corner.
    prefix: Vec<RatVec>,
    /// The face traversal of this piece.
    tri: Triangle,
    face: usize,
    sign: i8,
}

/// Factors a triangulated triangle of the refined complex into triangular
/// kites by reverse shelling: repeatedly peel a face adjacent to the current
/// boundary, rewriting the boundary word and keeping the remaining region a
/// disk. The final boundary word must reduce to the trivial path.
fn peel_disk(plsc: &Plsc, sigma: &Triangle) -> Result<Vec<PeelPiece>> {
    let h = plane_of_triangle(sigma)?;
    let sigma_or = geom::canonical_orientation_sign(sigma, &h)?;
    // faces contained in sigma
    let mut region: BTreeSet<usize> = BTreeSet::new();
    for f in 0..plsc.faces.len() {
        let tri = plsc.face_triangle(f);
        if tri.vertices().iter().all(|p| point_in_triangle(p, sigma)) {
            region.insert(f);
        }
    }
    if region.is_empty() {
        return Err(Error::InvalidInput(
            "no refined faces inside the kite triangle".into(),
        ));
    }
    // directed boundary cycle of sigma, subdivided, based at sigma.p0
    let base_id = plsc
        .vertex_id(&sigma.p0)
        .ok_or_else(|| Error::InvalidInput("basepoint missing from complex".into()))?;
    let mut beta: Vec<usize> = vec![base_id];
    for (a, b) in [
        (&sigma.p0, &sigma.p1),
        (&sigma.p1, &sigma.p2),
        (&sigma.p2, &sigma.p0),
    ] {
        let mut acc = a.clone();
        for step in subdivide_segment(plsc, a, b) {
            acc = &acc + &step;
            beta.push(plsc.vertex_id(&acc).expect("subdivision vertex"));
        }
    }

    // directed cycle of a face, oriented to match sigma's traversal
    let face_cycle = |f: usize| -> [usize; 3] {
        let (a, b, c) = plsc.faces[f];
        let or = geom::canonical_orientation_sign(&plsc.face_triangle(f), &h)
            .expect("face in plane");
        if or == sigma_or {
            [a, b, c]
        } else {
            [a, c, b]
        }
    };
    let face_directed_edges = |f: usize| -> [(usize, usize); 3] {
        let [a, b, c] = face_cycle(f);
        [(a, b), (b, c), (c, a)]
    };

    // region edge usage for the disk check
    let disk_check = |faces: &BTreeSet<usize>| -> bool {
        if faces.is_empty() {
            return true;
        }
        let mut vs: HashSet<usize> = HashSet::new();
        let mut es: HashSet<(usize, usize)> = HashSet::new();
        for &f in faces {
            let (a, b, c) = plsc.faces[f];
            vs.extend([a, b, c]);
            es.insert((a.min(b), a.max(b)));
            es.insert((a.min(c), a.max(c)));
            es.insert((b.min(c), b.max(c)));
        }
        let euler = vs.len() as i64 - es.len() as i64 + faces.len() as i64;
        if euler != 1 {
            return false;
        }
        // edge-connectivity of the face adjacency graph
        let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &f in faces {
            let (a, b, c) = plsc.faces[f];
            for e in [(a.min(b), a.max(b)), (a.min(c), a.max(c)), (b.min(c), b.max(c))] {
                edge_faces.entry(e).or_default().push(f);
            }
        }
        let mut seen: HashSet<usize> = HashSet::new();
        let start = *faces.iter().next().unwrap();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(f) = stack.pop() {
            let (a, b, c) = plsc.faces[f];
            for e in [(a.min(b), a.max(b)), (a.min(c), a.max(c)), (b.min(c), b.max(c))] {
                for &g in &edge_faces[&e] {
                    if seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        seen.len() == faces.len()
    };

    let free_reduce = |path: &mut Vec<usize>| {
        let mut changed = true;
        while changed {
            changed = false;
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
        }
    };

    let mut out = Vec::new();
    while !region.is_empty() {
        // faces owning a directed edge on beta
        let beta_edges: Vec<(usize, usize)> = beta.windows(2).map(|w| (w[0], w[1])).collect();
        let mut chosen: Option<(usize, usize)> = None; // (face, position in beta)
        'search: for &f in &region {
            let des = face_directed_edges(f);
            for (pos, be) in beta_edges.iter().enumerate() {
                if des.contains(be) {
                    let mut rest = region.clone();
                    rest.remove(&f);
                    if disk_check(&rest) {
                        chosen = Some((f, pos));
                        break 'search;
                    }
                }
            }
        }
        let (f, pos) = chosen.ok_or_else(|| {
            Error::InvalidInput("disk peeling found no removable face".into())
        })?;
        let (u, v) = beta_edges[pos];
        let [a, b, c] = face_cycle(f);
        // rotate the cycle so it starts with (u, v)
        let w = if (a, b) == (u, v) {
            c
        } else if (b, c) == (u, v) {
            a
        } else {
            b
        };
        // kite: prefix path from base to u along beta, loop = (u→v→w→u)
        let prefix: Vec<RatVec> = beta[..=pos]
            .windows(2)
            .map(|e| plsc.vertex(e[1]) - plsc.vertex(e[0]))
            .collect();
        let tri = Triangle::new(
            plsc.vertex(u).clone(),
            plsc.vertex(v).clone(),
            plsc.vertex(w).clone(),
        );
        let s_face = geom::canonical_orientation_sign(&plsc.face_triangle(f), &h)?;
        let s_kite = geom::canonical_orientation_sign(&tri, &h)?;
        out.push(PeelPiece {
            prefix,
            tri,
            face: f,
            sign: s_kite * s_face,
        });
        // rewrite the boundary: (u→v) becomes (u→w)(w→v)
        beta.splice(pos + 1..pos + 1, [w]);
        free_reduce(&mut beta);
        region.remove(&f);
    }
    assert!(
        beta.len() == 1 && beta[0] == base_id,
        "disk peeling boundary residue: {beta:?}"
    );
    Ok(out)
}
