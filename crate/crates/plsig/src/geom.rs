//! Affine-geometric primitives and exact predicates.
//!
//! Planes and lines carry a canonical representation: the direction space is
//! stored as the reduced row echelon basis of its span, and the base point is
//! reduced modulo the direction space by zeroing its pivot coordinates. Two
//! equal geometric objects therefore have identical representations, and
//! canonicalization is idempotent.

use crate::linalg::{self, RatVec};
use crate::rat::{sign, Rat};
use crate::{Error, Result};
use num::{One, Signed, Zero};

/// An ordered 2-simplex `[p0, p1, p2]`. Vertex order carries the orientation.
/// Degeneracy is checked on demand, not at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub p0: RatVec,
    pub p1: RatVec,
    pub p2: RatVec,
}

impl Triangle {
    pub fn new(p0: RatVec, p1: RatVec, p2: RatVec) -> Self {
        Triangle { p0, p1, p2 }
    }

    pub fn dim(&self) -> usize {
        self.p0.dim()
    }

    pub fn vertices(&self) -> [&RatVec; 3] {
        [&self.p0, &self.p1, &self.p2]
    }

    pub fn edge1(&self) -> RatVec {
        &self.p1 - &self.p0
    }

    pub fn edge2(&self) -> RatVec {
        &self.p2 - &self.p0
    }

    pub fn is_degenerate(&self) -> bool {
        linalg::linearly_dependent(&self.edge1(), &self.edge2())
    }

    pub fn translate(&self, a: &RatVec) -> Triangle {
        Triangle::new(&self.p0 + a, &self.p1 + a, &self.p2 + a)
    }
}

/// An affine plane in canonical form: `base + span(dir1, dir2)`.
/// The ordered pair `(dir1, dir2)` fixes the positive orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePlane {
    pub base: RatVec,
    pub dir1: RatVec,
    pub dir2: RatVec,
    pub orientation: i8,
}

impl AffinePlane {
    /// Canonicalizes `base + span(d1, d2)`. Fails when the directions are
    /// dependent.
    pub fn new(base: &RatVec, d1: &RatVec, d2: &RatVec) -> Result<Self> {
        let (rows, pivots) = linalg::rref(&[d1.clone(), d2.clone()]);
        if rows.len() != 2 {
            return Err(Error::DegenerateTriangle);
        }
        let mut b = base.clone();
        for (row, &p) in rows.iter().zip(&pivots) {
            let c = b.0[p].clone();
            b = b.add_scaled(&-c, row);
        }
        Ok(AffinePlane {
            base: b,
            dir1: rows[0].clone(),
            dir2: rows[1].clone(),
            orientation: 1,
        })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Is the direction vector `v` parallel to the plane?
    pub fn contains_direction(&self, v: &RatVec) -> bool {
        linalg::rref(&[self.dir1.clone(), self.dir2.clone(), v.clone()])
            .0
            .len()
            <= 2
    }

    pub fn contains_point(&self, p: &RatVec) -> bool {
        self.contains_direction(&(p - &self.base))
    }

    /// Coordinates of `p` in the chart `base + x·dir1 + y·dir2`, when `p`
    /// lies on the plane.
    pub fn chart(&self, p: &RatVec) -> Option<(Rat, Rat)> {
        let d = p - &self.base;
        // rref directions have distinct pivot columns with 0/1 structure,
        // so the coefficients can be read off at the pivots.
        let (rows, pivots) = linalg::rref(&[self.dir1.clone(), self.dir2.clone()]);
        debug_assert_eq!(rows.len(), 2);
        let x = d.0[pivots[0]].clone();
        let y = d.0[pivots[1]].clone();
        if d == self.dir1.scale(&x).add_scaled(&Rat::one(), &self.dir2.scale(&y)) {
            Some((x, y))
        } else {
            None
        }
    }

    /// Inverse of [`AffinePlane::chart`].
    pub fn unchart(&self, x: &Rat, y: &Rat) -> RatVec {
        self.base
            .add_scaled(x, &self.dir1)
            .add_scaled(y, &self.dir2)
    }
}

/// An affine line in canonical form: `base + span(dir)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineLine {
    pub base: RatVec,
    pub dir: RatVec,
}

impl AffineLine {
    pub fn new(base: &RatVec, dir: &RatVec) -> Result<Self> {
        let (rows, pivots) = linalg::rref(std::slice::from_ref(dir));
        if rows.is_empty() {
            return Err(Error::InvalidInput("zero line direction".into()));
        }
        let mut b = base.clone();
        let c = b.0[pivots[0]].clone();
        b = b.add_scaled(&-c, &rows[0]);
        Ok(AffineLine {
            base: b,
            dir: rows[0].clone(),
        })
    }

    pub fn through(p: &RatVec, q: &RatVec) -> Result<Self> {
        Self::new(p, &(q - p))
    }

    pub fn contains_point(&self, p: &RatVec) -> bool {
        linalg::linearly_dependent(&(p - &self.base), &self.dir)
    }

    /// Parameter `t` with `p = base + t·dir`, when `p` lies on the line.
    pub fn param_of(&self, p: &RatVec) -> Option<Rat> {
        let d = p - &self.base;
        if !linalg::linearly_dependent(&d, &self.dir) {
            return None;
        }
        let k = self.dir.iter().position(|c| !c.is_zero()).unwrap();
        let t = &d.0[k] / &self.dir.0[k];
        if d == self.dir.scale(&t) {
            Some(t)
        } else {
            None
        }
    }

    pub fn point_at(&self, t: &Rat) -> RatVec {
        self.base.add_scaled(t, &self.dir)
    }
}

/// Supporting plane of a nondegenerate triangle, in canonical form.
pub fn plane_of_triangle(t: &Triangle) -> Result<AffinePlane> {
    if t.is_degenerate() {
        return Err(Error::DegenerateTriangle);
    }
    AffinePlane::new(&t.p0, &t.edge1(), &t.edge2())
}

/// Sign of the orientation of `t` relative to the plane's positive
/// orientation `(dir1, dir2)`: the sign of the determinant of
/// `(p1−p0, p2−p0)` expressed in chart coordinates.
pub fn canonical_orientation_sign(t: &Triangle, h: &AffinePlane) -> Result<i8> {
    let (x0, y0) = h
        .chart(&t.p0)
        .ok_or_else(|| Error::InvalidInput("triangle not on plane".into()))?;
    let (x1, y1) = h
        .chart(&t.p1)
        .ok_or_else(|| Error::InvalidInput("triangle not on plane".into()))?;
    let (x2, y2) = h
        .chart(&t.p2)
        .ok_or_else(|| Error::InvalidInput("triangle not on plane".into()))?;
    let det = (&x1 - &x0) * (&y2 - &y0) - (&y1 - &y0) * (&x2 - &x0);
    if det.is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    Ok(sign(&det) * h.orientation)
}

/// Twice the signed area of `t` in the chart of `h` (exact, chart units).
pub fn chart_area2(t: &Triangle, h: &AffinePlane) -> Result<Rat> {
    let (x0, y0) = h
        .chart(&t.p0)
        .ok_or_else(|| Error::InvalidInput("triangle not on plane".into()))?;
    let (x1, y1) = h
        .chart(&t.p1)
        .ok_or_else(|| Error::InvalidInput("triangle not on plane".into()))?;
    let (x2, y2) = h
        .chart(&t.p2)
        .ok_or_else(|| Error::InvalidInput("triangle not on plane".into()))?;
    Ok((&x1 - &x0) * (&y2 - &y0) - (&y1 - &y0) * (&x2 - &x0))
}

/// Is `p` on the closed segment `[a, b]`?
pub fn point_on_segment(p: &RatVec, a: &RatVec, b: &RatVec) -> bool {
    if p == a || p == b {
        return true;
    }
    let d = b - a;
    let e = p - a;
    if d.is_zero() || !linalg::linearly_dependent(&e, &d) {
        return false;
    }
    let k = d.iter().position(|c| !c.is_zero()).unwrap();
    let t = &e.0[k] / &d.0[k];
    if e != d.scale(&t) {
        return false;
    }
    !t.is_negative() && t <= Rat::one()
}

/// Is `p` strictly inside the open segment `(a, b)`?
pub fn point_in_open_segment(p: &RatVec, a: &RatVec, b: &RatVec) -> bool {
    point_on_segment(p, a, b) && p != a && p != b
}

/// Barycentric coordinates of `p` with respect to `t`, when `p` lies on the
/// supporting plane.
pub fn barycentric(p: &RatVec, t: &Triangle) -> Option<(Rat, Rat, Rat)> {
    // solve p - p0 = s·(p1-p0) + u·(p2-p0)
    let e1 = t.edge1();
    let e2 = t.edge2();
    let d = p - &t.p0;
    let n = p.dim();
    let rows: Vec<RatVec> = (0..n)
        .map(|i| RatVec(vec![e1.0[i].clone(), e2.0[i].clone()]))
        .collect();
    let x = linalg::solve_linear(&rows, &d)?;
    let s = x.0[0].clone();
    let u = x.0[1].clone();
    let l0 = Rat::one() - &s - &u;
    Some((l0, s, u))
}

/// Is `p` in the closed triangle `t`? (`t` must be nondegenerate.)
pub fn point_in_triangle(p: &RatVec, t: &Triangle) -> bool {
    match barycentric(p, t) {
        Some((l0, l1, l2)) => {
            !l0.is_negative() && !l1.is_negative() && !l2.is_negative()
        }
        None => false,
    }
}

/// Is `p` strictly inside `t`?
pub fn point_in_open_triangle(p: &RatVec, t: &Triangle) -> bool {
    match barycentric(p, t) {
        Some((l0, l1, l2)) => l0.is_positive() && l1.is_positive() && l2.is_positive(),
        None => false,
    }
}

/// Intersection of two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegSeg {
    Empty,
    Point(RatVec),
    Overlap(RatVec, RatVec),
}

/// Exact intersection of closed segments `[a0,a1]` and `[b0,b1]` in any
/// ambient dimension.
pub fn segment_intersection(a0: &RatVec, a1: &RatVec, b0: &RatVec, b1: &RatVec) -> SegSeg {
    let da = a1 - a0;
    let db = b1 - b0;
    if da.is_zero() {
        return if point_on_segment(a0, b0, b1) {
            SegSeg::Point(a0.clone())
        } else {
            SegSeg::Empty
        };
    }
    if db.is_zero() {
        return if point_on_segment(b0, a0, a1) {
            SegSeg::Point(b0.clone())
        } else {
            SegSeg::Empty
        };
    }
    if linalg::linearly_dependent(&da, &db) {
        // parallel: either disjoint lines or a shared line
        let line = AffineLine::new(a0, &da).expect("nonzero direction");
        if !line.contains_point(b0) {
            return SegSeg::Empty;
        }
        let ta0 = line.param_of(a0).expect("collinear");
        let ta1 = line.param_of(a1).expect("collinear");
        let tb0 = line.param_of(b0).expect("collinear");
        let tb1 = line.param_of(b1).expect("collinear");
        let (alo, ahi) = if ta1 >= ta0 {
            (ta0, ta1)
        } else {
            (ta1, ta0)
        };
        let (blo, bhi) = if tb1 >= tb0 {
            (tb0.clone(), tb1.clone())
        } else {
            (tb1.clone(), tb0.clone())
        };
        let lo = alo.max(blo);
        let hi = ahi.min(bhi);
        if lo > hi {
            SegSeg::Empty
        } else if lo == hi {
            SegSeg::Point(line.point_at(&lo))
        } else {
            SegSeg::Overlap(line.point_at(&lo), line.point_at(&hi))
        }
    } else {
        // solve a0 + s·da = b0 + t·db exactly
        let n = a0.dim();
        let rows: Vec<RatVec> = (0..n)
            .map(|i| RatVec(vec![da.0[i].clone(), -db.0[i].clone()]))
            .collect();
        let rhs = b0 - a0;
        match linalg::solve_linear(&rows, &rhs) {
            Some(st) => {
                let s = &st.0[0];
                let t = &st.0[1];
                let unit = (Rat::zero(), Rat::one());
                if s >= &unit.0 && s <= &unit.1 && t >= &unit.0 && t <= &unit.1 {
                    SegSeg::Point(a0.add_scaled(s, &da))
                } else {
                    SegSeg::Empty
                }
            }
            None => SegSeg::Empty, // skew lines
        }
    }
}

/// Unique intersection point of two lines, when it exists.
pub fn line_line_point(l1: &AffineLine, l2: &AffineLine) -> Option<RatVec> {
    if linalg::linearly_dependent(&l1.dir, &l2.dir) {
        return None;
    }
    let n = l1.base.dim();
    let rows: Vec<RatVec> = (0..n)
        .map(|i| RatVec(vec![l1.dir.0[i].clone(), -l2.dir.0[i].clone()]))
        .collect();
    let rhs = &l2.base - &l1.base;
    let st = linalg::solve_linear(&rows, &rhs)?;
    Some(l1.point_at(&st.0[0]))
}

/// Transversal intersection point of a line with a plane (`None` when the
/// line is parallel to or contained in the plane).
pub fn line_plane_point(l: &AffineLine, h: &AffinePlane) -> Option<RatVec> {
    if h.contains_direction(&l.dir) {
        return None;
    }
    // solve base_l + t·dir = base_h + x·dir1 + y·dir2
    let n = l.base.dim();
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            RatVec(vec![
                l.dir.0[i].clone(),
                -h.dir1.0[i].clone(),
                -h.dir2.0[i].clone(),
            ])
        })
        .collect();
    let rhs = &h.base - &l.base;
    let sol = linalg::solve_linear(&rows, &rhs)?;
    Some(l.point_at(&sol.0[0]))
}

/// Intersection of two distinct planes when it is a line.
pub fn plane_plane_line(h1: &AffinePlane, h2: &AffinePlane) -> Option<AffineLine> {
    if h1 == h2 {
        return None;
    }
    // direction space: ker of the combined normal constraints = intersection
    // of the two direction spaces
    let n = h1.dim();
    // solve for points in both planes: base1 + A1·(x,y) = base2 + A2·(u,v)
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            RatVec(vec![
                h1.dir1.0[i].clone(),
                h1.dir2.0[i].clone(),
                -h2.dir1.0[i].clone(),
                -h2.dir2.0[i].clone(),
            ])
        })
        .collect();
    let rhs = &h2.base - &h1.base;
    let particular = linalg::solve_linear(&rows, &rhs)?;
    let kernel = linalg::kernel_basis(&rows, 4);
    if kernel.len() != 1 {
        return None; // equal planes (dim 2 kernel) or point intersection (dim 0)
    }
    let p = h1
        .base
        .add_scaled(&particular.0[0], &h1.dir1)
        .add_scaled(&particular.0[1], &h1.dir2);
    let d = h1
        .dir1
        .scale(&kernel[0].0[0])
        .add_scaled(&kernel[0].0[1], &h1.dir2);
    AffineLine::new(&p, &d).ok()
}

/// Intersection of two planes when it is a single point (possible only in
/// ambient dimension ≥ 4).
pub fn plane_plane_point(h1: &AffinePlane, h2: &AffinePlane) -> Option<RatVec> {
    let n = h1.dim();
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            RatVec(vec![
                h1.dir1.0[i].clone(),
                h1.dir2.0[i].clone(),
                -h2.dir1.0[i].clone(),
                -h2.dir2.0[i].clone(),
            ])
        })
        .collect();
    let rhs = &h2.base - &h1.base;
    let particular = linalg::solve_linear(&rows, &rhs)?;
    if !linalg::kernel_basis(&rows, 4).is_empty() {
        return None;
    }
    Some(
        h1.base
            .add_scaled(&particular.0[0], &h1.dir1)
            .add_scaled(&particular.0[1], &h1.dir2),
    )
}
