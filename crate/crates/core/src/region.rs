//! Planar charts, convex polygon regions, and the clipping operations that
//! intersection and disjoint-union of coplanar surfaces reduce to.
//!
//! A region lives in a 2D affine chart of its plane: geometry is clipped in
//! chart coordinates and mapped back to R^4 only when a point is needed.

use crate::error::{Error, Result};
use crate::group::InhomogeneousElement;
use crate::scalar::Real;
use crate::vec4::FourVector;

/// Affine chart of a plane in R^4: `p(x, y) = origin + x b_u + y b_v`.
/// The basis is not required to be orthonormal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneChart<T> {
    pub origin: FourVector<T>,
    pub basis_u: FourVector<T>,
    pub basis_v: FourVector<T>,
}

impl<T: Real> PlaneChart<T> {
    pub fn new(origin: FourVector<T>, basis_u: FourVector<T>, basis_v: FourVector<T>) -> Self {
        PlaneChart {
            origin,
            basis_u,
            basis_v,
        }
    }

    pub fn to_r4(&self, p: [T; 2]) -> FourVector<T> {
        self.origin + self.basis_u.scaled(p[0]) + self.basis_v.scaled(p[1])
    }

    /// Chart coordinates of `x` (least-squares in the plane) plus the
    /// Euclidean residual normal to the plane.
    pub fn coords_of(&self, x: FourVector<T>) -> ([T; 2], T) {
        let d = x - self.origin;
        let (s, t) = self.plane_coords(d);
        let residual = d - self.basis_u.scaled(s) - self.basis_v.scaled(t);
        ([s, t], residual.euclidean_norm())
    }

    /// Coordinates of a direction vector within the plane's span.
    fn plane_coords(&self, d: FourVector<T>) -> (T, T) {
        let guu = self.basis_u.euclidean_dot(self.basis_u);
        let guv = self.basis_u.euclidean_dot(self.basis_v);
        let gvv = self.basis_v.euclidean_dot(self.basis_v);
        let det = guu * gvv - guv * guv;
        let ru = d.euclidean_dot(self.basis_u);
        let rv = d.euclidean_dot(self.basis_v);
        ((gvv * ru - guv * rv) / det, (guu * rv - guv * ru) / det)
    }

    /// Residual of a direction vector against the plane's span.
    pub fn span_residual(&self, d: FourVector<T>) -> T {
        let (s, t) = self.plane_coords(d);
        (d - self.basis_u.scaled(s) - self.basis_v.scaled(t)).euclidean_norm()
    }

    /// Chart-to-true Euclidean area factor, `sqrt(det G_E)`.
    pub fn euclidean_scale(&self) -> T {
        crate::density::euclidean_gram_det(self.basis_u, self.basis_v).sqrt()
    }

    /// Minkowski Gram determinant of the basis; positive iff the plane is
    /// space-like.
    pub fn minkowski_gram_det(&self) -> T {
        crate::density::minkowski_gram_det(self.basis_u, self.basis_v)
    }

    /// True when `other` charts the same affine plane, all residuals at or
    /// below `tol`.
    pub fn coplanar_with(&self, other: &Self, tol: T) -> bool {
        self.span_residual(other.basis_u) <= tol
            && self.span_residual(other.basis_v) <= tol
            && self.span_residual(other.origin - self.origin) <= tol
    }

    pub fn transformed(&self, g: &InhomogeneousElement<T>) -> Self {
        PlaneChart {
            origin: g.apply(self.origin),
            basis_u: g.linear().apply(self.basis_u),
            basis_v: g.linear().apply(self.basis_v),
        }
    }

    /// Deterministic ordering key so symmetric operations pick the same
    /// host chart regardless of argument order.
    fn key(&self) -> [T; 12] {
        let mut k = [T::zero(); 12];
        k[..4].copy_from_slice(&self.origin.to_array());
        k[4..8].copy_from_slice(&self.basis_u.to_array());
        k[8..].copy_from_slice(&self.basis_v.to_array());
        k
    }

    fn key_less_or_equal(&self, other: &Self) -> bool {
        let (a, b) = (self.key(), other.key());
        for i in 0..12 {
            if a[i] < b[i] {
                return true;
            }
            if a[i] > b[i] {
                return false;
            }
        }
        true
    }
}

/// A convex polygon in a plane chart, vertices in counter-clockwise chart
/// order.
#[derive(Clone, Debug)]
pub struct ConvexRegion<T> {
    chart: PlaneChart<T>,
    vertices: Vec<[T; 2]>,
}

impl<T: Real> ConvexRegion<T> {
    pub fn new(chart: PlaneChart<T>, mut vertices: Vec<[T; 2]>) -> Result<Self> {
        if signed_area(&vertices) < T::zero() {
            vertices.reverse();
        }
        let vertices = dedup_vertices(vertices);
        if vertices.len() < 3 {
            return Err(Error::DegeneratePoint);
        }
        Ok(ConvexRegion { chart, vertices })
    }

    pub fn chart(&self) -> &PlaneChart<T> {
        &self.chart
    }

    pub fn vertices(&self) -> &[[T; 2]] {
        &self.vertices
    }

    pub fn vertices_r4(&self) -> Vec<FourVector<T>> {
        self.vertices.iter().map(|&p| self.chart.to_r4(p)).collect()
    }

    /// Area in chart units.
    pub fn chart_area(&self) -> T {
        signed_area(&self.vertices).abs()
    }

    /// True Euclidean area.
    pub fn euclidean_area(&self) -> T {
        self.chart_area() * self.chart.euclidean_scale()
    }

    /// Lorentz-invariant area; the plane must be space-like.
    pub fn invariant_area(&self) -> Result<T> {
        let gm = self.chart.minkowski_gram_det();
        if gm <= T::zero() {
            return Err(Error::NegativeDensity {
                value: gm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.chart_area() * gm.sqrt())
    }

    /// Fan triangulation about the vertex centroid (chart coordinates).
    pub fn triangles(&self) -> Vec<[[T; 2]; 3]> {
        let n = self.vertices.len();
        let nf = T::of(n as f64);
        let mut cx = T::zero();
        let mut cy = T::zero();
        for v in &self.vertices {
            cx = cx + v[0];
            cy = cy + v[1];
        }
        let c = [cx / nf, cy / nf];
        (0..n)
            .map(|i| [c, self.vertices[i], self.vertices[(i + 1) % n]])
            .collect()
    }

    pub fn transformed(&self, g: &InhomogeneousElement<T>) -> Self {
        ConvexRegion {
            chart: self.chart.transformed(g),
            vertices: self.vertices.clone(),
        }
    }
}

/// Result of intersecting two pieces.
#[derive(Clone, Debug)]
pub enum Intersection<T> {
    Empty,
    Region(ConvexRegion<T>),
}

impl<T> Intersection<T> {
    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty)
    }

    pub fn region(&self) -> Option<&ConvexRegion<T>> {
        match self {
            Intersection::Empty => None,
            Intersection::Region(r) => Some(r),
        }
    }
}

/// Intersection of two coplanar convex regions. Non-coplanar regions meet
/// in at most a curve and yield `Empty`; so do intersections of true area
/// at or below `area_floor`.
///
/// The host chart is chosen by a deterministic key, so the operation is
/// exactly symmetric in its arguments.
pub fn region_intersect<T: Real>(
    a: &ConvexRegion<T>,
    b: &ConvexRegion<T>,
    coplanar_tol: T,
    area_floor: T,
) -> Intersection<T> {
    if !a.chart.coplanar_with(&b.chart, coplanar_tol) {
        return Intersection::Empty;
    }
    let (host, guest) = if a.chart.key_less_or_equal(&b.chart) {
        (a, b)
    } else {
        (b, a)
    };
    let guest_in_host: Vec<[T; 2]> = guest
        .vertices
        .iter()
        .map(|&p| host.chart.coords_of(guest.chart.to_r4(p)).0)
        .collect();
    let clipped = clip_convex(&guest_in_host, &host.vertices);
    region_from_clip(host.chart, clipped, area_floor)
}

/// Pieces of `a` outside `b` (set difference), as disjoint convex regions
/// in `a`'s chart. Non-coplanar inputs leave `a` untouched.
pub fn region_difference<T: Real>(
    a: &ConvexRegion<T>,
    b: &ConvexRegion<T>,
    coplanar_tol: T,
    area_floor: T,
) -> Vec<ConvexRegion<T>> {
    if !a.chart.coplanar_with(&b.chart, coplanar_tol) {
        return vec![a.clone()];
    }
    let clip: Vec<[T; 2]> = b
        .vertices
        .iter()
        .map(|&p| a.chart.coords_of(b.chart.to_r4(p)).0)
        .collect();
    let mut out = Vec::new();
    let mut remaining = a.vertices.clone();
    let n = clip.len();
    for i in 0..n {
        if remaining.len() < 3 {
            break;
        }
        let (p, q) = (clip[i], clip[(i + 1) % n]);
        // piece of `remaining` strictly outside edge (p, q)
        let outside = clip_halfplane(&remaining, q, p);
        if let Intersection::Region(r) = region_from_clip(a.chart, outside, area_floor) {
            out.push(r);
        }
        remaining = clip_halfplane(&remaining, p, q);
    }
    out
}

fn region_from_clip<T: Real>(
    chart: PlaneChart<T>,
    vertices: Vec<[T; 2]>,
    area_floor: T,
) -> Intersection<T> {
    let vertices = dedup_vertices(vertices);
    if vertices.len() < 3 {
        return Intersection::Empty;
    }
    let true_area = signed_area(&vertices).abs() * chart.euclidean_scale();
    if true_area <= area_floor {
        return Intersection::Empty;
    }
    match ConvexRegion::new(chart, vertices) {
        Ok(r) => Intersection::Region(r),
        Err(_) => Intersection::Empty,
    }
}

/// Shoelace formula; positive for counter-clockwise order.
pub fn signed_area<T: Real>(pts: &[[T; 2]]) -> T {
    let n = pts.len();
    if n < 3 {
        return T::zero();
    }
    let mut acc = T::zero();
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        acc = acc + p[0] * q[1] - q[0] * p[1];
    }
    acc / T::of(2.0)
}

fn dedup_vertices<T: Real>(pts: Vec<[T; 2]>) -> Vec<[T; 2]> {
    let eps = T::of(1e-13);
    let mut out: Vec<[T; 2]> = Vec::with_capacity(pts.len());
    for p in pts {
        if let Some(last) = out.last() {
            if (p[0] - last[0]).abs() <= eps && (p[1] - last[1]).abs() <= eps {
                continue;
            }
        }
        out.push(p);
    }
    while out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if (first[0] - last[0]).abs() <= T::of(1e-13) && (first[1] - last[1]).abs() <= T::of(1e-13)
        {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// Keeps the part of `poly` on the left of the directed edge `a -> b`
/// (Sutherland-Hodgman step).
pub fn clip_halfplane<T: Real>(poly: &[[T; 2]], a: [T; 2], b: [T; 2]) -> Vec<[T; 2]> {
    let side = |p: [T; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    let n = poly.len();
    if n < 2 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let (sc, ec) = (side(s), side(e));
        let s_in = sc >= T::zero();
        let e_in = ec >= T::zero();
        let cross_point = |sc: T, ec: T| {
            let t = sc / (sc - ec);
            [s[0] + (e[0] - s[0]) * t, s[1] + (e[1] - s[1]) * t]
        };
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) => {
                if (sc - ec).abs() > T::min_positive_value() {
                    out.push(cross_point(sc, ec));
                }
            }
            (false, true) => {
                if (sc - ec).abs() > T::min_positive_value() {
                    out.push(cross_point(sc, ec));
                }
                out.push(e);
            }
            (false, false) => {}
        }
    }
    out
}

/// Clips a convex subject polygon against a convex CCW clip polygon.
pub fn clip_convex<T: Real>(subject: &[[T; 2]], clip: &[[T; 2]]) -> Vec<[T; 2]> {
    if subject.len() < 3 || clip.len() < 3 {
        return Vec::new();
    }
    let n = clip.len();
    let mut result = subject.to_vec();
    for i in 0..n {
        result = clip_halfplane(&result, clip[i], clip[(i + 1) % n]);
        if result.len() < 3 {
            return Vec::new();
        }
    }
    result
}
