//! Rectangular planar space-like surfaces, frames normal to them, and
//! collections with pairwise disjoint interiors.

use crate::density::{euclidean_gram_det, minkowski_gram_det};
use crate::error::{Error, Result};
use crate::group::InhomogeneousElement;
use crate::lorentz::LorentzMatrix;
use crate::region::{
    region_difference, region_intersect, ConvexRegion, Intersection, PlaneChart,
};
use crate::scalar::Real;
use crate::vec4::FourVector;

/// Causal class of the plane spanned by two directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanClass {
    SpaceLike,
    TimeLike,
    /// Light-like tangent: the boundary case between the two classes.
    Degenerate,
}

impl SpanClass {
    pub fn name(self) -> &'static str {
        match self {
            SpanClass::SpaceLike => "space-like",
            SpanClass::TimeLike => "time-like",
            SpanClass::Degenerate => "degenerate",
        }
    }
}

/// Classifies the plane spanned by `u` and `v` via the sign of the
/// Minkowski Gram determinant: positive definite means every tangent is
/// space-like; a negative determinant means the plane holds a time-like
/// direction; zero (within tolerance, relative to the Euclidean Gram)
/// means a light-like tangent.
///
/// Linearly dependent spans are rejected.
pub fn classify_span<T: Real>(u: FourVector<T>, v: FourVector<T>) -> Result<SpanClass> {
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::NonFinite);
    }
    let ge = euclidean_gram_det(u, v);
    let scale = u.euclidean_dot(u) * v.euclidean_dot(v);
    if ge <= scale * T::epsilon() * T::of(1e4) {
        return Err(Error::DependentSpans);
    }
    let gm = minkowski_gram_det(u, v);
    if gm.abs() <= ge * T::TOL_IDENTITY {
        Ok(SpanClass::Degenerate)
    } else if gm > T::zero() {
        Ok(SpanClass::SpaceLike)
    } else {
        Ok(SpanClass::TimeLike)
    }
}

/// A planar rectangle `origin + s span_u + t span_v`, `s, t` in `[0, 1]`,
/// required to be space-like. Boundary-inclusion flags are carried along
/// (edges in the order `t=0`, `s=1`, `t=1`, `s=0`) but ignored by every
/// integral, boundaries having measure zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RectSurface<T> {
    pub origin: FourVector<T>,
    pub span_u: FourVector<T>,
    pub span_v: FourVector<T>,
    pub include_boundary: [bool; 4],
}

impl<T: Real> RectSurface<T> {
    pub fn new(origin: FourVector<T>, span_u: FourVector<T>, span_v: FourVector<T>) -> Result<Self> {
        Self::with_boundary(origin, span_u, span_v, [true; 4])
    }

    pub fn with_boundary(
        origin: FourVector<T>,
        span_u: FourVector<T>,
        span_v: FourVector<T>,
        include_boundary: [bool; 4],
    ) -> Result<Self> {
        if !origin.is_finite() {
            return Err(Error::NonFinite);
        }
        match classify_span(span_u, span_v)? {
            SpanClass::SpaceLike => Ok(RectSurface {
                origin,
                span_u,
                span_v,
                include_boundary,
            }),
            class => Err(Error::NotSpaceLike { class: class.name() }),
        }
    }

    /// The unit square `[0,1]^2` in the `x2-x3` plane.
    pub fn standard_square() -> Self {
        RectSurface {
            origin: FourVector::zero(),
            span_u: FourVector::basis(2),
            span_v: FourVector::basis(3),
            include_boundary: [true; 4],
        }
    }

    pub fn corners(&self) -> [FourVector<T>; 4] {
        [
            self.origin,
            self.origin + self.span_u,
            self.origin + self.span_u + self.span_v,
            self.origin + self.span_v,
        ]
    }

    pub fn chart(&self) -> PlaneChart<T> {
        PlaneChart::new(self.origin, self.span_u, self.span_v)
    }

    pub fn to_region(&self) -> ConvexRegion<T> {
        ConvexRegion::new(
            self.chart(),
            vec![
                [T::zero(), T::zero()],
                [T::one(), T::zero()],
                [T::one(), T::one()],
                [T::zero(), T::one()],
            ],
        )
        .expect("unit square is a valid region")
    }

    /// Closed-form Euclidean area: the root of the Euclidean Gram
    /// determinant of the spans.
    pub fn euclidean_area(&self) -> T {
        euclidean_gram_det(self.span_u, self.span_v).sqrt()
    }

    /// Closed-form Lorentz-invariant area: the root of the Minkowski Gram
    /// determinant (positive, since the surface is space-like).
    pub fn invariant_area(&self) -> T {
        minkowski_gram_det(self.span_u, self.span_v).sqrt()
    }

    pub fn transformed(&self, g: &InhomogeneousElement<T>) -> Result<Self> {
        Self::with_boundary(
            g.apply(self.origin),
            g.linear().apply(self.span_u),
            g.linear().apply(self.span_v),
            self.include_boundary,
        )
    }
}

/// A Minkowski-orthonormal pair (time-like `f0`, space-like `f1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame<T> {
    pub f0: FourVector<T>,
    pub f1: FourVector<T>,
}

impl<T: Real> Frame<T> {
    /// Validates `f0.f0 = -1`, `f1.f1 = 1`, `f0.f1 = 0` within
    /// [`Real::TOL_FRAME`].
    pub fn new(f0: FourVector<T>, f1: FourVector<T>) -> Result<Self> {
        if !f0.is_finite() || !f1.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = (f0.minkowski_dot(f0) + T::one())
            .abs()
            .max((f1.minkowski_dot(f1) - T::one()).abs())
            .max(f0.minkowski_dot(f1).abs());
        if dev > T::TOL_FRAME {
            return Err(Error::InvalidFrame {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Frame { f0, f1 })
    }

    /// The pair `(e0, e1)`.
    pub fn standard() -> Self {
        Frame {
            f0: FourVector::basis(0),
            f1: FourVector::basis(1),
        }
    }

    pub fn transformed(&self, m: &LorentzMatrix<T>) -> Result<Self> {
        Frame::new(m.apply(self.f0), m.apply(self.f1))
    }

    /// Componentwise equality within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.f0.max_abs_diff(other.f0) <= tol && self.f1.max_abs_diff(other.f1) <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.f0.max_abs_diff(other.f0).max(self.f1.max_abs_diff(other.f1))
    }
}

/// A rectangle together with a frame normal to it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FramedSurface<T> {
    pub surface: RectSurface<T>,
    pub frame: Frame<T>,
}

impl<T: Real> FramedSurface<T> {
    pub fn new(surface: RectSurface<T>, frame: Frame<T>) -> Result<Self> {
        check_frame_normal(&frame, surface.span_u, surface.span_v)?;
        Ok(FramedSurface { surface, frame })
    }

    /// The standard square with the standard frame.
    pub fn standard() -> Self {
        FramedSurface {
            surface: RectSurface::standard_square(),
            frame: Frame::standard(),
        }
    }
}

fn check_frame_normal<T: Real>(
    frame: &Frame<T>,
    span_u: FourVector<T>,
    span_v: FourVector<T>,
) -> Result<()> {
    let dev = frame
        .f0
        .minkowski_dot(span_u)
        .abs()
        .max(frame.f0.minkowski_dot(span_v).abs())
        .max(frame.f1.minkowski_dot(span_u).abs())
        .max(frame.f1.minkowski_dot(span_v).abs());
    // scale-aware: spans are not unit vectors
    let scale = span_u.euclidean_norm().max(span_v.euclidean_norm()).max(T::one());
    if dev > T::TOL_FRAME * scale {
        return Err(Error::FrameNotNormal {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Frame `(e0, e1)` for a surface lying in a translate of the `x2-x3`
/// plane; rejects spans with time or `x1` components.
pub fn standard_frame<T: Real>(surface: &RectSurface<T>) -> Result<Frame<T>> {
    let off_plane = surface
        .span_u
        .x0
        .abs()
        .max(surface.span_u.x1.abs())
        .max(surface.span_v.x0.abs())
        .max(surface.span_v.x1.abs());
    if off_plane > T::TOL_FRAME {
        return Err(Error::NotSpatialPlane);
    }
    Ok(Frame::standard())
}

/// Image of a framed surface under a group element; every invariant is
/// revalidated on the way out.
pub fn transform_framed<T: Real>(
    g: &InhomogeneousElement<T>,
    fs: &FramedSurface<T>,
) -> Result<FramedSurface<T>> {
    FramedSurface::new(fs.surface.transformed(g)?, fs.frame.transformed(g.linear())?)
}

/// Either an intact rectangle or a convex piece produced by subdivision.
#[derive(Clone, Debug)]
pub enum SurfacePiece<T> {
    Rect(RectSurface<T>),
    Region(ConvexRegion<T>),
}

impl<T: Real> SurfacePiece<T> {
    pub fn to_region(&self) -> ConvexRegion<T> {
        match self {
            SurfacePiece::Rect(r) => r.to_region(),
            SurfacePiece::Region(r) => r.clone(),
        }
    }

    pub fn euclidean_area(&self) -> T {
        match self {
            SurfacePiece::Rect(r) => r.euclidean_area(),
            SurfacePiece::Region(r) => r.euclidean_area(),
        }
    }

    pub fn invariant_area(&self) -> Result<T> {
        match self {
            SurfacePiece::Rect(r) => Ok(r.invariant_area()),
            SurfacePiece::Region(r) => r.invariant_area(),
        }
    }

    pub fn vertices_r4(&self) -> Vec<FourVector<T>> {
        match self {
            SurfacePiece::Rect(r) => r.corners().to_vec(),
            SurfacePiece::Region(r) => r.vertices_r4(),
        }
    }

    pub fn transformed(&self, g: &InhomogeneousElement<T>) -> Result<Self> {
        match self {
            SurfacePiece::Rect(r) => r.transformed(g).map(SurfacePiece::Rect),
            SurfacePiece::Region(r) => Ok(SurfacePiece::Region(r.transformed(g))),
        }
    }

    pub fn frame_normal_deviation(&self, frame: &Frame<T>) -> T {
        let chart = self.to_region().chart().clone();
        frame
            .f0
            .minkowski_dot(chart.basis_u)
            .abs()
            .max(frame.f0.minkowski_dot(chart.basis_v).abs())
            .max(frame.f1.minkowski_dot(chart.basis_u).abs())
            .max(frame.f1.minkowski_dot(chart.basis_v).abs())
    }
}

/// Coplanarity of two rectangles: both spans of `s2` and the origin
/// difference lie in the affine span of `s1`, residuals at or below `tol`.
pub fn coplanar<T: Real>(s1: &RectSurface<T>, s2: &RectSurface<T>, tol: T) -> bool {
    s1.chart().coplanar_with(&s2.chart(), tol)
}

/// Intersection of two space-like rectangles per the measure-zero rule:
/// non-coplanar rectangles meet in at most a curve and count as empty.
pub fn intersect<T: Real>(s1: &RectSurface<T>, s2: &RectSurface<T>) -> Intersection<T> {
    region_intersect(
        &s1.to_region(),
        &s2.to_region(),
        T::TOL_COPLANAR,
        T::TOL_AREA_FLOOR,
    )
}

/// A framed piece of a collection.
#[derive(Clone, Debug)]
pub struct FramedPiece<T> {
    pub piece: SurfacePiece<T>,
    pub frame: Frame<T>,
}

impl<T: Real> FramedPiece<T> {
    pub fn new(piece: SurfacePiece<T>, frame: Frame<T>) -> Result<Self> {
        let dev = piece.frame_normal_deviation(&frame);
        let region = piece.to_region();
        let scale = region
            .chart()
            .basis_u
            .euclidean_norm()
            .max(region.chart().basis_v.euclidean_norm())
            .max(T::one());
        if dev > T::TOL_FRAME * scale {
            return Err(Error::FrameNotNormal {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(FramedPiece { piece, frame })
    }
}

/// A finite set of framed pieces with pairwise disjoint interiors.
#[derive(Clone, Debug, Default)]
pub struct SurfaceCollection<T> {
    parts: Vec<FramedPiece<T>>,
}

impl<T: Real> SurfaceCollection<T> {
    pub fn new(parts: Vec<FramedPiece<T>>) -> Result<Self> {
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                let overlap = region_intersect(
                    &parts[i].piece.to_region(),
                    &parts[j].piece.to_region(),
                    T::TOL_COPLANAR,
                    T::TOL_AREA_FLOOR,
                );
                if !overlap.is_empty() {
                    return Err(Error::NotDisjoint);
                }
            }
        }
        Ok(SurfaceCollection { parts })
    }

    pub fn parts(&self) -> &[FramedPiece<T>] {
        &self.parts
    }

    pub fn total_euclidean_area(&self) -> T {
        self.parts
            .iter()
            .fold(T::zero(), |acc, p| acc + p.piece.euclidean_area())
    }
}

/// Covers the union of two collections with pieces of pairwise disjoint
/// interiors. Pieces of `c1` are kept whole; overlapping coplanar pieces of
/// `c2` are subdivided, each subdivision keeping its chart. Overlapping
/// pieces must carry equal frames.
pub fn union_disjoint<T: Real>(
    c1: &SurfaceCollection<T>,
    c2: &SurfaceCollection<T>,
) -> Result<SurfaceCollection<T>> {
    let mut parts: Vec<FramedPiece<T>> = c1.parts.clone();
    for q in &c2.parts {
        let mut fragments = vec![q.piece.to_region()];
        for p in &c1.parts {
            let p_region = p.piece.to_region();
            let mut next = Vec::new();
            for frag in fragments {
                let overlap =
                    region_intersect(&frag, &p_region, T::TOL_COPLANAR, T::TOL_AREA_FLOOR);
                if !overlap.is_empty() && !q.frame.approx_eq(&p.frame, T::TOL_FRAME_EQ) {
                    return Err(Error::OverlapFrameMismatch);
                }
                next.extend(region_difference(
                    &frag,
                    &p_region,
                    T::TOL_COPLANAR,
                    T::TOL_AREA_FLOOR,
                ));
            }
            fragments = next;
        }
        if fragments.len() == 1
            && (fragments[0].chart_area() - q.piece.to_region().chart_area()).abs()
                <= T::TOL_AREA_FLOOR
        {
            // untouched piece: keep its original representation
            parts.push(q.clone());
        } else {
            for frag in fragments {
                parts.push(FramedPiece {
                    piece: SurfacePiece::Region(frag),
                    frame: q.frame,
                });
            }
        }
    }
    // construction keeps interiors disjoint; skip the quadratic re-check
    Ok(SurfaceCollection { parts })
}
