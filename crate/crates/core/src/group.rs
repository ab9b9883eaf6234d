//! The inhomogeneous SL(2,C): pairs of a translation and an SL(2,C)
//! element, composing as `{a1, L1}{a2, L2} = {a1 + Y(L1) a2, L1 L2}`.

use crate::error::Result;
use crate::lorentz::LorentzMatrix;
use crate::scalar::Real;
use crate::sl2c::SL2C;
use crate::vec4::FourVector;

/// A translation paired with an SL(2,C) element. The covering image of the
/// SL(2,C) part is computed and validated once at construction, so the
/// action on vectors is infallible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InhomogeneousElement<T> {
    translation: FourVector<T>,
    lorentz: SL2C<T>,
    matrix: LorentzMatrix<T>,
}

impl<T: Real> InhomogeneousElement<T> {
    pub fn new(translation: FourVector<T>, lorentz: SL2C<T>) -> Result<Self> {
        let matrix = lorentz.covering_matrix()?;
        Ok(InhomogeneousElement {
            translation,
            lorentz,
            matrix,
        })
    }

    pub fn identity() -> Self {
        InhomogeneousElement {
            translation: FourVector::zero(),
            lorentz: SL2C::identity(),
            matrix: LorentzMatrix::identity(),
        }
    }

    pub fn from_translation(translation: FourVector<T>) -> Self {
        InhomogeneousElement {
            translation,
            lorentz: SL2C::identity(),
            matrix: LorentzMatrix::identity(),
        }
    }

    pub fn from_lorentz(lorentz: SL2C<T>) -> Result<Self> {
        Self::new(FourVector::zero(), lorentz)
    }

    pub fn translation(&self) -> FourVector<T> {
        self.translation
    }

    pub fn lorentz(&self) -> &SL2C<T> {
        &self.lorentz
    }

    /// The covering image `Y(L)` of the homogeneous part.
    pub fn linear(&self) -> &LorentzMatrix<T> {
        &self.matrix
    }

    /// Group law `{a1, L1}{a2, L2} = {a1 + Y(L1) a2, L1 L2}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.translation + self.matrix.apply(other.translation),
            self.lorentz.mul(&other.lorentz),
        )
    }

    /// Action on a point: `x -> Y(L) x + a`.
    pub fn apply(&self, x: FourVector<T>) -> FourVector<T> {
        self.matrix.apply(x) + self.translation
    }

    /// `{-Y(L)^{-1} a, L^{-1}}`; the inverse matrix is exact via the metric.
    pub fn inverse(&self) -> Self {
        let inv = self.matrix.inverse();
        InhomogeneousElement {
            translation: -inv.apply(self.translation),
            lorentz: self.lorentz.inverse(),
            matrix: inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::Axis;

    fn g(t: [f64; 4], l: SL2C<f64>) -> InhomogeneousElement<f64> {
        InhomogeneousElement::new(FourVector::from_array(t), l).unwrap()
    }

    #[test]
    fn identity_composes_trivially() {
        let e = InhomogeneousElement::<f64>::identity();
        let h = g([1.0, -2.0, 0.5, 3.0], SL2C::boost(Axis::X2, 0.7));
        let eh = e.compose(&h).unwrap();
        assert_eq!(eh.translation(), h.translation());
        assert!(eh.linear().matrix().max_abs_diff(h.linear().matrix()) < 1e-15);
    }

    #[test]
    fn pure_translations_add() {
        let a = InhomogeneousElement::from_translation(FourVector::new(1.0, 2.0, 3.0, 4.0));
        let b = InhomogeneousElement::from_translation(FourVector::new(-0.5, 0.0, 1.0, 2.0));
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.translation(), FourVector::new(0.5, 2.0, 4.0, 6.0));
    }

    #[test]
    fn translation_acts_by_addition() {
        let a = InhomogeneousElement::from_translation(FourVector::new(1.0, 0.0, 0.0, 0.0));
        let x = FourVector::new(0.0, 2.0, 0.0, 0.0);
        assert_eq!(a.apply(x), FourVector::new(1.0, 2.0, 0.0, 0.0));
    }

    #[test]
    fn composition_matches_nested_action() {
        let g1 = g([0.3, -1.0, 2.0, 0.1], SL2C::boost(Axis::X1, 0.9));
        let g2 = g(
            [1.5, 0.2, -0.7, 2.2],
            SL2C::rotation(Axis::X3, 1.1).mul(&SL2C::boost(Axis::X2, -0.4)),
        );
        let x = FourVector::new(0.4, 1.3, -2.1, 0.8);
        let lhs = g1.compose(&g2).unwrap().apply(x);
        let rhs = g1.apply(g2.apply(x));
        assert!(lhs.max_abs_diff(rhs) < 1e-12);
    }

    #[test]
    fn associativity_of_composition() {
        let g1 = g([0.1, 0.2, 0.3, 0.4], SL2C::boost(Axis::X3, 0.6));
        let g2 = g([1.0, -1.0, 0.0, 0.5], SL2C::rotation(Axis::X1, 0.8));
        let g3 = g([-0.2, 0.0, 1.2, 0.0], SL2C::rotation(Axis::X2, -1.2));
        let left = g1.compose(&g2).unwrap().compose(&g3).unwrap();
        let right = g1.compose(&g2.compose(&g3).unwrap()).unwrap();
        assert!(left.translation().max_abs_diff(right.translation()) < 1e-12);
        assert!(
            left.linear()
                .matrix()
                .max_abs_diff(right.linear().matrix())
                < 1e-12
        );
    }

    #[test]
    fn inverse_cancels() {
        let g1 = g([0.7, -0.3, 1.1, 0.2], SL2C::boost(Axis::X2, 1.2));
        let x = FourVector::new(0.9, 0.1, -0.4, 1.6);
        let back = g1.inverse().apply(g1.apply(x));
        assert!(back.max_abs_diff(x) < 1e-12);
    }
}
