//! Complex-valued field expressions on R^4.
//!
//! Fields are closed-form expression trees over the coordinates
//! `x0, x1, x2, x3`, complex literals built from the `i` token, the four
//! arithmetic operators, integer powers and the functions
//! `sin, cos, exp, sinh, cosh`. Pullbacks under group elements are stored
//! lazily as nodes, so composing them is exact and O(1).

mod parse;
mod print;

pub use parse::parse_field;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::InhomogeneousElement;
use crate::mat::Mat4;
use crate::scalar::Real;
use crate::vec4::FourVector;

/// Built-in analytic functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuncKind {
    Sin,
    Cos,
    Exp,
    Sinh,
    Cosh,
}

impl FuncKind {
    pub fn name(self) -> &'static str {
        match self {
            FuncKind::Sin => "sin",
            FuncKind::Cos => "cos",
            FuncKind::Exp => "exp",
            FuncKind::Sinh => "sinh",
            FuncKind::Cosh => "cosh",
        }
    }

    fn apply<T: Real>(self, z: Complex<T>) -> Complex<T> {
        match self {
            FuncKind::Sin => z.sin(),
            FuncKind::Cos => z.cos(),
            FuncKind::Exp => z.exp(),
            FuncKind::Sinh => z.sinh(),
            FuncKind::Cosh => z.cosh(),
        }
    }
}

/// The affine substitution `x -> linear (x - shift)` stored in a pullback
/// node.
#[derive(Clone, Copy, Debug)]
pub struct AffineMap<T> {
    pub linear: Mat4<T>,
    pub shift: FourVector<T>,
}

impl<T: Real> AffineMap<T> {
    pub fn apply(&self, x: FourVector<T>) -> FourVector<T> {
        self.linear.apply(x - self.shift)
    }

    /// The same map written as `x -> M x + c`.
    pub fn as_linear_offset(&self) -> (Mat4<T>, FourVector<T>) {
        (self.linear, -self.linear.apply(self.shift))
    }
}

/// Expression tree for a complex-valued function on R^4.
#[derive(Clone, Debug)]
pub enum FieldExpr<T> {
    Const(Complex<T>),
    /// Coordinate `x_k`, `k` in `0..4`.
    Coord(usize),
    Add(Box<FieldExpr<T>>, Box<FieldExpr<T>>),
    Sub(Box<FieldExpr<T>>, Box<FieldExpr<T>>),
    Mul(Box<FieldExpr<T>>, Box<FieldExpr<T>>),
    Div(Box<FieldExpr<T>>, Box<FieldExpr<T>>),
    Pow(Box<FieldExpr<T>>, i32),
    Func(FuncKind, Box<FieldExpr<T>>),
    /// Composition with an affine map: evaluates the inner expression at
    /// the image point.
    Pullback(AffineMap<T>, Box<FieldExpr<T>>),
}

fn complex_powi<T: Real>(base: Complex<T>, exp: i32) -> Result<Complex<T>> {
    if exp < 0 {
        if base.norm_sqr() == T::zero() {
            return Err(Error::DivisionByZero);
        }
        return complex_powi(base.inv(), -exp);
    }
    let mut result = Complex::new(T::one(), T::zero());
    let mut acc = base;
    let mut n = exp as u32;
    while n > 0 {
        if n & 1 == 1 {
            result = result * acc;
        }
        acc = acc * acc;
        n >>= 1;
    }
    Ok(result)
}

impl<T: Real> FieldExpr<T> {
    pub fn constant(re: T, im: T) -> Self {
        FieldExpr::Const(Complex::new(re, im))
    }

    pub fn real(re: T) -> Self {
        Self::constant(re, T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    /// Evaluates at a point. Division by an exactly zero denominator is an
    /// error; evaluation is pure and deterministic.
    pub fn eval(&self, x: &FourVector<T>) -> Result<Complex<T>> {
        match self {
            FieldExpr::Const(c) => Ok(*c),
            FieldExpr::Coord(k) => Ok(Complex::new(x[*k], T::zero())),
            FieldExpr::Add(a, b) => Ok(a.eval(x)? + b.eval(x)?),
            FieldExpr::Sub(a, b) => Ok(a.eval(x)? - b.eval(x)?),
            FieldExpr::Mul(a, b) => Ok(a.eval(x)? * b.eval(x)?),
            FieldExpr::Div(a, b) => {
                let den = b.eval(x)?;
                if den.norm_sqr() == T::zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(a.eval(x)? / den)
            }
            FieldExpr::Pow(a, n) => complex_powi(a.eval(x)?, *n),
            FieldExpr::Func(k, a) => Ok(k.apply(a.eval(x)?)),
            FieldExpr::Pullback(map, inner) => inner.eval(&map.apply(*x)),
        }
    }

    /// Composes with the inverse action of `g`:
    /// `pullback(f, g)(x) = f(Y(L)^{-1} (x - a))`, so that
    /// `pullback(f, g)(g . x) = f(x)`.
    pub fn pullback(&self, g: &InhomogeneousElement<T>) -> Self {
        let map = AffineMap {
            linear: *g.linear().inverse().matrix(),
            shift: g.translation(),
        };
        FieldExpr::Pullback(map, Box::new(self.clone()))
    }

    /// Multiplies by a complex constant (no-op for exactly one).
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        if factor == Complex::new(T::one(), T::zero()) {
            return self.clone();
        }
        FieldExpr::Mul(Box::new(FieldExpr::Const(factor)), Box::new(self.clone()))
    }

    /// Renders the expression in the grammar the parser accepts; pullbacks
    /// are expanded into explicit affine substitutions of the coordinates.
    pub fn print(&self) -> String {
        print::print_expr(self)
    }
}

/// An N-component field: one expression per basis index.
#[derive(Clone, Debug)]
pub struct FieldSection<T> {
    components: Vec<FieldExpr<T>>,
}

impl<T: Real> FieldSection<T> {
    pub fn new(components: Vec<FieldExpr<T>>) -> Self {
        assert!(!components.is_empty(), "a section needs at least one component");
        FieldSection { components }
    }

    /// Constant section `1` in component `index`, zero elsewhere.
    pub fn basis(n: usize, index: usize) -> Self {
        assert!(index < n);
        FieldSection {
            components: (0..n)
                .map(|k| if k == index { FieldExpr::one() } else { FieldExpr::zero() })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[FieldExpr<T>] {
        &self.components
    }

    pub fn eval(&self, x: &FourVector<T>) -> Result<Vec<Complex<T>>> {
        self.components.iter().map(|f| f.eval(x)).collect()
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        FieldSection {
            components: self.components.iter().map(|f| f.scaled(factor)).collect(),
        }
    }

    pub fn pullback(&self, g: &InhomogeneousElement<T>) -> Self {
        FieldSection {
            components: self.components.iter().map(|f| f.pullback(g)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&FieldExpr<T>) -> FieldExpr<T>) -> Self {
        FieldSection {
            components: self.components.iter().map(f).collect(),
        }
    }
}

/// Componentwise `lambda f + mu g`; the component counts must agree.
/// A coefficient that is exactly zero drops its side.
pub fn scale_add<T: Real>(
    lambda: Complex<T>,
    f: &FieldSection<T>,
    mu: Complex<T>,
    g: &FieldSection<T>,
) -> Result<FieldSection<T>> {
    if f.len() != g.len() {
        return Err(Error::ComponentMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let zero = Complex::new(T::zero(), T::zero());
    if mu == zero {
        return Ok(f.scaled(lambda));
    }
    if lambda == zero {
        return Ok(g.scaled(mu));
    }
    Ok(FieldSection {
        components: f
            .components
            .iter()
            .zip(g.components.iter())
            .map(|(a, b)| {
                FieldExpr::Add(Box::new(a.scaled(lambda)), Box::new(b.scaled(mu)))
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::Axis;
    use crate::sl2c::SL2C;

    type F = FieldExpr<f64>;

    fn ev(src: &str, x: [f64; 4]) -> Complex<f64> {
        parse_field::<f64>(src)
            .unwrap()
            .eval(&FourVector::from_array(x))
            .unwrap()
    }

    #[test]
    fn constants_and_coordinates() {
        assert_eq!(ev("1", [9.0, 9.0, 9.0, 9.0]), Complex::new(1.0, 0.0));
        assert_eq!(ev("x2^2", [0.0, 0.0, 3.0, 0.0]), Complex::new(9.0, 0.0));
    }

    #[test]
    fn euler_identity() {
        let v = ev("exp(i*x0) + 2*x2", [std::f64::consts::PI, 0.0, 0.0, 0.0]);
        assert!((v.re + 1.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = parse_field::<f64>("1/x0").unwrap();
        assert!(matches!(
            f.eval(&FourVector::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(f.eval(&FourVector::new(2.0, 0.0, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn negative_powers() {
        let f = parse_field::<f64>("x1^-2").unwrap();
        let v = f.eval(&FourVector::new(0.0, 2.0, 0.0, 0.0)).unwrap();
        assert!((v.re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn pullback_of_translation_shifts_coordinates() {
        let f = F::Coord(0);
        let g = InhomogeneousElement::from_translation(FourVector::new(1.0, 0.0, 0.0, 0.0));
        let pulled = f.pullback(&g);
        let x = FourVector::new(4.0, 1.0, 2.0, 3.0);
        assert_eq!(pulled.eval(&x).unwrap(), Complex::new(3.0, 0.0));
    }

    #[test]
    fn pullback_exactness() {
        let f = parse_field::<f64>("sin(x1) * exp(i*x0) + x3^2").unwrap();
        let g = InhomogeneousElement::new(
            FourVector::new(0.4, -1.0, 0.2, 0.8),
            SL2C::boost(Axis::X2, 0.9).mul(&SL2C::rotation(Axis::X1, 0.5)),
        )
        .unwrap();
        let pulled = f.pullback(&g);
        for k in 0..20 {
            let x = FourVector::new(
                0.1 * k as f64,
                -0.3 + 0.05 * k as f64,
                0.7,
                1.0 - 0.1 * k as f64,
            );
            let lhs = pulled.eval(&g.apply(x)).unwrap();
            let rhs = f.eval(&x).unwrap();
            assert!((lhs - rhs).norm() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn pullbacks_compose_like_the_group() {
        let f = parse_field::<f64>("x0*x2 + cos(x3)").unwrap();
        let g1 = InhomogeneousElement::new(
            FourVector::new(0.2, 0.0, -0.4, 0.3),
            SL2C::rotation(Axis::X3, 0.7),
        )
        .unwrap();
        let g2 = InhomogeneousElement::new(
            FourVector::new(-0.6, 0.5, 0.1, 0.0),
            SL2C::boost(Axis::X1, -0.8),
        )
        .unwrap();
        let nested = f.pullback(&g2).pullback(&g1);
        let composed = f.pullback(&g1.compose(&g2).unwrap());
        for k in 0..10 {
            let x = FourVector::new(0.3 * k as f64, 0.2, -0.5 + 0.1 * k as f64, 0.9);
            let a = nested.eval(&x).unwrap();
            let b = composed.eval(&x).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn section_combine_is_componentwise() {
        let f = FieldSection::new(vec![F::Coord(2), F::one()]);
        let g = FieldSection::new(vec![F::one(), F::Coord(3)]);
        let one = Complex::new(1.0, 0.0);
        let sum = scale_add(one, &f, one, &g).unwrap();
        let x = FourVector::new(0.0, 0.0, 2.0, 5.0);
        let vals = sum.eval(&x).unwrap();
        assert_eq!(vals[0], Complex::new(3.0, 0.0));
        assert_eq!(vals[1], Complex::new(6.0, 0.0));
    }

    #[test]
    fn section_combine_rejects_mismatched_counts() {
        let f = FieldSection::new(vec![F::one()]);
        let g = FieldSection::new(vec![F::one(), F::one()]);
        let one = Complex::new(1.0, 0.0);
        assert!(matches!(
            scale_add(one, &f, one, &g),
            Err(Error::ComponentMismatch { .. })
        ));
    }

    #[test]
    fn zero_coefficient_drops_a_side() {
        let f = FieldSection::new(vec![F::Coord(1)]);
        let g = FieldSection::new(vec![F::Div(Box::new(F::one()), Box::new(F::Coord(0)))]);
        let sum = scale_add(
            Complex::new(1.0, 0.0),
            &f,
            Complex::new(0.0, 0.0),
            &g,
        )
        .unwrap();
        // g would divide by zero at x0 = 0, but mu = 0 drops it entirely
        let v = sum.eval(&FourVector::new(0.0, 7.0, 0.0, 0.0)).unwrap();
        assert_eq!(v[0], Complex::new(7.0, 0.0));
    }
}
