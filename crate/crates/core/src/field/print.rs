//! Expression printer. Output stays inside the parser's grammar: negative
//! values are rendered through subtraction (`(0 - 2)` style) because the
//! grammar has no unary minus, and pullback nodes are expanded into
//! explicit affine substitutions of the coordinates.

use num_complex::Complex;

use crate::mat::Mat4;
use crate::scalar::Real;
use crate::vec4::FourVector;

use super::FieldExpr;

/// Precedence levels: additive 1, multiplicative 2, power 3, atom 4.
const ADD: u8 = 1;
const MUL: u8 = 2;
const POW: u8 = 3;
const ATOM: u8 = 4;

/// Accumulated coordinate substitution `x -> M x + c`.
#[derive(Clone, Copy)]
struct Subst<T> {
    matrix: Mat4<T>,
    offset: FourVector<T>,
}

pub fn print_expr<T: Real>(e: &FieldExpr<T>) -> String {
    render(e, None, ADD)
}

fn render<T: Real>(e: &FieldExpr<T>, subst: Option<&Subst<T>>, required: u8) -> String {
    let (body, level) = match e {
        FieldExpr::Const(c) => (const_atom(*c), ATOM),
        FieldExpr::Coord(k) => match subst {
            None => (format!("x{k}"), ATOM),
            Some(s) => (substituted_coord(s, *k), ATOM),
        },
        FieldExpr::Add(a, b) => (
            format!("{} + {}", render(a, subst, ADD), render(b, subst, MUL)),
            ADD,
        ),
        FieldExpr::Sub(a, b) => (
            format!("{} - {}", render(a, subst, ADD), render(b, subst, MUL)),
            ADD,
        ),
        FieldExpr::Mul(a, b) => (
            format!("{}*{}", render(a, subst, MUL), render(b, subst, POW)),
            MUL,
        ),
        FieldExpr::Div(a, b) => (
            format!("{}/{}", render(a, subst, MUL), render(b, subst, POW)),
            MUL,
        ),
        FieldExpr::Pow(a, n) => (format!("{}^{}", render(a, subst, ATOM), n), POW),
        FieldExpr::Func(kind, a) => (format!("{}({})", kind.name(), render(a, subst, ADD)), ATOM),
        FieldExpr::Pullback(map, inner) => {
            let (m1, c1) = map.as_linear_offset();
            let composed = match subst {
                None => Subst {
                    matrix: m1,
                    offset: c1,
                },
                Some(s) => Subst {
                    matrix: m1 * s.matrix,
                    offset: m1.apply(s.offset) + c1,
                },
            };
            return render(inner, Some(&composed), required);
        }
    };
    if level < required {
        format!("({body})")
    } else {
        body
    }
}

/// Non-negative real literal.
fn lit<T: Real>(v: T) -> String {
    debug_assert!(v >= T::zero() && v.is_finite());
    format!("{v}")
}

/// Renders a complex constant as a grammar atom.
fn const_atom<T: Real>(c: Complex<T>) -> String {
    let zero = T::zero();
    if c.im == zero {
        return if c.re < zero {
            format!("(0 - {})", lit(-c.re))
        } else {
            lit(c.re)
        };
    }
    if c.re == zero && c.im == T::one() {
        return "i".to_string();
    }
    let mut out = String::from("(");
    let mut leading = true;
    if c.re != zero {
        if c.re < zero {
            out.push_str(&format!("0 - {}", lit(-c.re)));
        } else {
            out.push_str(&lit(c.re));
        }
        leading = false;
    }
    let im_term = if c.im.abs() == T::one() {
        "i".to_string()
    } else {
        format!("{}*i", lit(c.im.abs()))
    };
    if leading {
        if c.im < zero {
            out.push_str(&format!("0 - {im_term}"));
        } else {
            out.push_str(&im_term);
        }
    } else if c.im < zero {
        out.push_str(&format!(" - {im_term}"));
    } else {
        out.push_str(&format!(" + {im_term}"));
    }
    out.push(')');
    out
}

/// Coordinate `x_k` under the substitution: the affine row
/// `c_k +/- |m_kj| * xj`, parenthesized.
fn substituted_coord<T: Real>(s: &Subst<T>, k: usize) -> String {
    let zero = T::zero();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let c = s.offset[k];
    if c != zero {
        terms.push((c < zero, lit(c.abs())));
    }
    for j in 0..4 {
        let w = s.matrix[(k, j)];
        if w == zero {
            continue;
        }
        let body = if w.abs() == T::one() {
            format!("x{j}")
        } else {
            format!("{}*x{j}", lit(w.abs()))
        };
        terms.push((w < zero, body));
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::from("(");
    for (idx, (negative, body)) in terms.iter().enumerate() {
        if idx == 0 {
            if *negative {
                out.push_str(&format!("0 - {body}"));
            } else {
                out.push_str(body);
            }
        } else if *negative {
            out.push_str(&format!(" - {body}"));
        } else {
            out.push_str(&format!(" + {body}"));
        }
    }
    out.push(')');
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_field, FieldExpr};
    use crate::group::InhomogeneousElement;
    use crate::lorentz::Axis;
    use crate::sl2c::SL2C;
    use crate::vec4::FourVector;
    use num_complex::Complex;

    fn roundtrip_at(f: &FieldExpr<f64>, xs: &[[f64; 4]]) {
        let printed = f.print();
        let reparsed = parse_field::<f64>(&printed)
            .unwrap_or_else(|e| panic!("printed form must parse: `{printed}`: {e}"));
        for &x in xs {
            let x = FourVector::from_array(x);
            let a = f.eval(&x).unwrap();
            let b = reparsed.eval(&x).unwrap();
            assert!(
                (a - b).norm() <= 1e-12 * (1.0 + a.norm()),
                "mismatch at {x:?} for `{printed}`"
            );
        }
    }

    #[test]
    fn negative_constants_print_inside_the_grammar() {
        let f = FieldExpr::constant(-2.5, 0.0);
        assert_eq!(f.print(), "(0 - 2.5)");
        let g = FieldExpr::constant(1.5, -1.0);
        assert_eq!(g.print(), "(1.5 - i)");
        let h = FieldExpr::constant(0.0, -3.0);
        assert_eq!(h.print(), "(0 - 3*i)");
        for e in [f, g, h] {
            roundtrip_at(&e, &[[0.0; 4]]);
        }
    }

    #[test]
    fn structured_expressions_roundtrip() {
        let sources = [
            "1 + 2*x2",
            "exp(i*x0) + 2*x2",
            "sin(x1)*cos(x2) - x3^3",
            "(x0 + x1)^2/(2 + x2^2)",
            "cosh(x3) - sinh(x3)",
            "x1^-2 + 1",
        ];
        let points = [
            [0.3, -0.2, 0.9, 1.4],
            [1.0, 2.0, -0.5, 0.25],
            [-0.7, 0.4, 0.0, 2.0],
        ];
        for src in sources {
            let f = parse_field::<f64>(src).unwrap();
            roundtrip_at(&f, &points);
        }
    }

    #[test]
    fn pullback_prints_as_affine_substitution() {
        let f = parse_field::<f64>("x0 + sin(x2)").unwrap();
        let g = InhomogeneousElement::new(
            FourVector::new(0.5, 0.0, -1.0, 0.25),
            SL2C::boost(Axis::X2, 0.7).mul(&SL2C::rotation(Axis::X1, -0.4)),
        )
        .unwrap();
        let pulled = f.pullback(&g);
        let printed = pulled.print();
        assert!(!printed.contains("pullback"), "must expand: {printed}");
        let reparsed = parse_field::<f64>(&printed).unwrap();
        for k in 0..8 {
            let x = FourVector::new(0.2 * k as f64, -0.1, 0.6, 0.4 + 0.3 * k as f64);
            let a = pulled.eval(&x).unwrap();
            let b = reparsed.eval(&x).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn nested_pullbacks_compose_in_print() {
        let f = parse_field::<f64>("x3^2 - x0").unwrap();
        let g1 = InhomogeneousElement::from_translation(FourVector::new(1.0, 2.0, 3.0, 4.0));
        let g2 = InhomogeneousElement::from_lorentz(SL2C::rotation(Axis::X3, 0.3)).unwrap();
        let pulled = f.pullback(&g2).pullback(&g1);
        let printed = pulled.print();
        let reparsed = parse_field::<f64>(&printed).unwrap();
        let x = FourVector::new(0.4, -1.1, 0.9, 2.2);
        let a = pulled.eval(&x).unwrap();
        let b = reparsed.eval(&x).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn translation_pullback_prints_shifted_coordinate() {
        let f = FieldExpr::<f64>::Coord(0);
        let g = InhomogeneousElement::from_translation(FourVector::new(1.0, 0.0, 0.0, 0.0));
        let printed = f.pullback(&g).print();
        assert_eq!(printed, "(0 - 1 + x0)");
        let reparsed = parse_field::<f64>(&printed).unwrap();
        let v = reparsed
            .eval(&FourVector::new(5.0, 0.0, 0.0, 0.0))
            .unwrap();
        assert_eq!(v, Complex::new(4.0, 0.0));
    }
}
