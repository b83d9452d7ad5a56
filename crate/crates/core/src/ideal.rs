//! Dimensions of principal left ideals `R*b` from the minimal and
//! characteristic polynomials of the right regular representation.
//!
//! Notation used in reports:
//! * `n`: multiplicity of 0 as a root of the minimal polynomial;
//! * `u`: multiplicity of 0 as a root of the characteristic polynomial;
//! * `t`: number of irreducible factors of the minimal polynomial other than `x`;
//! * `zeta_n`: `dim ker(r_b^n) - dim ker(r_b)`.

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::matrix::Matrix;
use crate::poly::{Factorization, Polynomial};

/// Polynomial data of one element, computed once and shared by every
/// dimension formula.
#[derive(Clone, Debug)]
pub struct ElementAnalysis {
    pub element: AlgebraElement,
    pub right_matrix: Matrix,
    pub min_poly: Polynomial,
    pub char_poly: Polynomial,
    pub min_factors: Factorization,
    pub char_factors: Factorization,
    pub n: usize,
    pub u: usize,
    pub t: usize,
    pub kernel_dim: usize,
    pub zeta_n: usize,
    pub rank: usize,
}

impl ElementAnalysis {
    pub fn new(b: &AlgebraElement) -> Result<ElementAnalysis> {
        if b.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = b.right_regular_matrix();
        let min_poly = m.min_poly()?;
        let char_poly = m.char_poly()?;
        let min_factors = min_poly.factor()?;
        let char_factors = char_poly.factor()?;
        let n = min_poly.x_multiplicity()?;
        let u = char_poly.x_multiplicity()?;
        let t = min_factors.factors.iter().filter(|(f, _)| f.degree() != Some(1) || !f.coeff(0).is_zero()).count();
        let rank = m.rank();
        let kernel_dim = m.cols() - rank;
        let zeta_n = if n <= 1 { 0 } else { m.kernel_dim_of_power(n as u64)? - kernel_dim };
        Ok(ElementAnalysis {
            element: b.clone(),
            right_matrix: m,
            min_poly,
            char_poly,
            min_factors,
            char_factors,
            n,
            u,
            t,
            kernel_dim,
            zeta_n,
            rank,
        })
    }

    pub fn group_order(&self) -> usize {
        self.element.group().order()
    }

    pub fn is_unit(&self) -> bool {
        self.n == 0
    }

    /// `zeta_n + |G| - u`.
    pub fn dimension(&self) -> usize {
        self.zeta_n + self.group_order() - self.u
    }

    pub fn p_part(&self) -> usize {
        self.element.group().p_part(self.element.field().p())
    }

    /// `Some((a, s))` when the minimal polynomial is `x (x - a)^s` with `a != 0`.
    pub fn single_eigenvalue(&self) -> Option<(Fe, usize)> {
        if self.n != 1 {
            return None;
        }
        let others: Vec<&(Polynomial, usize)> =
            self.min_factors.factors.iter().filter(|(f, _)| !f.coeff(0).is_zero() || f.degree() != Some(1)).collect();
        match others.as_slice() {
            [(f, s)] if f.degree() == Some(1) => Some((self.element.field().neg(f.coeff(0)), *s)),
            _ => None,
        }
    }
}

/// A closed interval known to contain the dimension, optionally with a
/// divisibility constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub tag: &'static str,
    pub lower: usize,
    pub upper: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisible_by: Option<usize>,
    pub note: String,
}

impl Bound {
    pub fn admits(&self, d: usize) -> bool {
        self.lower <= d && d <= self.upper && self.divisible_by.is_none_or(|m| d.is_multiple_of(m))
    }
}

pub const TAG_P_PART: &str = "p_part";
pub const TAG_CHAR_POLY: &str = "char_poly_multiplicity";

/// Result of the trace-congruence analysis for `m_b = x (x - a)^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    /// The nonzero eigenvalue, as a field literal.
    pub eigenvalue: String,
    pub s: usize,
    /// Characteristic of the field; the dimension is known modulo it.
    pub modulus: u64,
    /// `|G| * lambda1(b) / a` as an integer in `[0, p)`.
    pub class_value: u64,
    /// Least positive integer in the class.
    pub r: u64,
    /// Class members in `[1, |G| - 1]` allowed by the p-part bound.
    pub candidates: Vec<usize>,
    /// `dim <= p` forces `dim = r`.
    pub exact_if_at_most_p: bool,
    /// Every nontrivial ideal of the algebra has dimension `<= p`.
    pub all_ideals_at_most_p: bool,
    /// `p` divides the dimension exactly when `lambda1(b) = 0` or `p | |G|`.
    pub multiple_of_p: bool,
    /// A one-dimensional ideal is possible only if `lambda1(b) = a / |G|`.
    pub dim_one_possible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub dim_exact: usize,
    pub rank_check: usize,
    pub group_order: usize,
    pub min_poly: String,
    pub min_poly_factored: String,
    pub char_poly: String,
    pub char_poly_factored: String,
    pub n: usize,
    pub u: usize,
    pub t: usize,
    pub zeta_n: usize,
    pub kernel_dim: usize,
    pub p_part: usize,
    pub unit: bool,
    pub projective: bool,
    pub bounds: Vec<Bound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruence: Option<Congruence>,
    /// Dimensions consistent with every bound and congruence above.
    pub candidates: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotent_generator: Option<AlgebraElement>,
    pub notes: Vec<String>,
}

/// Exact dimension through the primary decomposition of `m_b`, together
/// with every bound and congruence that applies.
pub fn dimension_exact(b: &AlgebraElement) -> Result<DimensionReport> {
    let a = ElementAnalysis::new(b)?;
    report_from_analysis(&a)
}

pub fn report_from_analysis(a: &ElementAnalysis) -> Result<DimensionReport> {
    let dim = a.dimension();
    assert_eq!(dim, a.rank, "primary decomposition and rank disagree");
    let order = a.group_order();
    let mut notes = Vec::new();
    let (bounds, congruence) = if a.is_unit() {
        notes.push("0 is not a root of the minimal polynomial: the element is a unit and generates the whole algebra".into());
        (Vec::new(), None)
    } else {
        let bounds = bounds_from_analysis(a);
        let congruence = match congruence_from_analysis(a) {
            Ok(c) => Some(c),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        (bounds, congruence)
    };
    let lo = if a.is_unit() { order } else { 1 };
    let candidates: Vec<usize> = (lo..=order)
        .filter(|&d| bounds.iter().all(|bd| bd.admits(d)))
        .filter(|d| congruence.as_ref().is_none_or(|c| c.candidates.contains(d)))
        .collect();
    debug_assert!(candidates.contains(&dim));
    let idempotent_generator = if a.n <= 1 { Some(idempotent_from_analysis(a)?) } else { None };
    if a.n > 1 {
        notes.push(format!(
            "0 has multiplicity {} in the minimal polynomial, so the ideal is not projective",
            a.n
        ));
    }
    Ok(DimensionReport {
        dim_exact: dim,
        rank_check: a.rank,
        group_order: order,
        min_poly: a.min_poly.to_string(),
        min_poly_factored: a.min_factors.to_string(),
        char_poly: a.char_poly.to_string(),
        char_poly_factored: a.char_factors.to_string(),
        n: a.n,
        u: a.u,
        t: a.t,
        zeta_n: a.zeta_n,
        kernel_dim: a.kernel_dim,
        p_part: a.p_part(),
        unit: a.is_unit(),
        projective: a.n <= 1,
        bounds,
        congruence,
        candidates,
        idempotent_generator,
        notes,
    })
}

/// Bounds that hold without computing the rank.
pub fn dimension_bounds(b: &AlgebraElement) -> Result<Vec<Bound>> {
    let a = ElementAnalysis::new(b)?;
    if a.is_unit() {
        return Err(Error::UnitElement);
    }
    Ok(bounds_from_analysis(&a))
}

fn bounds_from_analysis(a: &ElementAnalysis) -> Vec<Bound> {
    let order = a.group_order();
    let pp = a.p_part();
    let mut out = Vec::new();
    if a.n == 1 {
        out.push(Bound {
            tag: TAG_P_PART,
            lower: a.t * pp,
            upper: order - pp,
            divisible_by: Some(pp),
            note: format!("0 is a simple root: {pp} divides the dimension"),
        });
    } else {
        let (lower, note) = if a.kernel_dim.is_multiple_of(pp) {
            ((a.t + 1) * pp, format!("{pp} divides dim ker(r_b) and 0 is a repeated root"))
        } else {
            (a.t * pp, "t times the p-part".to_string())
        };
        out.push(Bound { tag: TAG_P_PART, lower, upper: order - 1, divisible_by: None, note });
    }
    let base = order - a.u;
    if a.n == 1 {
        out.push(Bound {
            tag: TAG_CHAR_POLY,
            lower: base,
            upper: base,
            divisible_by: None,
            note: "equality: 0 is a simple root of the minimal polynomial".into(),
        });
    } else {
        out.push(Bound {
            tag: TAG_CHAR_POLY,
            lower: base + 1,
            upper: order - 1,
            divisible_by: None,
            note: format!("strict lower bound {base}: 0 is a repeated root of the minimal polynomial"),
        });
    }
    out
}

/// Dimension modulo the characteristic from the trace, when the minimal
/// polynomial is `x (x - a)^s`.
pub fn congruence_class(b: &AlgebraElement) -> Result<Congruence> {
    congruence_from_analysis(&ElementAnalysis::new(b)?)
}

fn congruence_from_analysis(an: &ElementAnalysis) -> Result<Congruence> {
    let (a, s) = an.single_eigenvalue().ok_or_else(|| {
        Error::NotApplicable(format!(
            "the minimal polynomial {} is not of the form x*(x-a)^s",
            an.min_factors
        ))
    })?;
    let b = &an.element;
    let f = b.field();
    let p = f.p();
    let order = an.group_order();
    let g_int = f.from_int(order as i64);
    let value = f.div(f.mul(g_int, b.lambda1()), a)?;
    let class_value = f
        .prime_value(value)
        .expect("trace over eigenvalue lies in the prime field");
    let r = if class_value == 0 { p } else { class_value };
    let pp = an.p_part();
    let candidates: Vec<usize> = (1..order)
        .filter(|&d| d as u64 % p == class_value)
        .filter(|&d| an.t * pp <= d && d <= order - pp && d % pp == 0)
        .collect();
    debug_assert!(candidates.contains(&an.dimension()));
    let lambda_zero = b.lambda1().is_zero();
    let p_divides = (order as u64).is_multiple_of(p);
    Ok(Congruence {
        eigenvalue: f.format(a),
        s,
        modulus: p,
        class_value,
        r,
        candidates,
        exact_if_at_most_p: true,
        all_ideals_at_most_p: !p_divides && order as u64 <= p + 1 && order as u64 != p,
        multiple_of_p: lambda_zero || p_divides,
        dim_one_possible: !p_divides && b.lambda1() == f.div(a, g_int)?,
    })
}

/// The ideal is projective exactly when 0 is at most a simple root of the
/// minimal polynomial.
pub fn is_projective_principal(b: &AlgebraElement) -> Result<bool> {
    Ok(ElementAnalysis::new(b)?.n <= 1)
}

/// Idempotent `e` with `R*e = R*b`, from `u0*x + u1*h = 1` where
/// `m_b = x*h`.
pub fn idempotent_generator(b: &AlgebraElement) -> Result<AlgebraElement> {
    idempotent_from_analysis(&ElementAnalysis::new(b)?)
}

fn idempotent_from_analysis(a: &ElementAnalysis) -> Result<AlgebraElement> {
    let b = &a.element;
    match a.n {
        0 => Ok(b.algebra().one()),
        1 => {
            let f = b.field();
            let h = a.min_poly.strip_x();
            let (e0, _) = coprime_split_idempotents(b, &Polynomial::x(f), &h)?;
            debug_assert!(same_left_ideal(&e0, b));
            Ok(e0)
        }
        n => Err(Error::NotProjective { multiplicity: n }),
    }
}

/// Orthogonal idempotents `(E0, E1)` with `E0 + E1 = 1`, where
/// `Ei = ui(b) fi(b)` generates `R fi(b)`.
pub fn coprime_split_idempotents(
    b: &AlgebraElement,
    f0: &Polynomial,
    f1: &Polynomial,
) -> Result<(AlgebraElement, AlgebraElement)> {
    let (d, u0, u1) = f0.xgcd(f1)?;
    if !d.is_one() {
        return Err(Error::NotCoprime);
    }
    if !(f0 * f1).evaluate_at(b)?.is_zero() {
        return Err(Error::NotAnnihilating);
    }
    let e0 = &u0.evaluate_at(b)? * &f0.evaluate_at(b)?;
    let e1 = &u1.evaluate_at(b)? * &f1.evaluate_at(b)?;
    debug_assert!(e0.is_idempotent() && e1.is_idempotent());
    debug_assert!((&e0 * &e1).is_zero() && &e0 + &e1 == b.algebra().one());
    Ok((e0, e1))
}

/// `R*x == R*y`, by comparing the column spaces of the right regular
/// matrices with that of their concatenation.
pub fn same_left_ideal(x: &AlgebraElement, y: &AlgebraElement) -> bool {
    let mx = x.right_regular_matrix();
    let my = y.right_regular_matrix();
    let rx = mx.rank();
    if rx != my.rank() {
        return false;
    }
    let cols: Vec<Vec<Fe>> = (0..mx.cols()).map(|j| mx.column(j)).chain((0..my.cols()).map(|j| my.column(j))).collect();
    Matrix::from_columns(x.field(), &cols).expect("equal heights").rank() == rx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{a4_algebra, c2c4_algebra, element_in, q8_algebra};
    use proptest::prelude::*;

    #[test]
    fn a4_simple_zero() {
        let r = a4_algebra();
        let b = r.parse_element("u + u^2*v*u").unwrap();
        let rep = dimension_exact(&b).unwrap();
        assert_eq!(rep.min_poly_factored, "x*(1+x+x^2)^2");
        assert_eq!(rep.char_poly_factored, "x^4*(1+x+x^2)^4");
        assert_eq!((rep.n, rep.u, rep.zeta_n, rep.t, rep.dim_exact), (1, 4, 0, 1, 8));
        assert!(rep.projective);
        let pb = rep.bounds.iter().find(|b| b.tag == TAG_P_PART).unwrap();
        assert_eq!((pb.lower, pb.upper, pb.divisible_by), (4, 8, Some(4)));
        let allowed: Vec<usize> = (1..12).filter(|&d| pb.admits(d)).collect();
        assert_eq!(allowed, [4, 8]);
        assert!(rep.congruence.is_none());
        let e = rep.idempotent_generator.unwrap();
        assert!(e.is_idempotent());
        assert_eq!(e.ideal_dimension_rank(), 8);
        assert!(same_left_ideal(&e, &b));
    }

    #[test]
    fn a4_repeated_zero() {
        let r = a4_algebra();
        let b = r.parse_element("1+u+v+u^2*v*u").unwrap();
        let rep = dimension_exact(&b).unwrap();
        assert_eq!(rep.min_poly_factored, "x^2*(1+x+x^2)^2");
        assert_eq!(rep.char_poly_factored, "x^4*(1+x+x^2)^4");
        assert_eq!((rep.n, rep.u, rep.zeta_n, rep.dim_exact), (2, 4, 1, 9));
        assert!(!rep.projective);
        let cb = rep.bounds.iter().find(|b| b.tag == TAG_CHAR_POLY).unwrap();
        assert_eq!((cb.lower, cb.upper), (9, 11));
        assert_eq!(idempotent_generator(&b), Err(Error::NotProjective { multiplicity: 2 }));
        assert_eq!(is_projective_principal(&b), Ok(false));
        // zeta_2 from kernel dimensions of powers
        let m = b.right_regular_matrix();
        assert_eq!(m.kernel_dim_of_power(2).unwrap() - m.kernel_dim(), 1);
    }

    #[test]
    fn quaternion_congruences() {
        let r = q8_algebra();
        let cases = [
            ("u+2*v+2*u^2+2*u^3*v+u*v+u^2*v", "1", 0, vec![3, 6], 6),
            ("1+u+v+u^3*v", "1", 2, vec![2, 5], 5),
            ("2+2*u+v+u^3*v", "2", 2, vec![2, 5], 5),
        ];
        for (text, eig, class, cands, dim) in cases {
            let b = r.parse_element(text).unwrap();
            let rep = dimension_exact(&b).unwrap();
            assert_eq!(rep.dim_exact, dim, "{text}");
            let c = rep.congruence.unwrap();
            assert_eq!(c.eigenvalue, eig);
            assert_eq!(c.s, 2);
            assert_eq!(c.class_value, class);
            assert_eq!(c.candidates, cands, "{text}");
            assert!(c.candidates.contains(&dim));
        }
        let b0 = r.parse_element("u+2*v+2*u^2+2*u^3*v+u*v+u^2*v").unwrap();
        assert!(congruence_class(&b0).unwrap().multiple_of_p);
    }

    #[test]
    fn unit_and_zero() {
        let r = q8_algebra();
        let rep = dimension_exact(&r.one()).unwrap();
        assert!(rep.unit);
        assert_eq!(rep.dim_exact, 8);
        assert_eq!(rep.candidates, [8]);
        assert_eq!(rep.min_poly, "2+x");
        assert_eq!(dimension_bounds(&r.one()), Err(Error::UnitElement));
        assert_eq!(dimension_exact(&r.zero()).unwrap_err(), Error::ZeroElement);
        assert!(matches!(
            congruence_class(&a4_algebra().parse_element("u + u^2*v*u").unwrap()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn coprime_split_of_an_idempotent() {
        let r = c2c4_algebra();
        let e = r.parse_element("2,0,0,0,2,1,1,1").unwrap();
        assert!(e.is_idempotent());
        let f = r.field();
        let x = Polynomial::x(f);
        let x1 = Polynomial::parse(f, "x-1").unwrap();
        let (e0, e1) = coprime_split_idempotents(&e, &x, &x1).unwrap();
        assert_eq!(e0, e);
        assert_eq!(e1, &r.one() - &e);
        assert_eq!(coprime_split_idempotents(&e, &x, &(&x * &x1)), Err(Error::NotCoprime));
        let x2 = Polynomial::parse(f, "x-2").unwrap();
        assert_eq!(coprime_split_idempotents(&e, &x, &x2), Err(Error::NotAnnihilating));
        assert_eq!(idempotent_generator(&e).unwrap(), e);
    }

    #[test]
    fn a4_split_pair() {
        let r = a4_algebra();
        let b = r.parse_element("u + u^2*v*u").unwrap();
        let f = r.field();
        let h = Polynomial::parse(f, "(x^2+x+1)^2").unwrap();
        let (e0, e1) = coprime_split_idempotents(&b, &Polynomial::x(f), &h).unwrap();
        assert!(e0.is_idempotent() && e1.is_idempotent());
        assert!((&e0 * &e1).is_zero());
        assert_eq!(&e0 + &e1, r.one());
        assert!(same_left_ideal(&e1, &h.evaluate_at(&b).unwrap()));
    }

    fn golden() -> impl Strategy<Value = AlgebraElement> {
        prop_oneof![element_in(&a4_algebra()), element_in(&q8_algebra()), element_in(&c2c4_algebra())]
    }

    proptest! {
        #[test]
        fn report_invariants(b in golden()) {
            prop_assume!(!b.is_zero());
            let rep = dimension_exact(&b).unwrap();
            prop_assert_eq!(rep.dim_exact, b.ideal_dimension_rank());
            prop_assert_eq!(rep.dim_exact, rep.zeta_n + rep.group_order - rep.u);
            for bd in &rep.bounds {
                prop_assert!(bd.admits(rep.dim_exact), "{:?}", bd);
            }
            prop_assert!(rep.candidates.contains(&rep.dim_exact));
            prop_assert_eq!(rep.dim_exact == rep.group_order - rep.u, rep.n <= 1);
            if let Some(e) = &rep.idempotent_generator {
                prop_assert!(e.is_idempotent());
                prop_assert!(same_left_ideal(e, &b));
            }
        }
    }
}
