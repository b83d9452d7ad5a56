//! Group algebras `F[G]` and their elements.
//!
//! Coordinates follow the group's element ordering. Column `j` of the right
//! regular matrix of `b` holds the coordinates of `g_j * b`; column `j` of the
//! left regular matrix holds those of `b * g_j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Ring};
use crate::field::{Fe, Field};
use crate::group::Group;
use crate::matrix::Matrix;
use crate::poly::Polynomial;

#[derive(Debug)]
struct Inner {
    field: Field,
    group: Group,
}

/// The algebra `F[G]`; cheap to clone.
#[derive(Clone, Debug)]
pub struct GroupAlgebra(Arc<Inner>);

impl PartialEq for GroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.group == other.0.group)
    }
}

impl Eq for GroupAlgebra {}

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: GroupAlgebra,
    coeffs: Vec<Fe>,
}

impl GroupAlgebra {
    pub fn new(field: &Field, group: &Group) -> GroupAlgebra {
        GroupAlgebra(Arc::new(Inner { field: field.clone(), group: group.clone() }))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    /// `|G|`, the dimension over the field.
    pub fn dim(&self) -> usize {
        self.0.group.order()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.clone(), coeffs: vec![Fe::ZERO; self.dim()] }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(self.group().identity())
    }

    pub fn scalar(&self, c: Fe) -> AlgebraElement {
        self.one().scale(c)
    }

    /// The group element `g` as an algebra element.
    pub fn basis(&self, g: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[g] = Fe::ONE;
        e
    }

    pub fn element(&self, coeffs: Vec<Fe>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients given for a group of order {}",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement { algebra: self.clone(), coeffs })
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Result<AlgebraElement> {
        self.element(coeffs.iter().map(|&c| self.field().from_int(c)).collect())
    }

    /// Parses either a comma-separated coefficient vector in group order
    /// (`2,0,0,0,2,1,1,1`) or an expression such as `1 + (2*a+1)*u^2*v`.
    /// A run of single digits (`20002111`) is also accepted as a vector when
    /// its length equals the group order.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement> {
        let parts = expr::split_top_level(text, ',');
        if parts.len() > 1 {
            let coeffs = parts
                .iter()
                .map(|p| self.field().parse_literal(p))
                .collect::<Result<Vec<_>>>()?;
            return self.element(coeffs);
        }
        let t = text.trim();
        if self.dim() > 1 && t.len() == self.dim() && t.bytes().all(|c| c.is_ascii_digit()) {
            return self.element(t.bytes().map(|c| self.field().from_int((c - b'0') as i64)).collect());
        }
        let e = expr::parse(text)?;
        expr::eval(&e, &ElementRing(self))
    }
}

impl AlgebraElement {
    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn group(&self) -> &Group {
        self.algebra.group()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> Fe {
        self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same(other)?;
        let f = self.field();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(AlgebraElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_add(&other.neg_elem())
    }

    fn neg_elem(&self) -> AlgebraElement {
        let f = self.field();
        AlgebraElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    /// Convolution product.
    pub fn try_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same(other)?;
        let f = self.field();
        let g = self.group();
        let mut out = vec![Fe::ZERO; g.order()];
        for (h, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let hk = g.mul(h, k);
                out[hk] = f.add(out[hk], f.mul(a, b));
            }
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), coeffs: out })
    }

    pub fn scale(&self, c: Fe) -> AlgebraElement {
        let f = self.field();
        AlgebraElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn pow(&self, mut e: u64) -> AlgebraElement {
        let mut acc = self.algebra.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `sum a_g g^-1`.
    pub fn star(&self) -> AlgebraElement {
        let g = self.group();
        let mut out = vec![Fe::ZERO; g.order()];
        for (h, &a) in self.coeffs.iter().enumerate() {
            out[g.inverse(h)] = a;
        }
        AlgebraElement { algebra: self.algebra.clone(), coeffs: out }
    }

    /// Coefficient at the identity.
    pub fn lambda1(&self) -> Fe {
        self.coeffs[self.group().identity()]
    }

    /// Hamming weight of the coefficient vector.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    /// Matrix of `w -> w * self`.
    pub fn right_regular_matrix(&self) -> Matrix {
        self.regular_matrix(|g, j, h| g.mul(j, h))
    }

    /// Matrix of `w -> self * w`.
    pub fn left_regular_matrix(&self) -> Matrix {
        self.regular_matrix(|g, j, h| g.mul(h, j))
    }

    fn regular_matrix(&self, image: impl Fn(&Group, usize, usize) -> usize) -> Matrix {
        let f = self.field();
        let g = self.group();
        let n = g.order();
        let mut m = Matrix::zeros(f, n, n);
        for j in 0..n {
            for (h, &b) in self.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let row = image(g, j, h);
                    let v = f.add(m.get(row, j), b);
                    m.set(row, j, v);
                }
            }
        }
        m
    }

    /// `dim(R * self)`, the rank of the right regular matrix.
    pub fn ideal_dimension_rank(&self) -> usize {
        self.right_regular_matrix().rank()
    }

    /// Same coefficients pushed through a field map into another algebra
    /// over the same group.
    pub fn map_into(&self, target: &GroupAlgebra, map: impl Fn(Fe) -> Fe) -> Result<AlgebraElement> {
        if target.group() != self.group() {
            return Err(Error::MixedAlgebras);
        }
        target.element(self.coeffs.iter().map(|&c| map(c)).collect())
    }

    /// Expression text in the group's labels, terms in group order.
    pub fn to_expression(&self) -> String {
        let f = self.field();
        let g = self.group();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(h, &c)| {
                if h == g.identity() {
                    f.format(c)
                } else if c == Fe::ONE {
                    g.label(h).to_string()
                } else {
                    format!("{}*{}", f.format_factor(c), g.label(h))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Coefficients as literals; concatenated digits when every coefficient
    /// is a single prime-field digit (`20002111`), otherwise comma separated.
    pub fn to_vector_string(&self) -> String {
        vector_string(self.field(), &self.coeffs)
    }
}

pub fn vector_string(f: &Field, coeffs: &[Fe]) -> String {
    let digits: Option<String> = coeffs
        .iter()
        .map(|&c| f.prime_value(c).filter(|&v| v < 10).map(|v| char::from(b'0' + v as u8)))
        .collect();
    match digits {
        Some(s) if f.p() < 10 => s,
        _ => coeffs.iter().map(|&c| f.format(c)).collect::<Vec<_>>().join(","),
    }
}

impl Polynomial {
    /// `f(b)`, with the constant term read as a multiple of the identity.
    pub fn evaluate_at(&self, b: &AlgebraElement) -> Result<AlgebraElement> {
        if self.field() != b.field() {
            return Err(Error::MixedFields);
        }
        let mut acc = b.algebra().zero();
        for &c in self.coeffs().iter().rev() {
            acc = &acc * b;
            let id = b.group().identity();
            acc.coeffs[id] = b.field().add(acc.coeffs[id], c);
        }
        Ok(acc)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl $tr for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$via(rhs).expect("elements of different group algebras")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_elem()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({})", self.to_expression())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = self.field();
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for &c in &self.coeffs {
            seq.serialize_element(&f.format(c))?;
        }
        seq.end()
    }
}

struct ElementRing<'a>(&'a GroupAlgebra);

impl Ring for ElementRing<'_> {
    type V = AlgebraElement;

    fn int(&self, n: u64, _: usize) -> Result<AlgebraElement> {
        let p = self.0.field().p();
        Ok(self.0.scalar(self.0.field().from_int((n % p) as i64)))
    }

    fn sym(&self, name: &str, pos: usize) -> Result<AlgebraElement> {
        let f = self.0.field();
        let gen = self.0.group().generator_index(name);
        let is_field_symbol = !f.is_prime_field() && name == f.symbol();
        match (gen, is_field_symbol) {
            (Some(_), true) => Err(Error::parse(
                pos,
                format!("`{name}` is both a generator and the field symbol; choose another field symbol"),
            )),
            (Some(g), false) => Ok(self.0.basis(g)),
            (None, true) => Ok(self.0.scalar(f.generator().expect("extension field"))),
            (None, false) => Err(Error::UnknownGenerator(name.to_string())),
        }
    }

    fn add(&self, a: AlgebraElement, b: AlgebraElement, _: usize) -> Result<AlgebraElement> {
        Ok(&a + &b)
    }

    fn neg(&self, a: AlgebraElement, _: usize) -> Result<AlgebraElement> {
        Ok(-&a)
    }

    fn mul(&self, a: AlgebraElement, b: AlgebraElement, _: usize) -> Result<AlgebraElement> {
        Ok(&a * &b)
    }

    fn one(&self) -> AlgebraElement {
        self.0.one()
    }

    fn pow(&self, base: &Expr, exp: i64, pos: usize) -> Result<AlgebraElement> {
        let b = expr::eval(base, self)?;
        if exp >= 0 {
            return Ok(b.pow(exp as u64));
        }
        // negative powers: group elements, and nonzero scalars
        let support: Vec<usize> = (0..b.coeffs.len()).filter(|&i| !b.coeffs[i].is_zero()).collect();
        let f = self.0.field();
        let g = self.0.group();
        match support.as_slice() {
            [h] => {
                let c = f.pow_signed(b.coeffs[*h], exp)?;
                Ok(self.0.basis(g.pow(*h, exp)).scale(c))
            }
            _ => Err(Error::parse(pos, "negative exponents apply only to group elements and scalars")),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::DEFAULT_CLOSURE_CAP;
    use proptest::prelude::*;

    pub(crate) fn a4_algebra() -> GroupAlgebra {
        let g = Group::from_permutations(&[(None, "(1,2,3)".into()), (None, "(1,2)(3,4)".into())], DEFAULT_CLOSURE_CAP)
            .unwrap()
            .with_ordering(&[
                "1", "u", "u^2*v", "v", "u^2*v*u", "u^2", "v*u", "u*v", "u*v*u", "v*u*v", "v*u^2", "u*v*u^2",
            ])
            .unwrap();
        GroupAlgebra::new(&Field::prime(2).unwrap(), &g)
    }

    pub(crate) fn q8_algebra() -> GroupAlgebra {
        let g = Group::quaternion8()
            .unwrap()
            .with_ordering(&["1", "u", "v", "u^2", "u^3*v", "u*v", "u^3", "u^2*v"])
            .unwrap();
        GroupAlgebra::new(&Field::prime(3).unwrap(), &g)
    }

    pub(crate) fn c2c4_algebra() -> GroupAlgebra {
        let g = Group::direct_product(&Group::cyclic(2).unwrap(), &Group::cyclic(4).unwrap()).unwrap();
        GroupAlgebra::new(&Field::prime(3).unwrap(), &g)
    }

    #[test]
    fn parsing() {
        let r = a4_algebra();
        let b = r.parse_element("u + u^2*v*u").unwrap();
        assert_eq!(b.weight(), 2);
        assert_eq!(b.coeff(1), Fe::ONE);
        assert_eq!(b.coeff(4), Fe::ONE);
        assert!(r.parse_element("0").unwrap().is_zero());
        assert_eq!(r.parse_element("1").unwrap(), r.one());
        assert_eq!(r.parse_element("u + u").unwrap(), r.zero());
        assert_eq!(r.parse_element("u^-1").unwrap(), r.parse_element("u^2").unwrap());
        assert_eq!(r.parse_element("z"), Err(Error::UnknownGenerator("z".into())));
        assert!(matches!(r.parse_element("2u"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(r.parse_element("(1+u)^-1"), Err(Error::Parse { .. })));
        let q = q8_algebra();
        assert_eq!(q.parse_element("2,0,0,0,2,1,1,1").unwrap().weight(), 5);
        assert_eq!(q.parse_element("20002111").unwrap(), q.parse_element("2,0,0,0,2,1,1,1").unwrap());
        assert!(matches!(q.parse_element("1,2"), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn extension_coefficients() {
        let f = Field::new(3, 2, Some(&[2, 2, 1])).unwrap();
        let d = Group::dihedral(5)
            .unwrap()
            .with_ordering(&["1", "u", "v", "u*v^4", "v^2", "u*v", "u*v^3", "v^4", "v^3", "u*v^2"])
            .unwrap();
        let r = GroupAlgebra::new(&f, &d);
        let partial = r.parse_element("(2*a+1)*v + 2*a^2").unwrap();
        assert_eq!(partial.coeff(2), f.parse_literal("2*a+1").unwrap());
        assert_eq!(partial.lambda1(), f.parse_literal("2*a^2").unwrap());
        assert_eq!(partial.to_expression(), format!("{} + (2*a+1)*v", f.format(f.parse_literal("2*a^2").unwrap())));
        // the field symbol may clash with generator names
        let s3 = Group::from_permutations(
            &[(Some("a".into()), "(1,2,3)".into()), (Some("b".into()), "(1,2)".into())],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert!(matches!(GroupAlgebra::new(&f, &s3).parse_element("a"), Err(Error::Parse { .. })));
        let r = GroupAlgebra::new(&f.with_symbol("w"), &s3);
        assert_eq!(r.parse_element("w*a").unwrap().weight(), 1);
    }

    #[test]
    fn regular_matrices_follow_the_column_convention() {
        let r = a4_algebra();
        let b = r.parse_element("u + u^2*v*u").unwrap();
        let m = b.right_regular_matrix();
        for j in 0..12 {
            let gb = &r.basis(j) * &b;
            assert_eq!(m.column(j), gb.coeffs());
            let bg = &b * &r.basis(j);
            assert_eq!(b.left_regular_matrix().column(j), bg.coeffs());
        }
        assert_eq!(r.one().right_regular_matrix(), Matrix::identity(r.field(), 12));
        assert_eq!(b.ideal_dimension_rank(), 8);
        assert_eq!(r.zero().ideal_dimension_rank(), 0);
        assert_eq!(r.parse_element("1+u+v+u^2*v*u").unwrap().ideal_dimension_rank(), 9);
    }

    #[test]
    fn quaternion_trace_and_ranks() {
        let q = q8_algebra();
        let b2 = q.parse_element("2+2*u+v+u^3*v").unwrap();
        assert_eq!(b2.lambda1(), q.field().from_int(2));
        let b0 = q.parse_element("u+2*v+2*u^2+2*u^3*v+u*v+u^2*v").unwrap();
        assert_eq!(b0.ideal_dimension_rank(), 6);
        let b1 = q.parse_element("1+u+v+u^3*v").unwrap();
        assert_eq!(&b1 * &q.one(), b1);
        assert_eq!(b1.ideal_dimension_rank(), 5);
        assert_eq!(b2.ideal_dimension_rank(), 5);
    }

    #[test]
    fn polynomial_evaluation() {
        let r = a4_algebra();
        let b = r.parse_element("u + u^2*v*u").unwrap();
        let f = r.field();
        assert_eq!(Polynomial::one(f).evaluate_at(&b).unwrap(), r.one());
        assert_eq!(Polynomial::parse(f, "x^2").unwrap().evaluate_at(&b).unwrap(), &b * &b);
        let mb = b.right_regular_matrix().min_poly().unwrap();
        assert!(mb.evaluate_at(&b).unwrap().is_zero());
        assert!(b.right_regular_matrix().eval_poly(&mb).unwrap().is_zero());
        let other = Field::prime(3).unwrap();
        assert_eq!(Polynomial::one(&other).evaluate_at(&b), Err(Error::MixedFields));
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = q8_algebra().one();
        let b = c2c4_algebra().one();
        assert_eq!(a.try_mul(&b), Err(Error::MixedAlgebras));
        assert_eq!(a.try_add(&b), Err(Error::MixedAlgebras));
    }

    pub(crate) fn element_in(r: &GroupAlgebra) -> impl Strategy<Value = AlgebraElement> {
        let r = r.clone();
        let q = r.field().q();
        proptest::collection::vec(0..q, r.dim())
            .prop_map(move |v| r.element(v.iter().map(|&i| r.field().element(i).unwrap()).collect()).unwrap())
    }

    fn any_algebra() -> impl Strategy<Value = GroupAlgebra> {
        prop_oneof![Just(a4_algebra()), Just(q8_algebra()), Just(c2c4_algebra())]
    }

    proptest! {
        #[test]
        fn ring_identities((x, y, z) in any_algebra().prop_flat_map(|r| (element_in(&r), element_in(&r), element_in(&r)))) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x.algebra().one() * &x, x.clone());
            prop_assert_eq!(x.star().star(), x.clone());
            prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn rank_trace_and_expression_round_trip(b in any_algebra().prop_flat_map(|r| element_in(&r))) {
            let right = b.right_regular_matrix();
            prop_assert_eq!(right.rank(), b.left_regular_matrix().rank());
            let n = b.field().from_int(b.group().order() as i64);
            prop_assert_eq!(right.trace().unwrap(), b.field().mul(n, b.lambda1()));
            let parsed = b.algebra().parse_element(&b.to_expression()).unwrap();
            prop_assert_eq!(parsed, b.clone());
        }
    }
}
