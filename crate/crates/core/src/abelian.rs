//! Semisimple abelian group algebras. The indicator matrix is built from
//! primitive idempotents over a splitting field; the Hamming weight of its
//! image of an idempotent equals the dimension of the ideal it generates.

use serde::Serialize;

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::Group;
use crate::matrix::Matrix;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn require_semisimple_abelian(group: &Group, q: u64) -> Result<()> {
    if !group.is_abelian() {
        return Err(Error::NonAbelian);
    }
    if gcd(q, group.order() as u64) != 1 {
        return Err(Error::NotSemisimple { q, order: group.order() });
    }
    Ok(())
}

/// Orbits of `g -> g^q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QOrbitPartition {
    pub q: u64,
    /// Element indices; each orbit starts at its smallest index and follows
    /// `g, g^q, g^(q^2), ...`.
    pub orbits: Vec<Vec<usize>>,
}

impl QOrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

pub fn q_orbits(group: &Group, q: u64) -> Result<QOrbitPartition> {
    require_semisimple_abelian(group, q)?;
    let map = group.power_map(q);
    let mut seen = vec![false; group.order()];
    let mut orbits = Vec::new();
    for start in 0..group.order() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut g = start;
        while !seen[g] {
            seen[g] = true;
            orbit.push(g);
            g = map[g];
        }
        orbits.push(orbit);
    }
    Ok(QOrbitPartition { q, orbits })
}

/// Smallest and largest q-orbit size congruent to `|G| lambda1(e)` modulo
/// the characteristic. Meaningful when `e` generates a minimal ideal, which
/// is left to the caller.
pub fn orbit_bound(e: &AlgebraElement) -> Result<(usize, usize)> {
    let f = e.field();
    let group = e.group();
    let partition = q_orbits(group, f.q())?;
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let class = f
        .prime_value(f.mul(f.from_int(group.order() as i64), e.lambda1()))
        .ok_or(Error::NotIdempotent)?;
    let ys: Vec<usize> = partition.sizes().into_iter().filter(|&s| s as u64 % f.p() == class).collect();
    match (ys.iter().min(), ys.iter().max()) {
        (Some(&lo), Some(&hi)) => Ok((lo, hi)),
        _ => Err(Error::EmptyY),
    }
}

/// `|G| - u` for a nonzero element of a semisimple abelian group algebra.
pub fn dimension_semisimple_abelian(b: &AlgebraElement) -> Result<usize> {
    require_semisimple_abelian(b.group(), b.field().q())?;
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let u = b.right_regular_matrix().char_poly()?.x_multiplicity()?;
    Ok(b.group().order() - u)
}

fn multiplicative_order_mod(q: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = q % m;
    let mut d = 1;
    while x != 1 {
        x = x * (q % m) % m;
        d += 1;
    }
    d
}

/// An extension of the base field containing a primitive `m`-th root of
/// unity, `m` the exponent of the group.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub base: Field,
    pub extension: Field,
    /// Degree of the extension over the base.
    pub degree: u32,
    pub exponent: usize,
    /// Image of the base field's generator (`None` for a prime base field).
    pub embedding: Option<Fe>,
    /// Primitive `exponent`-th root of unity in the extension.
    pub theta: Fe,
}

impl SplittingField {
    /// `extension_modulus` (low degree first, over the prime field) fixes the
    /// extension when it is a proper extension; the default is the smallest
    /// irreducible polynomial.
    pub fn new(group: &Group, base: &Field, extension_modulus: Option<&[u64]>) -> Result<SplittingField> {
        require_semisimple_abelian(group, base.q())?;
        let m = group.exponent();
        let d = multiplicative_order_mod(base.q(), m as u64) as u32;
        let extension = if d == 1 {
            if let Some(md) = extension_modulus {
                if md != base.spec().modulus() {
                    return Err(Error::InvalidModulus(
                        "the base field already splits the group; the extension modulus must be the base modulus".into(),
                    ));
                }
            }
            base.clone()
        } else {
            let k = base.k() * d;
            if base.p().checked_pow(k).is_none_or(|q| q >= crate::field::MAX_FIELD_ORDER) {
                return Err(Error::FieldTooLarge { p: base.p(), k });
            }
            Field::new(base.p(), k, extension_modulus)?.with_symbol(base.symbol())
        };
        let embedding = if base.is_prime_field() {
            None
        } else if d == 1 {
            base.generator()
        } else {
            let image = base.modulus_poly().map_coeffs(&extension, |c| extension.from_int(base.prime_value(c).unwrap() as i64));
            let fact = image.factor()?;
            let root = fact
                .factors
                .iter()
                .filter(|(f, _)| f.degree() == Some(1))
                .map(|(f, _)| extension.neg(f.coeff(0)))
                .min()
                .expect("the base modulus splits in the extension");
            Some(root)
        };
        let exp = (extension.q() - 1) / m as u64;
        let theta = extension.pow(extension.primitive_element(), exp);
        debug_assert_eq!(extension.multiplicative_order(theta).unwrap(), m as u64);
        Ok(SplittingField { base: base.clone(), extension, degree: d, exponent: m, embedding, theta })
    }

    /// The field embedding of the base into the extension.
    pub fn embed(&self, c: Fe) -> Fe {
        let ext = &self.extension;
        match self.embedding {
            None => ext.from_int(self.base.prime_value(c).expect("prime field element") as i64),
            Some(img) if self.degree == 1 => {
                debug_assert_eq!(img, self.base.generator().unwrap());
                c
            }
            Some(img) => self
                .base
                .coeffs(c)
                .iter()
                .rev()
                .fold(Fe::ZERO, |acc, &ci| ext.add(ext.mul(acc, img), ext.from_int(ci as i64))),
        }
    }

    /// Inverse of [`Self::embed`] on its image.
    pub fn pull_back(&self, c: Fe) -> Option<Fe> {
        if self.degree == 1 {
            return Some(c);
        }
        self.base.elements().find(|&x| self.embed(x) == c)
    }

    /// A primitive `n`-th root of unity for `n` dividing the exponent.
    pub fn root_of_unity(&self, n: usize) -> Fe {
        assert_eq!(self.exponent % n, 0, "{n} does not divide the exponent");
        self.extension.pow(self.theta, (self.exponent / n) as u64)
    }
}

/// Coordinate vectors `c (1, g^(n-1), g^(n-2), ..., g)` of the primitive
/// idempotents of the cyclic group algebra of order `n`, one per root `g`
/// in `roots` (a listing of all `n`-th roots of unity), with `c = 1/n`.
pub fn cyclic_primitive_idempotents(n: usize, field: &Field, roots: &[Fe]) -> Result<Vec<Vec<Fe>>> {
    if roots.len() != n {
        return Err(Error::BadRootCount(format!("{} roots given for a cyclic factor of order {n}", roots.len())));
    }
    for (i, &g) in roots.iter().enumerate() {
        if field.pow(g, n as u64) != Fe::ONE {
            return Err(Error::BadRootCount(format!("{} is not a {n}-th root of unity", field.format(g))));
        }
        if roots[..i].contains(&g) {
            return Err(Error::BadRootCount(format!("{} is listed twice", field.format(g))));
        }
    }
    let c = field.inv(field.from_int(n as i64)).map_err(|_| Error::BadRootCount(format!("{n} is zero in the field")))?;
    Ok(roots
        .iter()
        .map(|&g| (0..n).map(|i| field.mul(c, field.pow(g, ((n - i) % n) as u64))).collect())
        .collect())
}

/// The matrix `A` whose columns are the primitive idempotents of the
/// extended algebra, and its inverse `D`.
#[derive(Clone, Debug)]
pub struct Indicator {
    pub splitting: SplittingField,
    pub base_algebra: GroupAlgebra,
    pub extended_algebra: GroupAlgebra,
    /// Per cyclic factor, the listing of roots of unity used.
    pub orderings: Vec<Vec<Fe>>,
    pub a: Matrix,
    pub d: Matrix,
}

impl Indicator {
    /// `orderings` lists, for each cyclic factor, all roots of unity of its
    /// order; by default the powers `1, g, g^2, ...` of the canonical root.
    pub fn new(algebra: &GroupAlgebra, splitting: SplittingField, orderings: Option<Vec<Vec<Fe>>>) -> Result<Indicator> {
        let group = algebra.group();
        let dec = group.cyclic_decomposition().ok_or_else(|| {
            Error::NotApplicable("the indicator needs a group built from cyclic factors".into())
        })?;
        let ext = splitting.extension.clone();
        let orderings = match orderings {
            Some(o) => {
                if o.len() != dec.orders.len() {
                    return Err(Error::BadRootCount(format!(
                        "{} orderings given for {} cyclic factors",
                        o.len(),
                        dec.orders.len()
                    )));
                }
                o
            }
            None => dec
                .orders
                .iter()
                .map(|&n| {
                    let g = splitting.root_of_unity(n);
                    (0..n).map(|i| ext.pow(g, i as u64)).collect()
                })
                .collect(),
        };
        let vectors = dec
            .orders
            .iter()
            .zip(&orderings)
            .map(|(&n, roots)| cyclic_primitive_idempotents(n, &ext, roots))
            .collect::<Result<Vec<_>>>()?;
        let size = group.order();
        let mut a = Matrix::zeros(&ext, size, size);
        for col in 0..size {
            // mixed-radix digits of the column, first factor slowest
            let mut digits = vec![0; dec.orders.len()];
            let mut rest = col;
            for (i, &n) in dec.orders.iter().enumerate().rev() {
                digits[i] = rest % n;
                rest /= n;
            }
            for g in 0..size {
                let v = digits
                    .iter()
                    .enumerate()
                    .fold(Fe::ONE, |acc, (i, &j)| ext.mul(acc, vectors[i][j][dec.exponents[g][i]]));
                a.set(g, col, v);
            }
        }
        let d = a.invert().expect("primitive idempotents form a basis");
        let extended_algebra = GroupAlgebra::new(&ext, group);
        let ind = Indicator { splitting, base_algebra: algebra.clone(), extended_algebra, orderings, a, d };
        ind.check_idempotents();
        Ok(ind)
    }

    fn check_idempotents(&self) {
        let cols = self.primitive_idempotents();
        let sum = cols.iter().fold(self.extended_algebra.zero(), |acc, c| &acc + c);
        assert_eq!(sum, self.extended_algebra.one(), "primitive idempotents must sum to 1");
        if cols.len() <= 64 {
            for (i, x) in cols.iter().enumerate() {
                assert!(x.is_idempotent(), "column {i} is not idempotent");
                for y in &cols[i + 1..] {
                    assert!((x * y).is_zero(), "primitive idempotents must be orthogonal");
                }
            }
        }
    }

    /// Columns of `A` as elements of the extended algebra.
    pub fn primitive_idempotents(&self) -> Vec<AlgebraElement> {
        (0..self.a.cols())
            .map(|j| self.extended_algebra.element(self.a.column(j)).expect("column length"))
            .collect()
    }

    /// `D` applied to the embedded coefficients of a base-field element.
    pub fn transform(&self, e: &AlgebraElement) -> Result<Vec<Fe>> {
        if e.algebra() != &self.base_algebra {
            return Err(Error::MixedAlgebras);
        }
        let v: Vec<Fe> = e.coeffs().iter().map(|&c| self.splitting.embed(c)).collect();
        Ok(self.d.mul_vec(&v))
    }

    /// Groups the primitive idempotents into orbits of the coefficientwise
    /// Frobenius `c -> c^q`, and returns each orbit with its sum, which lies
    /// in the base algebra.
    pub fn frobenius_orbits(&self) -> Vec<(Vec<usize>, AlgebraElement)> {
        let ext = &self.splitting.extension;
        let q = self.splitting.base.q();
        let cols = self.primitive_idempotents();
        let mut seen = vec![false; cols.len()];
        let mut out = Vec::new();
        for start in 0..cols.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = cols[start].clone();
            loop {
                let j = cols.iter().position(|c| c == &cur).expect("Frobenius permutes the primitive idempotents");
                if seen[j] {
                    break;
                }
                seen[j] = true;
                orbit.push(j);
                cur = self
                    .extended_algebra
                    .element(cur.coeffs().iter().map(|&c| ext.pow(c, q)).collect())
                    .unwrap();
            }
            let sum = orbit.iter().fold(self.extended_algebra.zero(), |acc, &j| &acc + &cols[j]);
            let base: Vec<Fe> = sum
                .coeffs()
                .iter()
                .map(|&c| self.splitting.pull_back(c).expect("orbit sums descend to the base field"))
                .collect();
            out.push((orbit, self.base_algebra.element(base).unwrap()));
        }
        out
    }

    pub fn orderings_as_text(&self) -> Vec<Vec<String>> {
        let ext = &self.splitting.extension;
        self.orderings.iter().map(|o| o.iter().map(|&g| ext.format(g)).collect()).collect()
    }
}

/// `wt(D(e))` and `D(e)` for an idempotent `e` of the base algebra.
pub fn dimension_via_indicator(ind: &Indicator, e: &AlgebraElement) -> Result<(usize, Vec<Fe>)> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let image = ind.transform(e)?;
    Ok((image.iter().filter(|c| !c.is_zero()).count(), image))
}

/// Parses one ordering per cyclic factor from `"1,2;1,2,a^2,a^6"`.
pub fn parse_orderings(field: &Field, text: &str) -> Result<Vec<Vec<Fe>>> {
    text.split(';')
        .map(|part| part.split(',').map(|lit| field.parse_literal(lit)).collect::<Result<Vec<_>>>())
        .collect()
}
