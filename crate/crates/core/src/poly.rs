//! Dense univariate polynomials over a [`Field`], with Euclidean algorithms
//! and complete factorization into monic irreducibles.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Ring};
use crate::field::{prime_factors, Fe, Field};

/// A polynomial with coefficients low degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[u64]) -> Polynomial {
        let c = coeffs.iter().map(|&c| field.from_int((c % field.p()) as i64)).collect();
        Polynomial::new(field, c)
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, c: Fe) -> Polynomial {
        Polynomial::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Polynomial {
        Polynomial::monomial(field, Fe::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Fe, degree: usize) -> Polynomial {
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = c;
        Polynomial::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: &Field, root: Fe) -> Polynomial {
        Polynomial::new(field, vec![field.neg(root), Fe::ONE])
    }

    /// Parses text such as `x^4*(x^2+x+1)^4` or `x^2+2*x+2`; field
    /// literals in the field symbol may appear as coefficients.
    pub fn parse(field: &Field, text: &str) -> Result<Polynomial> {
        let e = expr::parse(text)?;
        expr::eval(&e, &PolyRing(field))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fe::ONE)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    fn same_field(&self, other: &Polynomial) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: Fe) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor);
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dj));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Division that must be exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Polynomial {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(d, u, v)` with `u*self + v*other = d` and `d` the monic gcd.
    pub fn xgcd(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        self.same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
        let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        (self * &other.exact_div(&self.gcd(other))).monic()
    }

    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
            .collect();
        Polynomial::new(f, c)
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
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

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::one(&self.field).rem(m).expect("nonzero modulus");
        let mut base = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m).unwrap();
            }
        }
        acc
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Exact power of `x` dividing the polynomial.
    pub fn x_multiplicity(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().take_while(|c| c.is_zero()).count())
    }

    /// The polynomial with `x^m` removed, `m` its x-multiplicity.
    pub fn strip_x(&self) -> Polynomial {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Polynomial::new(&self.field, self.coeffs[m..].to_vec())
    }

    /// Same polynomial with coefficients mapped into another field.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Fe) -> Fe) -> Polynomial {
        Polynomial::new(target, self.coeffs.iter().map(|&c| map(c)).collect())
    }

    /// Expanded form, highest degree first (`x^2+2*x+2`).
    pub fn to_string_high_first(&self) -> String {
        let terms: Vec<String> = self.terms().into_iter().rev().collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn terms(&self) -> Vec<String> {
        let f = &self.field;
        let mut out = Vec::new();
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            out.push(match d {
                0 => f.format(c),
                _ if c == Fe::ONE => mono,
                _ => format!("{}*{mono}", f.format_factor(c)),
            });
        }
        out
    }

    fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    fn seed(&self) -> u64 {
        // FNV-1a over the field description and the coefficients.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |v: u64| {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.field.p());
        for &m in self.field.spec().modulus() {
            eat(m);
        }
        for c in &self.coeffs {
            eat(c.0 as u64);
        }
        h
    }

    /// Irreducibility over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        if n <= 4 && self.small_search_feasible(n) {
            return self.small_factor(n).is_none();
        }
        // Rabin: x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1 for primes r | n.
        let f = self.monic();
        let x = Polynomial::x(&self.field);
        let q = self.field.q();
        let frob_power = |times: usize| {
            let mut h = x.rem(&f).unwrap();
            for _ in 0..times {
                h = h.pow_mod(q, &f);
            }
            h
        };
        if frob_power(n) != x.rem(&f).unwrap() {
            return false;
        }
        prime_factors(n as u64)
            .into_iter()
            .all(|r| (&frob_power(n / r as usize) - &x).gcd(&f).is_one())
    }

    fn small_search_feasible(&self, n: usize) -> bool {
        let q = self.field.q();
        if n <= 3 {
            q <= 1 << 16
        } else {
            q <= 1 << 10
        }
    }

    /// Exhaustive search for a root, then for a monic quadratic divisor.
    fn small_factor(&self, n: usize) -> Option<Polynomial> {
        let f = &self.field;
        if let Some(r) = f.elements().find(|&r| self.eval(r).is_zero()) {
            return Some(Polynomial::linear(f, r));
        }
        if n == 4 {
            for c1 in f.elements() {
                for c0 in f.elements() {
                    let quad = Polynomial::new(f, vec![c0, c1, Fe::ONE]);
                    if quad.divides(self) {
                        return Some(quad);
                    }
                }
            }
        }
        None
    }

    /// A monic factor of degree strictly between 0 and the degree, when one
    /// exists.
    pub fn find_nontrivial_factor(&self) -> Option<Polynomial> {
        let n = self.degree()?;
        if n <= 1 {
            return None;
        }
        if n <= 4 && self.small_search_feasible(n) {
            return self.small_factor(n);
        }
        if self.is_irreducible() {
            return None;
        }
        self.factor().ok().map(|fac| fac.factors[0].0.clone())
    }

    /// Complete factorization into monic irreducibles.
    ///
    /// Squarefree decomposition, then distinct-degree, then equal-degree
    /// splitting with a generator seeded from the input, so the output is
    /// identical from run to run. Factors are ordered by degree, then by
    /// coefficients compared from the highest degree down.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = self.lead();
        let monic = self.monic();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed());
        let mut factors: Vec<(Polynomial, usize)> = Vec::new();
        for (sqf, mult) in squarefree(&monic) {
            for (block, d) in distinct_degree(&sqf) {
                for irr in equal_degree(&block, d, &mut rng) {
                    match factors.iter_mut().find(|(g, _)| *g == irr) {
                        Some(entry) => entry.1 += mult,
                        None => factors.push((irr, mult)),
                    }
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(Factorization { field: self.field.clone(), unit, factors })
    }
}

/// `f = unit * prod(g_i ^ m_i)` with distinct monic irreducible `g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub field: Field,
    pub unit: Fe,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let field = &self.field;
        self.factors
            .iter()
            .fold(Polynomial::constant(field, self.unit), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }

    /// Multiplicity of `g` (0 when absent).
    pub fn multiplicity_of(&self, g: &Polynomial) -> usize {
        self.factors.iter().find(|(h, _)| h == g).map_or(0, |(_, m)| *m)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.unit != Fe::ONE || self.factors.is_empty() {
            parts.push(self.field.format_factor(self.unit));
        }
        for (g, m) in &self.factors {
            let s = g.to_string();
            let base = if g.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s };
            parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn pth_root(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let p = field.p() as usize;
    // Inverse Frobenius on GF(p^k) is a -> a^(p^(k-1)).
    let e = field.p().pow(field.k() - 1);
    let coeffs = f.coeffs.iter().step_by(p).map(|&c| field.pow(c, e)).collect();
    Polynomial::new(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// squarefree, pairwise coprime, `f = prod g^m`.
fn squarefree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().p() as usize;
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let q = field.q();
    let x = Polynomial::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).unwrap();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
fn equal_degree(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.q();
    loop {
        let coeffs: Vec<Fe> = (0..n).map(|_| Fe(rng.random_range(0..q) as u32)).collect();
        let a = Polynomial::new(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut s = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                s = s.pow_mod(q, f);
                t = (&t * &s).rem(f).unwrap();
            }
            &t.pow_mod((q - 1) / 2, f) - &Polynomial::one(field)
        } else {
            // absolute trace a + a^2 + ... + a^(2^(kd-1))
            let rounds = field.k() as usize * d;
            let mut s = a.rem(f).unwrap();
            let mut t = s.clone();
            for _ in 1..rounds {
                s = (&s * &s).rem(f).unwrap();
                t = &t + &s;
            }
            t
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.exact_div(&g), d, rng));
            return out;
        }
    }
}

impl fmt::Display for Polynomial {
    /// Expanded form, lowest degree first (`2+2*x+x^2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.same_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f);
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, out)
    }
}

struct PolyRing<'a>(&'a Field);

impl Ring for PolyRing<'_> {
    type V = Polynomial;

    fn int(&self, n: u64, pos: usize) -> Result<Polynomial> {
        Ok(Polynomial::constant(self.0, self.0.literal_ring().int(n, pos)?))
    }

    fn sym(&self, name: &str, pos: usize) -> Result<Polynomial> {
        if name == "x" {
            Ok(Polynomial::x(self.0))
        } else {
            Ok(Polynomial::constant(self.0, self.0.literal_ring().sym(name, pos)?))
        }
    }

    fn add(&self, a: Polynomial, b: Polynomial, _: usize) -> Result<Polynomial> {
        Ok(&a + &b)
    }

    fn neg(&self, a: Polynomial, _: usize) -> Result<Polynomial> {
        Ok(-&a)
    }

    fn mul(&self, a: Polynomial, b: Polynomial, _: usize) -> Result<Polynomial> {
        Ok(&a * &b)
    }

    fn one(&self) -> Polynomial {
        Polynomial::one(self.0)
    }

    fn pow(&self, base: &Expr, exp: i64, pos: usize) -> Result<Polynomial> {
        let b = expr::eval(base, self)?;
        if exp >= 0 {
            return Ok(b.pow(exp as u64));
        }
        match b.degree() {
            Some(0) => Ok(Polynomial::constant(
                self.0,
                self.0.pow_signed(b.coeff(0), exp).map_err(|_| Error::parse(pos, "zero raised to a negative power"))?,
            )),
            _ => Err(Error::parse(pos, "negative exponent on a non-constant polynomial")),
        }
    }
}
