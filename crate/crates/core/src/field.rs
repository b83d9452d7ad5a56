//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! An extension field is GF(p)[a]/(modulus) for a caller-chosen monic
//! irreducible modulus, so a specific root `a` of a specific polynomial can be
//! pinned down. Elements are reduced coefficient vectors (low degree first)
//! packed base `p` into a `u32`; no log or multiplication tables are built.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Ring};
use crate::poly::Polynomial;

/// Upper limit (exclusive) on the field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 31;

const MAX_DEGREE: usize = 31;

/// An element of some [`Field`]: the coefficient vector of its residue
/// modulo the field's modulus, packed base `p` (constant term least
/// significant).
///
/// The numeric order of the packing is the order used whenever the library
/// needs a deterministic "smallest" element: it compares coefficient
/// vectors starting from the highest degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed representation, in `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }
}

/// The data defining a finite field: its order `p^k` and the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    /// Monic modulus, low degree first, `k + 1` entries. For prime fields
    /// this is the polynomial `x`.
    modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

#[derive(Debug)]
struct Inner {
    spec: FieldSpec,
    q: u64,
    symbol: String,
}

/// Handle to a validated finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            let m = self.modulus_poly();
            write!(f, "GF({}^{}) = GF({})[{}]/({})", self.p(), self.k(), self.p(), self.symbol(), m.to_string_high_first())
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p >= MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, k: 1 });
        }
        Ok(Field::unchecked(p, 1, vec![0, 1]))
    }

    /// GF(p^k). `modulus` (monic, low degree first, `k + 1` entries) is
    /// verified irreducible; when absent the smallest monic irreducible of
    /// degree `k` is used.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if k == 0 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let prime = Field::prime(p)?;
        if (k as usize) > MAX_DEGREE || p.checked_pow(k).is_none_or(|q| q >= MAX_FIELD_ORDER) {
            return Err(Error::FieldTooLarge { p, k });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected degree {k}, got degree {}",
                        m.len().saturating_sub(1)
                    )));
                }
                let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                if m[k as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if k > 1 {
                    let poly = Polynomial::from_ints(&prime, &m);
                    if let Some(factor) = poly.find_nontrivial_factor() {
                        return Err(Error::ReducibleModulus { factor: factor.to_string() });
                    }
                }
                m
            }
            None if k == 1 => vec![0, 1],
            None => default_modulus(&prime, k),
        };
        if k == 1 {
            return Ok(prime);
        }
        Ok(Field::unchecked(p, k, modulus))
    }

    /// GF(p^k) from a modulus polynomial over GF(p); the degree is taken
    /// from the polynomial.
    pub fn with_modulus(modulus: &Polynomial) -> Result<Field> {
        let base = modulus.field();
        if base.k() != 1 {
            return Err(Error::InvalidModulus("modulus must have prime-field coefficients".into()));
        }
        let deg = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Err(Error::InvalidModulus("modulus must have positive degree".into()));
        }
        let ints: Vec<u64> = modulus.coeffs().iter().map(|c| c.0 as u64).collect();
        if deg == 1 {
            if ints[1] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            return Ok(base.clone());
        }
        Field::new(base.p(), deg as u32, Some(&ints))
    }

    fn unchecked(p: u64, k: u32, modulus: Vec<u64>) -> Field {
        Field(Arc::new(Inner { q: p.pow(k), spec: FieldSpec { p, k, modulus }, symbol: "a".into() }))
    }

    /// Same field, printed and parsed with a different name for the
    /// generator (default `a`).
    pub fn with_symbol(&self, symbol: &str) -> Field {
        Field(Arc::new(Inner { spec: self.0.spec.clone(), q: self.0.q, symbol: symbol.to_string() }))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u64 {
        self.0.spec.p
    }

    pub fn k(&self) -> u32 {
        self.0.spec.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn is_prime_field(&self) -> bool {
        self.k() == 1
    }

    /// The modulus as a polynomial over GF(p).
    pub fn modulus_poly(&self) -> Polynomial {
        let prime = if self.k() == 1 { self.clone() } else { Field::unchecked(self.p(), 1, vec![0, 1]) };
        Polynomial::from_ints(&prime, &self.0.spec.modulus)
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The class of `a` (a root of the modulus); `None` for prime fields.
    pub fn generator(&self) -> Option<Fe> {
        (self.k() > 1).then_some(Fe(self.p() as u32))
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p() as i64) as u32)
    }

    /// Element with the given coefficients (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() > self.k() as usize {
            return Err(Error::InvalidModulus(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.k()
            )));
        }
        let p = self.p();
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * p + c % p;
        }
        Ok(Fe(v as u32))
    }

    /// Element with packed index `i` (`0 <= i < q`).
    pub fn element(&self, i: u64) -> Option<Fe> {
        (i < self.q()).then_some(Fe(i as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q() as u32).map(Fe)
    }

    /// Coefficients of `a`, low degree first, exactly `k` entries.
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let mut buf = [0u64; MAX_DEGREE];
        self.unpack(a, &mut buf);
        buf[..self.k() as usize].to_vec()
    }

    /// The integer `0..p` when `a` lies in the prime subfield.
    pub fn prime_value(&self, a: Fe) -> Option<u64> {
        ((a.0 as u64) < self.p()).then_some(a.0 as u64)
    }

    fn unpack(&self, a: Fe, out: &mut [u64; MAX_DEGREE]) {
        let p = self.p();
        let mut v = a.0 as u64;
        for slot in out.iter_mut().take(self.k() as usize) {
            *slot = v % p;
            v /= p;
        }
    }

    fn pack(&self, digits: &[u64]) -> Fe {
        let p = self.p();
        let mut v = 0u64;
        for &d in digits[..self.k() as usize].iter().rev() {
            v = v * p + d;
        }
        Fe(v as u32)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        if self.k() == 1 {
            return Fe(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        for i in 0..self.k() as usize {
            x[i] = (x[i] + y[i]) % p;
        }
        self.pack(&x)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p();
        if self.k() == 1 {
            return Fe(((p - a.0 as u64) % p) as u32);
        }
        if p == 2 {
            return a;
        }
        let mut x = [0u64; MAX_DEGREE];
        self.unpack(a, &mut x);
        for d in x.iter_mut().take(self.k() as usize) {
            *d = (p - *d) % p;
        }
        self.pack(&x)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        if self.k() == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let k = self.k() as usize;
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        let m = &self.0.spec.modulus;
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..k {
                let t = c * m[i] % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - t) % p;
            }
        }
        self.pack(&prod)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `a^n` for a possibly negative exponent.
    pub fn pow_signed(&self, a: Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The Frobenius automorphism `a -> a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p())
    }

    /// Least `t >= 1` with `a^t = 1`.
    pub fn multiplicative_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.q() - 1;
        for r in prime_factors(order) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == Fe::ONE {
                order /= r;
            }
        }
        Ok(order)
    }

    /// Smallest element (packed order) of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Fe {
        let q1 = self.q() - 1;
        self.elements()
            .skip(1)
            .find(|&a| self.multiplicative_order(a).ok() == Some(q1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Parses a field literal: an integer, or an expression in the field
    /// symbol such as `2*a+1` or `a^6`.
    pub fn parse_literal(&self, text: &str) -> Result<Fe> {
        let e = expr::parse(text)?;
        expr::eval(&e, &LiteralRing(self))
    }

    pub(crate) fn literal_ring(&self) -> LiteralRing<'_> {
        LiteralRing(self)
    }

    /// Canonical literal text: an integer for prime fields, otherwise a
    /// polynomial in the field symbol, highest degree first (`2*a+1`).
    pub fn format(&self, a: Fe) -> String {
        if self.k() == 1 {
            return a.0.to_string();
        }
        if a.is_zero() {
            return "0".into();
        }
        let c = self.coeffs(a);
        let s = self.symbol();
        let mut terms = Vec::new();
        for (d, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => s.to_string(),
                _ => format!("{s}^{d}"),
            };
            terms.push(match (ci, d) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}*{mono}"),
            });
        }
        terms.join("+")
    }

    /// Formats `a` so it can be used as a factor in a product.
    pub(crate) fn format_factor(&self, a: Fe) -> String {
        let s = self.format(a);
        if s.contains('+') {
            format!("({s})")
        } else {
            s
        }
    }
}

fn default_modulus(prime: &Field, k: u32) -> Vec<u64> {
    let p = prime.p();
    let count = p.pow(k);
    for v in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut x = v;
        for _ in 0..k {
            coeffs.push(x % p);
            x /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let poly = Polynomial::from_ints(prime, &coeffs);
        if poly.is_irreducible() {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

pub(crate) struct LiteralRing<'a>(pub(crate) &'a Field);

impl Ring for LiteralRing<'_> {
    type V = Fe;

    fn int(&self, n: u64, _: usize) -> Result<Fe> {
        Ok(Fe((n % self.0.p()) as u32))
    }

    fn sym(&self, name: &str, pos: usize) -> Result<Fe> {
        if name == self.0.symbol() {
            self.0
                .generator()
                .ok_or_else(|| Error::parse(pos, format!("`{name}` is undefined in the prime field GF({})", self.0.p())))
        } else {
            Err(Error::parse(pos, format!("unknown symbol `{name}` in field literal")))
        }
    }

    fn add(&self, a: Fe, b: Fe, _: usize) -> Result<Fe> {
        Ok(self.0.add(a, b))
    }

    fn neg(&self, a: Fe, _: usize) -> Result<Fe> {
        Ok(self.0.neg(a))
    }

    fn mul(&self, a: Fe, b: Fe, _: usize) -> Result<Fe> {
        Ok(self.0.mul(a, b))
    }

    fn one(&self) -> Fe {
        Fe::ONE
    }

    fn pow(&self, base: &Expr, exp: i64, pos: usize) -> Result<Fe> {
        let b = expr::eval(base, self)?;
        self.0.pow_signed(b, exp).map_err(|_| Error::parse(pos, "zero raised to a negative power"))
    }
}
