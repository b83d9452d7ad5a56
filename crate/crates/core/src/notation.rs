//! Text forms for fields and groups.
//!
//! Fields: `gf:P`, `gf:P^K` (default modulus) or `gf:P^K:MODULUS`, where the
//! modulus is either a polynomial in `x` or a coefficient list such as
//! `[2,2,1]` (lowest degree first).
//!
//! Groups: `cyclic:N`, `dihedral:M`, `quaternion8`,
//! `perm:[a=(1,2,3),b=(1,2)]`, `product:A,B` (wrap a nested product in
//! parentheses), each optionally followed by `;order=[w1,w2,...]`.

use crate::error::{Error, Result};
use crate::expr::split_top_level;
use crate::field::Field;
use crate::group::{Group, DEFAULT_CLOSURE_CAP};
use crate::poly::Polynomial;

pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    let body = t
        .strip_prefix("gf:")
        .or_else(|| t.strip_prefix("GF:"))
        .ok_or_else(|| Error::parse(0, "field spec must start with 'gf:'"))?;
    let (size, modulus) = match body.split_once(':') {
        Some((s, m)) => (s, Some(m.trim())),
        None => (body, None),
    };
    let (p_text, k_text) = size.split_once('^').unwrap_or((size, "1"));
    let p = parse_number(p_text, 3)?;
    let k = parse_number(k_text, 3 + p_text.len() + 1)? as u32;
    let Some(m) = modulus else {
        return Field::new(p, k, None);
    };
    let offset = 3 + size.len() + 1;
    let coeffs = parse_modulus(p, m).map_err(|e| shift(e, offset))?;
    if coeffs.len() != k as usize + 1 {
        return Err(Error::parse(offset, format!("modulus of GF({p}^{k}) must have degree {k}")));
    }
    Field::new(p, k, Some(&coeffs))
}

/// A polynomial over GF(p) given either in `x` or as a coefficient list
/// `[c0,c1,...]`; returns the coefficients lowest degree first.
pub fn parse_modulus(p: u64, text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if let Some(list) = text.strip_prefix('[') {
        let list = list
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(text.len(), "expected ']'"))?;
        return split_top_level(list, ',').into_iter().map(|c| parse_number(c, 0)).collect();
    }
    let poly = Polynomial::parse(&Field::prime(p)?, text)?;
    let coeffs: Option<Vec<u64>> = poly.coeffs().iter().map(|&c| poly.field().prime_value(c)).collect();
    Ok(coeffs.expect("prime field coefficients"))
}

pub fn parse_group(text: &str) -> Result<Group> {
    let t = text.trim();
    let (base, order) = match split_top_level(t, ';').as_slice() {
        [base] => (*base, None),
        [base, rest] => {
            let list = rest
                .trim()
                .strip_prefix("order=")
                .ok_or_else(|| Error::parse(base.len() + 1, "expected 'order=' after ';'"))?;
            (*base, Some(list))
        }
        _ => return Err(Error::parse(0, "at most one ';order=' clause is allowed")),
    };
    let group = parse_base(base.trim(), 0)?;
    match order {
        None => Ok(group),
        Some(list) => {
            let inner = list.trim();
            let inner = inner.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(inner);
            let words: Vec<&str> = split_top_level(inner, ',').into_iter().map(str::trim).collect();
            group.with_ordering(&words)
        }
    }
}

fn parse_base(text: &str, pos: usize) -> Result<Group> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return parse_base(inner, pos + 1);
    }
    let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
    let arg_pos = pos + kind.len() + 1;
    match kind.trim() {
        "cyclic" => Group::cyclic(parse_number(arg, arg_pos)? as usize),
        "dihedral" => Group::dihedral(parse_number(arg, arg_pos)? as usize),
        "quaternion8" | "q8" => Group::quaternion8(),
        "perm" => {
            let inner = arg
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::parse(arg_pos, "expected perm:[...]"))?;
            let gens: Vec<(Option<String>, String)> = split_top_level(inner, ',')
                .into_iter()
                .map(|g| match g.split_once('=') {
                    Some((name, cycles)) => (Some(name.trim().to_string()), cycles.trim().to_string()),
                    None => (None, g.trim().to_string()),
                })
                .collect();
            Group::from_permutations(&gens, DEFAULT_CLOSURE_CAP)
        }
        "product" => match split_top_level(arg, ',').as_slice() {
            [left, right] => {
                let l = parse_base(left, arg_pos)?;
                let r = parse_base(right, arg_pos + left.len() + 1)?;
                Group::direct_product(&l, &r)
            }
            _ => Err(Error::parse(arg_pos, "product takes two factors; parenthesize nested products")),
        },
        other => Err(Error::parse(pos, format!("unknown group kind '{other}'"))),
    }
}

fn parse_number(text: &str, pos: usize) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| Error::parse(pos, format!("expected a number, found '{}'", text.trim())))
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        let f = parse_field("gf:3^2:[2,2,1]").unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f, parse_field("gf:3^2:x^2+2*x+2").unwrap());
        assert_eq!(parse_field("gf:2").unwrap().q(), 2);
        assert_eq!(parse_field("gf:3^4").unwrap().q(), 81);
        assert!(matches!(parse_field("gf:3^2:[1,1,1]"), Err(Error::ReducibleModulus { .. })));
        assert!(matches!(parse_field("gf:4"), Err(Error::NonPrimeCharacteristic(4))));
        assert!(parse_field("gf:3^2:[1,1]").unwrap_err().is_parse());
        assert!(parse_field("q:3").unwrap_err().is_parse());
    }

    #[test]
    fn groups() {
        assert_eq!(parse_group("cyclic:5").unwrap().order(), 5);
        assert_eq!(parse_group("dihedral:5").unwrap().order(), 10);
        assert_eq!(parse_group("quaternion8").unwrap().order(), 8);
        let p = parse_group("product:cyclic:2,cyclic:4").unwrap();
        assert_eq!(p.labels()[1], "x2");
        let nested = parse_group("product:(product:cyclic:2,cyclic:2),cyclic:3").unwrap();
        assert_eq!(nested.order(), 12);
        let a4 = parse_group("perm:[(1,2,3),(1,2)(3,4)]").unwrap();
        assert_eq!(a4.order(), 12);
        let s3 = parse_group("perm:[a=(1,2,3),b=(1,2)];order=[1,b,a,a^2,b*a^2,b*a]").unwrap();
        assert_eq!(s3.labels()[4], "b*a^2");
        assert!(parse_group("torus:3").unwrap_err().is_parse());
        assert!(parse_group("cyclic:3;order=[1,x]").unwrap_err().is_parse());
        assert!(parse_group("cyclic:3;sort=[1,x,x^2]").unwrap_err().is_parse());
    }
}
