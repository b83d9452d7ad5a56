//! Finite groups stored as multiplication tables.
//!
//! The element ordering of a [`Group`] is the coordinate basis of the group
//! algebra, so every constructor fixes it deterministically and
//! [`Group::with_ordering`] lets callers replace it with a listing of words.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Ring};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Exponent coordinates of every element with respect to a decomposition of
/// the group as a direct product of cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub orders: Vec<usize>,
    /// `exponents[g][i]` is the exponent of factor `i` in element `g`.
    pub exponents: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<(String, usize)>,
    cyclic: Option<CyclicDecomposition>,
}

/// A word in the generators, as (generator, exponent) runs.
type Word = Vec<(usize, u32)>;

fn render_word(word: &Word, names: &[String]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{e}", names[g]) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Breadth-first closure from the identity, multiplying on the right by
/// each generator in order.
fn closure<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    names: &[String],
    mul: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<Group> {
    let mut elems = vec![identity.clone()];
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let prod = mul(&elems[i], g);
            if index.contains_key(&prod) {
                continue;
            }
            if elems.len() == cap {
                return Err(Error::ClosureCapExceeded(cap));
            }
            let mut w = words[i].clone();
            match w.last_mut() {
                Some((last, e)) if *last == gi => *e += 1,
                _ => w.push((gi, 1)),
            }
            index.insert(prod.clone(), elems.len());
            queue.push_back(elems.len());
            elems.push(prod);
            words.push(w);
        }
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[&mul(a, b)] as u32);
        }
    }
    let labels = words.iter().map(|w| render_word(w, names)).collect();
    let generators = names.iter().zip(gens).map(|(s, g)| (s.clone(), index[g])).collect();
    Group::from_parts(table, labels, generators, None)
}

fn default_generator_name(i: usize) -> String {
    const NAMES: [&str; 5] = ["u", "v", "w", "s", "t"];
    NAMES.get(i).map_or_else(|| format!("g{}", i + 1), |s| s.to_string())
}

/// A permutation of `{1, ..., degree}` stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Perm(Vec<usize>);

impl Perm {
    /// `self` first, then `other`.
    fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }
}

/// Parses cycle notation such as `(1,2,3)(4,5)` or `()`.
fn parse_cycles(text: &str, offset: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    let base = offset + (text.len() - text.trim_start().len());
    let mut consumed = 0;
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::parse(base + consumed, "expected `(` to start a cycle"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse(base + consumed, "unclosed cycle"))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        if !body.trim().is_empty() {
            for part in body.split(',') {
                let pt: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(base + consumed + 1, format!("bad point `{}` in cycle", part.trim())))?;
                if pt == 0 {
                    return Err(Error::parse(base + consumed + 1, "cycle points start at 1"));
                }
                if cycle.contains(&pt) {
                    return Err(Error::parse(base + consumed + 1, format!("point {pt} repeated in a cycle")));
                }
                cycle.push(pt);
            }
        }
        cycles.push(cycle);
        consumed += close + 1;
        let next = rest[close + 1..].trim_start();
        consumed += rest[close + 1..].len() - next.len();
        rest = next;
    }
    if cycles.is_empty() {
        return Err(Error::parse(base, "empty permutation"));
    }
    Ok(cycles)
}

fn cycles_to_perm(cycles: &[Vec<usize>], degree: usize) -> Perm {
    let mut img: Vec<usize> = (0..degree).collect();
    // cycles are applied left to right, each as a map on points
    for c in cycles {
        let mut step: Vec<usize> = (0..degree).collect();
        for (i, &pt) in c.iter().enumerate() {
            step[pt - 1] = c[(i + 1) % c.len()] - 1;
        }
        img = img.iter().map(|&x| step[x]).collect();
    }
    Perm(img)
}

impl Group {
    fn from_parts(
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<(String, usize)>,
        cyclic: Option<CyclicDecomposition>,
    ) -> Result<Group> {
        let n = labels.len();
        debug_assert_eq!(table.len(), n * n);
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] as usize == j && table[j * n + e] as usize == j))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            inverses[i] = (0..n)
                .find(|&j| table[i * n + j] as usize == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {} has no inverse", labels[i])))?;
        }
        let g = Group { order: n, table, identity, inverses, labels, generators, cyclic };
        g.validate()?;
        Ok(g)
    }

    /// Latin-square check always; associativity exhaustively up to order 64.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for i in 0..n {
            row.iter_mut().for_each(|s| *s = false);
            col.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let (r, c) = (self.mul(i, j), self.mul(j, i));
                if r >= n || row[r] || c >= n || col[c] {
                    return Err(Error::InvalidGroup(format!("table row or column {i} is not a permutation")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidGroup("multiplication is not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cyclic group of order `n` generated by `x`, listed as `1, x, x^2, ...`.
    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Group::cyclic_named(n, "x")
    }

    fn cyclic_named(n: usize, name: &str) -> Result<Group> {
        let table = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32)).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => name.to_string(),
                _ => format!("{name}^{i}"),
            })
            .collect();
        let generators = vec![(name.to_string(), if n == 1 { 0 } else { 1 })];
        let cyclic = CyclicDecomposition { orders: vec![n], exponents: (0..n).map(|i| vec![i]).collect() };
        Group::from_parts(table, labels, generators, Some(cyclic))
    }

    /// Dihedral group of order `2m` with `u^2 = v^m = 1` and `u v u^-1 = v^-1`.
    pub fn dihedral(m: usize) -> Result<Group> {
        if m == 0 {
            return Err(Error::InvalidGroup("dihedral group needs m >= 1".into()));
        }
        // (i, j) stands for v^i u^j
        let mul = |a: &(usize, usize), b: &(usize, usize)| {
            let k = if a.1 == 0 { b.0 } else { (m - b.0) % m };
            ((a.0 + k) % m, (a.1 + b.1) % 2)
        };
        let names = vec!["u".to_string(), "v".to_string()];
        closure((0, 0), &[(0, 1), (1 % m, 0)], &names, mul, DEFAULT_CLOSURE_CAP)
    }

    /// Quaternion group of order 8 with `u = i` and `v = j`.
    pub fn quaternion8() -> Result<Group> {
        // units 1, i, j, k as 0..4; UNIT[a][b] = (sign flip, unit)
        const UNIT: [[(bool, u8); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mul = |a: &(bool, u8), b: &(bool, u8)| {
            let (flip, unit) = UNIT[a.1 as usize][b.1 as usize];
            (a.0 ^ b.0 ^ flip, unit)
        };
        let names = vec!["u".to_string(), "v".to_string()];
        closure((false, 0), &[(false, 1), (false, 2)], &names, mul, DEFAULT_CLOSURE_CAP)
    }

    /// Group generated by permutations in cycle notation. Optional names
    /// default to `u, v, w, ...`. The product `g*h` applies `g` first.
    pub fn from_permutations(gens: &[(Option<String>, String)], cap: usize) -> Result<Group> {
        if gens.is_empty() {
            return Err(Error::InvalidGroup("no generating permutations".into()));
        }
        let mut parsed = Vec::new();
        for (_, text) in gens {
            parsed.push(parse_cycles(text, 0)?);
        }
        let degree = parsed.iter().flatten().flatten().copied().max().unwrap_or(1);
        let perms: Vec<Perm> = parsed.iter().map(|c| cycles_to_perm(c, degree)).collect();
        let names: Vec<String> = gens
            .iter()
            .enumerate()
            .map(|(i, (n, _))| n.clone().unwrap_or_else(|| default_generator_name(i)))
            .collect();
        check_names(&names)?;
        closure(Perm((0..degree).collect()), &perms, &names, |a, b| a.then(b), cap)
    }

    /// Direct product, listed as pairs with the left factor varying slowest.
    /// Generators that share a name are suffixed with their factor number.
    pub fn direct_product(left: &Group, right: &Group) -> Result<Group> {
        let (n1, n2) = (left.order, right.order);
        let clash = |name: &str, other: &Group| other.generators.iter().any(|(o, _)| o == name);
        let rename = |g: &Group, other: &Group, suffix: usize| -> HashMap<String, String> {
            g.generators
                .iter()
                .map(|(s, _)| {
                    let new = if clash(s, other) { format!("{s}{suffix}") } else { s.clone() };
                    (s.clone(), new)
                })
                .collect()
        };
        let lmap = rename(left, right, 1);
        let rmap = rename(right, left, 2);
        let mut table = Vec::with_capacity(n1 * n1 * n2 * n2);
        for a in 0..n1 * n2 {
            for b in 0..n1 * n2 {
                let l = left.mul(a / n2, b / n2);
                let r = right.mul(a % n2, b % n2);
                table.push((l * n2 + r) as u32);
            }
        }
        let mut labels = Vec::with_capacity(n1 * n2);
        for a in 0..n1 {
            for b in 0..n2 {
                let parts: Vec<String> = [
                    (a != left.identity).then(|| rename_idents(&left.labels[a], &lmap)),
                    (b != right.identity).then(|| rename_idents(&right.labels[b], &rmap)),
                ]
                .into_iter()
                .flatten()
                .collect();
                labels.push(if parts.is_empty() { "1".into() } else { parts.join("*") });
            }
        }
        let mut generators: Vec<(String, usize)> = left
            .generators
            .iter()
            .map(|(s, i)| (lmap[s].clone(), i * n2 + right.identity))
            .collect();
        generators.extend(right.generators.iter().map(|(s, i)| (rmap[s].clone(), left.identity * n2 + i)));
        check_names(&generators.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>())?;
        let cyclic = match (&left.cyclic, &right.cyclic) {
            (Some(l), Some(r)) => Some(CyclicDecomposition {
                orders: l.orders.iter().chain(&r.orders).copied().collect(),
                exponents: (0..n1 * n2)
                    .map(|g| l.exponents[g / n2].iter().chain(&r.exponents[g % n2]).copied().collect())
                    .collect(),
            }),
            _ => None,
        };
        Group::from_parts(table, labels, generators, cyclic)
    }

    /// Same group with its elements listed in the order of `words`, which
    /// must name every element exactly once. The words become the labels.
    pub fn with_ordering(&self, words: &[&str]) -> Result<Group> {
        if words.len() != self.order {
            return Err(Error::BadOverride(format!(
                "ordering lists {} elements but the group has {}",
                words.len(),
                self.order
            )));
        }
        let mut perm = Vec::with_capacity(self.order);
        let mut used: Vec<Option<usize>> = vec![None; self.order];
        for (pos, w) in words.iter().enumerate() {
            let g = self.parse_word(w).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::BadOverride(format!("`{}`: {msg}", w.trim())),
                Error::UnknownGenerator(s) => Error::BadOverride(format!("`{}`: unknown generator `{s}`", w.trim())),
                other => other,
            })?;
            if let Some(prev) = used[g] {
                return Err(Error::BadOverride(format!(
                    "`{}` and `{}` are the same element",
                    words[prev].trim(),
                    w.trim()
                )));
            }
            used[g] = Some(pos);
            perm.push(g);
        }
        let mut pos_of = vec![0; self.order];
        for (new, &old) in perm.iter().enumerate() {
            pos_of[old] = new;
        }
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos_of[self.mul(perm[i], perm[j])] as u32;
            }
        }
        let labels = words.iter().map(|w| w.split_whitespace().collect::<String>()).collect();
        let generators = self.generators.iter().map(|(s, g)| (s.clone(), pos_of[*g])).collect();
        let cyclic = self.cyclic.as_ref().map(|c| CyclicDecomposition {
            orders: c.orders.clone(),
            exponents: perm.iter().map(|&old| c.exponents[old].clone()).collect(),
        });
        Group::from_parts(table, labels, generators, cyclic)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn cyclic_decomposition(&self) -> Option<&CyclicDecomposition> {
        self.cyclic.as_ref()
    }

    /// `a^e` for any integer exponent.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let ord = self.element_order(a) as i64;
        let mut e = e.rem_euclid(ord);
        let mut acc = self.identity;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    /// Largest power of `p` dividing the group order.
    pub fn p_part(&self, p: u64) -> usize {
        let mut n = self.order;
        let mut part = 1;
        while p > 1 && n.is_multiple_of(p as usize) {
            n /= p as usize;
            part *= p as usize;
        }
        part
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The map `g -> g^q` as an index permutation (a bijection whenever `q`
    /// is prime to the group order).
    pub fn power_map(&self, q: u64) -> Vec<usize> {
        (0..self.order)
            .map(|a| {
                let ord = self.element_order(a) as u64;
                self.pow(a, (q % ord) as i64)
            })
            .collect()
    }

    /// Evaluates a word such as `u^2*v*u^-1` or `1`.
    pub fn parse_word(&self, text: &str) -> Result<usize> {
        let e = expr::parse(text)?;
        expr::eval(&e, &WordRing(self))
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().find(|(s, _)| s == name).map(|(_, i)| *i)
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::InvalidGroup(format!("`{n}` is not a valid generator name")));
        }
        if names[..i].contains(n) {
            return Err(Error::InvalidGroup(format!("generator name `{n}` is used twice")));
        }
    }
    Ok(())
}

/// Renames whole identifiers inside a label.
fn rename_idents(label: &str, map: &HashMap<String, String>) -> String {
    let mut out = String::new();
    let mut ident = String::new();
    let flush = |ident: &mut String, out: &mut String| {
        if !ident.is_empty() {
            out.push_str(map.get(ident.as_str()).unwrap_or(ident));
            ident.clear();
        }
    };
    for c in label.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            if ident.is_empty() && c.is_ascii_digit() {
                out.push(c);
            } else {
                ident.push(c);
            }
        } else {
            flush(&mut ident, &mut out);
            out.push(c);
        }
    }
    flush(&mut ident, &mut out);
    out
}

struct WordRing<'a>(&'a Group);

impl Ring for WordRing<'_> {
    type V = usize;

    fn int(&self, n: u64, pos: usize) -> Result<usize> {
        if n == 1 {
            Ok(self.0.identity)
        } else {
            Err(Error::parse(pos, "the only integer allowed in a group word is 1"))
        }
    }

    fn sym(&self, name: &str, _: usize) -> Result<usize> {
        self.0.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn add(&self, _: usize, _: usize, pos: usize) -> Result<usize> {
        Err(Error::parse(pos, "sums are not allowed in a group word"))
    }

    fn neg(&self, _: usize, pos: usize) -> Result<usize> {
        Err(Error::parse(pos, "negation is not allowed in a group word"))
    }

    fn mul(&self, a: usize, b: usize, _: usize) -> Result<usize> {
        Ok(self.0.mul(a, b))
    }

    fn one(&self) -> usize {
        self.0.identity
    }

    fn pow(&self, base: &Expr, exp: i64, _: usize) -> Result<usize> {
        let b = expr::eval(base, self)?;
        Ok(self.0.pow(b, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn a4() -> Group {
        Group::from_permutations(&[(None, "(1,2,3)".into()), (None, "(1,2)(3,4)".into())], DEFAULT_CLOSURE_CAP)
            .unwrap()
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(Group::cyclic(1).unwrap().order(), 1);
        assert_eq!(Group::dihedral(5).unwrap().order(), 10);
        assert_eq!(Group::quaternion8().unwrap().order(), 8);
        assert_eq!(a4().order(), 12);
        assert!(!a4().is_abelian());
        assert!(!Group::quaternion8().unwrap().is_abelian());
        assert_eq!(Group::cyclic(8).unwrap().exponent(), 8);
        assert_eq!(a4().p_part(2), 4);
        assert_eq!(a4().p_part(3), 3);
        assert_eq!(a4().p_part(5), 1);
    }

    #[test]
    fn bfs_labels() {
        let g = Group::dihedral(3).unwrap();
        assert_eq!(g.labels(), ["1", "u", "v", "u*v", "v*u", "v^2"]);
        assert_eq!(Group::cyclic(4).unwrap().labels(), ["1", "x", "x^2", "x^3"]);
    }

    #[test]
    fn dihedral_relations() {
        let g = Group::dihedral(5).unwrap();
        let u = g.parse_word("u").unwrap();
        let v = g.parse_word("v").unwrap();
        assert_eq!(g.element_order(u), 2);
        assert_eq!(g.element_order(v), 5);
        assert_eq!(g.mul(u, v), g.mul(g.inverse(v), u));
        assert_eq!(g.parse_word("v^-1").unwrap(), g.parse_word("v^4").unwrap());
    }

    #[test]
    fn quaternion_relations() {
        let g = Group::quaternion8().unwrap();
        let u2 = g.parse_word("u^2").unwrap();
        assert_eq!(u2, g.parse_word("v^2").unwrap());
        assert_eq!(u2, g.parse_word("(u*v)^2").unwrap());
        assert_eq!(g.parse_word("v*u*v^-1").unwrap(), g.parse_word("u^-1").unwrap());
        assert_eq!(g.element_order(u2), 2);
    }

    #[test]
    fn reference_listings_are_valid_orderings() {
        let d = Group::dihedral(5)
            .unwrap()
            .with_ordering(&["1", "u", "v", "u*v^4", "v^2", "u*v", "u*v^3", "v^4", "v^3", "u*v^2"])
            .unwrap();
        assert_eq!(d.label(3), "u*v^4");
        assert_eq!(d.identity(), 0);
        let q = Group::quaternion8()
            .unwrap()
            .with_ordering(&["1", "u", "v", "u^2", "u^3*v", "u*v", "u^3", "u^2*v"])
            .unwrap();
        assert_eq!(q.order(), 8);
        let a = a4()
            .with_ordering(&[
                "1", "u", "u^2*v", "v", "u^2*v*u", "u^2", "v*u", "u*v", "u*v*u", "v*u*v", "v*u^2", "u*v*u^2",
            ])
            .unwrap();
        assert_eq!(a.order(), 12);
    }

    #[test]
    fn product_ordering_left_factor_slow() {
        let g = Group::direct_product(&Group::cyclic(2).unwrap(), &Group::cyclic(4).unwrap()).unwrap();
        assert_eq!(
            g.labels(),
            ["1", "x2", "x2^2", "x2^3", "x1", "x1*x2", "x1*x2^2", "x1*x2^3"]
        );
        let names: Vec<&str> = g.generators().iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(names, ["x1", "x2"]);
        let dec = g.cyclic_decomposition().unwrap();
        assert_eq!(dec.orders, [2, 4]);
        assert_eq!(dec.exponents[6], [1, 2]);
        // power map of cubing: orbit structure from the fixed points and swaps
        let pm = g.power_map(3);
        assert_eq!(pm, [0, 3, 2, 1, 4, 7, 6, 5]);
    }

    #[test]
    fn bad_overrides() {
        let g = Group::cyclic(3).unwrap();
        assert!(matches!(g.with_ordering(&["1", "x"]), Err(Error::BadOverride(_))));
        assert!(matches!(g.with_ordering(&["1", "x", "x^4"]), Err(Error::BadOverride(_))));
        assert!(matches!(g.with_ordering(&["1", "x", "y"]), Err(Error::BadOverride(_))));
        assert!(matches!(g.with_ordering(&["1", "x", "x+1"]), Err(Error::BadOverride(_))));
    }

    #[test]
    fn closure_cap_and_parse_errors() {
        let big = [(None, "(1,2,3,4,5,6,7,8)".to_string()), (None, "(1,2)".to_string())];
        assert_eq!(Group::from_permutations(&big, 1000), Err(Error::ClosureCapExceeded(1000)));
        assert!(matches!(
            Group::from_permutations(&[(None, "(1,2".into())], 100),
            Err(Error::Parse { .. })
        ));
        let g = Group::cyclic(3).unwrap();
        assert_eq!(g.parse_word("y"), Err(Error::UnknownGenerator("y".into())));
        assert!(matches!(g.parse_word("2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn named_permutations() {
        let s3 = Group::from_permutations(
            &[(Some("a".into()), "(1,2,3)".into()), (Some("b".into()), "(1,2)".into())],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.parse_word("b*a*b^-1").unwrap(), s3.parse_word("a^2").unwrap());
    }

    fn small_groups() -> Vec<Group> {
        let c2 = Group::cyclic(2).unwrap();
        let c4 = Group::cyclic(4).unwrap();
        vec![
            Group::cyclic(7).unwrap(),
            Group::direct_product(&c2, &c4).unwrap(),
            Group::dihedral(5).unwrap(),
            Group::quaternion8().unwrap(),
            a4(),
            Group::direct_product(&Group::dihedral(3).unwrap(), &c2).unwrap(),
        ]
    }

    #[test]
    fn structural_invariants() {
        for g in small_groups() {
            g.validate().unwrap();
            for p in [2u64, 3, 5, 7] {
                let part = g.p_part(p);
                assert_eq!(g.order() % part, 0);
                assert_ne!((g.order() / part) as u64 % p, 0);
            }
            for q in [1u64, 2, 3, 5, 9, 11] {
                let pm = g.power_map(q);
                let mut sorted = pm.clone();
                sorted.sort();
                sorted.dedup();
                let coprime = lcm(g.order(), q as usize) == g.order() * q as usize;
                if coprime {
                    assert_eq!(sorted.len(), g.order(), "power map must be a bijection");
                    if g.is_abelian() {
                        for a in 0..g.order() {
                            for b in 0..g.order() {
                                assert_eq!(pm[g.mul(a, b)], g.mul(pm[a], pm[b]));
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn words_respect_inverses(i in 0usize..6, e in -20i64..20) {
            let g = &small_groups()[i];
            for a in 0..g.order() {
                prop_assert_eq!(g.mul(g.pow(a, e), g.pow(a, -e)), g.identity());
                prop_assert_eq!(g.mul(a, g.inverse(a)), g.identity());
            }
        }
    }
}
