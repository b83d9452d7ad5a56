//! Group codes: the ideal `R*b` viewed as a linear code of length `|G|`.

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::ideal::{self, ElementAnalysis};

pub const DEFAULT_DISTANCE_CAP: u64 = 1 << 24;

/// Tag attached to statements that assume the MDS conjecture.
pub const MDS_CONJECTURE: &str = "mds_conjecture";

/// Canonical basis of `R*b`: the nonzero rows of the reduced echelon form
/// of the vectors `g*b`.
pub fn ideal_basis(b: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    b.right_regular_matrix()
        .transpose()
        .row_space_basis()
        .into_iter()
        .map(|row| b.algebra().element(row))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Distance {
    Exact { d: usize },
    /// The search stopped after `examined` nonzero codewords; `upper` is the
    /// least weight seen.
    Capped { upper: usize, examined: u64 },
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact { d } => Some(d),
            Distance::Capped { .. } => None,
        }
    }

    pub fn upper(self) -> usize {
        match self {
            Distance::Exact { d } => d,
            Distance::Capped { upper, .. } => upper,
        }
    }
}

/// Minimum Hamming weight over the nonzero codewords spanned by `basis`.
///
/// Codewords are visited in reflected mixed-radix Gray order, so each step
/// adds a multiple of a single basis vector. When `q^k - 1` exceeds `cap`,
/// only `cap` codewords are examined.
pub fn min_distance(field: &Field, basis: &[Vec<Fe>], cap: u64) -> Result<Distance> {
    let k = basis.len();
    if k == 0 {
        return Err(Error::EmptyBasis);
    }
    let len = basis[0].len();
    let q = field.q();
    let total = (q as u128).checked_pow(k as u32).map_or(u128::MAX, |t| t - 1);
    let limit = total.min(cap as u128) as u64;
    // digits index the packed field elements; moving one digit by one step
    // adds (new - old) times a single basis vector
    let elems: Vec<Fe> = field.elements().collect();
    let mut word = vec![Fe::ZERO; len];
    let mut digits = vec![0u64; k];
    let mut focus: Vec<usize> = (0..=k).collect();
    let mut dir = vec![1i8; k];
    let mut best = usize::MAX;
    let mut examined = 0u64;
    while examined < limit {
        let j = focus[0];
        focus[0] = 0;
        if j == k {
            break;
        }
        let old = digits[j];
        let new = if dir[j] > 0 { old + 1 } else { old - 1 };
        digits[j] = new;
        let delta = field.sub(elems[new as usize], elems[old as usize]);
        for (w, &bv) in word.iter_mut().zip(&basis[j]) {
            *w = field.add(*w, field.mul(delta, bv));
        }
        if new == 0 || new == q - 1 {
            dir[j] = -dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        examined += 1;
        let wt = word.iter().filter(|c| !c.is_zero()).count();
        best = best.min(wt);
    }
    if limit as u128 == total {
        Ok(Distance::Exact { d: best })
    } else {
        let upper = basis.iter().map(|v| v.iter().filter(|c| !c.is_zero()).count()).fold(best, usize::min);
        Ok(Distance::Capped { upper, examined })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceBound {
    pub tag: &'static str,
    /// `upper`, or `lower_if_mds` for a necessary condition on MDS codes.
    pub kind: &'static str,
    pub value: usize,
    pub note: String,
}

/// Upper bounds on the minimum distance from the polynomial data of `b`.
pub fn mds_distance_bounds(b: &AlgebraElement) -> Result<Vec<DistanceBound>> {
    bounds_from_analysis(&ElementAnalysis::new(b)?)
}

fn bounds_from_analysis(a: &ElementAnalysis) -> Result<Vec<DistanceBound>> {
    let order = a.group_order();
    let pp = a.p_part();
    let p = a.element.field().p();
    let mut out = vec![DistanceBound {
        tag: ideal::TAG_CHAR_POLY,
        kind: "upper",
        value: a.u - a.zeta_n + 1,
        note: "u - zeta_n + 1; equality exactly for MDS codes".into(),
    }];
    if a.is_unit() {
        return Ok(out);
    }
    let sub = if a.n > 1 && a.kernel_dim.is_multiple_of(pp) { (a.t + 1) * pp } else { a.t * pp };
    out.push(DistanceBound {
        tag: ideal::TAG_P_PART,
        kind: "upper",
        value: order.saturating_sub(sub) + 1,
        note: format!("|G| - {sub} + 1"),
    });
    if a.n == 1 {
        out.push(DistanceBound {
            tag: ideal::TAG_P_PART,
            kind: "lower_if_mds",
            value: pp + 1,
            note: format!("an MDS code here has d = 1 mod {p} and d >= |G|_p + 1"),
        });
    }
    if let Ok(c) = ideal::congruence_class(&a.element) {
        let k = a.dimension();
        if k as u64 <= p {
            out.push(DistanceBound {
                tag: TAG_TRACE,
                kind: "upper",
                value: order + 1 - c.r as usize,
                note: format!("|G| - r + 1 with r = {}", c.r),
            });
        }
    }
    Ok(out)
}

pub const TAG_TRACE: &str = "trace_congruence";

/// The facts about a code that the MDS/ECD relations need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeStatus {
    pub length: usize,
    pub dimension: usize,
    pub mds: bool,
    pub ecd: bool,
}

impl CodeStatus {
    /// MDS codes of dimension `0, 1, n-1, n` are trivial.
    pub fn nontrivial_mds(&self) -> bool {
        self.mds && self.dimension >= 2 && self.dimension + 2 <= self.length
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub id: &'static str,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditional: Option<&'static str>,
    /// Whether the relation's hypotheses hold for the given data.
    pub applies: bool,
    /// True when the given code contradicts the statement.
    pub contradiction: bool,
}

/// Relations between MDS codes and easily computable dimension (ECD) codes
/// for an algebra over `GF(q)` of characteristic `p` and group order
/// `order`, optionally checked against a code.
pub fn ecd_mds_relations(q: u64, p: u64, order: usize, code: Option<CodeStatus>) -> Vec<Relation> {
    let n = order as u64;
    let mut out = Vec::new();
    let mds_ecd = code.is_some_and(|c| c.mds && c.ecd);
    out.push(Relation {
        id: "mds_ecd_length",
        statement: format!("an MDS and ECD group code has length |G| <= q + 1 = {}", q + 1),
        conditional: None,
        applies: mds_ecd,
        contradiction: mds_ecd && n > q + 1,
    });
    let nontrivial = code.is_some_and(|c| c.nontrivial_mds());
    if q == p && n.is_multiple_of(p) {
        let statement = if p == 2 {
            "every MDS group code in GF(2)G is trivial".to_string()
        } else if n == p {
            format!("nontrivial MDS group codes in GF({p})C_{p} are equivalent to extended Reed-Solomon codes")
        } else {
            format!("GF({p})G is not semisimple and G is not C_{p}: it has no nontrivial MDS group codes")
        };
        out.push(Relation {
            id: "non_semisimple_prime_field",
            statement,
            conditional: Some(MDS_CONJECTURE),
            applies: true,
            contradiction: nontrivial && (p == 2 || n != p),
        });
    }
    if q == p && p % 2 == 1 && n != p {
        let ecd_algebra = ecd_algebra(order, p);
        out.push(Relation {
            id: "mds_implies_ecd_algebra",
            statement: format!(
                "if GF({p})G has a nontrivial MDS group code then it is an ECD algebra (|G| <= {} and |G| != {p}); here it {} ECD",
                p + 1,
                if ecd_algebra { "is" } else { "is not" }
            ),
            conditional: Some(MDS_CONJECTURE),
            applies: nontrivial,
            contradiction: nontrivial && !ecd_algebra,
        });
    }
    out
}

/// Every nontrivial ideal is ECD exactly when `|G| <= p + 1` and `|G| != p`.
pub fn ecd_algebra(order: usize, p: u64) -> bool {
    order as u64 <= p + 1 && order as u64 != p
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub distance: Distance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mds: Option<bool>,
    pub ecd: bool,
    pub ecd_algebra: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singleton_defect: Option<usize>,
    pub idempotent_generator: bool,
    pub min_poly_factored: String,
    pub distance_bounds: Vec<DistanceBound>,
    pub conjecture_notes: Vec<Relation>,
}

impl CodeReport {
    /// `[n,k,d]`, with `d<=bound` when the search was capped.
    pub fn parameters(&self) -> String {
        match self.distance {
            Distance::Exact { d } => format!("[{},{},{}]", self.n, self.k, d),
            Distance::Capped { upper, .. } => format!("[{},{},<={}]", self.n, self.k, upper),
        }
    }

    pub fn status(&self) -> Option<CodeStatus> {
        self.mds.map(|mds| CodeStatus { length: self.n, dimension: self.k, mds, ecd: self.ecd })
    }
}

/// Parameters of the code `R*b` together with its MDS and ECD flags.
pub fn classify(b: &AlgebraElement, cap: u64) -> Result<CodeReport> {
    let a = ElementAnalysis::new(b)?;
    let f = b.field();
    let n = a.group_order();
    let k = a.dimension();
    let basis: Vec<Vec<Fe>> = ideal_basis(b)?.iter().map(|e| e.coeffs().to_vec()).collect();
    debug_assert_eq!(basis.len(), k);
    let distance = min_distance(f, &basis, cap)?;
    let d = distance.exact();
    if let Some(d) = d {
        assert!(d >= 1 && d + k <= n + 1, "Singleton bound violated");
    }
    let idempotent = a.n <= 1;
    let ecd = idempotent && k as u64 <= f.p();
    let mut report = CodeReport {
        n,
        k,
        distance,
        d,
        mds: d.map(|d| d + k == n + 1),
        ecd,
        ecd_algebra: ecd_algebra(n, f.p()),
        singleton_defect: d.map(|d| n + 1 - k - d),
        idempotent_generator: idempotent,
        min_poly_factored: a.min_factors.to_string(),
        distance_bounds: bounds_from_analysis(&a)?,
        conjecture_notes: Vec::new(),
    };
    report.conjecture_notes = ecd_mds_relations(f.q(), f.p(), n, report.status());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{c2c4_algebra, q8_algebra};
    use crate::algebra::GroupAlgebra;
    use crate::group::Group;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    /// Every coefficient tuple, visited in a shuffled order.
    fn shuffled_min_distance(field: &Field, basis: &[Vec<Fe>], seed: u64) -> usize {
        let q = field.q() as usize;
        let k = basis.len();
        let mut tuples: Vec<usize> = (1..q.pow(k as u32)).collect();
        tuples.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let elems: Vec<Fe> = field.elements().collect();
        tuples
            .iter()
            .map(|&t| {
                let mut word = vec![Fe::ZERO; basis[0].len()];
                let mut rest = t;
                for v in basis {
                    let c = elems[rest % q];
                    rest /= q;
                    for (w, &x) in word.iter_mut().zip(v) {
                        *w = field.add(*w, field.mul(c, x));
                    }
                }
                word.iter().filter(|c| !c.is_zero()).count()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn bases() {
        let r = c2c4_algebra();
        let basis = ideal_basis(&r.one()).unwrap();
        assert_eq!(basis.len(), 8);
        assert_eq!(basis[3], r.basis(3));
        let e1 = r.parse_element("20002111").unwrap();
        assert_eq!(ideal_basis(&e1).unwrap().len(), 4);
        assert_eq!(ideal_basis(&r.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn distances() {
        let f3 = Field::prime(3).unwrap();
        let c4 = GroupAlgebra::new(&f3, &Group::cyclic(4).unwrap());
        let rep = classify(&c4.parse_element("1+x+x^2+x^3").unwrap(), DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(rep.parameters(), "[4,1,4]");
        let c2 = GroupAlgebra::new(&f3, &Group::cyclic(2).unwrap());
        let rep = classify(&c2.parse_element("1+x").unwrap(), DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(rep.parameters(), "[2,1,2]");
        assert_eq!(rep.mds, Some(true));
        let e2 = c2c4_algebra().parse_element("01111101").unwrap();
        assert_eq!(classify(&e2, DEFAULT_DISTANCE_CAP).unwrap().parameters(), "[8,3,4]");
        assert_eq!(min_distance(&f3, &[], 10), Err(Error::EmptyBasis));
    }

    #[test]
    fn capped_search() {
        let r = c2c4_algebra();
        let basis: Vec<Vec<Fe>> = ideal_basis(&r.one()).unwrap().iter().map(|e| e.coeffs().to_vec()).collect();
        let d = min_distance(r.field(), &basis, 100).unwrap();
        assert_eq!(d, Distance::Capped { upper: 1, examined: 100 });
        assert_eq!(min_distance(r.field(), &basis, 3u64.pow(8)).unwrap(), Distance::Exact { d: 1 });
    }

    #[test]
    fn quaternion_code() {
        let r = q8_algebra();
        let b1 = r.parse_element("1+u+v+u^3*v").unwrap();
        let rep = classify(&b1, DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(rep.k, 5);
        let basis: Vec<Vec<Fe>> = ideal_basis(&b1).unwrap().iter().map(|e| e.coeffs().to_vec()).collect();
        assert_eq!(rep.d, Some(shuffled_min_distance(r.field(), &basis, 7)));
    }

    /// GF(9) with modulus x^2+2x+2, symbol `w` so that `a`, `b` name the
    /// generators of S3.
    pub(crate) fn s3_over_gf9() -> GroupAlgebra {
        let f9 = Field::new(3, 2, Some(&[2, 2, 1])).unwrap().with_symbol("w");
        let gens = [(Some("a".to_string()), "(1,2,3)".to_string()), (Some("b".to_string()), "(1,2)".to_string())];
        let s3 = Group::from_permutations(&gens, 100).unwrap();
        let s3 = s3.with_ordering(&["1", "b", "a", "a^2", "b*a^2", "b*a"]).unwrap();
        GroupAlgebra::new(&f9, &s3)
    }

    #[test]
    fn symmetric_group_mds_codes() {
        let r = s3_over_gf9();
        let b = r.parse_element("(2*w+2) + (w+1)*b + w*a + (2*w+1)*a^2 + (w+1)*b*a^2 + b*a").unwrap();
        let rep = classify(&b, DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(rep.min_poly_factored, "x*(2*w+x)^2");
        assert_eq!(rep.parameters(), "[6,3,4]");
        assert_eq!(rep.mds, Some(true));
        assert!(rep.ecd);
        let mds_floor = rep.distance_bounds.iter().find(|bd| bd.kind == "lower_if_mds").unwrap();
        assert_eq!(mds_floor.value, 4);
        let b2 = r.parse_element("(w+1) + w*b + 2*a + 2*a^2 + 2*b*a").unwrap();
        let rep = classify(&b2, DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(rep.min_poly_factored, "x^2*(w+2+x)^2");
        assert_eq!(rep.parameters(), "[6,4,3]");
        assert_eq!(rep.mds, Some(true));
        assert!(!rep.ecd);
        assert!(rep.distance_bounds.iter().all(|bd| bd.kind != "lower_if_mds"));
        assert!(rep.conjecture_notes.iter().all(|n| !n.contradiction));
    }

    #[test]
    fn relations() {
        let notes = ecd_mds_relations(9, 3, 6, Some(CodeStatus { length: 6, dimension: 3, mds: true, ecd: true }));
        assert!(!notes[0].contradiction && notes[0].applies);
        let notes = ecd_mds_relations(2, 2, 4, None);
        let ns = notes.iter().find(|r| r.id == "non_semisimple_prime_field").unwrap();
        assert_eq!(ns.conditional, Some(MDS_CONJECTURE));
        assert!(ns.statement.contains("trivial"));
        let notes = ecd_mds_relations(5, 5, 7, Some(CodeStatus { length: 7, dimension: 3, mds: true, ecd: true }));
        assert!(notes[0].contradiction);
        assert!(notes.iter().filter(|r| r.id != "mds_ecd_length").all(|r| r.conditional == Some(MDS_CONJECTURE)));
        assert!(ecd_algebra(4, 3) && !ecd_algebra(3, 3) && !ecd_algebra(5, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gray_order_matches_shuffled_enumeration(
            v in proptest::collection::vec(0i64..3, 8),
            seed in any::<u64>(),
        ) {
            let r = c2c4_algebra();
            let b = r.from_ints(&v).unwrap();
            prop_assume!(!b.is_zero());
            let basis: Vec<Vec<Fe>> = ideal_basis(&b).unwrap().iter().map(|e| e.coeffs().to_vec()).collect();
            let d = min_distance(r.field(), &basis, DEFAULT_DISTANCE_CAP).unwrap().exact().unwrap();
            prop_assert_eq!(d, shuffled_min_distance(r.field(), &basis, seed));
            let rep = classify(&b, DEFAULT_DISTANCE_CAP).unwrap();
            prop_assert!(d >= 1 && d + rep.k <= rep.n + 1);
            prop_assert!(basis.iter().all(|v| v.iter().filter(|c| !c.is_zero()).count() >= d));
            for bd in rep.distance_bounds.iter().filter(|bd| bd.kind == "upper") {
                prop_assert!(d <= bd.value, "{:?}", bd);
            }
        }
    }
}
