//! Genus-one real structures on lens spaces: factoring the gluing matrices
//! `+-[[-q, p'], [p, q]]` into equivariant twist words over `c_st`, and the
//! end-to-end report from continued fraction to contact diagram.

mod catalog;
mod type_a;

pub use catalog::{catalog_rp3, catalog_s1xs2, CatalogEntry};
pub use type_a::{type_a_chain, ChainKnot, TypeAChain};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::contact::{legalize, ContactDiagram, IllegalReason};
use crate::contfrac::{palindrome_partner, ContFrac, ContFracError, Flavor};
use crate::linear::{CurveClass, IntMatrix};
use crate::surgery::{word_to_diagram, SurgeryDiagram, DEFAULT_AMBIENT};
use crate::word::{
    apply_fix_rule, find_fix_pattern, tw, validate_equivariant_shape, TwistFactor, TwistWord,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LensError {
    #[error(transparent)]
    ContFrac(#[from] ContFracError),
    #[error("q^2 = {q}^2 is not 1 mod {p}")]
    NotPalindromic { p: BigInt, q: BigInt },
    #[error("exponent {0} does not fit in 64 bits")]
    Overflow(BigInt),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    C,
    CPrime,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::C, Variant::CPrime];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::C => "C",
            Variant::CPrime => "Cprime",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "C" | "c" => Ok(Variant::C),
            "Cprime" | "cprime" | "C'" | "C′" => Ok(Variant::CPrime),
            _ => Err(format!("unknown variant {s:?}, expected C or Cprime")),
        }
    }
}

impl Serialize for Variant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An admissible `(p, q)` with its gluing matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensTarget {
    pub p: BigInt,
    pub q: BigInt,
    pub p_prime: BigInt,
    pub variant: Variant,
    pub matrix: IntMatrix,
}

impl LensTarget {
    pub fn new(p: &BigInt, q: &BigInt, variant: Variant) -> Result<Self, LensError> {
        // range and coprimality
        ContFrac::expand(p, q, Flavor::Positive)?;
        let p_prime = palindrome_partner(p, q).ok_or_else(|| LensError::NotPalindromic {
            p: p.clone(),
            q: q.clone(),
        })?;
        let m = IntMatrix::from_rows(vec![vec![-q, p_prime.clone()], vec![p.clone(), q.clone()]])
            .expect("2x2");
        let matrix = match variant {
            Variant::C => m,
            Variant::CPrime => -&m,
        };
        Ok(LensTarget {
            p: p.clone(),
            q: q.clone(),
            p_prime,
            variant,
            matrix,
        })
    }
}

/// Is `(p, q)` in range, coprime and with `q^2 = 1 (mod p)`?
pub fn is_admissible(p: i64, q: i64) -> bool {
    use num_integer::Integer;
    0 < q && q < p && p.gcd(&q) == 1 && (i128::from(q) * i128::from(q)) % i128::from(p) == 1
}

/// All admissible pairs with `p <= max_p`, in lexicographic order.
pub fn admissible_pairs(max_p: i64) -> Vec<(i64, i64)> {
    (2..=max_p)
        .flat_map(|p| (1..p).map(move |q| (p, q)))
        .filter(|&(p, q)| is_admissible(p, q))
        .collect()
}

fn small_terms(cf: &ContFrac) -> Result<Vec<i64>, LensError> {
    cf.terms()
        .iter()
        .map(|t| t.to_i64().ok_or_else(|| LensError::Overflow(t.clone())))
        .collect()
}

fn palindromic_terms(p: &BigInt, q: &BigInt) -> Result<Vec<i64>, LensError> {
    LensTarget::new(p, q, Variant::C)?;
    small_terms(&ContFrac::expand(p, q, Flavor::Positive)?)
}

/// `tau_b^{r_1} tau_a^{r_2} ...` on the first `m` terms.
fn left_block(r: &[i64], m: usize) -> Vec<TwistFactor> {
    r[..m]
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let c = if i % 2 == 0 {
                CurveClass::b()
            } else {
                CurveClass::a()
            };
            tw(c, e)
        })
        .collect()
}

/// The `c_st`-mirror of a left block: reversed, `a` and `b` exchanged.
fn right_block(left: &[TwistFactor]) -> Vec<TwistFactor> {
    left.iter()
        .rev()
        .map(|f| {
            let c = if *f.curve() == CurveClass::a() {
                CurveClass::b()
            } else {
                CurveClass::a()
            };
            tw(c, f.exponent())
        })
        .collect()
}

/// `tau_x^{-1} tau_y^{-1}` three times.
fn six_twist(x: CurveClass, y: CurveClass) -> Vec<TwistFactor> {
    (0..3)
        .flat_map(|_| [tw(x.clone(), -1), tw(y.clone(), -1)])
        .collect()
}

fn assemble(left: Vec<TwistFactor>, middle: Vec<TwistFactor>) -> TwistWord {
    let right = right_block(&left);
    TwistWord::over_cst(left.into_iter().chain(middle).chain(right).collect())
}

fn factor_terms(r: &[i64], variant: Variant) -> TwistWord {
    let n = r.len();
    let k = n / 4;
    let (a, b, apb, amb) = (
        CurveClass::a,
        CurveClass::b,
        CurveClass::a_plus_b,
        CurveClass::a_minus_b,
    );
    let (m, middle) = match (variant, n % 4) {
        (Variant::C, 0) => (2 * k, vec![]),
        (Variant::C, 1) => {
            let t = r[2 * k];
            (2 * k, vec![tw(a(), -1), tw(apb(), t - 1), tw(b(), -1)])
        }
        (Variant::C, 2) => (2 * k + 1, six_twist(b(), a())),
        (Variant::C, _) => {
            let t = r[2 * k + 1];
            (2 * k + 1, vec![tw(b(), 1), tw(apb(), t + 1), tw(a(), 1)])
        }
        (Variant::CPrime, 0) => (2 * k, six_twist(a(), b())),
        (Variant::CPrime, 1) => {
            let t = r[2 * k];
            (2 * k, vec![tw(a(), 1), tw(amb(), t + 1), tw(b(), 1)])
        }
        (Variant::CPrime, 2) => (2 * k + 1, vec![]),
        (Variant::CPrime, _) => {
            let t = r[2 * k + 1];
            (2 * k + 1, vec![tw(b(), -1), tw(amb(), t - 1), tw(a(), -1)])
        }
    };
    assemble(left_block(r, m), middle)
}

/// Twist word over `c_st` for `[[-q, p'], [p, q]]`, with every substituted
/// middle kept un-absorbed. The fix rule is not applied.
pub fn factor_c(p: &BigInt, q: &BigInt) -> Result<TwistWord, LensError> {
    Ok(factor_terms(&palindromic_terms(p, q)?, Variant::C))
}

/// Twist word over `c_st` for `-[[-q, p'], [p, q]]`.
pub fn factor_cprime(p: &BigInt, q: &BigInt) -> Result<TwistWord, LensError> {
    Ok(factor_terms(&palindromic_terms(p, q)?, Variant::CPrime))
}

pub fn factor(p: &BigInt, q: &BigInt, variant: Variant) -> Result<TwistWord, LensError> {
    Ok(factor_terms(&palindromic_terms(p, q)?, variant))
}

/// Case `1..=4` of the factorization, from `n mod 4`, primed for `C'`.
pub fn case_label(n: usize, variant: Variant) -> String {
    let case = n % 4 + 1;
    match variant {
        Variant::C => case.to_string(),
        Variant::CPrime => format!("{case}'"),
    }
}

fn display<T: fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LensReport {
    pub p: i64,
    pub q: i64,
    pub variant: Variant,
    pub cf: Vec<i64>,
    pub palindrome: bool,
    #[serde(serialize_with = "display")]
    pub word: TwistWord,
    pub matrix_ok: bool,
    pub shape_ok: bool,
    pub diagram: Option<SurgeryDiagram>,
    pub contact: Option<ContactDiagram>,
    pub case: String,
    pub target: IntMatrix,
    #[serde(serialize_with = "display")]
    pub raw_word: TwistWord,
    pub fix_rule_applied: bool,
    /// Distinct illegality reasons in the contact diagram.
    pub flags: Vec<IllegalReason>,
    pub shape_error: Option<String>,
}

impl LensReport {
    pub fn legal(&self) -> bool {
        self.contact.as_ref().is_some_and(|c| c.overall_legal)
    }

    pub fn verified(&self) -> bool {
        self.palindrome && self.matrix_ok && self.shape_ok
    }

    pub fn has_flag(&self, reason: IllegalReason) -> bool {
        self.flags.contains(&reason)
    }
}

/// Factorization, verification and diagrams for one admissible `(p, q)`.
///
/// The fix rule is applied wherever its pattern occurs; `matrix_ok` compares
/// the final word against the target by exact multiplication.
pub fn build(p: i64, q: i64, variant: Variant) -> Result<LensReport, LensError> {
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let target = LensTarget::new(&pb, &qb, variant)?;
    let cf = ContFrac::expand(&pb, &qb, Flavor::Positive)?;
    let terms = small_terms(&cf)?;
    let raw_word = factor_terms(&terms, variant);
    let (word, fix_rule_applied) = match find_fix_pattern(&raw_word) {
        Some(_) => (apply_fix_rule(&raw_word).expect("pattern present"), true),
        None => (raw_word.clone(), false),
    };
    let matrix_ok = word.eval() == target.matrix && raw_word.eval() == target.matrix;
    let shape = validate_equivariant_shape(&word);
    let shape_ok = shape.is_ok();
    let (diagram, contact, shape_error) = match shape {
        Ok(s) => match word_to_diagram(&s, DEFAULT_AMBIENT) {
            Ok(d) => {
                let c = legalize(&d, Some(&word));
                (Some(d), Some(c), None)
            }
            Err(e) => (None, None, Some(e.to_string())),
        },
        Err(e) => (None, None, Some(e.to_string())),
    };
    let mut flags: Vec<IllegalReason> = Vec::new();
    if let Some(c) = &contact {
        for r in c.contact.iter().filter_map(|k| k.reason) {
            if !flags.contains(&r) {
                flags.push(r);
            }
        }
    }
    Ok(LensReport {
        p,
        q,
        variant,
        cf: terms,
        palindrome: cf.is_palindrome(),
        word,
        matrix_ok,
        shape_ok,
        diagram,
        contact,
        case: case_label(cf.len(), variant),
        target: target.matrix,
        raw_word,
        fix_rule_applied,
        flags,
        shape_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::{KnotRole, RealTorusType, SurgeryLabel};

    fn word(p: i64, q: i64, v: Variant) -> String {
        factor(&p.into(), &q.into(), v).unwrap().to_string()
    }

    #[test]
    fn targets() {
        let t = LensTarget::new(&5.into(), &4.into(), Variant::C).unwrap();
        assert_eq!(t.matrix, IntMatrix::mat2(-4, -3, 5, 4));
        assert_eq!(t.matrix.determinant(), BigInt::from(-1));
        assert!(t.matrix.is_involution());
        let t = LensTarget::new(&3.into(), &2.into(), Variant::CPrime).unwrap();
        assert_eq!(t.matrix, IntMatrix::mat2(2, 1, -3, -2));
        assert!(matches!(
            LensTarget::new(&5.into(), &2.into(), Variant::C),
            Err(LensError::NotPalindromic { .. })
        ));
        assert!(matches!(
            LensTarget::new(&4.into(), &2.into(), Variant::C),
            Err(LensError::ContFrac(_))
        ));
    }

    #[test]
    fn small_words() {
        assert_eq!(word(2, 1, Variant::C), "a^-1 (a+b)^1 b^-1 | cst");
        assert_eq!(word(5, 4, Variant::C), "b^2 a^2 b^2 a^2 | cst");
        assert_eq!(
            word(3, 2, Variant::C),
            "b^2 b^-1 a^-1 b^-1 a^-1 b^-1 a^-1 a^2 | cst"
        );
        assert_eq!(word(3, 2, Variant::CPrime), "b^2 a^2 | cst");
        assert_eq!(word(2, 1, Variant::CPrime), "a^1 (a-b)^3 b^1 | cst");
        assert_eq!(
            word(5, 4, Variant::CPrime),
            "b^2 a^2 a^-1 b^-1 a^-1 b^-1 a^-1 b^-1 b^2 a^2 | cst"
        );
        // [2, 3, 2]: case 4 with middle term 3
        assert_eq!(word(8, 5, Variant::C), "b^2 b^1 (a+b)^4 a^1 a^2 | cst");
        assert_eq!(
            word(8, 5, Variant::CPrime),
            "b^2 b^-1 (a-b)^2 a^-1 a^2 | cst"
        );
        assert_eq!(
            word(8, 3, Variant::C),
            "b^3 b^-1 a^-1 b^-1 a^-1 b^-1 a^-1 a^3 | cst"
        );
    }

    #[test]
    fn small_evaluations() {
        let ev = |p: i64, q: i64, v| factor(&p.into(), &q.into(), v).unwrap().eval();
        assert_eq!(ev(5, 4, Variant::C), IntMatrix::mat2(-4, -3, 5, 4));
        assert_eq!(ev(3, 2, Variant::C), IntMatrix::mat2(-2, -1, 3, 2));
        assert_eq!(ev(3, 2, Variant::CPrime), IntMatrix::mat2(2, 1, -3, -2));
        assert_eq!(ev(2, 1, Variant::CPrime), IntMatrix::mat2(1, 0, -2, -1));
        assert_eq!(ev(5, 4, Variant::CPrime), IntMatrix::mat2(4, 3, -5, -4));
    }

    #[test]
    fn rp3_report() {
        let r = build(2, 1, Variant::C).unwrap();
        assert!(r.verified() && r.fix_rule_applied && r.legal());
        assert_eq!(r.word.to_string(), "(a-b)^-1 | cst");
        assert_eq!(r.word.eval(), IntMatrix::mat2(-1, 0, 2, 1));
        let d = r.diagram.as_ref().unwrap();
        assert_eq!(d.knots.len(), 1);
        assert_eq!(d.knots[0].role, KnotRole::Invariant(RealTorusType::C1));
        assert_eq!(
            d.knots[0].label,
            SurgeryLabel::typed(RealTorusType::C1, RealTorusType::C1)
        );
        assert_eq!(r.case, "2");
    }

    #[test]
    fn case_one_is_all_pairs() {
        let r = build(5, 4, Variant::C).unwrap();
        assert!(r.verified() && r.legal() && !r.fix_rule_applied);
        assert_eq!(r.diagram.as_ref().unwrap().pair_count(), 2);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(
            r#"{"p":5,"q":4,"variant":"C","cf":[2,2,2,2],"palindrome":true,"word":"b^2 a^2 b^2 a^2 | cst","matrix_ok":true,"shape_ok":true,"diagram":"#
        ));
    }

    #[test]
    fn gap_flags() {
        let r = build(8, 5, Variant::C).unwrap();
        assert!(r.verified());
        assert!(r.has_flag(IllegalReason::PositiveC4Middle));
        let r = build(4, 1, Variant::C).unwrap();
        assert!(r.verified() && r.has_flag(IllegalReason::PositiveC4Middle));
        assert!(build(8, 5, Variant::CPrime).unwrap().legal());
        assert!(build(4, 1, Variant::CPrime).unwrap().legal());
        assert!(build(8, 3, Variant::C).unwrap().legal());
    }

    #[test]
    fn admissible_enumeration() {
        assert_eq!(
            admissible_pairs(5),
            vec![(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 4)]
        );
        assert!(admissible_pairs(1).is_empty());
        assert!(matches!(
            build(5, 2, Variant::C),
            Err(LensError::NotPalindromic { .. })
        ));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("C".parse::<Variant>(), Ok(Variant::C));
        assert_eq!("Cprime".parse::<Variant>(), Ok(Variant::CPrime));
        assert!("D".parse::<Variant>().is_err());
    }
}
