//! Dehn-twist words and their homology evaluation.
//!
//! A word is written left to right, `tau_{c_1}^{e_1} ... tau_{c_k}^{e_k} | base`,
//! and evaluates to `T(c_1)^{e_1} * ... * T(c_k)^{e_k} * base`, so the factor
//! nearest the base acts first.

mod fix;
mod invariance;
mod relations;
mod shape;

pub use fix::{apply_fix_rule, find_fix_pattern};
pub use invariance::{
    factor_palindrome, palindrome_word, validate_recursive_invariance, FactorVerdict,
    InvarianceReport, Verdict,
};
pub use relations::{verify_relations, RelationCheck, RelationReport};
pub use shape::{validate_equivariant_shape, EquivariantShape, ShapeError};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linear::{c_st, CurveClass, IntMatrix, LinearError, SymplecticForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error("twist exponent must be nonzero")]
    ZeroExponent,
    #[error("curve {curve} has dimension {dim}, word has genus {genus}")]
    GenusMismatch {
        curve: String,
        dim: usize,
        genus: usize,
    },
    #[error("base matrix is not an orientation-reversing involution on H_1")]
    BaseNotReal,
    #[error("involution is not an orientation-reversing involution on H_1")]
    NotRealStructure,
    #[error("curve {curve} at position {index} is not invariant under the involution")]
    NonInvariantCurve { index: usize, curve: String },
    #[error("curves and exponents differ in length ({curves} vs {exps})")]
    LengthMismatch { curves: usize, exps: usize },
    #[error("fix-rule pattern a^-1 (a+b)^1 b^-1 not found")]
    PatternAbsent,
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// `tau_curve^exponent` with a nonzero exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwistFactor {
    curve: CurveClass,
    exponent: i64,
}

impl TwistFactor {
    pub fn new(curve: CurveClass, exponent: i64) -> Result<Self, WordError> {
        if exponent == 0 {
            return Err(WordError::ZeroExponent);
        }
        Ok(TwistFactor { curve, exponent })
    }

    pub fn curve(&self) -> &CurveClass {
        &self.curve
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn matrix(&self) -> IntMatrix {
        SymplecticForm::new(self.curve.genus())
            .transvection(&self.curve, self.exponent)
            .expect("form built from the curve's own genus")
    }
}

impl fmt::Debug for TwistFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TwistFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", curve_name(&self.curve), self.exponent)
    }
}

/// `a`, `b`, `(a+b)`, `(a-b)` at genus one, `v[...]` otherwise.
pub fn curve_name(curve: &CurveClass) -> String {
    match curve.torus_coords() {
        Some((1, 0)) => "a".into(),
        Some((0, 1)) => "b".into(),
        Some((1, 1)) => "(a+b)".into(),
        Some((1, -1)) => "(a-b)".into(),
        _ => {
            let parts: Vec<String> = curve.coords().iter().map(|x| x.to_string()).collect();
            format!("v[{}]", parts.join(","))
        }
    }
}

/// Shorthand for the genus-one generators used all over the lens pipeline.
pub fn tw(curve: CurveClass, exponent: i64) -> TwistFactor {
    TwistFactor::new(curve, exponent).expect("nonzero exponent")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwistWord {
    factors: Vec<TwistFactor>,
    base: Option<IntMatrix>,
    genus: usize,
}

impl TwistWord {
    pub fn new(
        factors: Vec<TwistFactor>,
        base: Option<IntMatrix>,
        genus: usize,
    ) -> Result<Self, WordError> {
        let form = SymplecticForm::new(genus);
        for f in &factors {
            if f.curve.dim() != form.dim() {
                return Err(WordError::GenusMismatch {
                    curve: f.curve.to_string(),
                    dim: f.curve.dim(),
                    genus,
                });
            }
        }
        if let Some(b) = &base {
            if b.dim() != form.dim() || !form.is_real_structure(b) {
                return Err(WordError::BaseNotReal);
            }
        }
        Ok(TwistWord {
            factors,
            base,
            genus,
        })
    }

    /// Genus-one word over `c_st`.
    pub fn over_cst(factors: Vec<TwistFactor>) -> Self {
        Self::new(factors, Some(c_st()), 1).expect("genus-one factors")
    }

    pub fn factors(&self) -> &[TwistFactor] {
        &self.factors
    }

    pub fn base(&self) -> Option<&IntMatrix> {
        self.base.as_ref()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn form(&self) -> SymplecticForm {
        SymplecticForm::new(self.genus)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn with_base(mut self, base: Option<IntMatrix>) -> Result<Self, WordError> {
        if let Some(b) = &base {
            if !self.form().is_real_structure(b) {
                return Err(WordError::BaseNotReal);
            }
        }
        self.base = base;
        Ok(self)
    }

    pub fn with_factors(&self, factors: Vec<TwistFactor>) -> Result<Self, WordError> {
        TwistWord::new(factors, self.base.clone(), self.genus)
    }

    /// Product of the twist matrices without the base.
    pub fn twist_product(&self) -> IntMatrix {
        self.factors
            .iter()
            .fold(IntMatrix::identity(2 * self.genus), |acc, f| {
                &acc * &f.matrix()
            })
    }

    pub fn eval(&self) -> IntMatrix {
        let prod = self.twist_product();
        match &self.base {
            Some(b) => &prod * b,
            None => prod,
        }
    }

    /// Merges adjacent factors on the same curve, dropping any that cancel.
    pub fn merge_runs(&self) -> TwistWord {
        let mut out: Vec<TwistFactor> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some(last) if last.curve == f.curve => {
                    last.exponent += f.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(f.clone()),
            }
        }
        TwistWord {
            factors: out,
            base: self.base.clone(),
            genus: self.genus,
        }
    }
}

/// Free function form of [`TwistWord::eval`].
pub fn eval_word(w: &TwistWord) -> IntMatrix {
    w.eval()
}

impl fmt::Debug for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistWord({self})")
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&body.join(" "))?;
        if let Some(b) = &self.base {
            if !body.is_empty() {
                f.write_str(" ")?;
            }
            if self.genus == 1 && *b == c_st() {
                f.write_str("| cst")?;
            } else {
                write!(f, "| {b}")?;
            }
        }
        Ok(())
    }
}

fn parse_curve(token: &str) -> Result<CurveClass, WordError> {
    let bad = || WordError::Parse(format!("unknown curve `{token}`"));
    let t = token.replace('\u{2212}', "-");
    let t = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(&t);
    match t {
        "a" => return Ok(CurveClass::a()),
        "b" => return Ok(CurveClass::b()),
        "a+b" => return Ok(CurveClass::a_plus_b()),
        "a-b" => return Ok(CurveClass::a_minus_b()),
        _ => {}
    }
    let inner = t
        .strip_prefix("v[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let coords = inner
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveClass::new(coords)?)
}

fn parse_factor(token: &str) -> Result<TwistFactor, WordError> {
    // the exponent marker is the last '^' outside brackets
    let (curve, exp) = match token.rfind('^') {
        Some(i) if !token[i..].contains(']') && !token[i..].contains(')') => {
            let e = token[i + 1..]
                .replace('\u{2212}', "-")
                .parse::<i64>()
                .map_err(|_| WordError::Parse(format!("bad exponent in `{token}`")))?;
            (&token[..i], e)
        }
        _ => (token, 1),
    };
    TwistFactor::new(parse_curve(curve)?, exp)
}

/// Parses `a^2 b^-1 (a+b)^1 | cst`. Named curves live at genus one; `v[...]`
/// vectors fix the genus from their length. The base after `|` is `cst` or a
/// matrix literal.
impl FromStr for TwistWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let (body, base_text) = match s.split_once('|') {
            Some((b, rest)) => (b, Some(rest.trim())),
            None => (s, None),
        };
        let factors = body
            .split_whitespace()
            .map(parse_factor)
            .collect::<Result<Vec<_>, _>>()?;
        let base = match base_text {
            None => None,
            Some("cst") | Some("c_st") => Some(c_st()),
            Some("") => return Err(WordError::Parse("empty base after `|`".into())),
            Some(m) => Some(m.parse::<IntMatrix>()?),
        };
        let genus = factors
            .first()
            .map(|f| f.curve.genus())
            .or_else(|| base.as_ref().map(|b| b.genus()))
            .unwrap_or(1);
        TwistWord::new(factors, base, genus)
    }
}
