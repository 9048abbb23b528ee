use num_traits::Zero;
use thiserror::Error;

use super::{TwistFactor, TwistWord};
use crate::linear::{CurveClass, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("an equivariant product needs a base involution")]
    MissingBase,
    #[error("factor {left} and factor {right} are not mirror images under the base")]
    MirrorMismatch { left: usize, right: usize },
    #[error("factor {position} has no mirror partner and its curve is not invariant")]
    UnmatchedFactor { position: usize },
    #[error("middle factor {position} is on a curve that is not invariant under the base")]
    NonInvariantMiddle { position: usize },
    #[error("middle curves {first} and {second} intersect")]
    MiddleNotDisjoint { first: String, second: String },
}

/// A word parsed as `f . (unit twists on invariant curves) . c(f)`:
/// `tau_{a_t}^{s_t} ... tau_{a_1}^{s_1} . tau_{b_k}^{+-1} ... tau_{b_1}^{+-1} .
/// tau_{a_1'}^{s_1} ... tau_{a_t'}^{s_t}` with `c(a_i) = a_i'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantShape {
    /// Left block `a_t ... a_1`, in written order.
    pub outer: Vec<TwistFactor>,
    /// Unit-exponent middle factors, in written order.
    pub middle: Vec<TwistFactor>,
    /// Right block `a_1' ... a_t'`, in written order.
    pub mirrored: Vec<TwistFactor>,
    pub base: IntMatrix,
    pub genus: usize,
}

impl EquivariantShape {
    /// Number of mirror pairs `t`.
    pub fn depth(&self) -> usize {
        self.outer.len()
    }

    /// `(i, a_i factor, a_i' factor)` for `i = 1..=t`, innermost first.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, &TwistFactor, &TwistFactor)> {
        let t = self.outer.len();
        (1..=t).map(move |i| (i, &self.outer[t - i], &self.mirrored[i - 1]))
    }

    /// Reassembles the word, with the middle in unit-exponent form.
    pub fn to_word(&self) -> TwistWord {
        let factors = self
            .outer
            .iter()
            .chain(&self.middle)
            .chain(&self.mirrored)
            .cloned()
            .collect();
        TwistWord::new(factors, Some(self.base.clone()), self.genus).expect("validated shape")
    }
}

fn is_invariant(base: &IntMatrix, curve: &CurveClass) -> bool {
    base.act(curve).is_ok_and(|img| img == *curve)
}

fn mirrors(base: &IntMatrix, left: &TwistFactor, right: &TwistFactor) -> bool {
    left.exponent() == right.exponent()
        && base
            .act(left.curve())
            .is_ok_and(|img| img == *right.curve())
}

/// Splits a word against its base into mirror pairs and an invariant middle.
///
/// Pairs are peeled from both ends while `base(left) = +-right` with equal
/// exponents; whatever remains must be twists on disjoint invariant curves,
/// and is expanded into unit-exponent factors.
pub fn validate_equivariant_shape(w: &TwistWord) -> Result<EquivariantShape, ShapeError> {
    let base = w.base().ok_or(ShapeError::MissingBase)?.clone();
    let fs = w.factors();
    let (mut lo, mut hi) = (0usize, fs.len());
    while hi - lo >= 2 && mirrors(&base, &fs[lo], &fs[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let centre = &fs[lo..hi];
    if let Some(off) = centre.iter().position(|f| !is_invariant(&base, f.curve())) {
        return Err(match centre.len() {
            1 => ShapeError::UnmatchedFactor { position: lo },
            _ if off == 0 || off == centre.len() - 1 => ShapeError::MirrorMismatch {
                left: lo,
                right: hi - 1,
            },
            _ => ShapeError::NonInvariantMiddle { position: lo + off },
        });
    }

    let form = w.form();
    let mut distinct: Vec<&CurveClass> = Vec::new();
    for f in centre {
        if !distinct.contains(&f.curve()) {
            distinct.push(f.curve());
        }
    }
    for (i, x) in distinct.iter().enumerate() {
        for y in &distinct[i + 1..] {
            let meet = form.intersection(x, y).expect("same genus");
            if !meet.is_zero() {
                return Err(ShapeError::MiddleNotDisjoint {
                    first: x.to_string(),
                    second: y.to_string(),
                });
            }
        }
    }

    let middle = centre
        .iter()
        .flat_map(|f| {
            let unit = f.exponent().signum();
            (0..f.exponent().unsigned_abs())
                .map(move |_| TwistFactor::new(f.curve().clone(), unit).expect("unit"))
        })
        .collect();
    Ok(EquivariantShape {
        outer: fs[..lo].to_vec(),
        middle,
        mirrored: fs[hi..].to_vec(),
        base,
        genus: w.genus(),
    })
}
