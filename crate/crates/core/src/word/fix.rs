use super::{tw, TwistWord, WordError};
use crate::linear::CurveClass;

/// Index of the first contiguous `a^-1 (a+b)^1 b^-1` in a genus-one word.
pub fn find_fix_pattern(w: &TwistWord) -> Option<usize> {
    if w.genus() != 1 {
        return None;
    }
    let pattern = [
        tw(CurveClass::a(), -1),
        tw(CurveClass::a_plus_b(), 1),
        tw(CurveClass::b(), -1),
    ];
    w.factors().windows(3).position(|win| win == pattern)
}

/// Replaces the first `a^-1 (a+b)^1 b^-1` by `(a-b)^-1`. The evaluated
/// matrix is unchanged.
pub fn apply_fix_rule(w: &TwistWord) -> Result<TwistWord, WordError> {
    let at = find_fix_pattern(w).ok_or(WordError::PatternAbsent)?;
    let fs = w.factors();
    let mut factors = Vec::with_capacity(fs.len() - 2);
    factors.extend_from_slice(&fs[..at]);
    factors.push(tw(CurveClass::a_minus_b(), -1));
    factors.extend_from_slice(&fs[at + 3..]);
    w.with_factors(factors)
}
