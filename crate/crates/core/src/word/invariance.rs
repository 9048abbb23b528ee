use num_traits::Zero;
use serde::Serialize;

use super::{curve_name, TwistFactor, TwistWord, WordError};
use crate::linear::{CurveClass, IntMatrix, SymplecticForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `s_{j-1}(r_j) = r_j`.
    Invariant,
    /// `s_{j-1}(r_j) = r_{j+1}`, the two curves disjoint.
    SwappedWithNext,
    /// Second half of a swapped pair.
    PairedWithPrevious,
    Failed,
    /// Not examined because an earlier factor failed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorVerdict {
    /// `j`, counted from the rightmost factor.
    pub step: usize,
    /// Index of the factor in written order.
    pub position: usize,
    pub curve: String,
    pub verdict: Verdict,
    /// Whether the accumulated `s_j` is again a real structure on `H_1`.
    pub real_structure_after: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub genus: usize,
    /// Genus >= 2 verdicts only see the action on `H_1`.
    pub homology_only: bool,
    pub verdicts: Vec<FactorVerdict>,
}

impl InvarianceReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| {
            !matches!(v.verdict, Verdict::Failed | Verdict::Skipped) && v.real_structure_after
        })
    }

    pub fn first_failure(&self) -> Option<&FactorVerdict> {
        self.verdicts.iter().find(|v| v.verdict == Verdict::Failed)
    }

    pub fn label(&self) -> &'static str {
        if self.homology_only {
            "verified on H_1"
        } else {
            "verified"
        }
    }
}

fn check_real(form: &SymplecticForm, s: &IntMatrix) -> Result<(), WordError> {
    if s.dim() != form.dim() || !form.is_real_structure(s) {
        return Err(WordError::NotRealStructure);
    }
    Ok(())
}

/// Checks that `tau_{r_m}^{s_m} ... tau_{r_1}^{s_1}` is recursively
/// `s`-invariant, tracking `s_j = tau_{r_j}^{s_j} s_{j-1}` from `s_0 = s`.
///
/// A swapped pair `(r_j, r_{j+1})` is consumed as a unit and needs equal
/// exponents; `s_{j+1} = tau_{r_{j+1}} tau_{r_j} s_{j-1}`.
pub fn validate_recursive_invariance(
    w: &TwistWord,
    s: &IntMatrix,
) -> Result<InvarianceReport, WordError> {
    let form = w.form();
    check_real(&form, s)?;
    let n = w.len();
    let rs: Vec<(usize, &TwistFactor)> = w.factors().iter().enumerate().rev().collect();
    let mut verdicts = Vec::with_capacity(n);
    let mut current = s.clone();
    let mut failed = false;
    let mut j = 0;
    while j < n {
        let (pos, f) = rs[j];
        let entry = |verdict, real| FactorVerdict {
            step: j + 1,
            position: pos,
            curve: curve_name(f.curve()),
            verdict,
            real_structure_after: real,
        };
        if failed {
            verdicts.push(entry(Verdict::Skipped, false));
            j += 1;
            continue;
        }
        let image = current.act(f.curve())?;
        if image == *f.curve() {
            current = &f.matrix() * &current;
            verdicts.push(entry(Verdict::Invariant, form.is_real_structure(&current)));
            j += 1;
            continue;
        }
        if let Some(&(next_pos, g)) = rs.get(j + 1) {
            let disjoint = form.intersection(f.curve(), g.curve())?.is_zero();
            if image == *g.curve() && disjoint && f.exponent() == g.exponent() {
                current = &(&g.matrix() * &f.matrix()) * &current;
                let real = form.is_real_structure(&current);
                verdicts.push(entry(Verdict::SwappedWithNext, real));
                verdicts.push(FactorVerdict {
                    step: j + 2,
                    position: next_pos,
                    curve: curve_name(g.curve()),
                    verdict: Verdict::PairedWithPrevious,
                    real_structure_after: real,
                });
                j += 2;
                continue;
            }
        }
        verdicts.push(entry(Verdict::Failed, false));
        failed = true;
        j += 1;
    }
    Ok(InvarianceReport {
        genus: w.genus(),
        homology_only: w.genus() >= 2,
        verdicts,
    })
}

/// The even palindrome `tau_{a_1}^{s_1} ... tau_{a_w}^{s_w} tau_{a_w}^{s_w} ... tau_{a_1}^{s_1}`.
pub fn palindrome_word(curves: &[CurveClass], exps: &[i64]) -> Result<TwistWord, WordError> {
    if curves.len() != exps.len() {
        return Err(WordError::LengthMismatch {
            curves: curves.len(),
            exps: exps.len(),
        });
    }
    let genus = curves.first().map_or(1, |c| c.genus());
    let half: Vec<TwistFactor> = curves
        .iter()
        .zip(exps)
        .map(|(c, &e)| TwistFactor::new(c.clone(), e))
        .collect::<Result<_, _>>()?;
    let factors = half.iter().chain(half.iter().rev()).cloned().collect();
    TwistWord::new(factors, None, genus)
}

/// Rewrites the even palindrome on `s`-invariant curves `a_1, ..., a_w` as
/// `tau_{r_w}^{2 s_w} ... tau_{r_1}^{2 s_1}` with `r_1 = a_1` and
/// `r_{j+1} = f_j(a_{j+1})`, `f_j = tau_{a_1}^{s_1} ... tau_{a_j}^{s_j}`.
///
/// The result has no base; it is recursively `s`-invariant.
pub fn factor_palindrome(
    curves: &[CurveClass],
    exps: &[i64],
    s: &IntMatrix,
) -> Result<TwistWord, WordError> {
    if curves.len() != exps.len() {
        return Err(WordError::LengthMismatch {
            curves: curves.len(),
            exps: exps.len(),
        });
    }
    let genus = curves.first().map_or(s.genus(), |c| c.genus());
    let form = SymplecticForm::new(genus);
    check_real(&form, s)?;
    for (index, c) in curves.iter().enumerate() {
        if c.dim() != form.dim() {
            return Err(WordError::GenusMismatch {
                curve: c.to_string(),
                dim: c.dim(),
                genus,
            });
        }
        if s.act(c)? != *c {
            return Err(WordError::NonInvariantCurve {
                index,
                curve: c.to_string(),
            });
        }
    }
    let mut f = IntMatrix::identity(form.dim());
    let mut squared = Vec::with_capacity(curves.len());
    for (a, &e) in curves.iter().zip(exps) {
        let r = f.act(a)?;
        let factor = TwistFactor::new(r, 2 * e)?;
        f = &f * &form.transvection(a, e)?;
        squared.push(factor);
    }
    squared.reverse();
    TwistWord::new(squared, None, genus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::c_st;

    fn word(s: &str) -> TwistWord {
        s.parse().unwrap()
    }

    #[test]
    fn invariant_single_twist() {
        let rep = validate_recursive_invariance(&word("(a-b)^1"), &c_st()).unwrap();
        assert!(rep.all_passed());
        assert_eq!(rep.verdicts[0].verdict, Verdict::Invariant);
        assert_eq!(rep.label(), "verified");
    }

    #[test]
    fn empty_word_passes() {
        let rep = validate_recursive_invariance(&word(""), &c_st()).unwrap();
        assert!(rep.all_passed());
        assert!(rep.verdicts.is_empty());
    }

    #[test]
    fn non_invariant_twist_fails_at_first_step() {
        let rep = validate_recursive_invariance(&word("(a+b)^1 a^1"), &c_st()).unwrap();
        assert!(!rep.all_passed());
        let fail = rep.first_failure().unwrap();
        assert_eq!((fail.step, fail.position), (1, 1));
        assert_eq!(rep.verdicts[1].verdict, Verdict::Skipped);
    }

    #[test]
    fn rejects_non_real_structure() {
        let err = validate_recursive_invariance(&word("a^1"), &IntMatrix::mat2(1, 1, 0, 1));
        assert_eq!(err, Err(WordError::NotRealStructure));
    }

    #[test]
    fn swapped_disjoint_pair_at_genus_two() {
        // s swaps the two handles; a_1 and a_2 are disjoint and exchanged
        let s =
            IntMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, -1, 0]]);
        let form = SymplecticForm::new(2);
        assert!(form.is_real_structure(&s));
        let w = word("v[0,1,0,0]^2 v[1,0,0,0]^2");
        let rep = validate_recursive_invariance(&w, &s).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.verdicts[0].verdict, Verdict::SwappedWithNext);
        assert_eq!(rep.verdicts[1].verdict, Verdict::PairedWithPrevious);
        assert_eq!(rep.label(), "verified on H_1");
        // unequal exponents break the involution, so the pair is refused
        let w = word("v[0,1,0,0]^1 v[1,0,0,0]^2");
        assert!(!validate_recursive_invariance(&w, &s).unwrap().all_passed());
    }

    #[test]
    fn palindrome_single_curve() {
        let a1 = CurveClass::a_minus_b();
        let w = factor_palindrome(std::slice::from_ref(&a1), &[1], &c_st()).unwrap();
        assert_eq!(w.factors(), &[TwistFactor::new(a1, 2).unwrap()]);
    }

    #[test]
    fn palindrome_two_curves_genus_one() {
        let curves = [CurveClass::a_minus_b(), CurveClass::a_plus_b()];
        let w = factor_palindrome(&curves, &[1, 1], &c_st()).unwrap();
        // r_2 = tau_{a-b}(a+b) = [[2,1],[-1,0]] (1,1) = (3,-1)
        let r2 = CurveClass::torus(3, -1);
        assert_eq!(w.to_string(), format!("{}^2 (a-b)^2", curve_name(&r2)));
        assert_eq!(w.eval(), palindrome_word(&curves, &[1, 1]).unwrap().eval());
        assert!(validate_recursive_invariance(&w, &c_st())
            .unwrap()
            .all_passed());
    }

    #[test]
    fn palindrome_rejects_non_invariant_curve() {
        let err = factor_palindrome(&[CurveClass::a()], &[1], &c_st());
        assert!(matches!(
            err,
            Err(WordError::NonInvariantCurve { index: 0, .. })
        ));
        assert!(matches!(
            factor_palindrome(&[CurveClass::a_plus_b()], &[1, 2], &c_st()),
            Err(WordError::LengthMismatch { .. })
        ));
        assert_eq!(
            factor_palindrome(&[CurveClass::a_plus_b()], &[0], &c_st()),
            Err(WordError::ZeroExponent)
        );
    }
}
