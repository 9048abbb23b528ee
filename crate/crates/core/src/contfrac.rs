//! Negative-regular ("minus") continued fractions
//! `[r_1, ..., r_n] = r_1 - 1/(r_2 - 1/(... - 1/r_n))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linear::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("expected p > q > 0, got p = {p}, q = {q}")]
    OutOfRange { p: BigInt, q: BigInt },
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: BigInt, q: BigInt },
    #[error("continued fraction needs at least one term")]
    Empty,
    #[error("term {term} at position {index} violates the {flavor:?} bound")]
    TermOutOfBounds {
        index: usize,
        term: BigInt,
        flavor: Flavor,
    },
    #[error("product matrix is only defined for the positive flavor")]
    WrongFlavor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Every term `>= 2`; expands `p/q`.
    Positive,
    /// Every term `<= -2`; expands `-p/q`.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContFrac {
    terms: Vec<BigInt>,
    flavor: Flavor,
}

fn check_pq(p: &BigInt, q: &BigInt) -> Result<(), ContFracError> {
    if !(q.is_positive() && p > q) {
        return Err(ContFracError::OutOfRange {
            p: p.clone(),
            q: q.clone(),
        });
    }
    if !p.gcd(q).is_one() {
        return Err(ContFracError::NotCoprime {
            p: p.clone(),
            q: q.clone(),
        });
    }
    Ok(())
}

impl ContFrac {
    pub fn new(terms: Vec<BigInt>, flavor: Flavor) -> Result<Self, ContFracError> {
        if terms.is_empty() {
            return Err(ContFracError::Empty);
        }
        let two = BigInt::from(2);
        let neg_two = BigInt::from(-2);
        for (index, t) in terms.iter().enumerate() {
            let ok = match flavor {
                Flavor::Positive => *t >= two,
                Flavor::Negative => *t <= neg_two,
            };
            if !ok {
                return Err(ContFracError::TermOutOfBounds {
                    index,
                    term: t.clone(),
                    flavor,
                });
            }
        }
        Ok(ContFrac { terms, flavor })
    }

    pub fn from_i64(terms: &[i64], flavor: Flavor) -> Result<Self, ContFracError> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect(), flavor)
    }

    /// Expands `p/q` (positive flavor) or `-p/q` (negative flavor) for coprime
    /// `p > q > 0`. The positive expansion takes ceilings, the negative one floors.
    pub fn expand(p: &BigInt, q: &BigInt, flavor: Flavor) -> Result<Self, ContFracError> {
        check_pq(p, q)?;
        let (mut num, mut den) = match flavor {
            Flavor::Positive => (p.clone(), q.clone()),
            Flavor::Negative => (-p, q.clone()),
        };
        let mut terms = Vec::new();
        loop {
            let r = match flavor {
                Flavor::Positive => num.div_ceil(&den),
                Flavor::Negative => num.div_floor(&den),
            };
            // r - num/den = (r*den - num)/den, and the tail is its reciprocal
            let rem = &r * &den - &num;
            terms.push(r);
            if rem.is_zero() {
                break;
            }
            num = den;
            den = rem;
        }
        Self::new(terms, flavor)
    }

    pub fn expand_i64(p: i64, q: i64, flavor: Flavor) -> Result<Self, ContFracError> {
        Self::expand(&BigInt::from(p), &BigInt::from(q), flavor)
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self) -> BigRational {
        let mut iter = self.terms.iter().rev();
        let last = iter.next().expect("continued fraction is nonempty");
        let mut value = BigRational::from_integer(last.clone());
        for r in iter {
            value = BigRational::from_integer(r.clone()) - value.recip();
        }
        value
    }

    pub fn is_palindrome(&self) -> bool {
        self.terms.iter().eq(self.terms.iter().rev())
    }

    /// `[[r_1,1],[-1,0]] ... [[r_n,1],[-1,0]] = [[p, q'], [-q, p']]`.
    pub fn product_matrix(&self) -> Result<IntMatrix, ContFracError> {
        if self.flavor != Flavor::Positive {
            return Err(ContFracError::WrongFlavor);
        }
        let mut acc = IntMatrix::identity(2);
        for r in &self.terms {
            let factor = IntMatrix::from_rows(vec![
                vec![r.clone(), BigInt::one()],
                vec![-BigInt::one(), BigInt::zero()],
            ])
            .expect("2x2");
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    /// Number of tight contact structures on `L(p, q)` for the negative
    /// expansion of `-p/q`: `|(r_1 + 1) ... (r_n + 1)|`.
    pub fn honda_count(&self) -> Result<BigInt, ContFracError> {
        if self.flavor != Flavor::Negative {
            return Err(ContFracError::WrongFlavor);
        }
        Ok(self
            .terms
            .iter()
            .map(|r| (r + BigInt::one()).abs())
            .fold(BigInt::one(), |acc, x| acc * x))
    }
}

/// `p' = (1 - q^2)/p`, defined exactly when `q^2 = 1 (mod p)`.
pub fn palindrome_partner(p: &BigInt, q: &BigInt) -> Option<BigInt> {
    let num = BigInt::one() - q * q;
    let (quot, rem) = num.div_rem(p);
    rem.is_zero().then_some(quot)
}

impl Serialize for ContFrac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| match i64::try_from(t) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(t.to_string()),
            })
            .collect();
        let mut st = s.serialize_struct("ContFrac", 2)?;
        st.serialize_field("flavor", &self.flavor)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(terms: &[i64], flavor: Flavor) -> ContFrac {
        ContFrac::from_i64(terms, flavor).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            ContFrac::expand_i64(2, 1, Flavor::Positive).unwrap(),
            cf(&[2], Flavor::Positive)
        );
        assert_eq!(
            ContFrac::expand_i64(3, 2, Flavor::Positive).unwrap(),
            cf(&[2, 2], Flavor::Positive)
        );
        assert_eq!(
            ContFrac::expand_i64(3, 1, Flavor::Negative).unwrap(),
            cf(&[-3], Flavor::Negative)
        );
        assert_eq!(
            ContFrac::expand_i64(4, 3, Flavor::Negative).unwrap(),
            cf(&[-2, -2, -2], Flavor::Negative)
        );
        assert_eq!(
            ContFrac::expand_i64(5, 4, Flavor::Positive).unwrap(),
            cf(&[2, 2, 2, 2], Flavor::Positive)
        );
    }

    #[test]
    fn expand_rejects_bad_input() {
        assert!(matches!(
            ContFrac::expand_i64(4, 2, Flavor::Positive),
            Err(ContFracError::NotCoprime { .. })
        ));
        assert!(matches!(
            ContFrac::expand_i64(2, 3, Flavor::Positive),
            Err(ContFracError::OutOfRange { .. })
        ));
        assert!(matches!(
            ContFrac::expand_i64(3, 0, Flavor::Negative),
            Err(ContFracError::OutOfRange { .. })
        ));
        assert!(matches!(
            ContFrac::expand_i64(1, 1, Flavor::Positive),
            Err(ContFracError::OutOfRange { .. })
        ));
    }

    #[test]
    fn new_checks_flavor_bounds() {
        assert!(ContFrac::from_i64(&[2, 1], Flavor::Positive).is_err());
        assert!(ContFrac::from_i64(&[-2, 2], Flavor::Negative).is_err());
        assert_eq!(
            ContFrac::from_i64(&[], Flavor::Positive),
            Err(ContFracError::Empty)
        );
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(cf(&[2], Flavor::Positive).evaluate(), rat(2, 1));
        assert_eq!(cf(&[2, 2], Flavor::Positive).evaluate(), rat(3, 2));
        assert_eq!(cf(&[2, 2, 2, 2], Flavor::Positive).evaluate(), rat(5, 4));
        assert_eq!(cf(&[-4, -3], Flavor::Negative).evaluate(), rat(-11, 3));
    }

    #[test]
    fn palindrome_examples() {
        assert!(cf(&[2, 3, 2], Flavor::Positive).is_palindrome());
        assert!(!cf(&[2, 3], Flavor::Positive).is_palindrome());
        assert!(ContFrac::expand_i64(5, 4, Flavor::Positive)
            .unwrap()
            .is_palindrome());
    }

    #[test]
    fn product_matrix_examples() {
        let m = |t: &[i64]| cf(t, Flavor::Positive).product_matrix().unwrap();
        assert_eq!(m(&[2]), IntMatrix::mat2(2, 1, -1, 0));
        assert_eq!(m(&[2, 2]), IntMatrix::mat2(3, 2, -2, -1));
        assert_eq!(m(&[2, 2, 2, 2]), IntMatrix::mat2(5, 4, -4, -3));
        assert_eq!(
            cf(&[-3], Flavor::Negative).product_matrix(),
            Err(ContFracError::WrongFlavor)
        );
    }

    #[test]
    fn honda_examples() {
        let h = |t: &[i64]| cf(t, Flavor::Negative).honda_count().unwrap();
        assert_eq!(h(&[-3]), BigInt::from(2));
        assert_eq!(h(&[-2, -2]), BigInt::from(1));
        assert_eq!(h(&[-4, -3]), BigInt::from(6));
        assert!(cf(&[2], Flavor::Positive).honda_count().is_err());
    }

    #[test]
    fn partner() {
        assert_eq!(
            palindrome_partner(&5.into(), &4.into()),
            Some(BigInt::from(-3))
        );
        assert_eq!(
            palindrome_partner(&2.into(), &1.into()),
            Some(BigInt::zero())
        );
        assert_eq!(palindrome_partner(&5.into(), &2.into()), None);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&cf(&[2, 3, 2], Flavor::Positive)).unwrap();
        assert_eq!(s, r#"{"flavor":"positive","terms":[2,3,2]}"#);
    }
}
