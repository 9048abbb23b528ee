use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{small_terms, LensError};
use crate::contfrac::{ContFrac, Flavor};
use crate::rational;
use crate::surgery::{RealTorusType, SurgeryLabel};

fn decimal<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// One unknot of the chain: topological coefficient `r_i`, Legendrian with
/// `tb = r_i + 1` and contact `(-1)`-surgery, type `1_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainKnot {
    pub index: usize,
    pub coeff: i64,
    pub tb: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub contact_coeff: BigRational,
    pub kind: RealTorusType,
    #[serde(rename = "type")]
    pub label: SurgeryLabel,
    /// Admissible rotation numbers `tb + 1, tb + 3, ..., -tb - 1`.
    pub rotations: Vec<i64>,
}

/// Linear chain of `c1`-unknots for the real structure `A` on `L(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeAChain {
    pub p: i64,
    pub q: i64,
    pub cf: Vec<i64>,
    pub knots: Vec<ChainKnot>,
    #[serde(serialize_with = "decimal")]
    pub honda_count: BigInt,
}

impl TypeAChain {
    /// Every choice of one rotation number per knot, in odometer order.
    pub fn assignments(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let sizes: Vec<usize> = self.knots.iter().map(|k| k.rotations.len()).collect();
        let mut idx = vec![0usize; sizes.len()];
        let mut done = sizes.contains(&0);
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = idx
                .iter()
                .zip(&self.knots)
                .map(|(&i, k)| k.rotations[i])
                .collect();
            done = true;
            for pos in (0..idx.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < sizes[pos] {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            Some(out)
        })
    }

    pub fn count_assignments(&self) -> usize {
        self.assignments().count()
    }
}

pub fn type_a_chain(p: i64, q: i64) -> Result<TypeAChain, LensError> {
    let cf = ContFrac::expand(&p.into(), &q.into(), Flavor::Negative)?;
    let terms = small_terms(&cf)?;
    let knots = terms
        .iter()
        .enumerate()
        .map(|(index, &r)| {
            let tb = r + 1;
            ChainKnot {
                index: index + 1,
                coeff: r,
                tb,
                contact_coeff: rational::int(r - tb),
                kind: RealTorusType::C1,
                label: SurgeryLabel::typed(RealTorusType::C1, RealTorusType::C1),
                rotations: (tb + 1..=-tb - 1).step_by(2).collect(),
            }
        })
        .collect();
    Ok(TypeAChain {
        p,
        q,
        cf: terms,
        knots,
        honda_count: cf.honda_count()?,
    })
}
