//! Topological equivariant surgery: solid-torus real structures, extension
//! rules, `i_j` labels and leveled surgery diagrams read off twist words.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linear::{c_st, CurveClass, IntMatrix};
use crate::rational::{self, format_signed};
use crate::word::{curve_name, EquivariantShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("p*q' - q*p' = {det}, expected -1")]
    BadSpec { det: BigInt },
    #[error("cannot determine the solid-torus type of curve {curve} under the base")]
    UnknownKnotType { curve: String },
    #[error("curve {curve} is not invariant under the base")]
    NotInvariant { curve: String },
    #[error("label 1_1 needs to know whether the fixed points lie on one component")]
    MissingComponentFlag,
    #[error("no surgery of type {0}")]
    ImpossibleLabel(SurgeryLabel),
}

/// The four real structures on `S^1 x D^2`. On the boundary torus, with `x`
/// meridional, they act as `c1: -v`, `c2: v + (1/2,0)`, `c3: v + (0,1/2)`,
/// `c4: v + (1/2,1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealTorusType {
    C1,
    C2,
    C3,
    C4,
}

impl RealTorusType {
    pub const ALL: [RealTorusType; 4] = [
        RealTorusType::C1,
        RealTorusType::C2,
        RealTorusType::C3,
        RealTorusType::C4,
    ];

    pub fn index(self) -> u8 {
        match self {
            RealTorusType::C1 => 1,
            RealTorusType::C2 => 2,
            RealTorusType::C3 => 3,
            RealTorusType::C4 => 4,
        }
    }
}

impl fmt::Display for RealTorusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.index())
    }
}

/// Gluing data of a `p/q` surgery: the new meridian goes to `p mu + q lambda`
/// and the new longitude to `p' mu + q' lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgerySpec {
    p: BigInt,
    q: BigInt,
    p_prime: BigInt,
    q_prime: BigInt,
}

impl SurgerySpec {
    pub fn new(
        p: BigInt,
        q: BigInt,
        p_prime: BigInt,
        q_prime: BigInt,
    ) -> Result<Self, SurgeryError> {
        let det = &p * &q_prime - &q * &p_prime;
        if det != -BigInt::one() {
            return Err(SurgeryError::BadSpec { det });
        }
        Ok(SurgerySpec {
            p,
            q,
            p_prime,
            q_prime,
        })
    }

    pub fn from_i64(p: i64, q: i64, p_prime: i64, q_prime: i64) -> Result<Self, SurgeryError> {
        Self::new(p.into(), q.into(), p_prime.into(), q_prime.into())
    }

    /// Some spec with slope `p/q = coeff`; the longitude is whatever the
    /// extended Euclidean algorithm yields.
    pub fn from_coefficient(coeff: &BigRational) -> Self {
        let (p, q) = (coeff.numer().clone(), coeff.denom().clone());
        let e = p.extended_gcd(&q);
        // x p + y q = g = +-1
        let (x, y) = if e.gcd.is_negative() {
            (-e.x, -e.y)
        } else {
            (e.x, e.y)
        };
        Self::new(p, q, y, -x).expect("coprime slope")
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn p_prime(&self) -> &BigInt {
        &self.p_prime
    }

    pub fn q_prime(&self) -> &BigInt {
        &self.q_prime
    }

    /// `[[p, p'], [q, q']]`.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(vec![
            vec![self.p.clone(), self.p_prime.clone()],
            vec![self.q.clone(), self.q_prime.clone()],
        ])
        .expect("2x2")
    }
}

fn split(first: &BigInt, second: &BigInt) -> RealTorusType {
    if first.is_even() {
        RealTorusType::C2
    } else if second.is_even() {
        RealTorusType::C3
    } else {
        RealTorusType::C4
    }
}

/// Real structure on the glued-in solid torus after surgery along a `k`-knot.
pub fn extension_type(k: RealTorusType, s: &SurgerySpec) -> RealTorusType {
    match k {
        RealTorusType::C1 => RealTorusType::C1,
        RealTorusType::C2 => split(&s.q, &s.q_prime),
        RealTorusType::C3 => split(&s.p, &s.p_prime),
        RealTorusType::C4 => split(&(&s.p + &s.q), &(&s.p_prime + &s.q_prime)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurgeryLabel {
    /// Excise a `from` solid torus, glue back a `to` one.
    Typed {
        from: RealTorusType,
        to: RealTorusType,
    },
    /// Mirrored pair along `K` and `c(K)`.
    Type5,
}

impl SurgeryLabel {
    pub fn typed(from: RealTorusType, to: RealTorusType) -> Self {
        SurgeryLabel::Typed { from, to }
    }

    /// Labels that give equivariantly diffeomorphic results: a meridional
    /// twist flips the parity deciding between `i_3` and `i_4`.
    pub fn equivalent_labels(self) -> Vec<SurgeryLabel> {
        match self {
            SurgeryLabel::Typed {
                from,
                to: RealTorusType::C3 | RealTorusType::C4,
            } if from != RealTorusType::C1 => {
                vec![
                    SurgeryLabel::typed(from, RealTorusType::C3),
                    SurgeryLabel::typed(from, RealTorusType::C4),
                ]
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for SurgeryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryLabel::Typed { from, to } => write!(f, "{}_{}", from.index(), to.index()),
            SurgeryLabel::Type5 => f.write_str("5"),
        }
    }
}

impl Serialize for SurgeryLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn surgery_type_label(k: RealTorusType, s: &SurgerySpec) -> SurgeryLabel {
    SurgeryLabel::typed(k, extension_type(k, s))
}

/// Change in the number of components of the real part.
///
/// `same_component` says whether the two fixed points of a `c1`-knot lie on
/// one component; it is required for `1_1` and ignored otherwise.
pub fn fix_delta(label: SurgeryLabel, same_component: Option<bool>) -> Result<i32, SurgeryError> {
    use RealTorusType::*;
    let (from, to) = match label {
        SurgeryLabel::Type5 => return Ok(0),
        SurgeryLabel::Typed { from, to } => (from, to),
    };
    match (from, to) {
        (C1, C1) => match same_component {
            Some(true) => Ok(1),
            Some(false) => Ok(-1),
            None => Err(SurgeryError::MissingComponentFlag),
        },
        (C1, _) | (_, C1) => Err(SurgeryError::ImpossibleLabel(label)),
        (C2, C3 | C4) => Ok(-1),
        (C3 | C4, C2) => Ok(1),
        _ => Ok(0),
    }
}

/// Heegaard framing minus Seifert framing of the torus knot `(m, n)` on the
/// standard genus-one splitting of `S^3`.
pub fn heegaard_minus_seifert(m: i64, n: i64) -> i64 {
    m * n
}

/// Solid-torus type of an invariant knot given by `curve` on the Heegaard
/// surface with real structure `base`. A reversed curve is a `c1`-knot; under
/// `c_st` the fixed curve `a+b` is a `c4`-knot. Anything else is refused.
pub fn knot_type(base: &IntMatrix, curve: &CurveClass) -> Result<RealTorusType, SurgeryError> {
    let image = base
        .apply(curve.coords())
        .map_err(|_| SurgeryError::UnknownKnotType {
            curve: curve_name(curve),
        })?;
    if image.iter().zip(curve.coords()).all(|(x, y)| *x == -y) {
        return Ok(RealTorusType::C1);
    }
    if image != curve.coords() {
        return Err(SurgeryError::NotInvariant {
            curve: curve_name(curve),
        });
    }
    if *base == c_st() && *curve == CurveClass::a_plus_b() {
        return Ok(RealTorusType::C4);
    }
    Err(SurgeryError::UnknownKnotType {
        curve: curve_name(curve),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotRole {
    Invariant(RealTorusType),
    PairPrimary(usize),
    PairMirror(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryKnot {
    /// Layer of the surface the knot is pushed to; `0` is the middle surface.
    pub level: i64,
    pub curve: CurveClass,
    /// Surface-framed coefficient.
    #[serde(serialize_with = "rational::serialize")]
    pub coeff: BigRational,
    pub role: KnotRole,
    #[serde(rename = "type")]
    pub label: SurgeryLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryDiagram {
    pub ambient: String,
    pub knots: Vec<SurgeryKnot>,
    pub notes: Vec<String>,
}

pub const DEFAULT_AMBIENT: &str = "S3_cst";

impl SurgeryDiagram {
    pub fn invariant_knots(&self) -> impl Iterator<Item = &SurgeryKnot> {
        self.knots
            .iter()
            .filter(|k| matches!(k.role, KnotRole::Invariant(_)))
    }

    /// Number of type-5 pairs.
    pub fn pair_count(&self) -> usize {
        self.knots
            .iter()
            .filter(|k| matches!(k.role, KnotRole::PairPrimary(_)))
            .count()
    }

    /// Text table of the knots, by level.
    pub fn render_ascii(&self) -> String {
        let mut rows: Vec<&SurgeryKnot> = self.knots.iter().collect();
        rows.sort_by_key(|k| k.level);
        let mut out = format!("ambient {}\n", self.ambient);
        out.push_str(&format!(
            "{:>5}  {:<12} {:>6}  {:<12} {}\n",
            "level", "curve", "coeff", "role", "type"
        ));
        for k in rows {
            let role = match k.role {
                KnotRole::Invariant(t) => format!("invariant {t}"),
                KnotRole::PairPrimary(i) => format!("pair {i}"),
                KnotRole::PairMirror(i) => format!("mirror {i}"),
            };
            out.push_str(&format!(
                "{:>5}  {:<12} {:>6}  {:<12} {}\n",
                k.level,
                curve_name(&k.curve),
                format_signed(&k.coeff),
                role,
                k.label
            ));
        }
        out
    }
}

/// Reads a validated equivariant shape as a surgery diagram: the mirror pair
/// `i` becomes knots at levels `-i` and `+i` with coefficient `-1/s_i`, and
/// each unit middle twist `tau^{+-1}` an invariant `(+-1)`-surgery at level 0.
pub fn word_to_diagram(
    shape: &EquivariantShape,
    ambient: &str,
) -> Result<SurgeryDiagram, SurgeryError> {
    let t = shape.depth();
    let mut knots = Vec::with_capacity(2 * t + shape.middle.len());
    for (k, f) in shape.outer.iter().enumerate() {
        let i = t - k;
        knots.push(SurgeryKnot {
            level: -(i as i64),
            curve: f.curve().clone(),
            coeff: -rational::int(f.exponent()).recip(),
            role: KnotRole::PairPrimary(i),
            label: SurgeryLabel::Type5,
        });
    }
    let mut previous: Option<SurgeryKnot> = None;
    for f in &shape.middle {
        let knot = match previous.take() {
            Some(k) if k.curve == *f.curve() && k.coeff == rational::int(f.exponent()) => k,
            _ => {
                let kind = knot_type(&shape.base, f.curve())?;
                let coeff = rational::int(f.exponent().signum());
                let spec = SurgerySpec::from_coefficient(&coeff);
                SurgeryKnot {
                    level: 0,
                    curve: f.curve().clone(),
                    coeff,
                    role: KnotRole::Invariant(kind),
                    label: surgery_type_label(kind, &spec),
                }
            }
        };
        knots.push(knot.clone());
        previous = Some(knot);
    }
    for (k, f) in shape.mirrored.iter().enumerate() {
        let i = k + 1;
        knots.push(SurgeryKnot {
            level: i as i64,
            curve: f.curve().clone(),
            coeff: -rational::int(f.exponent()).recip(),
            role: KnotRole::PairMirror(i),
            label: SurgeryLabel::Type5,
        });
    }

    let mut notes = vec![format!("word {}", shape.to_word())];
    let mut run = 0usize;
    for (idx, f) in shape.middle.iter().enumerate() {
        run += 1;
        if shape.middle.get(idx + 1).is_none_or(|g| g != f) {
            if run > 1 {
                notes.push(format!(
                    "{}^{} split into {run} parallel unit surgeries",
                    curve_name(f.curve()),
                    run as i64 * f.exponent()
                ));
            }
            run = 0;
        }
    }
    Ok(SurgeryDiagram {
        ambient: ambient.to_string(),
        knots,
        notes,
    })
}
