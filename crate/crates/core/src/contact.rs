//! Equivariant contact surgery legality on the standard genus-one splitting
//! of `S^3`, whose dividing set is two parallel copies of `a-b`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{self, format_signed};
use crate::surgery::{
    heegaard_minus_seifert, KnotRole, RealTorusType, SurgeryDiagram, SurgeryKnot,
};
use crate::word::{find_fix_pattern, TwistWord};

/// Dividing-set slope `numerator/denominator`, reduced, denominator `>= 0`;
/// `1/0` is infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    numerator: BigInt,
    denominator: BigInt,
}

impl Slope {
    /// `None` for `0/0`.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Option<Self> {
        let g = numerator.gcd(&denominator);
        if g.is_zero() {
            return None;
        }
        let (mut n, mut d) = (numerator / &g, denominator / &g);
        if d.is_negative() || (d.is_zero() && n.is_negative()) {
            n = -n;
            d = -d;
        }
        Some(Slope {
            numerator: n,
            denominator: d,
        })
    }

    pub fn from_i64(numerator: i64, denominator: i64) -> Option<Self> {
        Self::new(numerator.into(), denominator.into())
    }

    pub fn infinity() -> Self {
        Slope {
            numerator: BigInt::one(),
            denominator: BigInt::zero(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_infinite(&self) -> bool {
        self.denominator.is_zero()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Whether a tight `t`-real solid torus with boundary slope `s` exists.
pub fn tight_solid_torus_exists(t: RealTorusType, s: &Slope) -> bool {
    if !s.numerator.abs().is_one() {
        return false;
    }
    match t {
        RealTorusType::C1 | RealTorusType::C2 => true,
        RealTorusType::C3 => s.denominator.is_odd(),
        RealTorusType::C4 => s.denominator.is_even(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IllegalReason {
    /// Contact coefficient `0`: no surgery slope.
    NoSlope,
    C3Knot,
    NotUnitNumerator,
    /// Positive twist on a `c4` middle knot with no fix-rule rewrite available.
    PositiveC4Middle,
}

impl fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IllegalReason::NoSlope => "NoSlope",
            IllegalReason::C3Knot => "C3Knot",
            IllegalReason::NotUnitNumerator => "NotUnitNumerator",
            IllegalReason::PositiveC4Middle => "PositiveC4Middle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlueBack {
    Extends(RealTorusType),
    Illegal(IllegalReason),
}

/// Real structure of the tight solid torus glued back in a contact
/// `1/q`-surgery along a `k`-knot, with longitude coefficient `p'`
/// (`q' = q p' - 1`).
pub fn contact_glueback(k: RealTorusType, q: i64, p_prime: i64) -> GlueBack {
    use RealTorusType::*;
    let q_prime = q * p_prime - 1;
    let t = match k {
        C1 => C1,
        C2 if q.is_even() => C2,
        C2 if q_prime.is_odd() => C4,
        C2 => C3,
        C3 => return GlueBack::Illegal(IllegalReason::C3Knot),
        C4 if q.is_odd() => C2,
        C4 if p_prime.is_even() => C4,
        C4 => C3,
    };
    GlueBack::Extends(t)
}

/// Contact twisting of the Legendrian realization of `(m, n)` relative to
/// the Heegaard torus.
pub fn tw_wrt_heegaard(m: i64, n: i64) -> i64 {
    -(m + n).abs()
}

pub fn contact_coefficient(smooth_coeff_h: &BigRational, tw_h: i64) -> BigRational {
    smooth_coeff_h - rational::int(tw_h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TightnessHint {
    Tight,
    Overtwisted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactKnotData {
    pub tw: i64,
    pub tb: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub coeff: BigRational,
    /// Only set for invariant knots.
    pub glue_back: Option<RealTorusType>,
    pub legal: bool,
    pub reason: Option<IllegalReason>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactDiagram {
    pub base: SurgeryDiagram,
    /// One entry per knot of `base`, same order.
    pub contact: Vec<ContactKnotData>,
    pub overall_legal: bool,
    pub tightness_hint: TightnessHint,
}

impl ContactDiagram {
    pub fn knots(&self) -> impl Iterator<Item = (&SurgeryKnot, &ContactKnotData)> {
        self.base.knots.iter().zip(&self.contact)
    }

    pub fn has_reason(&self, reason: IllegalReason) -> bool {
        self.contact.iter().any(|c| c.reason == Some(reason))
    }

    pub fn render_ascii(&self) -> String {
        let mut rows: Vec<_> = self.knots().collect();
        rows.sort_by_key(|(k, _)| k.level);
        let mut out = format!(
            "ambient {}  legal {}  tightness {:?}\n",
            self.base.ambient, self.overall_legal, self.tightness_hint
        );
        out.push_str(&format!(
            "{:>5}  {:<8} {:>6} {:>4} {:>4} {:>8}  {:<6} {}\n",
            "level", "curve", "coeff", "tw", "tb", "contact", "type", "glue"
        ));
        for (k, c) in rows {
            let glue = match (c.glue_back, c.reason) {
                (_, Some(r)) => format!("illegal {r}"),
                (Some(t), None) => t.to_string(),
                (None, None) => "pair".into(),
            };
            out.push_str(&format!(
                "{:>5}  {:<8} {:>6} {:>4} {:>4} {:>8}  {:<6} {}\n",
                k.level,
                crate::word::curve_name(&k.curve),
                format_signed(&k.coeff),
                c.tw,
                c.tb,
                format_signed(&c.coeff),
                k.label.to_string(),
                glue
            ));
        }
        out
    }
}

#[derive(Serialize)]
struct KnotView<'a> {
    #[serde(flatten)]
    knot: &'a SurgeryKnot,
    contact: &'a ContactKnotData,
}

#[derive(Serialize)]
struct DiagramView<'a> {
    ambient: &'a str,
    knots: Vec<KnotView<'a>>,
    notes: &'a [String],
    overall_legal: bool,
    tightness_hint: TightnessHint,
}

impl Serialize for ContactDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramView {
            ambient: &self.base.ambient,
            knots: self
                .knots()
                .map(|(knot, contact)| KnotView { knot, contact })
                .collect(),
            notes: &self.base.notes,
            overall_legal: self.overall_legal,
            tightness_hint: self.tightness_hint,
        }
        .serialize(s)
    }
}

fn torus_coords(knot: &SurgeryKnot) -> (i64, i64) {
    knot.curve
        .torus_coords()
        .expect("contact data is only defined on the genus-one splitting")
}

/// Promotes a surgery diagram in `(S^3, c_st)` to contact data. Each invariant
/// knot needs a contact coefficient `1/q` and a legal glue-back (longitude
/// choice `p' = 0`); pairs are recorded as legal.
///
/// `source` is the twist word the diagram came from. When it is given, an
/// illegal positive `c4` twist is reported as `PositiveC4Middle` unless the
/// fix-rule pattern is present.
///
/// Panics if a knot is not on a genus-one surface.
pub fn legalize(d: &SurgeryDiagram, source: Option<&TwistWord>) -> ContactDiagram {
    let fix_available = source.map(|w| find_fix_pattern(w).is_some());
    let mut contact: Vec<ContactKnotData> = Vec::with_capacity(d.knots.len());
    for (i, k) in d.knots.iter().enumerate() {
        // parallel copies of one middle twist share their data
        if i > 0 && d.knots[i - 1] == *k {
            let last = contact[i - 1].clone();
            contact.push(last);
            continue;
        }
        let (m, n) = torus_coords(k);
        let tw = tw_wrt_heegaard(m, n);
        let coeff = contact_coefficient(&k.coeff, tw);
        let mut data = ContactKnotData {
            tw,
            tb: tw + heegaard_minus_seifert(m, n),
            coeff,
            glue_back: None,
            legal: true,
            reason: None,
            notes: Vec::new(),
        };
        if let KnotRole::Invariant(kind) = k.role {
            judge_invariant(kind, &mut data, fix_available);
        } else if data.coeff.is_zero() {
            data.notes
                .push("contact coefficient 0 on a pair knot".into());
        }
        contact.push(data);
    }
    ContactDiagram {
        base: d.clone(),
        overall_legal: contact.iter().all(|c| c.legal),
        contact,
        tightness_hint: TightnessHint::Unknown,
    }
}

fn judge_invariant(kind: RealTorusType, data: &mut ContactKnotData, fix_available: Option<bool>) {
    let c = &data.coeff;
    let outcome = if c.is_zero() {
        GlueBack::Illegal(IllegalReason::NoSlope)
    } else if c.numer().abs().is_one() {
        let q = c.denom() * c.numer().signum();
        match i64::try_from(&q) {
            Ok(q) => contact_glueback(kind, q, 0),
            Err(_) => GlueBack::Illegal(IllegalReason::NotUnitNumerator),
        }
    } else if kind == RealTorusType::C1 {
        data.notes
            .push("c1 glue-back for a non-unit coefficient".into());
        GlueBack::Extends(RealTorusType::C1)
    } else if kind == RealTorusType::C3 {
        GlueBack::Illegal(IllegalReason::C3Knot)
    } else {
        let positive_c4 = kind == RealTorusType::C4 && c.is_positive();
        match fix_available {
            Some(true) if positive_c4 => {
                data.notes.push("fix rule applicable".into());
                GlueBack::Illegal(IllegalReason::NotUnitNumerator)
            }
            Some(false) if positive_c4 => GlueBack::Illegal(IllegalReason::PositiveC4Middle),
            _ => GlueBack::Illegal(IllegalReason::NotUnitNumerator),
        }
    };
    match outcome {
        GlueBack::Extends(t) => data.glue_back = Some(t),
        GlueBack::Illegal(r) => {
            data.legal = false;
            data.reason = Some(r);
        }
    }
}
