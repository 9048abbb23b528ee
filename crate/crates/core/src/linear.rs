//! Exact integer linear algebra on `H_1` of a closed surface.
//!
//! Everything here works over arbitrary-precision integers. Matrices act on
//! column vectors, so a word `g_k ... g_1` evaluates to `M(g_k) * ... * M(g_1)`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("dimension {0} is not a positive even number")]
    OddDimension(usize),
    #[error("matrix rows are not all of length {0}")]
    NotSquare(usize),
    #[error("the zero vector is not a curve class")]
    ZeroVector,
    #[error("vector {coords} is not primitive (gcd {gcd})")]
    NotPrimitive { coords: String, gcd: BigInt },
    #[error("cannot parse matrix literal: {0}")]
    Parse(String),
}

/// Square integer matrix of even dimension `2g`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        IntMatrix { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LinearError> {
        let dim = rows.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(LinearError::OddDimension(dim));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(LinearError::NotSquare(dim));
        }
        Ok(IntMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for small literals.
    ///
    /// Panics if the rows do not form an even-dimensional square.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("literal matrix must be square of even dimension")
    }

    /// The 2x2 matrix `[[a, b], [c, d]]`.
    pub fn mat2(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::from_i64(&[&[a, b], &[c, d]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    pub fn multiply(&self, other: &IntMatrix) -> Result<IntMatrix, LinearError> {
        if self.dim != other.dim {
            return Err(LinearError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let rhs = other.get(k, j);
                    if !rhs.is_zero() {
                        out.entries[i * n + j] += lhs * rhs;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.dim;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut m: Vec<Vec<BigInt>> = self.rows().map(|r| r.to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * prev
    }

    pub fn invert(&self) -> Result<IntMatrix, LinearError> {
        let det = self.determinant();
        if det.abs() != BigInt::one() {
            return Err(LinearError::NotUnimodular(det));
        }
        if self.dim == 2 {
            // adjugate divided by det = +-1
            let (a, b, c, d) = (
                self.get(0, 0),
                self.get(0, 1),
                self.get(1, 0),
                self.get(1, 1),
            );
            return Ok(IntMatrix {
                dim: 2,
                entries: vec![d * &det, -(b * &det), -(c * &det), a * &det],
            });
        }
        let n = self.dim;
        let mut aug: Vec<Vec<BigRational>> = self
            .rows()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<BigRational> = r
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| LinearError::NotUnimodular(det.clone()))?;
            aug.swap(pivot, col);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &factor * y;
                    }
                }
            }
        }
        let rows = aug
            .into_iter()
            .map(|row| row[n..].iter().map(|x| x.to_integer()).collect())
            .collect();
        IntMatrix::from_rows(rows)
    }

    /// Integer power; negative exponents go through [`IntMatrix::invert`].
    pub fn pow(&self, exponent: i64) -> Result<IntMatrix, LinearError> {
        let mut base = if exponent < 0 {
            self.invert()?
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = IntMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.dim)
    }

    /// `A^2 = I`.
    pub fn is_involution(&self) -> bool {
        (self * self).is_identity()
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinearError> {
        if v.len() != self.dim {
            return Err(LinearError::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    /// Image of an unoriented curve class. Unimodular matrices keep primitive
    /// vectors primitive; anything else is reported, not normalised away.
    pub fn act(&self, curve: &CurveClass) -> Result<CurveClass, LinearError> {
        CurveClass::new(self.apply(curve.coords())?)
    }
}

/// The dimension-checked product; panics on mismatch.
impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.multiply(rhs).expect("matrix dimensions must agree")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        -&self
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses row-major nested arrays such as `[[0,1],[1,0]]`.
impl FromStr for IntMatrix {
    type Err = LinearError;

    fn from_str(s: &str) -> Result<Self, LinearError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || LinearError::Parse(s.to_string());
        let inner = compact
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(bad)?;
        let rows = inner
            .split("],[")
            .map(|row| {
                row.split(',')
                    .map(|x| x.parse::<BigInt>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(rows)
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonRow<'a>(&'a [BigInt]);

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&JsonInt(x))?;
        }
        seq.end()
    }
}

/// Nested arrays of integers; entries beyond `i64` are emitted as strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.dim))?;
        for row in self.rows() {
            seq.serialize_element(&JsonRow(row))?;
        }
        seq.end()
    }
}

/// A primitive integer vector up to sign: an unoriented essential curve (or
/// its homology class). The first nonzero coordinate is always positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    coords: Vec<BigInt>,
}

impl CurveClass {
    pub fn new(mut coords: Vec<BigInt>) -> Result<Self, LinearError> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(LinearError::OddDimension(coords.len()));
        }
        let gcd = coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if gcd.is_zero() {
            return Err(LinearError::ZeroVector);
        }
        if !gcd.is_one() {
            return Err(LinearError::NotPrimitive {
                coords: format_vec(&coords),
                gcd,
            });
        }
        if coords
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            for x in coords.iter_mut() {
                *x = -&*x;
            }
        }
        Ok(CurveClass { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, LinearError> {
        Self::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Genus-one curve `m a + n b`. Panics if `(m, n)` is not primitive.
    pub fn torus(m: i64, n: i64) -> Self {
        Self::from_i64(&[m, n]).expect("torus curve must be primitive")
    }

    pub fn a() -> Self {
        Self::torus(1, 0)
    }

    pub fn b() -> Self {
        Self::torus(0, 1)
    }

    pub fn a_plus_b() -> Self {
        Self::torus(1, 1)
    }

    pub fn a_minus_b() -> Self {
        Self::torus(1, -1)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    /// `(m, n)` for a genus-one curve that fits in `i64`.
    pub fn torus_coords(&self) -> Option<(i64, i64)> {
        match self.coords.as_slice() {
            [m, n] => Some((m.to_i64()?, n.to_i64()?)),
            _ => None,
        }
    }
}

fn format_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vec(&self.coords))
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveClass{self}")
    }
}

impl Serialize for CurveClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonRow(&self.coords).serialize(s)
    }
}

/// The standard alternating form on `Z^{2g}`: `<e_i, e_{g+i}> = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticForm {
    genus: usize,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        SymplecticForm { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    fn check(&self, len: usize) -> Result<(), LinearError> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(LinearError::DimensionMismatch {
                left: self.dim(),
                right: len,
            })
        }
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt, LinearError> {
        self.check(x.len())?;
        self.check(y.len())?;
        let g = self.genus;
        Ok((0..g).map(|i| &x[i] * &y[g + i] - &x[g + i] * &y[i]).sum())
    }

    /// Algebraic intersection number of two curve classes.
    pub fn intersection(&self, x: &CurveClass, y: &CurveClass) -> Result<BigInt, LinearError> {
        self.pair(x.coords(), y.coords())
    }

    /// Gram matrix `J = [[0, I], [-I, 0]]`.
    pub fn gram(&self) -> IntMatrix {
        let g = self.genus;
        let mut j = IntMatrix::zero(2 * g);
        for i in 0..g {
            j.set(i, g + i, BigInt::one());
            j.set(g + i, i, -BigInt::one());
        }
        j
    }

    /// The homology action of the Dehn twist `tau_curve^exponent`:
    /// `x -> x + exponent * <curve, x> * curve`.
    ///
    /// With `a = e_1`, `b = e_2` this gives `tau_a = [[1,1],[0,1]]` and
    /// `tau_b = [[1,0],[-1,1]]`.
    pub fn transvection(
        &self,
        curve: &CurveClass,
        exponent: i64,
    ) -> Result<IntMatrix, LinearError> {
        self.check(curve.dim())?;
        let n = self.dim();
        let g = self.genus;
        let gamma = curve.coords();
        let sigma = BigInt::from(exponent);
        let mut t = IntMatrix::identity(n);
        for j in 0..n {
            // <gamma, e_j>
            let w = if j >= g {
                gamma[j - g].clone()
            } else {
                -&gamma[j + g]
            };
            if w.is_zero() {
                continue;
            }
            let sw = &sigma * &w;
            for (i, gi) in gamma.iter().enumerate() {
                if !gi.is_zero() {
                    t.entries[i * n + j] += &sw * gi;
                }
            }
        }
        Ok(t)
    }

    pub fn is_symplectic(&self, m: &IntMatrix) -> bool {
        m.dim() == self.dim() && {
            let j = self.gram();
            &(&m.transpose() * &j) * m == j
        }
    }

    /// `A^T J A = -J`: the map reverses the intersection form.
    pub fn is_anti_symplectic(&self, m: &IntMatrix) -> bool {
        m.dim() == self.dim() && {
            let j = self.gram();
            &(&m.transpose() * &j) * m == -&j
        }
    }

    /// Orientation-reversing involution on `H_1`: the homology shadow of a
    /// real structure on the surface.
    pub fn is_real_structure(&self, m: &IntMatrix) -> bool {
        m.is_involution() && self.is_anti_symplectic(m)
    }
}

/// The genus-one gluing map of the standard real `S^3`, swapping `a` and `b`.
pub fn c_st() -> IntMatrix {
    IntMatrix::mat2(0, 1, 1, 0)
}
