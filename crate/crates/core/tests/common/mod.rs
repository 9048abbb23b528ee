//! Independent reference computations on machine integers, written without
//! the library's matrix, continued-fraction or word code.
#![allow(dead_code)]

use eqsurg::linear::IntMatrix;

pub type M2 = [[i128; 2]; 2];

pub const ID: M2 = [[1, 0], [0, 1]];
pub const CST: M2 = [[0, 1], [1, 0]];

pub fn mul(x: M2, y: M2) -> M2 {
    let mut z = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    z
}

/// `tau_(m,n)^e = I + e [[-mn, m^2], [-n^2, mn]]`.
pub fn twist(m: i128, n: i128, e: i128) -> M2 {
    [[1 - e * m * n, e * m * m], [-e * n * n, 1 + e * m * n]]
}

/// Product of `twist`s followed by the base.
pub fn eval(factors: &[((i128, i128), i128)], base: M2) -> M2 {
    let prod = factors
        .iter()
        .fold(ID, |acc, &((m, n), e)| mul(acc, twist(m, n, e)));
    mul(prod, base)
}

pub fn to_lib(x: M2) -> IntMatrix {
    IntMatrix::mat2(
        x[0][0] as i64,
        x[0][1] as i64,
        x[1][0] as i64,
        x[1][1] as i64,
    )
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `p/q = r_1 - 1/(r_2 - ...)` with every `r_i >= 2`.
pub fn positive_cf(p: i64, q: i64) -> Vec<i64> {
    let (mut num, mut den) = (p, q);
    let mut out = Vec::new();
    while den != 0 {
        let r = (num + den - 1) / den;
        out.push(r);
        let rem = r * den - num;
        num = den;
        den = rem;
    }
    out
}

/// `-p/q` with every `r_i <= -2`.
pub fn negative_cf(p: i64, q: i64) -> Vec<i64> {
    positive_cf(p, q).into_iter().map(|r| -r).collect()
}

/// The lens gluing matrix `+-[[-q, p'], [p, q]]`.
pub fn lens_target(p: i64, q: i64, positive: bool) -> M2 {
    let pp = (1 - q * q) / p;
    let s = if positive { 1 } else { -1 };
    [
        [-s * q as i128, s * pp as i128],
        [s * p as i128, s * q as i128],
    ]
}

/// Solid-torus real structures as affine maps of the boundary torus, in
/// `(x, y)` with `x` meridional, on points with denominator `den`.
pub fn torus_action(kind: u8, (x, y): (i64, i64), den: i64) -> (i64, i64) {
    let half = den / 2;
    let r = |v: i64| v.rem_euclid(den);
    match kind {
        1 => (r(-x), r(-y)),
        2 => (r(x + half), r(y)),
        3 => (r(x), r(y + half)),
        4 => (r(x + half), r(y + half)),
        _ => unreachable!(),
    }
}

/// All `j` with `c_i o phi = phi o c_j` on the sample lattice, for
/// `phi = [[p, p'], [q, q']]`.
pub fn conjugation_solutions(i: u8, p: i64, q: i64, pp: i64, qq: i64) -> Vec<u8> {
    let den = 12;
    let phi = |(x, y): (i64, i64)| {
        (
            (p * x + pp * y).rem_euclid(den),
            (q * x + qq * y).rem_euclid(den),
        )
    };
    (1..=4)
        .filter(|&j| {
            (0..den).all(|x| {
                (0..den)
                    .all(|y| torus_action(i, phi((x, y)), den) == phi(torus_action(j, (x, y), den)))
            })
        })
        .collect()
}
