use serde::Serialize;

use crate::linear::{CurveClass, IntMatrix, SymplecticForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub exponent: Option<i64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub max_exponent: i64,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Gens {
    a: IntMatrix,
    b: IntMatrix,
    a_inv: IntMatrix,
    b_inv: IntMatrix,
    form: SymplecticForm,
}

impl Gens {
    fn new() -> Self {
        let form = SymplecticForm::new(1);
        let a = form.transvection(&CurveClass::a(), 1).unwrap();
        let b = form.transvection(&CurveClass::b(), 1).unwrap();
        let a_inv = form.transvection(&CurveClass::a(), -1).unwrap();
        let b_inv = form.transvection(&CurveClass::b(), -1).unwrap();
        Gens {
            a,
            b,
            a_inv,
            b_inv,
            form,
        }
    }

    fn tau(&self, curve: CurveClass, n: i64) -> IntMatrix {
        self.form.transvection(&curve, n).unwrap()
    }
}

fn prod(ms: &[&IntMatrix]) -> IntMatrix {
    ms.iter().fold(IntMatrix::identity(2), |acc, m| &acc * m)
}

/// `X_r = [[0,-1],[1,r]]`, written literally so the check is independent of
/// the transvection code.
fn x_r(r: i64) -> IntMatrix {
    IntMatrix::mat2(0, -1, 1, r)
}

/// Checks the genus-one twist relations used to turn `X_{r_1} ... X_{r_n} c_st`
/// into equivariant products, each as an exact matrix identity, for every
/// exponent in `[-max_exponent, max_exponent]`.
pub fn verify_relations(max_exponent: i64) -> RelationReport {
    let g = Gens::new();
    let big_a = IntMatrix::mat2(0, -1, 1, 0);
    let minus_i = IntMatrix::mat2(-1, 0, 0, -1);
    let a_plus_b = CurveClass::a_plus_b();
    let a_minus_b = CurveClass::a_minus_b();
    let mut checks = Vec::new();
    let mut push = |name, exponent, passed| {
        checks.push(RelationCheck {
            name,
            exponent,
            passed,
        })
    };

    push("A^2 = -I", None, &big_a * &big_a == minus_i);
    push(
        "A = b^-1 a^-1 b^-1",
        None,
        prod(&[&g.b_inv, &g.a_inv, &g.b_inv]) == big_a,
    );
    push(
        "A = a^-1 b^-1 a^-1",
        None,
        prod(&[&g.a_inv, &g.b_inv, &g.a_inv]) == big_a,
    );
    push(
        "a^-1 (a+b) b^-1 = a^-1 a b a^-1 b^-1",
        None,
        prod(&[&g.a_inv, &g.tau(a_plus_b.clone(), 1), &g.b_inv])
            == prod(&[&g.a_inv, &g.a, &g.b, &g.a_inv, &g.b_inv]),
    );
    push(
        "a^-1 (a+b) b^-1 = (a-b)^-1",
        None,
        prod(&[&g.a_inv, &g.tau(a_plus_b.clone(), 1), &g.b_inv]) == g.tau(a_minus_b.clone(), -1),
    );

    for n in -max_exponent..=max_exponent {
        let an = g.tau(CurveClass::a(), n);
        let bn = g.tau(CurveClass::b(), n);
        let apb = g.tau(a_plus_b.clone(), n);
        let amb = g.tau(a_minus_b.clone(), n);
        let x = x_r(n);
        push("X_n = A a^n", Some(n), &big_a * &an == x);
        push("X_n = b^n A", Some(n), &bn * &big_a == x);
        push(
            "(a+b)^n = a b^n a^-1",
            Some(n),
            prod(&[&g.a, &bn, &g.a_inv]) == apb,
        );
        push(
            "(a+b)^n = b^-1 a^n b",
            Some(n),
            prod(&[&g.b_inv, &an, &g.b]) == apb,
        );
        push(
            "(a-b)^n = a^-1 b^n a",
            Some(n),
            prod(&[&g.a_inv, &bn, &g.a]) == amb,
        );
        push(
            "(a-b)^n = b a^n b^-1",
            Some(n),
            prod(&[&g.b, &an, &g.b_inv]) == amb,
        );
        // the four middle substitutions of the lens factorization
        push(
            "X_n = a^-1 (a+b)^(n-1) b^-1",
            Some(n),
            prod(&[&g.a_inv, &g.tau(a_plus_b.clone(), n - 1), &g.b_inv]) == x,
        );
        push(
            "A X_n A = b (a+b)^(n+1) a",
            Some(n),
            prod(&[&g.b, &g.tau(a_plus_b.clone(), n + 1), &g.a]) == prod(&[&big_a, &x, &big_a]),
        );
        push(
            "-X_n = a (a-b)^(n+1) b",
            Some(n),
            prod(&[&g.a, &g.tau(a_minus_b.clone(), n + 1), &g.b]) == -&x,
        );
        push(
            "-A X_n A = b^-1 (a-b)^(n-1) a^-1",
            Some(n),
            prod(&[&g.b_inv, &g.tau(a_minus_b.clone(), n - 1), &g.a_inv])
                == -prod(&[&big_a, &x, &big_a]),
        );
    }
    RelationReport {
        max_exponent,
        checks,
    }
}
