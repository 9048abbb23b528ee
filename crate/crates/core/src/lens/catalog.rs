use serde::{Serialize, Serializer};

use super::{build, Variant};
use crate::contact::{legalize, ContactDiagram, TightnessHint};
use crate::linear::IntMatrix;
use crate::surgery::{word_to_diagram, SurgeryDiagram, DEFAULT_AMBIENT};
use crate::word::{validate_equivariant_shape, TwistWord};

fn display<S: Serializer>(w: &TwistWord, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(serialize_with = "display")]
    pub word: TwistWord,
    pub expected_matrix: IntMatrix,
    /// Recomputed on construction.
    pub matrix_ok: bool,
    pub diagram: SurgeryDiagram,
    pub contact: ContactDiagram,
    pub tightness_hint: TightnessHint,
}

fn entry(name: &str, word: &str, expected: IntMatrix, hint: TightnessHint) -> CatalogEntry {
    let word: TwistWord = word.parse().expect("catalog word");
    let shape = validate_equivariant_shape(&word).expect("catalog word is equivariant");
    let diagram = word_to_diagram(&shape, DEFAULT_AMBIENT).expect("genus-one knot types");
    let mut contact = legalize(&diagram, Some(&word));
    contact.tightness_hint = hint;
    CatalogEntry {
        name: name.to_string(),
        matrix_ok: word.eval() == expected,
        word,
        expected_matrix: expected,
        diagram,
        contact,
        tightness_hint: hint,
    }
}

/// The four genus-one real structures on `S^1 x S^2`.
pub fn catalog_s1xs2() -> Vec<CatalogEntry> {
    use TightnessHint::*;
    vec![
        entry("s1", "(a+b)^-1 | cst", IntMatrix::mat2(-1, 2, 0, 1), Tight),
        entry("s2", "(a-b)^1 | cst", IntMatrix::mat2(1, 2, 0, -1), Tight),
        entry("s3", "b^-1 a^-1 | cst", IntMatrix::mat2(-1, 1, 0, 1), Tight),
        entry(
            "s4",
            "b^1 a^1 | cst",
            IntMatrix::mat2(1, 1, 0, -1),
            Overtwisted,
        ),
    ]
}

/// The real structure `C` on `RP^3 = L(2, 1)`, through the lens pipeline.
pub fn catalog_rp3() -> CatalogEntry {
    let report = build(2, 1, Variant::C).expect("(2, 1) is admissible");
    let mut e = entry(
        "rp3",
        &report.word.to_string(),
        report.target,
        TightnessHint::Tight,
    );
    e.matrix_ok &= report.matrix_ok;
    e
}
