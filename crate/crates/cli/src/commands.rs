use std::time::Instant;

// A closed stdout (e.g. piped into `head`) ends output quietly.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

use rayon::prelude::*;
use serde::Serialize;

use eqsurg::contact::IllegalReason;
use eqsurg::lens::{
    admissible_pairs, build, catalog_rp3, catalog_s1xs2, type_a_chain, CatalogEntry, LensError,
    LensReport, Variant,
};
use eqsurg::linear::{CurveClass, IntMatrix};
use eqsurg::word::{
    factor_palindrome, palindrome_word, validate_recursive_invariance, verify_relations, TwistWord,
    WordError,
};

use crate::{
    CatalogArgs, CatalogName, CensusArgs, Cli, Command, Format, LensArgs, PalindromeArgs,
    VerifyArgs,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INADMISSIBLE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Above this many stabilization assignments the chain is not enumerated.
const ENUMERATION_LIMIT: u64 = 1_000_000;

enum Failure {
    Usage(String),
    Inadmissible(String),
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: &Cli) -> u8 {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Lens(a) => lens(cli, a),
        Command::Census(a) => census(cli, a),
        Command::Catalog(a) => catalog(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::FactorPalindrome(a) => palindrome(cli, a),
    };
    if cli.verbose > 0 {
        eprintln!("elapsed {:.3?}", start.elapsed());
    }
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Inadmissible(msg)) => {
            eprintln!("inadmissible: {msg}");
            EXIT_INADMISSIBLE
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn code_for(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

fn lens_error(e: LensError) -> Failure {
    Failure::Inadmissible(e.to_string())
}

fn lens_text(r: &LensReport) -> String {
    let mut out = format!(
        "L({}, {}) variant {} case {}\n",
        r.p, r.q, r.variant, r.case
    );
    out.push_str(&format!(
        "cf          {:?} palindrome {}\n",
        r.cf, r.palindrome
    ));
    if r.fix_rule_applied {
        out.push_str(&format!("raw word    {}\n", r.raw_word));
    }
    out.push_str(&format!("word        {}\n", r.word));
    out.push_str(&format!("target      {}\n", r.target));
    out.push_str(&format!(
        "matrix_ok   {}\nshape_ok    {}\n",
        r.matrix_ok, r.shape_ok
    ));
    let flags: Vec<String> = r.flags.iter().map(|f| f.to_string()).collect();
    out.push_str(&format!(
        "flags       {}\n",
        if flags.is_empty() {
            "none".into()
        } else {
            flags.join(", ")
        }
    ));
    if let Some(e) = &r.shape_error {
        out.push_str(&format!("shape error {e}\n"));
    }
    if let Some(c) = &r.contact {
        out.push_str(&c.render_ascii());
    }
    out
}

fn lens(cli: &Cli, a: &LensArgs) -> Outcome {
    let r = build(a.p, a.q, a.variant).map_err(lens_error)?;
    match cli.format {
        Format::Json => emit(&r),
        Format::Text => out!("{}", lens_text(&r)),
    }
    Ok(code_for(r.verified()))
}

#[derive(Debug, Clone, Serialize)]
struct CensusRow {
    p: i64,
    q: i64,
    variant: Variant,
    case: String,
    matrix_ok: bool,
    shape_ok: bool,
    legal: bool,
    fix_rule_applied: bool,
    flags: Vec<IllegalReason>,
}

#[derive(Debug, Default, Serialize)]
struct CensusSummary {
    rows: usize,
    matrix_ok: usize,
    shape_ok: usize,
    legal: usize,
    fix_rule_applied: usize,
    positive_c4_middle: usize,
}

#[derive(Serialize)]
struct Census<'a> {
    max_p: i64,
    summary: &'a CensusSummary,
    rows: &'a [CensusRow],
}

fn census_row(p: i64, q: i64, v: Variant) -> CensusRow {
    let r = build(p, q, v).expect("admissible pairs only");
    CensusRow {
        p,
        q,
        variant: v,
        case: r.case.clone(),
        matrix_ok: r.matrix_ok,
        shape_ok: r.shape_ok,
        legal: r.legal(),
        fix_rule_applied: r.fix_rule_applied,
        flags: r.flags,
    }
}

fn census(cli: &Cli, a: &CensusArgs) -> Outcome {
    let tasks: Vec<(i64, i64, Variant)> = admissible_pairs(a.max_p)
        .into_iter()
        .flat_map(|(p, q)| Variant::BOTH.map(|v| (p, q, v)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut rows: Vec<CensusRow> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(p, q, v)| census_row(p, q, v))
            .collect()
    });
    rows.sort_by_key(|r| (r.p, r.q, r.variant));

    let mut s = CensusSummary {
        rows: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        s.matrix_ok += usize::from(r.matrix_ok);
        s.shape_ok += usize::from(r.shape_ok);
        s.legal += usize::from(r.legal);
        s.fix_rule_applied += usize::from(r.fix_rule_applied);
        s.positive_c4_middle += usize::from(r.flags.contains(&IllegalReason::PositiveC4Middle));
    }
    match cli.format {
        Format::Json => emit(&Census {
            max_p: a.max_p,
            summary: &s,
            rows: &rows,
        }),
        Format::Text => {
            outln!(
                "{:>5} {:>5} {:<7} {:<5} {:<6} {:<6} {:<6} {:<4} flags",
                "p",
                "q",
                "variant",
                "case",
                "matrix",
                "shape",
                "legal",
                "fix"
            );
            for r in &rows {
                let flags: Vec<String> = r.flags.iter().map(|f| f.to_string()).collect();
                outln!(
                    "{:>5} {:>5} {:<7} {:<5} {:<6} {:<6} {:<6} {:<4} {}",
                    r.p,
                    r.q,
                    r.variant.to_string(),
                    r.case,
                    r.matrix_ok,
                    r.shape_ok,
                    r.legal,
                    r.fix_rule_applied,
                    flags.join(",")
                );
            }
            outln!(
                "rows {}  matrix_ok {}  shape_ok {}  legal {}  fix_rule {}  PositiveC4Middle {}",
                s.rows,
                s.matrix_ok,
                s.shape_ok,
                s.legal,
                s.fix_rule_applied,
                s.positive_c4_middle
            );
        }
    }
    Ok(code_for(s.matrix_ok == s.rows && s.shape_ok == s.rows))
}

fn entry_text(e: &CatalogEntry) -> String {
    format!(
        "{}: {}\n  expected {}  matrix_ok {}  tightness {:?}\n{}",
        e.name,
        e.word,
        e.expected_matrix,
        e.matrix_ok,
        e.tightness_hint,
        e.contact.render_ascii()
    )
}

fn catalog(cli: &Cli, a: &CatalogArgs) -> Outcome {
    match a.name {
        CatalogName::S1xs2 | CatalogName::Rp3 => {
            if a.p.is_some() || a.q.is_some() {
                return Err(Failure::Usage("--p/--q only apply to typeA".into()));
            }
            let entries = match a.name {
                CatalogName::S1xs2 => catalog_s1xs2(),
                _ => vec![catalog_rp3()],
            };
            match cli.format {
                Format::Json => emit(&entries),
                Format::Text => entries.iter().for_each(|e| out!("{}", entry_text(e))),
            }
            Ok(code_for(entries.iter().all(|e| e.matrix_ok)))
        }
        CatalogName::TypeA => {
            let (Some(p), Some(q)) = (a.p, a.q) else {
                return Err(Failure::Usage("typeA needs --p and --q".into()));
            };
            let chain = type_a_chain(p, q).map_err(lens_error)?;
            let enumerated = u64::try_from(&chain.honda_count)
                .ok()
                .filter(|&n| n <= ENUMERATION_LIMIT)
                .map(|_| chain.count_assignments());
            let ok = enumerated.is_none_or(|n| chain.honda_count == n.into());
            match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct View<'a> {
                        #[serde(flatten)]
                        chain: &'a eqsurg::lens::TypeAChain,
                        enumerated: Option<usize>,
                        count_ok: bool,
                    }
                    emit(&View {
                        chain: &chain,
                        enumerated,
                        count_ok: ok,
                    });
                }
                Format::Text => {
                    outln!("L({p}, {q}) type A chain {:?}", chain.cf);
                    for k in &chain.knots {
                        outln!(
                            "  knot {}: coeff {} tb {} contact -1 type {} rotations {:?}",
                            k.index,
                            k.coeff,
                            k.tb,
                            k.label,
                            k.rotations
                        );
                    }
                    let shown = enumerated.map_or("not enumerated".into(), |n| n.to_string());
                    outln!("count {} (honda {})", shown, chain.honda_count);
                }
            }
            Ok(code_for(ok))
        }
    }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    if a.relations {
        let report = verify_relations(a.max_exp);
        match cli.format {
            Format::Json => emit(&report),
            Format::Text => {
                for c in &report.checks {
                    let n = c.exponent.map_or(String::new(), |n| format!(" n={n}"));
                    outln!("{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, n);
                }
                outln!(
                    "{} checks, {} failed",
                    report.checks.len(),
                    report.failures().count()
                );
            }
        }
        return Ok(code_for(report.all_passed()));
    }
    let (Some(word), Some(expect)) = (&a.word, &a.expect) else {
        return Err(Failure::Usage(
            "verify needs --word and --expect, or --relations".into(),
        ));
    };
    let w: TwistWord = word
        .parse()
        .map_err(|e: WordError| Failure::Usage(e.to_string()))?;
    let m: IntMatrix = expect.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    let got = w.eval();
    let ok = got == m;
    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct View<'a> {
                word: String,
                expected: &'a IntMatrix,
                evaluated: &'a IntMatrix,
                ok: bool,
            }
            emit(&View {
                word: w.to_string(),
                expected: &m,
                evaluated: &got,
                ok,
            });
        }
        Format::Text => outln!("{} = {}  {}", w, got, if ok { "ok" } else { "MISMATCH" }),
    }
    Ok(code_for(ok))
}

fn parse_curves(text: &str, genus: usize) -> Result<Vec<CurveClass>, Failure> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let coords: Vec<i64> = serde_json::from_str(s.trim())
                .map_err(|e| Failure::Usage(format!("curve {s:?}: {e}")))?;
            if coords.len() != 2 * genus {
                return Err(Failure::Usage(format!(
                    "curve {s:?} needs {} coordinates",
                    2 * genus
                )));
            }
            CurveClass::from_i64(&coords)
                .map_err(|e| Failure::Inadmissible(format!("curve {s:?}: {e}")))
        })
        .collect()
}

fn parse_exps(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| Failure::Usage(format!("exponent {s:?}: {e}")))
        })
        .collect()
}

fn palindrome(cli: &Cli, a: &PalindromeArgs) -> Outcome {
    let genus = a.genus as usize;
    let text = std::fs::read_to_string(&a.involution)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.involution.display())))?;
    let s: IntMatrix = text
        .trim()
        .parse()
        .map_err(|e| Failure::Usage(format!("involution: {e}")))?;
    if s.dim() != 2 * genus {
        return Err(Failure::Usage(format!(
            "involution is {}x{}, genus {genus} needs {}",
            s.dim(),
            s.dim(),
            2 * genus
        )));
    }
    let curves = parse_curves(&a.curves, genus)?;
    let exps = parse_exps(&a.exps)?;
    let out = factor_palindrome(&curves, &exps, &s).map_err(|e| match e {
        WordError::LengthMismatch { .. } | WordError::GenusMismatch { .. } => {
            Failure::Usage(e.to_string())
        }
        _ => Failure::Inadmissible(e.to_string()),
    })?;
    let input =
        palindrome_word(&curves, &exps).map_err(|e| Failure::Inadmissible(e.to_string()))?;
    let matrix_ok = out.eval() == input.eval();
    let report = validate_recursive_invariance(&out, &s)
        .map_err(|e| Failure::Inadmissible(e.to_string()))?;
    let ok = matrix_ok && report.all_passed();
    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct View<'a> {
                genus: usize,
                palindrome: String,
                word: String,
                matrix_ok: bool,
                invariance: &'a eqsurg::word::InvarianceReport,
                verdict: &'a str,
            }
            emit(&View {
                genus,
                palindrome: input.to_string(),
                word: out.to_string(),
                matrix_ok,
                invariance: &report,
                verdict: if ok { report.label() } else { "failed" },
            });
        }
        Format::Text => {
            outln!("palindrome {input}");
            outln!("factored   {out}");
            outln!(
                "matrix_ok {matrix_ok}  recursive invariance {}",
                if ok { report.label() } else { "failed" }
            );
        }
    }
    Ok(code_for(ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn curve_lists() {
        let cs = parse_curves("[1,-1]; [1,1];", 1).ok().unwrap();
        assert_eq!(cs, vec![CurveClass::a_minus_b(), CurveClass::a_plus_b()]);
        assert!(matches!(parse_curves("[1,0,0]", 1), Err(Failure::Usage(_))));
        assert!(matches!(
            parse_curves("[2,0]", 1),
            Err(Failure::Inadmissible(_))
        ));
        assert!(matches!(parse_curves("[1,x]", 1), Err(Failure::Usage(_))));
    }

    #[test]
    fn exponent_lists() {
        assert_eq!(parse_exps("1, -2,3").ok().unwrap(), vec![1, -2, 3]);
        assert!(parse_exps("1,two").is_err());
    }

    #[test]
    fn census_row_fields() {
        let r = census_row(8, 5, Variant::C);
        assert_eq!(r.case, "4");
        assert!(r.matrix_ok && r.shape_ok && !r.legal);
        assert_eq!(r.flags, vec![IllegalReason::PositiveC4Middle]);
    }
}
