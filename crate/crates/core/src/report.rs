//! Command-line front end: turns a [`RunConfig`] into a deterministic JSON
//! or plain-text report plus an exit code.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::cartan::GeneralizedCartanMatrix;
use crate::divisor::{
    boundary_delta, bs_boundary, check_m, default_m, incidence_matrix, log_fano_certificate,
    schubert_boundary, serialize_rationals, LogFanoCertificate, Rational, SchubertDivisor,
};
use crate::error::Error;
use crate::oracle::{
    all_reduced_words, sweep_certificates, MPolicy, SweepOptions, SweepReport, DEFAULT_CAP,
};
use crate::weyl::{element_of, is_reduced, length, CorootVector, RootVector, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Builtin(String),
    CartanFile(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Report,
    Certify,
    Sweep,
    ReducedWords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Source,
    pub word: Option<Word>,
    pub m: Option<i64>,
    pub mode: Mode,
    pub format: Format,
    pub max_length: Option<usize>,
    pub all_words: bool,
    pub cap: Option<usize>,
}

impl RunConfig {
    pub fn new(source: Source, mode: Mode) -> Self {
        RunConfig {
            source,
            word: None,
            m: None,
            mode,
            format: Format::Json,
            max_length: None,
            all_words: false,
            cap: None,
        }
    }
}

/// Exit code plus the text to print (stdout on success, stderr otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn invalid(err: impl std::fmt::Display) -> Self {
        RunOutput {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn load_gcm(source: &Source) -> Result<GeneralizedCartanMatrix, Error> {
    match source {
        Source::Builtin(name) => GeneralizedCartanMatrix::builtin(name),
        Source::CartanFile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            GeneralizedCartanMatrix::from_json(&text)
        }
    }
}

/// Full divisor data for one word. Schubert-side fields are present only
/// for reduced words.
#[derive(Debug, Clone, Serialize)]
pub struct WordReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub word: Word,
    pub reduced: bool,
    pub length: usize,
    pub gamma: Vec<RootVector>,
    pub gamma_coroot: Vec<CorootVector>,
    pub b: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_height: Option<Vec<i64>>,
    #[serde(rename = "K_bs", serialize_with = "serialize_rationals")]
    pub k_bs: Vec<Rational>,
    #[serde(rename = "anticanonical_bs", serialize_with = "serialize_rationals")]
    pub anticanonical_bs: Vec<Rational>,
    /// Positions with `b_i <= 0`.
    pub non_positive_b: Vec<usize>,
    pub incidence: IncidenceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schubert: Option<SchubertReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IncidenceSummary {
    pub curves: usize,
    /// `C_i` meets `d~_j` in one point iff `i = j`, and misses it otherwise.
    pub identity_pattern: bool,
    /// Degree of the `rho`-section on each `C_i`.
    pub curve_degrees: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchubertReport {
    #[serde(rename = "M")]
    pub m: i64,
    pub divisors: Vec<SchubertDivisor>,
    pub collapsed: Vec<usize>,
    #[serde(rename = "K_schubert", serialize_with = "serialize_rationals")]
    pub k_schubert: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub delta: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub delta_tilde: Vec<Rational>,
}

pub fn word_report(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
    m: Option<i64>,
) -> Result<WordReport, Error> {
    let bs = bs_boundary(gcm, word)?;
    let reduced = is_reduced(gcm, word)?;
    let ell = word.len();
    let inc = incidence_matrix(ell);
    let identity_pattern = inc.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &c)| c == usize::from(i == j))
    });
    let curve_degrees = (0..ell)
        .map(|i| inc[i].iter().zip(&bs.b).map(|(&c, &b)| c as i64 * b).sum())
        .collect();
    let schubert = if reduced {
        let sb = schubert_boundary(gcm, word)?;
        let m = match m {
            Some(m) => {
                check_m(sb.max_a(), m)?;
                m
            }
            None => default_m(&sb),
        };
        let (delta, delta_tilde) = boundary_delta(gcm, word, m)?;
        Some(SchubertReport {
            m,
            k_schubert: sb
                .divisors
                .iter()
                .map(|d| Rational::from_integer(-(d.a + 1)))
                .collect(),
            divisors: sb.divisors,
            collapsed: sb.collapsed,
            delta: delta.coefficients,
            delta_tilde: delta_tilde.coefficients,
        })
    } else {
        None
    };
    let heights = bs.root_heights();
    Ok(WordReport {
        cartan_type: gcm.label().to_string(),
        word: word.clone(),
        reduced,
        length: length(gcm, &element_of(gcm, word)?)?,
        root_height: (heights != bs.b).then_some(heights),
        k_bs: bs
            .b
            .iter()
            .map(|&b| Rational::from_integer(-(b + 1)))
            .collect(),
        anticanonical_bs: bs
            .b
            .iter()
            .map(|&b| Rational::from_integer(b + 1))
            .collect(),
        non_positive_b: bs.non_positive_positions(),
        gamma: bs.gamma,
        gamma_coroot: bs.gamma_coroot,
        b: bs.b,
        incidence: IncidenceSummary {
            curves: ell,
            identity_pattern,
            curve_degrees,
        },
        schubert,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducedWordsReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub word: Word,
    pub length: usize,
    pub reduced_words: Vec<Word>,
}

/// Pretty JSON with objects broken over lines and arrays of scalars (or of
/// arrays of scalars) kept on one line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report serializes");
    let mut s = String::new();
    write_value(&mut s, &value, 0);
    s.push('\n');
    s
}

fn is_flat(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| {
            !matches!(x, Value::Object(_))
                && (!x.is_array()
                    || x.as_array()
                        .is_some_and(|a| a.iter().all(|y| !y.is_array() && !y.is_object())))
        }),
        _ => true,
    }
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("key"));
                out.push_str(": ");
                write_value(out, val, indent + 1);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !is_flat(v) => {
            out.push_str("[\n");
            for (k, val) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, val, indent + 1);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalar")),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_word_table(r: &WordReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "type {}  word {}  reduced {}  length {}",
        r.cartan_type, r.word, r.reduced, r.length
    );
    let _ = writeln!(
        s,
        "{:>4}  {:<16} {:<16} {:>4} {:>6}",
        "i", "gamma", "gamma^v", "b", "-K~"
    );
    for i in 0..r.b.len() {
        let _ = writeln!(
            s,
            "{:>4}  {:<16} {:<16} {:>4} {:>6}",
            i + 1,
            r.gamma[i].to_string(),
            r.gamma_coroot[i].to_string(),
            r.b[i],
            r.anticanonical_bs[i].to_string()
        );
    }
    if !r.non_positive_b.is_empty() {
        let _ = writeln!(s, "non-positive b at positions {}", join(&r.non_positive_b));
    }
    if let Some(sch) = &r.schubert {
        let _ = writeln!(s, "M = {}  collapsed {{{}}}", sch.m, join(&sch.collapsed));
        let _ = writeln!(
            s,
            "{:<16} {:>8} {:>4} {:>6} {:>8}",
            "label", "position", "a", "K", "delta"
        );
        for (j, d) in sch.divisors.iter().enumerate() {
            let _ = writeln!(
                s,
                "{:<16} {:>8} {:>4} {:>6} {:>8}",
                d.label.to_string(),
                d.position,
                d.a,
                sch.k_schubert[j].to_string(),
                sch.delta[j].to_string()
            );
        }
        let _ = writeln!(s, "delta~ = ({})", join(&sch.delta_tilde));
    }
    s
}

fn fmt_certificate_table(c: &LogFanoCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "type {}  word {}  M = {}", c.cartan_type, c.word, c.m);
    let _ = writeln!(s, "gamma  = ({})", join(&c.gamma));
    let _ = writeln!(s, "b      = ({})", join(&c.b));
    if let Some(h) = &c.root_height {
        let _ = writeln!(s, "height = ({})", join(h));
    }
    let labels: Vec<String> = c
        .divisors
        .iter()
        .map(|d| format!("{}@{}:a={}", d.label, d.position, d.a))
        .collect();
    let _ = writeln!(s, "divisors {}", labels.join("  "));
    let _ = writeln!(s, "collapsed ({})", join(&c.collapsed));
    let _ = writeln!(s, "K~     = ({})", join(&c.k_bs));
    let _ = writeln!(s, "K      = ({})", join(&c.k_schubert));
    let _ = writeln!(s, "delta  = ({})", join(&c.delta));
    let _ = writeln!(s, "delta~ = ({})", join(&c.delta_tilde));
    let checks = serde_json::to_value(c.checks).expect("checks serialize");
    if let Some(map) = checks.as_object() {
        for (name, ok) in map {
            let _ = writeln!(
                s,
                "  [{}] {name}",
                if ok.as_bool() == Some(true) {
                    "ok"
                } else {
                    "FAIL"
                }
            );
        }
    }
    let _ = writeln!(s, "overall {}", c.overall);
    s
}

fn fmt_sweep_table(r: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "type {}  elements {}  words {}  failures {}",
        r.cartan_type,
        r.elements_checked,
        r.words_checked,
        r.failures.len()
    );
    for f in &r.failures {
        let _ = writeln!(s, "  {} {}: {}", f.word, f.check, f.detail);
    }
    s
}

fn require_word(config: &RunConfig) -> Result<&Word, Error> {
    config
        .word
        .as_ref()
        .ok_or_else(|| Error::Parse("--word is required for this mode".into()))
}

/// Executes one CLI request. Output is byte-stable for fixed input.
pub fn run(config: &RunConfig) -> RunOutput {
    let gcm = match load_gcm(&config.source) {
        Ok(g) => g,
        Err(e) => return RunOutput::invalid(e),
    };
    let result = match config.mode {
        Mode::Report => require_word(config)
            .and_then(|w| word_report(&gcm, w, config.m))
            .map(|r| {
                let text = match config.format {
                    Format::Json => to_json(&r),
                    Format::Table => fmt_word_table(&r),
                };
                (EXIT_OK, text)
            }),
        Mode::Certify => require_word(config)
            .and_then(|w| log_fano_certificate(&gcm, w, config.m))
            .map(|c| {
                let code = if c.overall { EXIT_OK } else { EXIT_FAILED };
                let text = match config.format {
                    Format::Json => to_json(&c),
                    Format::Table => fmt_certificate_table(&c),
                };
                (code, text)
            }),
        Mode::Sweep => {
            let mut opts = SweepOptions::new(config.max_length.unwrap_or(usize::MAX));
            opts.all_words = config.all_words;
            opts.cap = config.cap;
            if let Some(m) = config.m {
                opts.m_policy = MPolicy::Fixed(m);
            }
            if config.max_length.is_none() && gcm.classify() != crate::cartan::CartanClass::Finite {
                Err(Error::Parse(
                    "--max-length is required for non-finite types".into(),
                ))
            } else {
                sweep_certificates(&gcm, &opts).map(|r| {
                    let code = if r.passed() { EXIT_OK } else { EXIT_FAILED };
                    let text = match config.format {
                        Format::Json => to_json(&r),
                        Format::Table => fmt_sweep_table(&r),
                    };
                    (code, text)
                })
            }
        }
        Mode::ReducedWords => require_word(config).and_then(|w| {
            let e = element_of(&gcm, w)?;
            let words = all_reduced_words(&gcm, &e, config.cap.unwrap_or(DEFAULT_CAP))?;
            let r = ReducedWordsReport {
                cartan_type: gcm.label().to_string(),
                word: w.clone(),
                length: length(&gcm, &e)?,
                reduced_words: words,
            };
            let text = match config.format {
                Format::Json => to_json(&r),
                Format::Table => r.reduced_words.iter().map(|w| format!("{w}\n")).collect(),
            };
            Ok((EXIT_OK, text))
        }),
    };
    match result {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => RunOutput::invalid(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(t: &str, word: &str, mode: Mode) -> RunConfig {
        let mut c = RunConfig::new(Source::Builtin(t.into()), mode);
        c.word = Some(word.parse().unwrap());
        c
    }

    #[test]
    fn certify_a2() {
        let out = run(&cfg("A2", "1,2,1", Mode::Certify));
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["M"], 2);
        assert_eq!(v["delta"], serde_json::json!(["1/2", "1/2"]));
        assert_eq!(v["overall"], true);
    }

    #[test]
    fn invalid_inputs_exit_two() {
        let out = run(&cfg("A2", "1,1", Mode::Certify));
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("not reduced"));
        let mut c = cfg("A2", "1,2,1", Mode::Certify);
        c.m = Some(1);
        assert_eq!(run(&c).code, EXIT_INVALID);
        assert_eq!(run(&cfg("Z9", "1", Mode::Report)).code, EXIT_INVALID);
        assert_eq!(run(&cfg("A2", "3", Mode::Report)).code, EXIT_INVALID);
        let mut c = cfg("A1~", "1", Mode::Sweep);
        c.word = None;
        assert_eq!(run(&c).code, EXIT_INVALID);
    }

    #[test]
    fn report_non_reduced() {
        let out = run(&cfg("A1", "1,1", Mode::Report));
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["b"], serde_json::json!([-1, 1]));
        assert_eq!(v["non_positive_b"], serde_json::json!([1]));
        assert_eq!(v["anticanonical_bs"], serde_json::json!(["0", "2"]));
        assert!(v.get("schubert").is_none());
        assert_eq!(v["length"], 0);
    }

    #[test]
    fn table_output_uses_root_notation() {
        let mut c = cfg("A1~", "1,2,1", Mode::Report);
        c.format = Format::Table;
        let out = run(&c);
        assert!(out.stdout.contains("3a1+2a2"));
        assert!(out.stdout.contains("delta~ = (1/6, 1/2, 5/6)"));
    }

    #[test]
    fn reduced_words_mode() {
        let out = run(&cfg("A2", "2,1,2", Mode::ReducedWords));
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            v["reduced_words"],
            serde_json::json!([[1, 2, 1], [2, 1, 2]])
        );
    }
}
