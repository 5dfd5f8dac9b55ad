use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fibrekit::pants::{
    cut_annulus_twists, hopf_deplumbing_obstructed, pants_alexander, pants_alexander_via_homology,
    PantsFamilyMember,
};
use fibrekit::rational::{format_rational, parse_rational};
use fibrekit::scl::{
    chain_derivation, height_lower_bound, korkmaz_derivation, CBoundModel, Derivation,
    HeightQuery, ModelFlag, PlumbingCheck, Premise, RationalBound,
};
use fibrekit::twist_length::{
    knot_monodromy_obstruction, knot_twist_length_lower_bound, CertificateChecks, Obstruction,
    ObstructionCertificate,
};
use fibrekit::{alexander_report, HomologyClass, SurfaceSignature, TwistWord};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, ParseError};
use crate::parse::{format_curve, format_word, parse_range, parse_surface, parse_word, NRange};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "fibrekit", version, about = "Exact computations for Dehn-twist monodromies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Surface as `genus,boundary`.
    #[arg(long, global = true)]
    pub surface: Option<String>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Re-check every emitted certificate and derivation before printing.
    #[arg(long, global = true)]
    pub verify: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial of a twist word's homological action.
    Alexander {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Twist-length obstruction certificate for a set of curve classes.
    Twistlb {
        /// File of curve tokens (whitespace separated, `#` comments).
        #[arg(long)]
        classes: PathBuf,
        /// Extra word to check against the certificate under `--verify`.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Chain lower bound on scl(T_k ... T_1 phi_0 T_c^n).
    Sclbound {
        /// Comma-separated lower bounds for the plumbed twists.
        #[arg(long, default_value = "")]
        twists: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        phi0: String,
        /// Lower bound for scl(T_c).
        #[arg(long, conflicts_with = "genus", allow_hyphen_values = true)]
        tc: Option<String>,
        /// Derive scl(T_c) from the closed genus instead of `--tc`.
        #[arg(long)]
        genus: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Lower bounds on stabilisation height of the Stallings family.
    Heightlb {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        n: String,
        /// Upper-bound model `alpha,beta` for C(b1) = alpha b1 + beta.
        #[arg(long, allow_hyphen_values = true)]
        model: Option<String>,
        /// Overrides the first Betti number taken from `--surface`.
        #[arg(long)]
        fibre_b1: Option<u64>,
        /// Embed the full derivations in each JSON row.
        #[arg(long)]
        derivations: bool,
    },
    /// The pair-of-pants family phi_n = T_a T_b^-1 T_c^n.
    Pants {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        n: String,
    },
}

fn surface_or(cli: &Cli, default: SurfaceSignature) -> Result<SurfaceSignature, CliError> {
    match &cli.surface {
        Some(text) => Ok(parse_surface(text)?),
        None => Ok(default),
    }
}

fn rational_arg(flag: &'static str, text: &str) -> Result<BigRational, ParseError> {
    parse_rational(text).ok_or_else(|| ParseError::BadValue {
        flag,
        value: text.to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Runs one subcommand and returns the report text.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Alexander { word } => run_alexander(cli, word),
        Command::Twistlb { classes, word } => run_twistlb(cli, classes, word.as_deref()),
        Command::Sclbound {
            twists,
            phi0,
            tc,
            genus,
            n,
        } => run_sclbound(cli, twists, phi0, tc.as_deref(), *genus, *n),
        Command::Heightlb {
            n,
            model,
            fibre_b1,
            derivations,
        } => run_heightlb(cli, n, model.as_deref(), *fibre_b1, *derivations),
        Command::Pants { n } => run_pants(cli, n),
    }
}

#[derive(Serialize)]
struct AlexanderOut {
    command: &'static str,
    surface: SurfaceSignature,
    word: String,
    action: Vec<Vec<String>>,
    poly: String,
    coefficients_ascending: Vec<String>,
    delta_one: String,
    classification: fibrekit::Classification,
    normalized: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn run_alexander(cli: &Cli, text: &str) -> Result<String, CliError> {
    let surface = surface_or(cli, SurfaceSignature::new(1, 1))?;
    let word = parse_word(text, surface)?;
    let report = alexander_report(&word)?;
    let verified = if cli.verify {
        verify_alexander(&report)?;
        Some(true)
    } else {
        None
    };
    let out = AlexanderOut {
        command: "alexander",
        surface,
        word: format_word(&word),
        action: report.action.rows().iter().map(|r| strings(r)).collect(),
        poly: report.poly.to_string(),
        coefficients_ascending: strings(report.poly.coefficients()),
        delta_one: report.delta_one.to_string(),
        classification: report.classification,
        normalized: report.normalized.to_string(),
        verified,
    };
    Ok(match cli.format {
        Format::Json => to_json(&out),
        Format::Tsv => tsv(
            &["word", "poly", "delta_one", "classification"],
            [vec![
                out.word.clone(),
                out.poly.clone(),
                out.delta_one.clone(),
                serde_json::to_value(out.classification)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
            ]],
        ),
    })
}

/// Symplectic and determinant checks, plus the polynomial against
/// `det(t id - M)` at `b1 + 1` integer points by elimination.
fn verify_alexander(report: &fibrekit::AlexanderReport) -> Result<(), CliError> {
    let m = &report.action;
    if !m.preserves_form() {
        return Err(CliError::Verification("action does not preserve the intersection form".into()));
    }
    if !m.determinant().is_one() {
        return Err(CliError::Verification("action has determinant != 1".into()));
    }
    let n = m.dim();
    for t in 0..=n as i64 {
        let t = BigInt::from(t);
        let shifted = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { t.clone() } else { BigInt::zero() };
                        d - m.entry(i, j)
                    })
                    .collect()
            })
            .collect();
        if report.poly.eval(&t) != fibrekit::matrix::bareiss_determinant(shifted) {
            return Err(CliError::Verification(format!(
                "characteristic polynomial disagrees with det(t id - M) at t = {t}"
            )));
        }
    }
    if m.surface().is_nondegenerate() && !report.poly.is_reciprocal() {
        return Err(CliError::Verification("polynomial is not reciprocal".into()));
    }
    Ok(())
}

/// Curve tokens from a classes file; exponents are not allowed.
pub fn parse_classes(text: &str, surface: SurfaceSignature) -> Result<Vec<HomologyClass>, ParseError> {
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let word = parse_word(&body, surface)?;
    word.letters()
        .iter()
        .map(|l| {
            if l.exponent() == 1 {
                Ok(l.curve().clone())
            } else {
                Err(ParseError::MalformedExponent(format!(
                    "{}^{}",
                    format_curve(l.curve()),
                    l.exponent()
                )))
            }
        })
        .collect()
}

#[derive(Serialize)]
struct CertificateOut {
    classes: Vec<String>,
    complement_basis: Vec<Vec<String>>,
    witness: Vec<String>,
    checks: CertificateStatic,
}

#[derive(Serialize)]
struct CertificateStatic {
    witness_pairings: Vec<String>,
    witness_nonzero: bool,
    complement_dimension: usize,
    required_dimension: usize,
}

#[derive(Serialize)]
struct WordCheck {
    word: String,
    #[serde(flatten)]
    checks: CertificateChecks,
}

#[derive(Serialize)]
struct TwistlbOut {
    command: &'static str,
    surface: SurfaceSignature,
    status: &'static str,
    distinct_classes: usize,
    knot_twist_length_lower_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Vec<WordCheck>>,
}

/// Words tried under `--verify`: all classes once in order, the reverse with
/// negative exponents, and an interleaving with mixed powers.
fn probe_words(cert: &ObstructionCertificate) -> Vec<TwistWord> {
    let s = cert.surface;
    let forward = cert.classes.iter().map(|c| (c.clone(), 1));
    let backward = cert.classes.iter().rev().map(|c| (c.clone(), -1));
    let mixed = cert
        .classes
        .iter()
        .chain(cert.classes.iter())
        .enumerate()
        .map(|(i, c)| (c.clone(), if i % 2 == 0 { 2 } else { -3 }));
    [
        TwistWord::from_pairs(s, forward),
        TwistWord::from_pairs(s, backward),
        TwistWord::from_pairs(s, mixed),
    ]
    .into_iter()
    .map(|w| w.expect("classes live on the certificate surface"))
    .collect()
}

fn run_twistlb(cli: &Cli, path: &PathBuf, word: Option<&str>) -> Result<String, CliError> {
    let surface = surface_or(cli, SurfaceSignature::new(1, 1))?;
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let classes = parse_classes(&text, surface)?;
    let extra = word.map(|w| parse_word(w, surface)).transpose()?;
    if surface.boundary != 1 {
        return Err(fibrekit::Error::BoundaryNotOne(surface.boundary).into());
    }
    let obstruction = knot_monodromy_obstruction(surface.genus, &classes)?;
    let bound = knot_twist_length_lower_bound(surface.genus);

    let mut out = TwistlbOut {
        command: "twistlb",
        surface,
        status: "not_applicable",
        distinct_classes: 0,
        knot_twist_length_lower_bound: bound,
        certificate: None,
        verification: None,
    };
    match obstruction {
        Obstruction::NotApplicable => {
            let mut distinct: Vec<&HomologyClass> = Vec::new();
            for c in &classes {
                if !distinct.contains(&c) {
                    distinct.push(c);
                }
            }
            out.distinct_classes = distinct.len();
        }
        Obstruction::Certificate(cert) => {
            out.status = "certificate";
            out.distinct_classes = cert.classes.len();
            if cli.verify {
                let mut checks = Vec::new();
                let words = probe_words(&cert).into_iter().chain(extra);
                for w in words {
                    let c = cert.check(&w)?;
                    if !c.passed() {
                        return Err(CliError::Verification(format!(
                            "certificate fails on `{}`",
                            format_word(&w)
                        )));
                    }
                    checks.push(WordCheck {
                        word: format_word(&w),
                        checks: c,
                    });
                }
                out.verification = Some(checks);
            }
            out.certificate = Some(CertificateOut {
                classes: cert.classes.iter().map(format_curve).collect(),
                complement_basis: cert
                    .complement_basis
                    .iter()
                    .map(|v| v.iter().map(format_rational).collect())
                    .collect(),
                witness: strings(&cert.witness),
                checks: CertificateStatic {
                    witness_pairings: strings(&cert.witness_pairings()),
                    witness_nonzero: cert.witness.iter().any(|x| !x.is_zero()),
                    complement_dimension: cert.complement_basis.len(),
                    required_dimension: 2 * surface.genus as usize - cert.classes.len(),
                },
            });
        }
    }
    Ok(match cli.format {
        Format::Json => to_json(&out),
        Format::Tsv => tsv(
            &["status", "distinct_classes", "witness", "complement_dimension"],
            [vec![
                out.status.to_string(),
                out.distinct_classes.to_string(),
                out.certificate
                    .as_ref()
                    .map_or(String::new(), |c| c.witness.join(",")),
                out.certificate
                    .as_ref()
                    .map_or(String::new(), |c| c.checks.complement_dimension.to_string()),
            ]],
        ),
    })
}

#[derive(Serialize)]
struct SclOut<'a> {
    command: &'static str,
    bound: &'a RationalBound,
    derivation: &'a Derivation,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn run_sclbound(
    cli: &Cli,
    twists: &str,
    phi0: &str,
    tc: Option<&str>,
    genus: Option<i64>,
    n: i64,
) -> Result<String, CliError> {
    let twist_premises = twists
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| {
            Ok(RationalBound::lower(rational_arg("--twists", t)?, format!("scl(T_{})", i + 1)).into())
        })
        .collect::<Result<Vec<Premise>, ParseError>>()?;
    let phi0 = RationalBound::lower(rational_arg("--phi0", phi0)?, "scl(phi_0)").into();
    let tc: Premise = match (tc, genus) {
        (Some(t), None) => RationalBound::lower(rational_arg("--tc", t)?, "scl(T_c)").into(),
        (None, Some(g)) => korkmaz_derivation(g)?.into(),
        _ => return Err(CliError::Usage("exactly one of --tc or --genus is required".into())),
    };
    let derivation = chain_derivation(twist_premises, phi0, tc, n)?;
    let verified = if cli.verify {
        derivation
            .replay()
            .map_err(|e| CliError::Verification(e.to_string()))?;
        Some(true)
    } else {
        None
    };
    let bound = derivation.result();
    Ok(match cli.format {
        Format::Json => to_json(&SclOut {
            command: "sclbound",
            bound,
            derivation: &derivation,
            verified,
        }),
        Format::Tsv => tsv(
            &["value", "kind", "subject"],
            [vec![
                format_rational(bound.value()),
                "LOWER".to_string(),
                bound.subject().to_string(),
            ]],
        ),
    })
}

#[derive(Serialize)]
struct HeightRow {
    n: i64,
    h_lb: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<PlumbingCheck>>,
}

#[derive(Serialize)]
struct ModelOut {
    alpha: String,
    beta: String,
}

#[derive(Serialize)]
struct HeightOut {
    command: &'static str,
    fibre_b1: u64,
    model: &'static str,
    model_params: ModelOut,
    rows: Vec<HeightRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn parse_model(text: Option<&str>) -> Result<CBoundModel, CliError> {
    let Some(text) = text else {
        return Ok(CBoundModel::illustrative());
    };
    let bad = || ParseError::BadValue {
        flag: "--model",
        value: text.to_string(),
    };
    let (alpha, beta) = text.split_once(',').ok_or_else(bad)?;
    let alpha = parse_rational(alpha).ok_or_else(bad)?;
    let beta = parse_rational(beta).ok_or_else(bad)?;
    Ok(CBoundModel::new(alpha, beta, ModelFlag::UserSupplied)?)
}

fn run_heightlb(
    cli: &Cli,
    n: &str,
    model: Option<&str>,
    fibre_b1: Option<u64>,
    with_derivations: bool,
) -> Result<String, CliError> {
    let range: NRange = parse_range(n)?;
    let model = parse_model(model)?;
    let fibre_b1 = match fibre_b1 {
        Some(b) => b,
        None => surface_or(cli, SurfaceSignature::pants())?.b1() as u64,
    };
    let values: Vec<i64> = range.values().collect();
    let rows: Vec<Result<HeightRow, CliError>> = values
        .par_iter()
        .map(|&n| {
            let q = HeightQuery::new(fibre_b1, n, model.clone());
            if !cli.verify && !with_derivations {
                return Ok(HeightRow {
                    n,
                    h_lb: q.search(),
                    checks: None,
                });
            }
            let report = height_lower_bound(&q);
            if cli.verify {
                report
                    .verify()
                    .map_err(|e| CliError::Verification(format!("n = {n}: {e}")))?;
            }
            Ok(HeightRow {
                n,
                h_lb: report.h_lb,
                checks: with_derivations.then_some(report.checks),
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let model_name = match model.flag() {
        ModelFlag::Illustrative => "illustrative",
        ModelFlag::UserSupplied => "user_supplied",
    };
    Ok(match cli.format {
        Format::Json => to_json(&HeightOut {
            command: "heightlb",
            fibre_b1,
            model: model_name,
            model_params: ModelOut {
                alpha: format_rational(model.alpha()),
                beta: format_rational(model.beta()),
            },
            rows,
            verified: cli.verify.then_some(true),
        }),
        Format::Tsv => tsv(
            &["n", "h_lb", "model"],
            rows.iter()
                .map(|r| vec![r.n.to_string(), r.h_lb.to_string(), model_name.to_string()]),
        ),
    })
}

#[derive(Serialize)]
struct PantsRow {
    n: i64,
    class: [i64; 3],
    twist_length: u64,
    cut_twists: [i64; 3],
    hopf: [bool; 3],
    obstructed: bool,
}

#[derive(Serialize)]
struct PantsOut {
    command: &'static str,
    rows: Vec<PantsRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn verify_pants_row(row: &PantsRow) -> Result<(), CliError> {
    let fail = |what: &str| CliError::Verification(format!("pants n = {}: {what}", row.n));
    let member = PantsFamilyMember::new(row.n);
    let letters = member.class().to_word();
    let word_length: u64 = letters
        .letters()
        .iter()
        .map(|l| l.exponent().unsigned_abs())
        .sum();
    if word_length != row.twist_length {
        return Err(fail("twist length disagrees with the word"));
    }
    if row.cut_twists != [0, row.n + 1, row.n - 1] {
        return Err(fail("cut twists"));
    }
    if row.obstructed != !row.hopf.iter().any(|&h| h) {
        return Err(fail("obstruction flag"));
    }
    if pants_alexander(member.class()) != pants_alexander_via_homology(member.class())? {
        return Err(fail("Alexander polynomial"));
    }
    Ok(())
}

fn run_pants(cli: &Cli, n: &str) -> Result<String, CliError> {
    let range = parse_range(n)?;
    let rows: Vec<PantsRow> = range
        .values()
        .map(|n| {
            let member = PantsFamilyMember::new(n);
            let c = member.class();
            let cut = cut_annulus_twists(n);
            PantsRow {
                n,
                class: [c.p, c.q, c.r],
                twist_length: member.twist_length(),
                cut_twists: cut.twists(),
                hopf: cut.arcs.map(|a| a.is_hopf),
                obstructed: hopf_deplumbing_obstructed(n),
            }
        })
        .collect();
    if cli.verify {
        for row in &rows {
            verify_pants_row(row)?;
        }
    }
    Ok(match cli.format {
        Format::Json => to_json(&PantsOut {
            command: "pants",
            rows,
            verified: cli.verify.then_some(true),
        }),
        Format::Tsv => tsv(
            &["n", "twist_length", "gamma1", "gamma2", "gamma3", "obstructed"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.twist_length.to_string(),
                    r.cut_twists[0].to_string(),
                    r.cut_twists[1].to_string(),
                    r.cut_twists[2].to_string(),
                    r.obstructed.to_string(),
                ]
            }),
        ),
    })
}
