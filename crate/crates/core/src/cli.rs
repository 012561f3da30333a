//! Command-line front end: Langlands-Shahidi reports as JSON or aligned
//! tables, the GL(2) operator with its optional family/oracle/Galois/
//! equivariance blocks, and the named invariant suites.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid request,
//! 3 convergence-gate failure, 4 pole of a local factor. JSON output is
//! byte-stable: field order is fixed by the serialized structs and every
//! exact number is rendered canonically ("num/den" rationals, coefficient
//! lists for cyclotomic values).

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactnum::character::right_of_axis_check;
use crate::exactnum::cyclotomic::Cyclotomic;
use crate::exactnum::SmoothCharacter;
use crate::gl2op::{
    intertwiner_matrix, k_equivariance_check, normalized_matrix, numeric_oracle,
    oracle_deviation, rational_family, OperatorMatrix,
};
use crate::lsdecomp::{ls_report, LSReport};
use crate::parabolic::{all_maximal_parabolics, MaximalParabolic};
use crate::ratio::{fmt_rat, parse_rat};
use crate::rootsys::{CartanType, Family, RootDatum};
use crate::verify::{random_compact_element, run_suite, Verdict, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "lslocal",
    version,
    about = "Exact Langlands-Shahidi data and a rank-one GL(2) intertwining operator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the local data of maximal parabolics (deleted root, rho,
    /// evaluation point, integrality, levels, exponents, criticality).
    LsReport {
        /// Classical family: A, B, C, or D.
        family: String,
        /// Coordinate rank: N for type A (the general linear group of
        /// size N), n for types B, C, D.
        rank: usize,
        /// Deleted-root index (1-based for A/B/C, 0-based for D) or "all".
        index: String,
        /// Emit JSON instead of the default table.
        #[arg(long)]
        json: bool,
        /// Emit an aligned table (the default).
        #[arg(long, conflicts_with = "json")]
        table: bool,
    },
    /// Compute the GL(2) intertwining operator for a character pair.
    Gl2 {
        /// JSON file holding the character pair.
        #[arg(long)]
        chars: PathBuf,
        /// Residue prime; must match the character file.
        #[arg(short)]
        p: u64,
        /// Congruence level: vectors fixed by the level-m subgroup.
        #[arg(short)]
        m: u32,
        /// Divide by the ratio of local factors L(-1)/L(0).
        #[arg(long)]
        normalised: bool,
        /// Also emit the one-parameter rational family in an unramified
        /// twist variable z.
        #[arg(long)]
        family: bool,
        /// Also run the floating-point oracle and report deviations.
        #[arg(long)]
        oracle: bool,
        /// Oracle truncation depth.
        #[arg(short = 'R', default_value_t = 40)]
        truncation: i64,
        /// Complex embedding index a (zeta_n -> exp(2 pi i a / n)).
        #[arg(short = 'a', default_value_t = 1)]
        embedding: u64,
        /// Also check transport along every coefficient-field automorphism.
        #[arg(long)]
        galois: bool,
        /// Also check commutation with seeded random compact translations.
        #[arg(long)]
        equivariance: bool,
    },
    /// Run an invariant suite: rootsys, parabolic, lsdecomp, gl2, or all.
    Verify {
        /// Suite name.
        suite: String,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::LsReport { family, rank, index, json, table: _ } => {
            cmd_ls_report(&family, rank, &index, json)
        }
        Command::Gl2 {
            chars,
            p,
            m,
            normalised,
            family,
            oracle,
            truncation,
            embedding,
            galois,
            equivariance,
        } => cmd_gl2(&Gl2Args {
            chars,
            p,
            m,
            normalised,
            family,
            oracle,
            truncation,
            embedding,
            galois,
            equivariance,
        }),
        Command::Verify { suite } => cmd_verify(&suite),
    }
}

/// Print a line to stdout, tolerating a closed pipe (e.g. `... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn invalid(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::Pole(_) => 4,
        Error::Convergence(_) => 3,
        _ => 2,
    }
}

// -------------------------------------------------------------- ls-report

/// Display indices are 1-based for A/B/C and 0-based for D, matching the
/// usual labeling of the even-orthogonal diagram by coordinates.
fn display_to_internal(family: Family, display: usize, num_simple: usize) -> Option<usize> {
    match family {
        Family::D => (display < num_simple).then_some(display),
        _ => (1..=num_simple).contains(&display).then(|| display - 1),
    }
}

fn internal_to_display(family: Family, internal: usize) -> usize {
    match family {
        Family::D => internal,
        _ => internal + 1,
    }
}

#[derive(Serialize)]
struct ReportJson {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    alpha_p: usize,
    rho_p: Vec<String>,
    gamma_p: Vec<String>,
    k: String,
    integral: bool,
    m: usize,
    dims: Vec<usize>,
    epsilons: Vec<u8>,
    h: Vec<String>,
    critical: bool,
    self_associate: bool,
}

fn report_json(r: &LSReport) -> ReportJson {
    ReportJson {
        family: r.cartan.family.letter().to_string(),
        rank: r.cartan.rank,
        alpha_p: internal_to_display(r.cartan.family, r.alpha_index),
        rho_p: r.rho.coords.iter().map(fmt_rat).collect(),
        gamma_p: r.gamma.coords.iter().map(fmt_rat).collect(),
        k: fmt_rat(&r.k),
        integral: r.integral,
        m: r.m,
        dims: r.dims.clone(),
        epsilons: r.epsilons(),
        h: r.h.iter().map(fmt_rat).collect(),
        critical: r.critical,
        self_associate: r.self_associate,
    }
}

fn render_table(reports: &[LSReport]) -> String {
    let header = [
        "type", "rank", "alpha_p", "k", "integral", "m", "dims", "epsilons", "h", "critical",
        "self_assoc",
    ];
    let join = |parts: Vec<String>| parts.join(",");
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in reports {
        rows.push(vec![
            r.cartan.family.letter().to_string(),
            r.cartan.rank.to_string(),
            internal_to_display(r.cartan.family, r.alpha_index).to_string(),
            fmt_rat(&r.k),
            r.integral.to_string(),
            r.m.to_string(),
            join(r.dims.iter().map(|d| d.to_string()).collect()),
            join(r.epsilons().iter().map(|e| e.to_string()).collect()),
            join(r.h.iter().map(fmt_rat).collect()),
            r.critical.to_string(),
            r.self_associate.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_ls_report(family: &str, rank: usize, index: &str, json: bool) -> i32 {
    let fam = match Family::parse(family) {
        Some(f) => f,
        None => return invalid(&format!("unknown family {family:?} (expected A, B, C, or D)")),
    };
    let cartan = match CartanType::new(fam, rank) {
        Ok(c) => c,
        Err(e) => return invalid(&e.to_string()),
    };
    let datum = match RootDatum::build(cartan) {
        Ok(d) => d,
        Err(e) => return invalid(&e.to_string()),
    };
    let reports: Vec<LSReport> = if index == "all" {
        all_maximal_parabolics(&datum).iter().map(ls_report).collect()
    } else {
        let display: usize = match index.parse() {
            Ok(i) => i,
            Err(_) => return invalid(&format!("index must be a number or \"all\", got {index:?}")),
        };
        let internal = match display_to_internal(fam, display, cartan.num_simple()) {
            Some(i) => i,
            None => {
                return invalid(&format!(
                    "index {display} out of range for {} ({} simple roots, {}-based)",
                    cartan.label(),
                    cartan.num_simple(),
                    if fam == Family::D { 0 } else { 1 }
                ))
            }
        };
        let p = match MaximalParabolic::new(datum.clone(), internal) {
            Ok(p) => p,
            Err(e) => return invalid(&e.to_string()),
        };
        vec![ls_report(&p)]
    };
    if json {
        let text = if index == "all" {
            let list: Vec<ReportJson> = reports.iter().map(report_json).collect();
            serde_json::to_string_pretty(&list).expect("serializable")
        } else {
            serde_json::to_string_pretty(&report_json(&reports[0])).expect("serializable")
        };
        emit(&text);
    } else {
        emit(&render_table(&reports));
    }
    0
}

// -------------------------------------------------------------------- gl2

/// One character in the interchange format: generator exponents over the
/// canonical generator enumeration of the unit group, a coefficient list
/// for the value at the uniformizer, and the weight, with all rationals as
/// "num/den" strings.
#[derive(Serialize, Deserialize)]
pub struct CharacterRecord {
    pub p: u64,
    pub c: u32,
    pub unit_values: Vec<u64>,
    pub zeta_order: u64,
    pub value_at_uniformizer: Vec<String>,
    pub weight: String,
}

#[derive(Serialize, Deserialize)]
pub struct CharacterPairFile {
    pub pair: Vec<CharacterRecord>,
}

pub fn build_character(rec: &CharacterRecord) -> Result<SmoothCharacter, Error> {
    let mut coeffs = Vec::with_capacity(rec.value_at_uniformizer.len());
    for s in &rec.value_at_uniformizer {
        coeffs.push(
            parse_rat(s)
                .ok_or_else(|| Error::CharData(format!("bad rational {s:?}")))?,
        );
    }
    let value = Cyclotomic::from_poly(rec.zeta_order, coeffs);
    let weight = parse_rat(&rec.weight)
        .ok_or_else(|| Error::CharData(format!("bad rational {:?}", rec.weight)))?;
    SmoothCharacter::from_generator_exponents(
        rec.p,
        rec.c,
        rec.zeta_order,
        &rec.unit_values,
        value,
        weight,
    )
}

#[derive(Serialize)]
struct CycJson {
    zeta_order: u64,
    coeffs: Vec<String>,
}

fn cyc_json(x: &Cyclotomic) -> CycJson {
    CycJson {
        zeta_order: x.order(),
        coeffs: x.coeffs().iter().map(fmt_rat).collect(),
    }
}

#[derive(Serialize)]
struct FamilyEntryJson {
    num: Vec<CycJson>,
    denom_power: u32,
}

#[derive(Serialize)]
struct FamilyJson {
    cq: CycJson,
    max_denominator_power: u32,
    entries: Vec<Vec<FamilyEntryJson>>,
}

#[derive(Serialize)]
struct OracleJson {
    truncation: i64,
    embedding: u64,
    tail_bound: f64,
    max_relative_deviation: f64,
    absolute_deviation: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct GaloisJson {
    a: u64,
    standard: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalised: Option<bool>,
}

#[derive(Serialize)]
struct EquivarianceJson {
    trials: usize,
    pass: bool,
}

#[derive(Serialize)]
struct Gl2Json {
    p: u64,
    m: u32,
    normalised: bool,
    zeta_order: u64,
    entries: Vec<Vec<CycJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    galois: Option<Vec<GaloisJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equivariance: Option<EquivarianceJson>,
}

struct Gl2Args {
    chars: PathBuf,
    p: u64,
    m: u32,
    normalised: bool,
    family: bool,
    oracle: bool,
    truncation: i64,
    embedding: u64,
    galois: bool,
    equivariance: bool,
}

fn matrix_json(t: &OperatorMatrix) -> Vec<Vec<CycJson>> {
    t.entries
        .iter()
        .map(|row| row.iter().map(cyc_json).collect())
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cmd_gl2(args: &Gl2Args) -> i32 {
    let text = match std::fs::read_to_string(&args.chars) {
        Ok(t) => t,
        Err(e) => return invalid(&format!("cannot read {}: {e}", args.chars.display())),
    };
    let file: CharacterPairFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => return invalid(&format!("cannot parse {}: {e}", args.chars.display())),
    };
    if file.pair.len() != 2 {
        return invalid(&format!("expected exactly 2 characters, got {}", file.pair.len()));
    }
    let chi1 = match build_character(&file.pair[0]) {
        Ok(c) => c,
        Err(e) => return invalid(&e.to_string()),
    };
    let chi2 = match build_character(&file.pair[1]) {
        Ok(c) => c,
        Err(e) => return invalid(&e.to_string()),
    };
    if chi1.prime() != args.p || chi2.prime() != args.p {
        return invalid(&format!(
            "character file is for prime {}, request says {}",
            chi1.prime(),
            args.p
        ));
    }
    if !right_of_axis_check(&chi1, &chi2) {
        eprintln!(
            "error: convergence gate failed: the weight gap must put the pair strictly right of the axis"
        );
        return 3;
    }
    let standard = match intertwiner_matrix(&chi1, &chi2, args.p, args.m) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return code_for(&e);
        }
    };
    let shown = if args.normalised {
        match normalized_matrix(&chi1, &chi2, args.p, args.m) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return code_for(&e);
            }
        }
    } else {
        standard.clone()
    };

    let family = if args.family {
        match rational_family(&chi1, &chi2, args.p, args.m) {
            Ok(fam) => Some(FamilyJson {
                cq: cyc_json(&fam.cq),
                max_denominator_power: fam.max_denominator_power(),
                entries: fam
                    .entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| FamilyEntryJson {
                                num: e.num.iter().map(cyc_json).collect(),
                                denom_power: e.denom_power,
                            })
                            .collect()
                    })
                    .collect(),
            }),
            Err(e) => {
                eprintln!("error: {e}");
                return code_for(&e);
            }
        }
    } else {
        None
    };

    let oracle = if args.oracle {
        match numeric_oracle(&chi1, &chi2, args.p, args.m, args.truncation, args.embedding) {
            Ok(report) => {
                let absolute: Vec<Vec<f64>> = standard
                    .entries
                    .iter()
                    .zip(&report.matrix)
                    .map(|(row_e, row_o)| {
                        row_e
                            .iter()
                            .zip(row_o)
                            .map(|(e, o)| (e.complex_embedding(report.embedding) - o).norm())
                            .collect()
                    })
                    .collect();
                Some(OracleJson {
                    truncation: report.truncation,
                    embedding: report.embedding,
                    tail_bound: report.tail_bound,
                    max_relative_deviation: oracle_deviation(&standard, &report),
                    absolute_deviation: absolute,
                })
            }
            Err(e) => {
                eprintln!("error: {e}");
                return code_for(&e);
            }
        }
    } else {
        None
    };

    let galois = if args.galois {
        let n = shown.entries[0][0].order();
        let mut rows = Vec::new();
        for a in (1..=n).filter(|a| gcd(*a, n) == 1) {
            let s1 = chi1.galois_transform(a);
            let s2 = chi2.galois_transform(a);
            let standard_ok = match intertwiner_matrix(&s1, &s2, args.p, args.m) {
                Ok(direct) => standard.galois(a).entries_equal(&direct),
                Err(_) => false,
            };
            let normalised_ok = if args.normalised {
                Some(match normalized_matrix(&s1, &s2, args.p, args.m) {
                    Ok(direct) => shown.galois(a).entries_equal(&direct),
                    Err(_) => false,
                })
            } else {
                None
            };
            rows.push(GaloisJson { a, standard: standard_ok, normalised: normalised_ok });
        }
        Some(rows)
    } else {
        None
    };

    let equivariance = if args.equivariance {
        let mut rng = ChaCha8Rng::seed_from_u64(20_260_822);
        let trials = 20;
        let mut pass = true;
        for _ in 0..trials {
            let k0 = random_compact_element(&mut rng, args.p, args.m);
            match k_equivariance_check(&chi1, &chi2, args.p, args.m, k0) {
                Ok(ok) => pass &= ok,
                Err(e) => {
                    eprintln!("error: {e}");
                    return code_for(&e);
                }
            }
        }
        Some(EquivarianceJson { trials, pass })
    } else {
        None
    };

    let doc = Gl2Json {
        p: args.p,
        m: args.m,
        normalised: args.normalised,
        zeta_order: shown.entries[0][0].order(),
        entries: matrix_json(&shown),
        family,
        oracle,
        galois,
        equivariance,
    };
    emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
    0
}

// ----------------------------------------------------------------- verify

fn cmd_verify(suite: &str) -> i32 {
    let selected: Vec<(&str, Vec<Verdict>)> = if suite == "all" {
        SUITE_NAMES
            .iter()
            .map(|name| (*name, run_suite(name).expect("listed suite")))
            .collect()
    } else {
        match run_suite(suite) {
            Some(v) => vec![(suite, v)],
            None => {
                return invalid(&format!(
                    "unknown suite {suite:?} (expected one of {}, or all)",
                    SUITE_NAMES.join(", ")
                ))
            }
        }
    };
    let mut all_pass = true;
    for (name, verdicts) in selected {
        for v in verdicts {
            emit(&format!("{name} {}: {}", v.name, if v.pass { "ok" } else { "FAIL" }));
            all_pass &= v.pass;
        }
    }
    if all_pass {
        0
    } else {
        1
    }
}
