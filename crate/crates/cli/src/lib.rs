//! Command-line front end. [`run`] does all the work and returns the exit
//! status with the text to print, so it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use redinv::liecrit::{symplectic_factor_check, PicardSummary};
use redinv::report::Status;
use redinv::rootdata::{components, validate};
use redinv::slnverify::DonkinReport;
use redinv::{catalog, divisor_of_character, picard_group, preset, verdicts, CheckReport, RootDatum, SlnContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "redinv", version, about = "Picard groups, factoriality verdicts and SL_n invariant checks")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GroupArg {
    /// Group spec such as "GL(3)xSp(4)" or "SC(E6)".
    #[arg(short = 'g', long)]
    group: Option<String>,
    /// JSON file with fields rank, roots, coroots.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Picard group of G and whether K[G] is factorial.
    Picard {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Divisor of a character in the basis G1, ..., Gs.
    Divisor {
        #[command(flatten)]
        group: GroupArg,
        /// Comma-separated coordinates of the character.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        character: Vec<i64>,
    },
    /// Factoriality verdicts for the g-invariants in K[G], K[g] and S(g).
    Verdicts {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        p: u64,
    },
    /// List the preset group names.
    Catalog,
    /// Symbolic checks on K[SL_n] modulo det - 1.
    VerifySln {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Degree bound for the invariant-space computations.
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Extra nominal degree allowed for generator products.
        #[arg(long)]
        slack: Option<u32>,
        /// Compare generated and invariant dimensions level by level.
        #[arg(long)]
        donkin: bool,
        /// Check that semi-invariants are invariants.
        #[arg(long)]
        semi: bool,
        /// Eliminate the last column from the Frobenius relations.
        #[arg(long)]
        eliminate: bool,
    },
}

/// Machine-readable report. Fields that a command does not compute are
/// omitted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub picard: Option<PicardJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_ss: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_diff_roots: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_diff_coroots: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub donkin: Option<DonkinJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<Vec<String>>,
    #[serde(default)]
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardJson {
    pub factors: Vec<u64>,
    pub ufd: bool,
}

impl From<PicardSummary> for PicardJson {
    fn from(s: PicardSummary) -> Self {
        Self { factors: s.factors, ufd: s.ufd }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsJson {
    pub kg_g: Status,
    pub k_lieg: Status,
    pub s_lieg: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DonkinJson {
    pub d: u32,
    pub slack: u32,
    pub span_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub slack_stable: bool,
}

impl From<&DonkinReport> for DonkinJson {
    fn from(r: &DonkinReport) -> Self {
        Self {
            d: r.d,
            slack: r.slack,
            span_dims: r.span_dims.clone(),
            invariant_dims: r.invariant_dims.clone(),
            slack_stable: r.slack_stable,
        }
    }
}

const FROBENIUS_NOTE: &str = "note: the relations are checked as s_i(z) = (s_i)^p. A literal reading \
with an unspecified right-hand side s'_i is not what Frobenius gives over F_p, so the p-th power form is used.";

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load_group(arg: &GroupArg) -> Result<RootDatum, Failure> {
    if let Some(spec) = &arg.group {
        return Ok(preset(spec)?);
    }
    let path = arg.group_file.as_ref().expect("clap enforces one of the two");
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let rd = RootDatum::from_json(&text)?.with_label(path.display().to_string());
    let bad = validate(&rd);
    if !bad.is_empty() {
        let lines: Vec<String> = bad.iter().map(ToString::to_string).collect();
        return Err(Failure(format!("invalid root datum: {}", lines.join("; "))));
    }
    Ok(rd)
}

fn render_pic(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn exit_code(checks: &[CheckReport]) -> i32 {
    if checks.iter().all(CheckReport::passed) { EXIT_OK } else { EXIT_CHECK_FAILED }
}

fn dispatch(cmd: Command, json: bool) -> Result<(i32, String), Failure> {
    let mut out = String::new();
    let mut report = Report::default();
    match cmd {
        Command::Catalog => {
            if json {
                return Ok((EXIT_OK, serde_json::to_string_pretty(catalog())? + "\n"));
            }
            for name in catalog() {
                writeln!(out, "{name}")?;
            }
        }
        Command::Picard { group } => {
            let rd = load_group(&group)?;
            let pic = picard_group(&rd)?;
            let summary = PicardJson { factors: pic.group.factors_u64().unwrap_or_default(), ufd: pic.kg_is_ufd };
            writeln!(out, "Pic(G) = {}; K[G] UFD: {}", render_pic(&summary.factors), yes_no(summary.ufd))?;
            let types = components(&rd)?.types();
            if !types.is_empty() {
                writeln!(out, "components: {}", types.join(" + "))?;
            }
            report.group = Some(rd.to_string());
            report.picard = Some(summary);
        }
        Command::Divisor { group, character } => {
            let rd = load_group(&group)?;
            let d = divisor_of_character(&rd, &character)?;
            writeln!(out, "{d}")?;
            report.group = Some(rd.to_string());
            report.divisor = Some(d.coefficients);
        }
        Command::Verdicts { group, p } => {
            let rd = load_group(&group)?;
            let v = verdicts(&rd, p)?;
            let check = symplectic_factor_check(&rd, p)?;
            let pic = PicardJson::from(v.picard.clone());
            writeln!(out, "group: {}", v.group)?;
            writeln!(out, "p = {p}")?;
            writeln!(out, "Pic(G) = {}; K[G] UFD: {}", render_pic(&pic.factors), yes_no(pic.ufd))?;
            writeln!(out, "regular semisimple elements in g: {}", yes_no(v.regular_ss))?;
            writeln!(out, "roots with zero differential: {:?}", v.zero_diff_roots)?;
            writeln!(out, "coroots with zero differential: {:?}", v.zero_diff_coroots)?;
            writeln!(out, "K[G]^g: {}", v.kg_g)?;
            writeln!(out, "K[g]^g: {}", v.k_lieg)?;
            writeln!(out, "S(g)^g: {}", v.s_lieg)?;
            writeln!(out, "{check}")?;
            report = Report {
                group: Some(v.group),
                p: Some(p),
                picard: Some(pic),
                regular_ss: Some(v.regular_ss),
                zero_diff_roots: Some(v.zero_diff_roots),
                zero_diff_coroots: Some(v.zero_diff_coroots),
                verdicts: Some(VerdictsJson { kg_g: v.kg_g, k_lieg: v.k_lieg, s_lieg: v.s_lieg }),
                checks: vec![check],
                ..Report::default()
            };
        }
        Command::VerifySln { n, p, max_degree, slack, donkin, semi, eliminate } => {
            let ctx = SlnContext::new(n, p)?;
            writeln!(out, "SL({n}) over F_{p}")?;
            let mut checks = vec![ctx.conjugation_invariance()?, ctx.frobenius_relations()?, ctx.column_linearity()?];
            writeln!(out, "{FROBENIUS_NOTE}")?;
            if eliminate {
                let el = ctx.eliminate_last_column()?;
                writeln!(out, "det A = {}", el.det_a)?;
                writeln!(out, "surviving generators ({}): {}", el.surviving.len(), el.surviving.join(", "))?;
                checks.push(el.report);
            }
            if donkin {
                let r = ctx.donkin_check(max_degree, slack.unwrap_or(n as u32))?;
                writeln!(out, "generated dimensions by level: {:?}", r.span_dims)?;
                writeln!(out, "invariant dimensions by level: {:?}", r.invariant_dims)?;
                if !r.slack_stable {
                    writeln!(out, "warning: dimensions change with slack {}", r.slack + 1)?;
                }
                report.donkin = Some(DonkinJson::from(&r));
                checks.push(r.report);
            }
            if semi {
                checks.push(ctx.semi_invariant_scan(max_degree)?);
            }
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            report.group = Some(format!("SL({n})"));
            report.p = Some(p);
            report.notes = Some(vec![FROBENIUS_NOTE.into()]);
            report.checks = checks;
        }
    }
    let code = exit_code(&report.checks);
    if json {
        out = serde_json::to_string_pretty(&report)? + "\n";
    }
    Ok((code, out))
}

/// Parses `argv` (program name first) and runs the command. Returns the exit
/// status (0 ok, 1 usage or input error, 2 a check failed) and the output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command, cli.json) {
        Ok(r) => r,
        Err(Failure(msg)) => (EXIT_USAGE, format!("error: {msg}\n")),
    }
}
