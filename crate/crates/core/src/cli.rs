//! The `fock` command-line front end.
//!
//! Exit status: `0` on success, `1` on a domain error or a failed verification,
//! `2` on a usage error (bad flags, unparseable values).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::crystal::{is_highest_weight, weight_aff};
use crate::decomposition::{
    count_big_m, count_m, decompose_weight, hw_symbol_to_tableau, kostka, lambda_mu_of, level_parts, DecomposedWeight,
    SkewTableau, Tableau, TableauPeelStep,
};
use crate::error::Error;
use crate::graph::{generate_crystal, CrystalOptions};
use crate::multipartition::{EModulus, Multicharge, Multipartition, Partition};
use crate::symbol::{PeelTrace, Symbol};
use crate::verify::{run_suite, Setup, Suite, VerifyConfig};
use crate::weight::{WeightAff, WeightInf};

#[derive(Debug, Parser)]
#[command(name = "fock", version, about = "Crystal combinatorics of level-l Fock spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the symbol of a charged multipartition.
    Symbol(SymbolArgs),
    /// Locate the e-period of a symbol.
    Period(FiniteArgs),
    /// Remove e-periods until none is left.
    Peel(FiniteArgs),
    /// Decide whether a vertex is highest weight.
    Hw(HwArgs),
    /// Build a truncation of the crystal graph.
    Crystal(CrystalArgs),
    /// List the e-highest weight vertices among the semistandard multipartitions.
    Branch(BranchArgs),
    /// Count tableaux with strictly increasing rows of a given shape and weight.
    Kostka(KostkaArgs),
    /// Encode a highest weight symbol as a tableau.
    Tableau(TableauArgs),
    /// Branching multiplicities for a weight.
    Multiplicity(MultiplicityArgs),
    /// Run a verification suite over exhaustive small cases.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SymbolArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Multipartition,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    /// Truncate each row to its height plus `e` entries.
    #[arg(long)]
    pub e: Option<EModulus>,
}

#[derive(Debug, Args)]
pub struct FiniteArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Multipartition,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    #[arg(long)]
    pub e: EModulus,
}

#[derive(Debug, Args)]
pub struct HwArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Multipartition,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    /// A modulus `e >= 2` or `inf`.
    #[arg(long)]
    pub e: EModulus,
}

#[derive(Debug, Args)]
pub struct CrystalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    #[arg(long)]
    pub e: EModulus,
    #[arg(long)]
    pub max_rank: u32,
    /// Keep only the connected component of this vertex.
    #[arg(long, allow_hyphen_values = true)]
    pub component_of: Option<Multipartition>,
    #[arg(long, default_value_t = 200_000)]
    pub vertex_cap: usize,
}

#[derive(Debug, Args)]
pub struct BranchArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    #[arg(long)]
    pub e: EModulus,
    #[arg(long)]
    pub max_rank: u32,
}

#[derive(Debug, Args)]
pub struct KostkaArgs {
    #[arg(long)]
    pub shape: Partition,
    #[arg(long, value_delimiter = ',')]
    pub weight: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct TableauArgs {
    /// The multipartition whose symbol is encoded.
    #[arg(long, allow_hyphen_values = true)]
    pub of_symbol: Multipartition,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    /// Also split off the level-0 skew tableau for this modulus.
    #[arg(long)]
    pub e: Option<EModulus>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "m")]
    Small,
    #[value(name = "M")]
    Big,
}

#[derive(Debug, Args)]
pub struct MultiplicityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Multicharge,
    #[arg(long)]
    pub e: EModulus,
    /// `{"fundamental": {"j": a, ...}}`.
    #[arg(long)]
    pub nu: String,
    #[arg(long, value_enum, default_value_t = Which::Small)]
    pub which: Which,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub e: Option<EModulus>,
    #[arg(long, default_value_t = 4)]
    pub max_rank: u32,
    /// Semicolon-separated charges, e.g. `0,0;0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub charges: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// The command ran but reported a negative result.
    Unsuccessful,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buffer = Vec::new();
    let outcome = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut buffer)),
            Err(e) => Err(Failure::Domain(Error::ResourceLimit(e.to_string()))),
        },
        None => execute(&cli, &mut buffer),
    };
    let outcome = match out.write_all(&buffer).and_then(|()| out.flush()) {
        Ok(()) => outcome,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => outcome,
        Err(e) => outcome.and(Err(Failure::Domain(Error::ResourceLimit(format!("cannot write output: {e}"))))),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Unsuccessful) => 1,
    }
}

fn execute(cli: &Cli, out: &mut Vec<u8>) -> Outcome {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Crystal(_)) {
        return Err(Failure::Usage("--format dot is only available for `crystal`".into()));
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Symbol(a) => symbol(a, json, out),
        Command::Period(a) => period(a, json, out),
        Command::Peel(a) => peel(a, json, out),
        Command::Hw(a) => hw(a, json, out),
        Command::Crystal(a) => crystal(a, cli.format, out),
        Command::Branch(a) => branch(a, json, out),
        Command::Kostka(a) => kostka_cmd(a, json, out),
        Command::Tableau(a) => tableau(a, json, out),
        Command::Multiplicity(a) => multiplicity(a, json, out),
        Command::Verify(a) => verify(a, json, out),
    }
}

fn emit(out: &mut Vec<u8>, text: &str) -> Outcome {
    out.extend_from_slice(text.as_bytes());
    Ok(())
}

fn emit_json<T: Serialize>(out: &mut Vec<u8>, value: &T) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(Error::Internal(e.to_string())))?;
    text.push('\n');
    emit(out, &text)
}

#[derive(Serialize)]
struct SymbolView {
    lambda: Multipartition,
    charge: Multicharge,
    /// Row `c` in position `c`, each listed from its largest entry.
    rows: Vec<Vec<i64>>,
}

fn symbol(a: &SymbolArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let sym = Symbol::new(a.lambda.clone(), a.charge.clone())?;
    let extra = match a.e {
        Some(e) => e.require_finite()?,
        None => 1,
    };
    if json {
        emit_json(out, &SymbolView { lambda: a.lambda.clone(), charge: a.charge.clone(), rows: sym.truncated(extra) })
    } else {
        emit(out, &sym.to_string())
    }
}

#[derive(Serialize)]
struct PeriodView {
    form: Vec<i64>,
    /// `[i, λ_i^c, c]` per letter.
    nodes: Vec<[i64; 3]>,
}

fn period(a: &FiniteArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let e = a.e.require_finite()?;
    let sym = Symbol::new(a.lambda.clone(), a.charge.clone())?;
    let found = sym.find_period(e)?;
    if json {
        let view = found.as_ref().map(|p| PeriodView {
            form: p.form(),
            nodes: p.letters.iter().map(|l| [l.index as i64, l.part as i64, l.comp as i64]).collect(),
        });
        return emit_json(out, &serde_json::json!({ "period": view }));
    }
    match found {
        Some(p) => emit(out, &format!("period {:?}\nletters (value@(i,part,c)): {p}\n", p.form())),
        None => emit(out, &format!("no {e}-period\n")),
    }
}

#[derive(Serialize)]
struct PeelView<'a> {
    #[serde(flatten)]
    trace: &'a PeelTrace,
    totally_periodic: bool,
}

fn peel(a: &FiniteArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let e = a.e.require_finite()?;
    let trace = Symbol::new(a.lambda.clone(), a.charge.clone())?.peel(e)?;
    let totally_periodic = trace.is_totally_periodic(e);
    if json {
        return emit_json(out, &PeelView { trace: &trace, totally_periodic });
    }
    let mut text = String::new();
    for (k, step) in trace.periods.iter().enumerate() {
        text += &format!(
            "{:>3}  form {:?}  -> {} with charge {}\n",
            k + 1,
            step.form,
            step.lambda_after,
            step.charge_after
        );
    }
    text += &format!(
        "final: {} with charge {}\ntotally periodic: {totally_periodic}\n",
        trace.final_lambda, trace.final_charge
    );
    emit(out, &text)
}

fn hw(a: &HwArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let highest = is_highest_weight(&a.lambda, &a.charge, a.e)?;
    let sym = Symbol::new(a.lambda.clone(), a.charge.clone())?;
    let periodic = match a.e {
        EModulus::Finite(e) => sym.is_totally_periodic(e)?,
        EModulus::Infinite => sym.is_totally_periodic_inf(),
    };
    if json {
        emit_json(
            out,
            &serde_json::json!({
                "lambda": a.lambda,
                "charge": a.charge,
                "e": a.e.to_string(),
                "highest_weight": highest,
                "totally_periodic": periodic,
            }),
        )
    } else {
        emit(out, &format!("{highest}\n"))
    }
}

fn crystal(a: &CrystalArgs, format: Format, out: &mut Vec<u8>) -> Outcome {
    let opts = CrystalOptions { vertex_cap: a.vertex_cap, ..CrystalOptions::up_to(a.max_rank) };
    let mut graph = generate_crystal(&a.charge, a.e, &opts)?;
    if let Some(root) = &a.component_of {
        graph = graph.component_of(root)?;
    }
    let text = match format {
        Format::Dot => graph.to_dot(),
        Format::Json => graph.to_json() + "\n",
        Format::Text => graph.to_text(),
    };
    emit(out, &text)
}

#[derive(Serialize)]
struct BranchRow {
    lambda: Multipartition,
    rank: u32,
    wt_inf: WeightInf,
    wt_e: WeightAff,
    decomposition: Vec<DecomposedWeight>,
}

fn branch(a: &BranchArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let e = a.e.require_finite()?;
    if !a.charge.is_weakly_increasing() {
        return Err(Error::Precondition(format!(
            "the empty multipartition is semistandard only for a weakly increasing charge, got {}",
            a.charge
        ))
        .into());
    }
    let graph = generate_crystal(&a.charge, a.e, &CrystalOptions::up_to(a.max_rank))?;
    let mut rows = Vec::new();
    for v in graph.highest_weight_vertices() {
        if !Symbol::new(v.lambda.clone(), a.charge.clone())?.is_semistandard() {
            continue;
        }
        rows.push(BranchRow {
            lambda: v.lambda.clone(),
            rank: v.rank,
            wt_inf: v.wt_inf.clone(),
            wt_e: weight_aff(&v.lambda, &a.charge, e)?,
            decomposition: decompose_weight(&v.wt_inf, a.charge.level(), e),
        });
    }
    if json {
        return emit_json(out, &rows);
    }
    let mut text = String::new();
    for r in &rows {
        let dec: Vec<String> = r
            .decomposition
            .iter()
            .map(|d| {
                let omegas: Vec<String> = d.omega.iter().map(|(k, a)| format!("{a}ω{k}")).collect();
                let gamma = if omegas.is_empty() { "0".to_string() } else { omegas.join(" + ") };
                format!("t={} γ={gamma}", d.t)
            })
            .collect();
        text += &format!("{:<24} wt∞ = {:<28} {}\n", r.lambda.to_string(), r.wt_inf.to_string(), dec.join("; "));
    }
    emit(out, &text)
}

fn kostka_cmd(a: &KostkaArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let k = kostka(&a.shape, &a.weight);
    if json {
        emit_json(out, &serde_json::json!({ "shape": a.shape.parts(), "weight": a.weight, "kostka": k }))
    } else {
        emit(out, &format!("{k}\n"))
    }
}

#[derive(Serialize)]
struct TableauView {
    #[serde(skip_serializing_if = "Option::is_none")]
    infinite: Option<InfiniteView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    level_zero: Option<LevelZeroView>,
}

#[derive(Serialize)]
struct InfiniteView {
    tableau: Tableau,
    shape: Vec<u32>,
    weight: Vec<u32>,
    v: Multicharge,
}

#[derive(Serialize)]
struct LevelZeroView {
    tableau: SkewTableau,
    t: Multicharge,
    periods: Vec<TableauPeelStep>,
    totally_periodic: bool,
}

/// The `e = ∞` tableau when the vertex is highest weight there, and the level-0
/// skew tableau when a finite `e` is given.
fn tableau(a: &TableauArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let infinite = if is_highest_weight(&a.of_symbol, &a.charge, EModulus::Infinite)? {
        let (t, v) = hw_symbol_to_tableau(&a.of_symbol, &a.charge)?;
        let (shape, weight) = lambda_mu_of(&v, &a.charge)?;
        Some(InfiniteView { tableau: t, shape: shape.parts().to_vec(), weight, v })
    } else {
        None
    };
    let level_zero = match a.e {
        Some(e) => {
            let e = e.require_finite()?;
            let (skew, t0) = level_parts(&a.of_symbol, &a.charge, e)?;
            let peeled = skew.peel(e);
            let totally_periodic = skew.is_totally_periodic(e);
            Some(LevelZeroView { tableau: skew, t: t0, periods: peeled.periods, totally_periodic })
        }
        None => None,
    };
    if infinite.is_none() && level_zero.is_none() {
        return Err(Error::Precondition(format!(
            "{} is not a highest weight vertex for e = ∞ and charge {}; pass --e for the level-0 part",
            a.of_symbol, a.charge
        ))
        .into());
    }
    if json {
        return emit_json(out, &TableauView { infinite, level_zero });
    }
    let mut text = String::new();
    if let Some(z) = &infinite {
        text += &format!("v = {}\nshape {:?}, weight {:?}\n{}", z.v, z.shape, z.weight, z.tableau);
    }
    if let Some(z) = level_zero {
        let forms: Vec<String> = z.periods.iter().map(|p| format!("{:?}", p.form)).collect();
        text += &format!(
            "level-0 part over t = {}:\n{}periods: {}\ntotally periodic: {}\n",
            z.t,
            z.tableau,
            forms.join(" "),
            z.totally_periodic
        );
    }
    emit(out, &text)
}

fn multiplicity(a: &MultiplicityArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let e = a.e.require_finite()?;
    let nu = WeightInf::from_json(&a.nu)?;
    let value = match a.which {
        Which::Small => count_m(&a.charge, &nu, e)?,
        Which::Big => count_big_m(&a.charge, &nu, e)?,
    };
    let name = match a.which {
        Which::Small => "m",
        Which::Big => "M",
    };
    if json {
        emit_json(
            out,
            &serde_json::json!({
                "which": name,
                "nu": nu,
                "decomposition": decompose_weight(&nu, a.charge.level(), e),
                "value": value,
            }),
        )
    } else {
        emit(out, &format!("{value}\n"))
    }
}

fn verify(a: &VerifyArgs, json: bool, out: &mut Vec<u8>) -> Outcome {
    let e = a.e.map(|e| e.require_finite()).transpose()?;
    let setups = match &a.charges {
        Some(list) => {
            let e = e.ok_or_else(|| Failure::Usage("--charges requires --e".into()))?;
            list.split(';')
                .map(|c| c.parse::<Multicharge>().map(|s| Setup { charge: s, e }))
                .collect::<crate::Result<Vec<_>>>()
                .map_err(|err| Failure::Usage(err.to_string()))?
        }
        None => match (a.l, e) {
            (Some(l), Some(e)) => fundamental_domain(l, e).into_iter().map(|s| Setup { charge: s, e }).collect(),
            _ => VerifyConfig::standard(a.max_rank)
                .setups
                .into_iter()
                .filter(|s| a.l.is_none_or(|l| s.charge.level() == l) && e.is_none_or(|e| s.e == e))
                .collect(),
        },
    };
    if let Some(l) = a.l {
        if let Some(bad) = setups.iter().find(|s| s.charge.level() != l) {
            return Err(Failure::Usage(format!("charge {} does not have level {l}", bad.charge)));
        }
    }
    if setups.is_empty() {
        return Err(Failure::Usage("no setups match the given --l and --e".into()));
    }
    let config = VerifyConfig { setups, max_rank: a.max_rank, jobs: None };
    let report = run_suite(a.suite, &config)?;
    if json {
        emit_json(out, &report)?;
    } else {
        emit(out, &report.to_string())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Unsuccessful)
    }
}

/// Representatives `0 <= v_0 <= … <= v_{l-1} <= e - 1`.
fn fundamental_domain(l: usize, e: u32) -> Vec<Multicharge> {
    fn go(l: usize, e: i64, cur: &mut Vec<i64>, out: &mut Vec<Multicharge>) {
        if cur.len() == l {
            out.push(Multicharge(cur.clone()));
            return;
        }
        for x in cur.last().copied().unwrap_or(0)..e {
            cur.push(x);
            go(l, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(l, e as i64, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("fock").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["kostka", "--shape", "2.1", "--weight", "1,1,1"]).0, 0);
        assert_eq!(run_capture(&["peel", "--lambda", "1", "--charge", "0"]).0, 2);
        assert_eq!(run_capture(&["peel", "--lambda", "1|1", "--charge", "0", "--e", "2"]).0, 1);
        assert_eq!(run_capture(&["peel", "--lambda", "1", "--charge", "0", "--e", "inf"]).0, 1);
        assert_eq!(run_capture(&["hw", "--lambda", "1", "--charge", "0", "--e", "1"]).0, 2);
        assert_eq!(run_capture(&["kostka", "--shape", "2.1", "--weight", "1", "--format", "dot"]).0, 2);
    }

    #[test]
    fn fundamental_domain_sizes() {
        assert_eq!(fundamental_domain(2, 2).len(), 3);
        assert_eq!(fundamental_domain(3, 3).len(), 10);
    }

    #[test]
    fn negative_charges_parse() {
        let (code, out, _) = run_capture(&["hw", "--lambda", "-|1", "--charge", "-1,2", "--e", "inf"]);
        assert_eq!(code, 0);
        assert!(out == "true\n" || out == "false\n");
    }
}
