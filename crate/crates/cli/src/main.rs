//! Command-line front end: decode codes, build presentations and cusp reports, run the
//! filtering criteria, verify sphere fillings and count cover boundaries.

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use link4::enumerate::{EnumOptions, Strategy, DEFAULT_MAX_COSETS};
use link4::pipeline::{
    analyze_cover, batch, criteria_report, generator_index, summary_table, Analysis, BatchMode,
    Report, Verdict, VerificationPlan,
};
use link4::presentation::tietze_simplify;
use link4::{abelianization, decode_code, PairingScheme};

/// Exit status when some enumeration overflowed and a verdict is undecided.
const EXIT_UNDECIDED: u8 = 2;
const EXIT_ERROR: u8 = 1;

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*)?
    };
}

#[derive(Parser)]
#[command(
    name = "link4",
    version,
    about = "Side-pairings of the ideal 24-cell and their link complements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Side-pairings and orientation character of a code.
    Decode(CodeArgs),
    /// The ridge-cycle presentation of the side-pairing group.
    Present {
        #[command(flatten)]
        code: CodeArgs,
        /// Print the orientation double cover's presentation instead.
        #[arg(long)]
        double_cover: bool,
        /// Generator whose coset is the second sheet of the double cover.
        #[arg(long, value_name = "GEN")]
        transversal: Option<String>,
        /// Tietze-simplify before printing.
        #[arg(long)]
        simplify: bool,
    },
    /// Cusp types, holonomy and translations.
    Cusps(CodeArgs),
    /// The phi and homology criteria.
    Criteria(CodeArgs),
    /// Fill the double cover along fibers and decide whether the result is the 4-sphere.
    Verify(PlanArgs),
    /// Boundary of the finite cover obtained by filling fibers with powers.
    Cover {
        #[command(flatten)]
        plan: PlanArgs,
        /// Power of a fiber, e.g. `E5'=3`.
        #[arg(long = "power", value_name = "LIFT=M", required = true)]
        powers: Vec<String>,
    },
    /// Criteria (and optionally verification) for every line of a census file.
    Batch {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also run sphere verification with fibers from the file or chosen automatically.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CodeArgs {
    code: String,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Fiber for one boundary component of the double cover, e.g. `E2'=cac^-1`.
    #[arg(long = "fiber", value_name = "LIFT=WORD")]
    fibers: Vec<String>,
    #[arg(long, value_name = "GEN")]
    transversal: Option<String>,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Use Felsch-style enumeration instead of HLT.
    #[arg(long)]
    felsch: bool,
    /// Enumerate the filled presentation as is, without Tietze simplification.
    #[arg(long)]
    no_simplify: bool,
}

impl PlanArgs {
    fn plan(&self) -> Result<VerificationPlan> {
        let specs: Vec<&str> = self.fibers.iter().map(String::as_str).collect();
        let mut plan = VerificationPlan::new(&self.code.code).with_fibers(&specs)?;
        plan.transversal = self
            .transversal
            .as_deref()
            .map(generator_index)
            .transpose()?;
        plan.options = EnumOptions {
            strategy: if self.felsch {
                Strategy::Felsch
            } else {
                Strategy::Hlt
            },
            max_cosets: self.max_cosets,
        };
        plan.simplify = !self.no_simplify;
        Ok(plan)
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn decode(args: &CodeArgs) -> Result<()> {
    let scheme = decode_code(&args.code)?;
    if args.json {
        return print_json(&link4::pipeline::SchemeReport::new(&scheme));
    }
    let names = PairingScheme::gen_names();
    out!("code {}", scheme.code());
    for (g, name) in names.iter().enumerate() {
        let mark = if scheme.is_reversing(g) {
            "  reversing"
        } else {
            ""
        };
        out!(
            "{:>2}: {} -> {}  K-part {}{mark}",
            name,
            scheme.source(g),
            scheme.target(g),
            scheme.kpart_of_gen(g)
        );
    }
    Ok(())
}

fn present(
    args: &CodeArgs,
    double_cover: bool,
    transversal: Option<&str>,
    simplify: bool,
) -> Result<()> {
    let transversal = transversal.map(generator_index).transpose()?;
    let analysis = Analysis::new(&args.code, transversal)?;
    let mut p = if double_cover {
        analysis.cover.presentation()
    } else {
        analysis.presentation.clone()
    };
    if simplify {
        p = tietze_simplify(&p, 10_000);
    }
    if args.json {
        return print_json(&p);
    }
    write!(std::io::stdout(), "{}", p.to_text())?;
    out!(
        "# {} generators, {} relators, H1 = {}",
        p.ngens(),
        p.relators().len(),
        abelianization(&p)
    );
    Ok(())
}

fn print_cusps(report: &Report) -> Result<()> {
    for c in &report.cusps {
        let lift = c
            .lift_type
            .map(|t| format!(", lifts to {t}"))
            .unwrap_or_default();
        let vertices: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
        out!(
            "{} type {} H1 = {}{lift}  [{}]",
            c.name,
            c.flat_type,
            c.homology,
            vertices.join(" ")
        );
        for h in c.holonomy.iter().filter(|h| h.planes != "trivial") {
            out!("    holonomy {} by {}", h.planes, h.word);
        }
        for t in &c.translations {
            out!("    translation {t}");
        }
    }
    out!("double cover boundary: {}", report.double_cover.boundary);
    Ok(())
}

fn print_criteria(report: &Report) -> Result<()> {
    let c = &report.criteria;
    let pass = |b: bool| if b { "pass" } else { "fail" };
    out!(
        "phi criterion: span dimension {} ({})",
        c.phi.dimension,
        pass(c.phi.pass)
    );
    out!(
        "homology criterion: H1 = {}, expected {} for {} ({})",
        c.homology.double_cover,
        c.homology.expected,
        report.link_description(),
        pass(c.homology.pass)
    );
    Ok(())
}

fn print_warnings(report: &Report) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
}

fn verdict_status(v: Option<Verdict>) -> u8 {
    if v == Some(Verdict::Undecided) {
        EXIT_UNDECIDED
    } else {
        0
    }
}

fn verify(args: &PlanArgs) -> Result<u8> {
    let report = link4::pipeline::verify_sphere(&args.plan()?)?;
    let status = verdict_status(report.verdict);
    if args.code.json {
        print_json(&report)?;
        return Ok(status);
    }
    print_warnings(&report);
    for f in &report.fibers {
        out!(
            "{} = {}  ({})",
            f.fiber.lift,
            f.fiber
                .word
                .free_reduce()
                .to_string_with(&PairingScheme::gen_names()),
            format!("{:?}", f.fiber.source).to_lowercase()
        );
    }
    if let Some(e) = &report.enumeration {
        out!(
            "filled group: {} generators, {} relators, H1 = {}",
            e.presentation.ngens(),
            e.presentation.relators().len(),
            e.abelianization
        );
        if let Some(reason) = &e.short_circuit {
            out!("decided without enumeration: {reason}");
        }
        if let (Some(order), Some(stats)) = (e.order, e.stats) {
            out!(
                "order {order} ({} cosets defined, {} at most)",
                stats.defined,
                stats.max_active
            );
        }
    }
    out!(
        "{}",
        report
            .verdict
            .map_or("no verdict".to_string(), |v| v.to_string())
    );
    Ok(status)
}

fn cover(args: &PlanArgs, powers: &[String]) -> Result<()> {
    let powers: Vec<&str> = powers.iter().map(String::as_str).collect();
    let plan = args.plan()?.with_powers(&powers)?;
    let report = analyze_cover(&plan)?;
    if args.code.json {
        return print_json(&report);
    }
    print_warnings(&report);
    let c = report.cover.as_ref().context("cover report missing")?;
    out!(
        "deck group order {}, euler characteristic {}",
        c.deck_order,
        c.euler_characteristic
    );
    for comp in &c.components {
        out!(
            "    {} (power {}): {} x {}",
            comp.lift,
            comp.power,
            comp.count,
            comp.flat_type
        );
    }
    out!("{} tori, {} Klein bottles", c.tori, c.klein_bottles);
    Ok(())
}

fn run_batch(
    file: &PathBuf,
    jobs: usize,
    verify: bool,
    max_cosets: usize,
    json: bool,
) -> Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mode = if verify {
        BatchMode::Verify
    } else {
        BatchMode::Criteria
    };
    let result = batch(
        &text,
        mode,
        EnumOptions::with_limit(max_cosets),
        jobs.max(1),
    );
    if json {
        print_json(&result)?;
    } else {
        for d in &result.diagnostics {
            eprintln!("{}:{}: {}", file.display(), d.line, d.message);
        }
        write!(std::io::stdout(), "{}", summary_table(&result))?;
    }
    Ok(if result.summary.undecided > 0 {
        EXIT_UNDECIDED
    } else if result.summary.errors > 0 || !result.diagnostics.is_empty() {
        EXIT_ERROR
    } else {
        0
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Decode(args) => decode(&args)?,
        Command::Present {
            code,
            double_cover,
            transversal,
            simplify,
        } => present(&code, double_cover, transversal.as_deref(), simplify)?,
        Command::Cusps(args) => {
            let report = criteria_report(&args.code, None)?;
            if args.json {
                print_json(&report.cusps)?;
            } else {
                print_cusps(&report)?;
            }
        }
        Command::Criteria(args) => {
            let report = criteria_report(&args.code, None)?;
            if args.json {
                print_json(&report.criteria)?;
            } else {
                print_criteria(&report)?;
            }
        }
        Command::Verify(args) => return verify(&args),
        Command::Cover { plan, powers } => cover(&plan, &powers)?,
        Command::Batch {
            file,
            jobs,
            verify,
            max_cosets,
            json,
        } => return run_batch(&file, jobs, verify, max_cosets, json),
    }
    Ok(0)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
