use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use schubert_core::exterior::DEFAULT_MAX_WEDGE_DIM;
use schubert_core::liealg::TangentModel;
use schubert_core::partitions::{enumerate_box, Ambient, CodimFilter, Partition};
use schubert_core::report::{self, equality_label};
use schubert_core::rigidity::{self, Limits, RigidityReport, Step, Verdict};
use schubert_core::{cohomology, diagram, hwv};

#[derive(Parser, Debug)]
#[command(name = "schubert", version, about = "Rigidity data for Schubert varieties in Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest coordinate space any single elimination may use.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WEDGE_DIM as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_wedge_dim: u64,
    /// Worker threads for surveys.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    jobs: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DiagramKind {
    Young,
    Matrix,
    Blocks,
    Hwv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full rigidity report for one partition, e.g. `gr(3,5):2,2,0`.
    Analyze { partition: Partition },
    /// ASCII picture of a partition.
    Diagram { kind: DiagramKind, partition: Partition },
    /// One row per partition in the m x (n-m) box.
    Survey {
        m: usize,
        n: usize,
        /// Keep only partitions satisfying the multiplicity condition.
        #[arg(long)]
        only_theorem: bool,
    },
    /// Complement components of m_a and the dimension audit.
    Hwv { partition: Partition },
    /// Dimension of H^(1,1).
    H11 { partition: Partition },
    /// Compare T_a with m_a.
    CheckEquality { partition: Partition },
    /// JSON schema of the report format.
    Schema,
}

struct Output {
    body: String,
    consistency_failure: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, consistency_failure: false }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn nondegenerate(a: &Partition) -> Result<()> {
    anyhow::ensure!(!a.is_degenerate(), "{a} is degenerate (a point or the whole Grassmannian)");
    Ok(())
}

fn survey_row(r: &RigidityReport) -> String {
    let yn = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    let h11 = match &r.h11 {
        Step::Computed { value } => value.dim.to_string(),
        Step::Skipped { .. } => "SKIPPED".into(),
        Step::NotApplicable { .. } => "-".into(),
    };
    let eq = match &r.tangent {
        Step::Computed { value } => equality_label(&value.verdict),
        Step::Skipped { .. } => "SKIPPED".into(),
        Step::NotApplicable { .. } => "-".into(),
    };
    let exc: Vec<String> = r.exception_boxes.iter().map(|(i, a)| format!("({i},{a})")).collect();
    let verdict = match &r.verdict {
        Verdict::Trivial => "trivial".to_string(),
        Verdict::SchurRigid => "Schur rigid".into(),
        Verdict::NotCovered => "not covered".into(),
        Verdict::Skipped { .. } => "SKIPPED".into(),
        Verdict::ConsistencyFailure { .. } => "CONSISTENCY FAILURE".into(),
    };
    format!(
        "{:<28} {:>5}  {:<16} {:<16} {:<7} {:>7}  {:<26} {:<14} {}",
        r.partition.to_string(),
        r.codim,
        r.exp_form.to_string(),
        r.conjugate_exp_form.to_string(),
        yn(r.theorem_condition),
        h11,
        eq,
        if exc.is_empty() { "-".into() } else { exc.join(" ") },
        verdict
    )
}

fn survey(m: usize, n: usize, only_theorem: bool, cli: &Cli, limits: &Limits) -> Result<Output> {
    let amb = Ambient::new(m, n)?;
    let parts: Vec<Partition> = enumerate_box(amb, CodimFilter::default())
        .filter(|a| !only_theorem || (!a.is_degenerate() && a.theorem_condition().unwrap_or(false)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build()?;
    // indexed collect keeps enumeration order whatever the thread count
    let reports: Vec<RigidityReport> = pool.install(|| {
        parts.par_iter().map(|a| rigidity::verdict(a, limits).with_context(|| format!("analyzing {a}"))).collect::<Result<_>>()
    })?;
    let consistency_failure = reports.iter().any(RigidityReport::is_consistency_failure);
    let body = match cli.format {
        Format::Json => to_json(&reports)?,
        Format::Text => {
            let mut s = format!(
                "{:<28} {:>5}  {:<16} {:<16} {:<7} {:>7}  {:<26} {:<14} {}\n",
                "partition", "codim", "exp form", "conjugate", "theorem", "h11", "T_a vs m_a", "exceptions", "verdict"
            );
            for r in &reports {
                s.push_str(survey_row(r).trim_end());
                s.push('\n');
            }
            let count = |f: fn(&Verdict) -> bool| reports.iter().filter(|r| f(&r.verdict)).count();
            s.push_str(&format!(
                "total {}: {} Schur rigid, {} not covered, {} trivial, {} skipped, {} consistency failures\n",
                reports.len(),
                count(|v| *v == Verdict::SchurRigid),
                count(|v| *v == Verdict::NotCovered),
                count(|v| *v == Verdict::Trivial),
                count(|v| matches!(v, Verdict::Skipped { .. })),
                count(|v| matches!(v, Verdict::ConsistencyFailure { .. })),
            ));
            s
        }
    };
    Ok(Output { body, consistency_failure })
}

fn run(cli: &Cli) -> Result<Output> {
    let limits = Limits::new(u128::from(cli.max_wedge_dim));
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Analyze { partition } => {
            let r = rigidity::verdict(partition, &limits)?;
            let body = if json { to_json(&r)? } else { report::render_text(&r) };
            Ok(Output { body, consistency_failure: r.is_consistency_failure() })
        }
        Command::Diagram { kind, partition } => {
            let text = match kind {
                DiagramKind::Young => diagram::young(partition),
                DiagramKind::Matrix => diagram::matrix(partition)?,
                DiagramKind::Blocks => diagram::blocks(partition)?,
                DiagramKind::Hwv => {
                    nondegenerate(partition)?;
                    diagram::hwv(partition)?
                }
            };
            Ok(Output::ok(if json { to_json(&json!({ "partition": partition, "diagram": text }))? } else { text }))
        }
        Command::Survey { m, n, only_theorem } => survey(*m, *n, *only_theorem, cli, &limits),
        Command::Hwv { partition } => {
            nondegenerate(partition)?;
            let model = TangentModel::new(partition)?;
            let audit = hwv::decomposition_audit(&model)?;
            Ok(Output::ok(if json { to_json(&audit)? } else { diagram::hwv(partition)? }))
        }
        Command::H11 { partition } => {
            nondegenerate(partition)?;
            let model = TangentModel::new(partition)?;
            let k = model.k();
            let size = k * k.saturating_sub(1) / 2 * model.qdim();
            if size as u128 > limits.max_wedge_dim {
                anyhow::bail!("H^(1,1) codomain has dimension {size}, above the cap {}", limits.max_wedge_dim);
            }
            let h = cohomology::h11(&model)?;
            let body = if json {
                to_json(&json!({ "partition": partition, "dim": h.dim(), "domain_dim": h.kernel.ambient_dim() }))?
            } else {
                format!("{partition}: dim H^(1,1) = {} (domain dim {})\n", h.dim(), h.kernel.ambient_dim())
            };
            Ok(Output::ok(body))
        }
        Command::CheckEquality { partition } => {
            let t = rigidity::check_equality(partition, &limits)?;
            let body = if json {
                to_json(&json!({ "partition": partition, "tangent": t }))?
            } else {
                format!("{partition}: dim T_a = {}, dim m_a = {}: {}\n", t.dim_ta, t.dim_ma, equality_label(&t.verdict))
            };
            Ok(Output::ok(body))
        }
        Command::Schema => Ok(Output::ok(to_json(&report::schema())?)),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(&cli).and_then(|o| emit(&cli, &o.body).map(|_| o.consistency_failure));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: independent computations disagree; see the verdict in the report");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
