use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use circarray::arith::{Field, Rational, RationalFunction};
use circarray::array::{
    build_array, leftmost_diagonal, verify_closed_forms, verify_main_theorem_spotchecks, verify_row_lrcc,
    verify_row_recursions, verify_uniform_center,
};
use circarray::grid::{is_boundary, Grid, Side};
use circarray::oracle::{
    random_connected_graph, random_grid, verify_dual_pipeline, verify_fib_identities, verify_straight_2tree,
    verify_transform_soundness, WeightedGraph,
};
use circarray::reduction::reduce_k;
use circarray::sequence::{
    asymptotics_table, hankel_determinant, lhrcc_ruled_out, power_of_nine, row0_numerators, symbolic_diagonal,
    table_csv, table_markdown, verify_denominator_divisibility, verify_determinant_conjecture, verify_monotonicity,
    verify_symbolic_patterns, NumeratorSequence,
};
use circarray::Report;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact circuit-array computations on triangular resistor grids.
#[derive(Parser)]
#[command(name = "circarray", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Emit verification reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print every finding, not only summaries.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or verify the circuit array.
    #[command(subcommand)]
    Array(ArrayCmd),
    /// Reduce a grid and print its labels.
    Reduce(ReduceArgs),
    /// The leftmost diagonal L_1..L_S.
    Diag {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
        max_s: u64,
        #[arg(long, value_enum, default_value_t = Emit::Fractions)]
        emit: Emit,
    },
    /// Hankel determinants of the normalized diagonal numerators.
    Hankel {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=12))]
        max_k: u64,
    },
    /// The diagonal as rational functions of x, checked against the
    /// published formulas.
    Symbolic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=7), default_value_t = 7)]
        max_s: u64,
    },
    /// L_s against the product approximations A_s and P_s.
    Asymptotics {
        /// Comma-separated values or ranges, e.g. `1..5`, `8..80:8`, `1,2,3`.
        #[arg(long, default_value = "1..5")]
        rows: RowSpec,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
    },
    /// Effective resistance between two vertices of a JSON graph.
    Resistance {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
    },
    /// Checks against the independent oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Every verification suite.
    Verify {
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=12), default_value_t = 8)]
        max_cols: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=10), default_value_t = 6)]
        max_k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=200), default_value_t = 80)]
        max_s: u64,
    },
}

#[derive(Subcommand)]
enum ArrayCmd {
    Build {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
        cols: u64,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    Verify {
        #[arg(long, value_enum)]
        suite: ArraySuite,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=12), default_value_t = 8)]
        cols: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Verify {
        #[arg(long, value_enum)]
        suite: OracleSuite,
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args)]
struct ReduceArgs {
    /// Grid size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    n: u64,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = FieldKind::Rational)]
    field: FieldKind,
    /// Label for boundary edges, e.g. `2/3` or `1-3/x`.
    #[arg(long, default_value = "1")]
    boundary: String,
    /// Label for interior edges.
    #[arg(long, default_value = "1")]
    interior: String,
    /// Print the reduced grid as JSON.
    #[arg(long)]
    dump_json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Fractions,
    Decimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Rational,
    Symbolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArraySuite {
    Recursions,
    ClosedForms,
    Lrcc,
    UniformCenter,
    Spotchecks,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleSuite {
    Transforms,
    DualPipeline,
    Fib,
    #[value(name = "2tree")]
    TwoTree,
}

#[derive(Clone, Debug)]
struct RowSpec(Vec<usize>);

impl FromStr for RowSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad row number `{t}`"));
        let mut out = Vec::new();
        for part in s.split(',') {
            let (range, step) = match part.split_once(':') {
                Some((r, st)) => (r, num(st)?),
                None => (part, 1),
            };
            match range.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                    if step == 0 || a > b {
                        return Err(format!("empty range `{part}`"));
                    }
                    out.extend((a..=b).step_by(step));
                }
                None => out.push(num(range)?),
            }
        }
        if out.contains(&0) {
            return Err("rows start at s = 1".into());
        }
        Ok(RowSpec(out))
    }
}

/// Whether every verification finding passed; input and runtime errors
/// travel separately as `Err`.
struct Verdict(bool);

struct Ctx {
    seed: u64,
    json: bool,
    verbose: bool,
    out: String,
}

impl Ctx {
    fn line(&mut self, s: impl Display) {
        self.out.push_str(&format!("{s}\n"));
    }

    fn emit(&mut self, reports: &[Report]) -> Verdict {
        if self.json {
            let text = serde_json::to_string_pretty(reports).expect("reports serialize");
            self.line(text);
        } else {
            for r in reports {
                if self.verbose || !r.passed() {
                    self.out.push_str(&r.to_string());
                } else {
                    self.line(r.summary());
                }
            }
        }
        Verdict(reports.iter().all(Report::passed))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn grid_from_labels<T: Field>(n: usize, boundary: &T, interior: &T) -> Result<Grid<T>> {
    Ok(Grid::from_fn(n, |e| {
        if is_boundary(&e, n) == Ok(true) {
            boundary.clone()
        } else {
            interior.clone()
        }
    })?)
}

fn render_grid<T: Field>(ctx: &mut Ctx, g: &Grid<T>, dump_json: bool) {
    if dump_json {
        let text = g.to_json();
        ctx.line(text);
        return;
    }
    ctx.line(format!("# {}-grid after {} reductions", g.m(), g.reductions()));
    ctx.line("row\tdiag\tL\tR\tB");
    for r in 1..=g.m() {
        for d in 1..=r {
            let [l, rr, b] = [Side::L, Side::R, Side::B].map(|s| g.label(r, d, s).to_string());
            ctx.line(format!("{r}\t{d}\t{l}\t{rr}\t{b}"));
        }
    }
}

fn reduce<T: Field + FromStr>(ctx: &mut Ctx, a: &ReduceArgs) -> Result<()>
where
    T::Err: Display,
{
    let parse = |s: &str| {
        s.parse::<T>()
            .map_err(|e| anyhow::anyhow!("cannot parse label `{s}`: {e}"))
    };
    let (b, i) = (parse(&a.boundary)?, parse(&a.interior)?);
    let g = grid_from_labels(a.n as usize, &b, &i)?;
    if a.steps >= g.m() {
        bail!("a {}-grid admits at most {} reductions", g.m(), g.m() - 1);
    }
    let g = reduce_k(&g, a.steps)?;
    render_grid(ctx, &g, a.dump_json);
    Ok(())
}

fn array_reports(which: ArraySuite, cols: usize) -> Result<Vec<Report>> {
    Ok(match which {
        ArraySuite::Recursions => vec![verify_row_recursions(&build_array(cols)?)],
        ArraySuite::ClosedForms => vec![verify_closed_forms(&build_array(cols)?, cols)],
        ArraySuite::Lrcc => vec![verify_row_lrcc(&build_array(cols)?)],
        ArraySuite::UniformCenter => {
            let mut rep = Report::new("uniform center");
            for s in 1..=4 {
                for n in [4 * s, 4 * s + 2] {
                    rep.extend(verify_uniform_center(n, s)?);
                }
            }
            vec![rep]
        }
        ArraySuite::Spotchecks => vec![verify_main_theorem_spotchecks(cols.saturating_sub(3).max(1))?],
    })
}

fn oracle_report(ctx: &Ctx, suite: OracleSuite, count: usize) -> Report {
    let mut rng = ctx.rng();
    match suite {
        OracleSuite::Transforms => {
            let graphs: Vec<_> = (0..count).map(|_| random_connected_graph(&mut rng, 8, 0.4)).collect();
            verify_transform_soundness(&graphs)
        }
        OracleSuite::DualPipeline => {
            let mut grids: Vec<_> = (3..=8).map(|n| Grid::all_one(n).expect("n >= 1")).collect();
            grids.extend((0..count).map(|i| random_grid(&mut rng, 3 + i % 3)));
            verify_dual_pipeline(&grids)
        }
        OracleSuite::Fib => verify_fib_identities(50, 30),
        OracleSuite::TwoTree => verify_straight_2tree(12),
    }
}

/// `(k, rendered det_k)` pairs and the two Hankel reports.
type HankelOutput = (Vec<(usize, String)>, Vec<Report>);

fn hankel_reports(max_k: usize) -> Result<HankelOutput> {
    let seq = NumeratorSequence::from_diagonal(&leftmost_diagonal(2 * max_k)?)?;
    let dets = (2..=max_k)
        .map(|k| {
            let d = hankel_determinant(&seq, k)?;
            let shown = match power_of_nine(&d) {
                Some(e) => format!("{d} = 9^{e}"),
                None => d.to_string(),
            };
            Ok((k, shown))
        })
        .collect::<Result<Vec<_>>>()?;
    let row0 = row0_numerators(&build_array(6)?);
    let reports = vec![
        verify_determinant_conjecture(&seq, max_k)?,
        lhrcc_ruled_out(&seq, max_k, Some(&row0))?,
    ];
    Ok((dets, reports))
}

fn run(cli: Cli, ctx: &mut Ctx) -> Result<Verdict> {
    match cli.cmd {
        Cmd::Array(ArrayCmd::Build { cols, format }) => {
            let a = build_array(cols as usize)?;
            let text = match format {
                Format::Json => a.to_json(),
                Format::Csv => a.to_csv(),
                Format::Markdown => a.to_markdown(),
            };
            ctx.out.push_str(&text);
        }
        Cmd::Array(ArrayCmd::Verify { suite, cols }) => return Ok(ctx.emit(&array_reports(suite, cols as usize)?)),
        Cmd::Reduce(a) => match a.field {
            FieldKind::Rational => reduce::<Rational>(ctx, &a)?,
            FieldKind::Symbolic => reduce::<RationalFunction>(ctx, &a)?,
        },
        Cmd::Diag { max_s, emit } => {
            for (i, l) in leftmost_diagonal(max_s as usize)?.iter().enumerate() {
                let v = match emit {
                    Emit::Fractions => l.to_string(),
                    Emit::Decimal => l.to_decimal_string(12),
                };
                ctx.line(format!("{}\t{v}", i + 1));
            }
        }
        Cmd::Hankel { max_k } => {
            let (dets, reports) = hankel_reports(max_k as usize)?;
            if !ctx.json {
                for (k, d) in dets {
                    ctx.line(format!("det_{k} = {d}"));
                }
            }
            return Ok(ctx.emit(&reports));
        }
        Cmd::Symbolic { max_s } => {
            let max_s = max_s as usize;
            if !ctx.json {
                for (i, f) in symbolic_diagonal(max_s)?.iter().enumerate() {
                    ctx.line(format!("L_{}(x) = {f}", i + 1));
                }
            }
            let exact = leftmost_diagonal(max_s)?;
            return Ok(ctx.emit(&[verify_symbolic_patterns(max_s, &exact)?]));
        }
        Cmd::Asymptotics { rows, format } => {
            let top = rows.0.iter().copied().max().unwrap_or(1);
            let table = asymptotics_table(&leftmost_diagonal(top)?, &rows.0)?;
            ctx.out.push_str(&match format {
                TableFormat::Csv => table_csv(&table),
                TableFormat::Markdown => table_markdown(&table),
            });
        }
        Cmd::Resistance { graph, u, v } => {
            let text = std::fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let g = WeightedGraph::from_json(&text)?;
            ctx.line(g.effective_resistance(u, v)?);
        }
        Cmd::Oracle(OracleCmd::Verify { suite, count }) => {
            let rep = oracle_report(ctx, suite, count);
            return Ok(ctx.emit(&[rep]));
        }
        Cmd::Verify {
            all: _,
            max_cols,
            max_k,
            max_s,
        } => {
            let cols = max_cols as usize;
            let mut reports = Vec::new();
            for suite in [
                ArraySuite::Recursions,
                ArraySuite::ClosedForms,
                ArraySuite::Lrcc,
                ArraySuite::UniformCenter,
                ArraySuite::Spotchecks,
            ] {
                reports.extend(array_reports(suite, cols)?);
            }
            let diag = leftmost_diagonal((max_s as usize).max(2 * max_k as usize).max(7))?;
            reports.extend(hankel_reports(max_k as usize)?.1);
            reports.push(verify_denominator_divisibility(&diag[..diag.len().min(20)]));
            reports.push(verify_symbolic_patterns(7, &diag)?);
            reports.push(verify_monotonicity(&diag, max_s as usize)?);
            for suite in [
                OracleSuite::Transforms,
                OracleSuite::DualPipeline,
                OracleSuite::Fib,
                OracleSuite::TwoTree,
            ] {
                reports.push(oracle_report(
                    ctx,
                    suite,
                    if matches!(suite, OracleSuite::DualPipeline) {
                        25
                    } else {
                        100
                    },
                ));
            }
            let verdict = ctx.emit(&reports);
            if !ctx.json {
                let failed = reports.iter().filter(|r| !r.passed()).count();
                ctx.line(format!("{} of {} suites passed", reports.len() - failed, reports.len()));
            }
            return Ok(verdict);
        }
    }
    Ok(Verdict(true))
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CIRCARRAY_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("CIRCARRAY_THREADS must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        seed: cli.seed,
        json: cli.json,
        verbose: cli.verbose,
        out: String::new(),
    };
    let output = cli.output.clone();
    let result = configure_threads().and_then(|_| run(cli, &mut ctx));
    let verdict = match result {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match output {
        Some(path) => std::fs::write(&path, &ctx.out).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", ctx.out);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if verdict.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(s: &str) -> Result<Vec<usize>, String> {
        s.parse::<RowSpec>().map(|r| r.0)
    }

    #[test]
    fn row_specs() {
        assert_eq!(rows("1..5").unwrap(), [1, 2, 3, 4, 5]);
        assert_eq!(rows("1..=3,8").unwrap(), [1, 2, 3, 8]);
        assert_eq!(rows("8..80:24").unwrap(), [8, 32, 56, 80]);
        assert!(rows("0..3").is_err());
        assert!(rows("3..1").is_err());
        assert!(rows("1..4:0").is_err());
        assert!(rows("a").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
