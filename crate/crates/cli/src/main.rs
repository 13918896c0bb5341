//! `ershov`: command-line front end for tables, densities and the
//! verification suites.
//!
//! Exit status: 0 when every check passes, 1 when an invariant is violated,
//! 2 on bad input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ershov_core::approx::classify;
use ershov_core::constructions::{
    build_ce_density, build_difference_pair, certify_fce, decompose_nce, modulus, transfer,
    BlockSchedule,
};
use ershov_core::density::{
    check_limsup_difference, density_series, window_extrema, RationalSequence,
};
use ershov_core::harness::{
    generate, run_suite, ChangeDistribution, GenKind, GeneratorSpec, SettleMode, SuiteOptions,
    SUITES,
};
use ershov_core::reals::{diff_representation, LimsupReal};
use ershov_core::{ApproxTable, BoundFunction, ExactScalar, Rational, SetPrefix, Window};

#[derive(Parser)]
#[command(
    name = "ershov",
    version,
    about = "Ershov-hierarchy approximations and exact density constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded table or set.
    Gen(GenArgs),
    /// Mind-change profile and Ershov level of a table.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Partial densities of a set (or a table's limit) and their window extrema.
    Density {
        file: PathBuf,
        #[arg(long)]
        window: Option<Window>,
        /// Write the (n, rho_n) series here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Split an n-c.e. table into nested c.e. layers.
    Decompose {
        file: PathBuf,
        /// Write each layer as `layer_<j>.txt` into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Audit rho_s(A) = u_s - v_s for an n-c.e. table.
    Diffrep {
        file: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build nested c.e. sets B ⊆ A with densities a and b.
    Cepair {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        q: Rational,
        #[arg(long)]
        universe: usize,
        /// First block length of the geometric schedule.
        #[arg(long, default_value_t = 64)]
        first_block: usize,
        /// Write `outer.txt` and `inner.txt` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Build a c.e. set with upper density limsup q_n.
    Cebuild {
        sequence: PathBuf,
        #[arg(long)]
        universe: usize,
        #[arg(long, default_value_t = 64)]
        first_block: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Modulus prefix of a certified table.
    Modulus {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Transfer a table's limit to a set tracking its densities.
    Transfer {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
        #[arg(long)]
        horizon: usize,
        /// Write the tracking report here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write B as a set file here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Stagewise transfer with f-bounded mind changes.
    Certify {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
        #[arg(long)]
        horizon: usize,
        /// Write the per-element certificate here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check lim(a_n - b_n) against limsup a - limsup b on a window.
    Checklimsup {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        window: Option<Window>,
        #[arg(long, default_value = "0")]
        tolerance: Rational,
    },
    /// Run a verification suite, or `all`.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        bound: BoundArg,
        #[arg(long)]
        corpus: Option<usize>,
        #[arg(long)]
        horizon: Option<usize>,
        /// Write the report here (reports of `all` are concatenated).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// delta2, nce:N, ce, blocks or beatty:p/r.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    universe: usize,
    #[arg(long)]
    stages: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// early, or uniform:B (changes only at stages 1..=B).
    #[arg(long, default_value = "uniform")]
    settle: String,
    /// Give every column the largest number of changes allowed.
    #[arg(long)]
    saturate: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArg {
    /// id, const:N or table:FILE.
    #[arg(long = "f", default_value = "id")]
    f: String,
}

impl BoundArg {
    fn load(&self) -> Result<BoundFunction> {
        match self.f.strip_prefix("table:") {
            Some(path) => {
                let text = read(Path::new(path))?;
                Ok(BoundFunction::parse(&text)?)
            }
            None => Ok(BoundFunction::parse(&self.f)?),
        }
    }
}

/// Failure kinds mapped onto exit codes.
enum Outcome {
    Pass,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn load_table(path: &Path) -> Result<ApproxTable> {
    ApproxTable::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// A set file, or the limit of a table file.
fn load_set(path: &Path) -> Result<SetPrefix> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with("ERSHOV-TABLE") {
        ApproxTable::parse(&text).map(|t| t.final_set())
    } else {
        SetPrefix::parse(&text)
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn load_sequence(path: &Path) -> Result<RationalSequence> {
    RationalSequence::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Violation
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Classify { file, bound } => {
            let t = load_table(&file)?;
            let f = (bound.f != "id").then(|| bound.load()).transpose()?;
            let c = classify(&t, f.as_ref());
            println!("level {}", c.minimal_level);
            println!("ce {}", c.computably_enumerable);
            println!("certified {}", c.certified);
            println!("horizon {}", c.horizon);
            if let Some(check) = &c.bound {
                println!(
                    "bound {} holds {} violations {:?}",
                    check.bound, check.holds, check.violations
                );
                return Ok(verdict(check.holds));
            }
            Ok(Outcome::Pass)
        }
        Command::Density { file, window, csv } => {
            let x = load_set(&file)?;
            let d = density_series::<Rational>(&x, file.display().to_string());
            if let Some(path) = csv {
                d.write_csv(create(&path)?)?;
            }
            let e = window_extrema(&d, window.unwrap_or(Window::density_tail(x.universe())))?;
            e.write_csv(io::stdout())?;
            Ok(Outcome::Pass)
        }
        Command::Decompose { file, out_dir } => {
            let t = load_table(&file)?;
            let d = decompose_nce(&t);
            let reassembles = d.reassemble() == t.final_set();
            let nested = d.check_nesting();
            let monotone = d.check_monotone();
            println!("layers {}", d.level());
            println!("reassembles {reassembles}");
            println!("nested {}", nested.is_ok());
            println!("monotone {}", monotone.is_ok());
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                for (j, layer) in d.layers().iter().enumerate() {
                    fs::write(dir.join(format!("layer_{}.txt", j + 1)), layer.to_text())?;
                }
            }
            Ok(verdict(reassembles && nested.is_ok() && monotone.is_ok()))
        }
        Command::Diffrep { file, csv } => {
            let rep = diff_representation::<Rational>(&load_table(&file)?)?;
            match csv {
                Some(path) => rep.write_csv(create(&path)?)?,
                None => rep.write_csv(io::stdout())?,
            }
            if !rep.holds() {
                eprintln!("residual nonzero at s = {:?}", rep.failures());
            }
            Ok(verdict(rep.holds()))
        }
        Command::Cepair {
            a,
            b,
            q,
            universe,
            first_block,
            out_dir,
        } => {
            let a = LimsupReal::new(load_sequence(&a)?)?;
            let b = LimsupReal::new(load_sequence(&b)?)?;
            let p = build_difference_pair(
                &a,
                &b,
                &q,
                universe,
                &BlockSchedule::Geometric { first: first_block },
            )?;
            let nested = p.inner.stagewise_subset_of(&p.outer);
            let rho = |t: &ApproxTable| Rational::ratio(t.final_set().len(), universe);
            println!("split {}", p.split);
            println!("limsup_estimates a {} b {}", p.a_estimate, p.b_estimate);
            println!(
                "rho_N(A) {} ~ {:.6}",
                rho(&p.outer),
                rho(&p.outer).approx_f64()
            );
            println!(
                "rho_N(B) {} ~ {:.6}",
                rho(&p.inner),
                rho(&p.inner).approx_f64()
            );
            println!("nested {}", nested.is_ok());
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("outer.txt"), p.outer.to_text())?;
                fs::write(dir.join("inner.txt"), p.inner.to_text())?;
            }
            Ok(verdict(nested.is_ok()))
        }
        Command::Cebuild {
            sequence,
            universe,
            first_block,
            output,
        } => {
            let target = LimsupReal::new(load_sequence(&sequence)?)?;
            let t = build_ce_density(
                &target,
                &BlockSchedule::Geometric { first: first_block },
                universe,
            )?;
            write_out(output.as_deref(), &t.to_text())?;
            Ok(Outcome::Pass)
        }
        Command::Modulus { file, bound } => {
            let m = modulus(&load_table(&file)?, &bound.load()?)?;
            println!("x,m_x,growth_floor,stable_from,bound_threshold");
            for l in m.levels() {
                println!(
                    "{},{},{},{},{}",
                    l.level, l.value, l.growth_floor, l.stable_from, l.bound_threshold
                );
            }
            eprintln!("stopped: {:?}", m.stop());
            Ok(Outcome::Pass)
        }
        Command::Transfer {
            file,
            bound,
            horizon,
            csv,
            output,
        } => {
            let tr = transfer::<Rational>(&load_table(&file)?, &bound.load()?, horizon)?;
            match csv {
                Some(path) => tr.write_csv(create(&path)?)?,
                None => tr.write_csv(io::stdout())?,
            }
            if let Some(path) = output {
                fs::write(&path, tr.b.to_text())?;
            }
            eprintln!(
                "modulus {:?}; interval checks {} with {} violations",
                tr.modulus.values(),
                tr.interval_checked,
                tr.interval_violations.len()
            );
            Ok(verdict(tr.holds()))
        }
        Command::Certify {
            file,
            bound,
            horizon,
            csv,
        } => {
            let c = certify_fce::<Rational>(&load_table(&file)?, &bound.load()?, horizon)?;
            match csv {
                Some(path) => c.write_csv(create(&path)?)?,
                None => c.write_csv(io::stdout())?,
            }
            eprintln!(
                "bound violations {:?}; limit disagreements {:?}",
                c.bound_violations(),
                c.disagreements()
            );
            Ok(verdict(c.holds()))
        }
        Command::Checklimsup {
            a,
            b,
            window,
            tolerance,
        } => {
            let (a, b) = (load_sequence(&a)?, load_sequence(&b)?);
            if a.is_empty() {
                bail!("empty sequence");
            }
            let window = window.unwrap_or(Window::tail(0, a.len() - 1));
            let r = check_limsup_difference(&a, &b, window, tolerance)?;
            println!("window {}", r.window);
            println!("limit_estimate {}", r.limit_estimate);
            println!("oscillation {}", r.oscillation);
            println!("limit_exists {}", r.limit_exists);
            println!("limsup_a {} at {}", r.limsup_a, r.argmax_a);
            println!("limsup_b {} at {}", r.limsup_b, r.argmax_b);
            println!("residual {}", r.residual);
            Ok(verdict(
                r.limit_exists && r.residual == Rational::from_count(0),
            ))
        }
        Command::Suite {
            name,
            seed,
            bound,
            corpus,
            horizon,
            csv,
        } => {
            let opts = SuiteOptions {
                seed,
                bound: bound.load()?,
                corpus,
                horizon,
            };
            let names: Vec<&str> = if name == "all" {
                SUITES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut out = csv.as_deref().map(create).transpose()?;
            let mut ok = true;
            for name in names {
                let report = run_suite(name, &opts)?;
                println!("{report}");
                ok &= report.passed();
                if let Some(file) = out.as_mut() {
                    report.write_csv(file)?;
                }
            }
            Ok(verdict(ok))
        }
    }
}

fn gen(args: GenArgs) -> Result<Outcome> {
    let kind = match args.kind.as_str() {
        "delta2" => GenKind::Delta2,
        "ce" => GenKind::Ce,
        "blocks" => GenKind::OscillatingBlocks,
        other => {
            if let Some(n) = other.strip_prefix("nce:") {
                GenKind::Nce(n.parse().context("nce:N needs a natural N")?)
            } else if let Some(q) = other.strip_prefix("beatty:") {
                GenKind::Beatty(Rational::parse_exact(q).context("beatty:p/r needs a rational")?)
            } else {
                bail!("unknown kind `{other}`");
            }
        }
    };
    let settle = match args.settle.as_str() {
        "early" => SettleMode::Early,
        "uniform" => SettleMode::Uniform(args.stages.saturating_sub(1)),
        other => match other.strip_prefix("uniform:") {
            Some(b) => SettleMode::Uniform(b.parse().context("uniform:B needs a natural B")?),
            None => bail!("unknown settle mode `{other}`"),
        },
    };
    let distribution = if args.saturate {
        ChangeDistribution::Saturated
    } else {
        ChangeDistribution::Uniform
    };
    let spec = GeneratorSpec::new(kind, args.universe, args.stages, args.seed)
        .settle(settle)
        .distribution(distribution);
    write_out(args.output.as_deref(), &generate(&spec)?.to_text())?;
    Ok(Outcome::Pass)
}
