use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsd_core::discriminator::{programme_for, InputState, QubitStateSpec};
use qsd_core::harness::{
    self, cross_engine_tolerance, parse_angle_list, parse_config, parse_state_list, plot_series,
    write_csv, write_plotdata, ConfigOverrides, EngineChoice, EngineKind, Preset, Runner,
    SweepPoint,
};
use qsd_core::nmrsim::{
    compile_protocol_with, pseudopure_checkpoints, pseudopure_excess, pseudopure_sequence,
    read_spectrum, trace::to_trace, CompileOptions, DeviationDensityMatrix, Spin, SpinSystem,
    ZMode, CHECKPOINT_TOL,
};
use qsd_core::numfmt::sig12;
use qsd_core::Degrees;

/// Whole lists parse as one flag value.
type AngleList = Vec<Degrees>;
type StateList = Vec<InputState>;

const EXIT_VALIDATION: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qsd",
    version,
    about = "Programmable two-qubit state discriminator: gate and NMR pulse engines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one protocol point and print its CSV record(s).
    Run(RunArgs),
    /// Sweep a parameter grid and write CSV.
    Sweep(SweepArgs),
    /// Run every validation suite.
    Validate,
    /// Write two-column (x, P) series for a preset grid.
    Plotdata(PlotArgs),
    /// Check the pseudopure preparation alone.
    PpCheck,
    /// Print the pulse program of one experiment as a text trace.
    Trace(TraceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Gate,
    Pulse,
    Both,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Gate => EngineChoice::Gate,
            EngineArg::Pulse => EngineChoice::Pulse,
            EngineArg::Both => EngineChoice::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleEngineArg {
    Gate,
    Pulse,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateArg {
    Psi1,
    Psi2,
}

impl From<StateArg> for InputState {
    fn from(s: StateArg) -> Self {
        match s {
            StateArg::Psi1 => InputState::Psi1,
            StateArg::Psi2 => InputState::Psi2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Fig7,
    Fig8,
    Fig9,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Fig7 => Preset::Fig7,
            PresetArg::Fig8 => Preset::Fig8,
            PresetArg::Fig9 => Preset::Fig9,
        }
    }
}

fn bounded(s: &str, lo: f64, hi: f64, hi_inclusive: bool) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    let ok = v.is_finite() && v >= lo && if hi_inclusive { v <= hi } else { v < hi };
    if ok {
        Ok(v)
    } else {
        let close = if hi_inclusive { ']' } else { ')' };
        Err(format!("must lie in [{lo}, {hi}{close} degrees"))
    }
}

fn alpha_arg(s: &str) -> Result<f64, String> {
    bounded(s, -360.0, 360.0, true)
}

fn two_theta1_arg(s: &str) -> Result<f64, String> {
    bounded(s, 0.0, 180.0, true)
}

fn ellipticity_arg(s: &str) -> Result<f64, String> {
    bounded(s, 0.0, 45.0, false)
}

#[derive(Args)]
struct PointArgs {
    /// Unitary angle α, degrees in [-360, 360]; sin α must be non-zero.
    #[arg(long, value_name = "DEG", value_parser = alpha_arg, allow_hyphen_values = true)]
    alpha: f64,
    /// Separation 2θ₁ of the pair, degrees in [0, 180].
    #[arg(long = "two-theta1", value_name = "DEG", value_parser = two_theta1_arg)]
    two_theta1: f64,
    /// Ellipticity ε, degrees in [0, 45).
    #[arg(long, value_name = "DEG", default_value = "0", value_parser = ellipticity_arg)]
    ellipticity: f64,
    #[arg(long, value_enum, default_value = "psi1")]
    state: StateArg,
}

impl PointArgs {
    fn point(&self) -> SweepPoint {
        SweepPoint {
            alpha: Degrees(self.alpha),
            two_theta1: Degrees(self.two_theta1),
            ellipticity: Degrees(self.ellipticity),
            state: self.state.into(),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum, default_value = "gate")]
    engine: EngineArg,
}

#[derive(Args)]
struct SweepArgs {
    /// Built-in grid; explicit lists override its axes.
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Flat `key = value` file; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Comma-separated degrees or start:stop:step ranges.
    #[arg(long, value_name = "LIST", value_parser = parse_angle_list, allow_hyphen_values = true)]
    alphas: Option<AngleList>,
    #[arg(long = "two-theta1s", value_name = "LIST", value_parser = parse_angle_list)]
    two_theta1s: Option<AngleList>,
    #[arg(long, value_name = "LIST", value_parser = parse_angle_list)]
    ellipticities: Option<AngleList>,
    /// Comma-separated subset of psi1, psi2.
    #[arg(long, value_name = "LIST", value_parser = parse_state_list)]
    states: Option<StateList>,
    #[arg(long, value_enum)]
    engine: Option<EngineArg>,
    /// CSV destination; standard output when absent.
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    preset: PresetArg,
    /// Directory for the `.dat` files.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "gate")]
    engine: SingleEngineArg,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Append the controlled-σz block.
    #[arg(long)]
    sigma_zc: bool,
    /// Use ideal z-rotation events instead of composite pulses.
    #[arg(long)]
    exact_z: bool,
}

/// Failure with an exit code and a diagnostic for standard error.
struct Failure(u8, String);

impl Failure {
    fn bad_input(msg: impl ToString) -> Self {
        Failure(EXIT_BAD_INPUT, msg.to_string())
    }

    fn validation(msg: impl ToString) -> Self {
        Failure(EXIT_VALIDATION, msg.to_string())
    }
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let choice = EngineChoice::from(args.engine);
    let runner = Runner::new(choice).map_err(Failure::validation)?;
    let point = args.point.point();
    let mut outcomes = Vec::new();
    for &kind in choice.kinds() {
        outcomes.push((
            kind,
            runner.evaluate(kind, &point).map_err(Failure::bad_input)?,
        ));
    }
    let records: Vec<_> = outcomes
        .iter()
        .map(|&(engine, o)| harness::SweepRecord {
            engine,
            point,
            outcome: Ok(o),
        })
        .collect();
    write_csv(&records, io::stdout().lock()).map_err(Failure::bad_input)?;
    if let [(EngineKind::Gate, g), (EngineKind::Pulse, p)] = outcomes[..] {
        let tol = cross_engine_tolerance().map_err(Failure::bad_input)?;
        let diff = (g.probability - p.probability).abs();
        if diff > tol || g.verdict != p.verdict {
            return Err(Failure::validation(format!(
                "engines disagree: |ΔP| = {diff:e} (tolerance {tol:e}), verdicts {} / {}",
                g.verdict, p.verdict
            )));
        }
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::bad_input(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text)
                .map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?
        }
        None => ConfigOverrides::default(),
    };
    let flags = ConfigOverrides {
        preset: args.preset.map(Into::into),
        alphas: args.alphas,
        two_theta1s: args.two_theta1s,
        ellipticities: args.ellipticities,
        states: args.states,
        engine: args.engine.map(Into::into),
        output: args.output,
    };
    let cfg = file.overlay(flags).resolve().map_err(Failure::bad_input)?;
    // Open the destination first so an unwritable path fails before any work.
    let sink: Box<dyn Write> = match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::bad_input(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    };
    let records = Runner::new(cfg.engine)
        .map_err(Failure::validation)?
        .run(&cfg.points());
    write_csv(&records, sink).map_err(Failure::bad_input)?;
    Ok(())
}

fn cmd_validate() -> Result<(), Failure> {
    let report = harness::validate().map_err(Failure::bad_input)?;
    print!("{report}");
    if report.passed() {
        println!("all suites passed");
        Ok(())
    } else {
        Err(Failure::validation("validation failed"))
    }
}

fn cmd_plotdata(args: PlotArgs) -> Result<(), Failure> {
    let engine = match args.engine {
        SingleEngineArg::Gate => EngineKind::Gate,
        SingleEngineArg::Pulse => EngineKind::Pulse,
    };
    let series = plot_series(args.preset.into(), engine).map_err(Failure::validation)?;
    let paths = write_plotdata(&series, &args.out)
        .map_err(|e| Failure::bad_input(format!("cannot write to {}: {e}", args.out.display())))?;
    for p in paths {
        println!("{}", p.display());
    }
    Ok(())
}

fn cmd_pp_check() -> Result<(), Failure> {
    let sys = SpinSystem::default();
    let (checkpoints, rho) = pseudopure_checkpoints(&sys);
    let mut ok = true;
    for c in &checkpoints {
        ok &= c.passed();
        println!(
            "{} {}: deviation {:.3e} [{}]",
            if c.passed() { "PASS" } else { "FAIL" },
            c.stage,
            c.deviation,
            c.actual.describe(1e-12)
        );
    }
    match pseudopure_excess(&rho, CHECKPOINT_TOL) {
        Some(c) if c > 0.0 => println!("PASS final state = {}·(|00⟩⟨00| − I/4)", sig12(c)),
        _ => {
            ok = false;
            println!("FAIL final state is not a positive multiple of |00⟩⟨00| − I/4");
        }
    }
    let eq = DeviationDensityMatrix::equilibrium();
    for spin in [Spin::Data, Spin::Ancilla] {
        println!("read {:?}: equilibrium {}", spin, read_spectrum(&eq, spin));
        println!("read {:?}: pseudopure  {}", spin, read_spectrum(&rho, spin));
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::validation("pseudopure check failed"))
    }
}

fn cmd_trace(args: TraceArgs) -> Result<(), Failure> {
    let p = args.point.point();
    let spec =
        QubitStateSpec::new(p.two_theta1, p.ellipticity, p.state).map_err(Failure::bad_input)?;
    let prog =
        programme_for(&spec.with_state(InputState::Psi1), p.alpha).map_err(Failure::bad_input)?;
    let sys = SpinSystem::default();
    let opts = CompileOptions {
        z_mode: if args.exact_z {
            ZMode::Exact
        } else {
            ZMode::Composite
        },
        ..Default::default()
    };
    let mut events = pseudopure_sequence(&sys);
    events.extend(compile_protocol_with(
        &sys,
        &spec,
        &prog,
        p.alpha,
        args.sigma_zc,
        &opts,
    ));
    print!("{}", to_trace(&events));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Validate => cmd_validate(),
        Command::Plotdata(a) => cmd_plotdata(a),
        Command::PpCheck => cmd_pp_check(),
        Command::Trace(a) => cmd_trace(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
