use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hydrogen_kr::export::{self, ExportFormat, ExportOptions, Table};
use hydrogen_kr::extrema::{find_extrema, refine_extremum};
use hydrogen_kr::hydrogen::{psi_momentum, psi_position, radial, Representation};
use hydrogen_kr::kr::{kr_1d, wigner_1d, TabulatedWavefunction1D};
use hydrogen_kr::slice::{sample_slice, suggest_angles, Quantity, SliceAngles, SliceSpec, ZERO_HARMONIC_THRESHOLD};
use hydrogen_kr::suite::{run_verify, SuiteOptions, ToleranceOverrides};
use hydrogen_kr::{Error, NormalizationConvention, NuclearCharge, QuantumNumbers, SphericalCoord};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "hydrogen-kr", version, about = "Kirkwood-Rihaczek phase-space distributions of hydrogen")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate R_nl / F_nl and ψ / ψ̃ along a ray
    Wavefn(WavefnArgs),
    /// Sample an (r, p) cross-section of K at fixed angles
    KrSlice(SliceCmd),
    /// Locate the maxima of |K| on an (r, p) cross-section
    Extrema(ExtremaCmd),
    /// Run the numerical verification suite
    Verify(VerifyArgs),
    /// K-R distribution of a tabulated 1-D state on a (q, p) grid
    Kr1d(OneDimArgs),
    /// Wigner function of a tabulated 1-D state on a (q, p) grid
    Wigner1d(OneDimArgs),
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: ExportFormat,
    /// Omit the creation timestamp so identical runs give identical bytes
    #[arg(long)]
    reproducible: bool,
}

impl OutputArgs {
    fn options(&self) -> ExportOptions {
        ExportOptions {
            reproducible: self.reproducible,
        }
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => export::write_text(path, text),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Error::io("<stdout>", e))
            }
        }
    }
}

#[derive(Args, Debug, Clone)]
struct StateArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    l: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    m: i64,
    /// Nuclear charge
    #[arg(long, default_value_t = 1.0)]
    z: f64,
}

impl StateArgs {
    fn resolve(&self) -> Result<(QuantumNumbers, NuclearCharge), Error> {
        Ok((QuantumNumbers::new(self.n, self.l, self.m)?, NuclearCharge::new(self.z)?))
    }
}

#[derive(Args, Debug, Clone)]
struct WavefnArgs {
    #[command(flatten)]
    state: StateArgs,
    /// position or momentum
    #[arg(long, default_value = "position")]
    representation: String,
    /// Largest radius (or momentum); defaults to 5n²/Z (or 4Z/n)
    #[arg(long)]
    max: Option<f64>,
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Polar angle of the ray
    #[arg(long, default_value_t = PI / 2.0)]
    theta: f64,
    /// Azimuth of the ray
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct SliceArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    theta_p: Option<f64>,
    #[arg(long)]
    phi_p: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    rmin: f64,
    /// Defaults to 5n²/Z
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pmin: f64,
    /// Defaults to 4Z/n
    #[arg(long)]
    pmax: Option<f64>,
    #[arg(long, default_value_t = 256)]
    nr: usize,
    #[arg(long = "np", default_value_t = 256)]
    n_p: usize,
    /// marginal_exact or paper_figure
    #[arg(long, default_value = "marginal_exact")]
    convention: NormalizationConvention,
    /// Multiply values by (2π)³ as in the published figures
    #[arg(long)]
    paper_scale: bool,
    /// Use the suggested angles when the default equatorial slice vanishes
    #[arg(long)]
    accept_suggested_angles: bool,
}

impl SliceArgs {
    fn spec(&self, quantity: Quantity) -> Result<SliceSpec, Error> {
        let (qn, z) = self.state.resolve()?;
        let mut spec = SliceSpec::for_state(qn, z);
        let explicit = self.theta.is_some() || self.phi.is_some() || self.theta_p.is_some() || self.phi_p.is_some();
        let base = if !explicit && self.accept_suggested_angles {
            suggest_angles(&qn)
        } else {
            SliceAngles::EQUATOR
        };
        spec.angles = SliceAngles {
            theta: self.theta.unwrap_or(base.theta),
            phi: self.phi.unwrap_or(base.phi),
            theta_p: self.theta_p.unwrap_or(base.theta_p),
            phi_p: self.phi_p.unwrap_or(base.phi_p),
        };
        if !explicit && !self.accept_suggested_angles {
            let (yx, yp) = spec.harmonic_moduli()?;
            if yx < ZERO_HARMONIC_THRESHOLD || yp < ZERO_HARMONIC_THRESHOLD {
                let s = suggest_angles(&qn);
                return Err(Error::invalid(format!(
                    "{} vanishes on the default equatorial slice; suggested angles: --theta {} --theta-p {} \
                     (rerun with those flags or --accept-suggested-angles)",
                    qn, s.theta, s.theta_p
                )));
            }
        }
        spec.r_range = (self.rmin, self.rmax.unwrap_or(spec.r_range.1));
        spec.p_range = (self.pmin, self.pmax.unwrap_or(spec.p_range.1));
        spec.resolution = (self.nr, self.n_p);
        spec.quantity = quantity;
        spec.convention = self.convention;
        spec.paper_scale = self.paper_scale;
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Debug, Clone)]
struct SliceCmd {
    #[command(flatten)]
    slice: SliceArgs,
    /// re, im, abs, abs2 or complex
    #[arg(long, default_value = "abs")]
    quantity: Quantity,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct ExtremaCmd {
    #[command(flatten)]
    slice: SliceArgs,
    /// Polish each maximum against the analytic |K|
    #[arg(long)]
    refine: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    /// e.g. normalization=1e-9,marginal=1e-5,fourier=1e-7,closed_form=1e-11
    #[arg(long)]
    tolerance_overrides: Option<String>,
    /// Print every check, not only failures and flagged divergences
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct OneDimArgs {
    /// Tabulated state: CSV with columns q, re, im
    #[arg(long)]
    input: PathBuf,
    /// Defaults to the tabulated range
    #[arg(long, allow_hyphen_values = true)]
    qmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    qmax: Option<f64>,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pmin: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pmax: f64,
    #[arg(long, default_value_t = 101)]
    nq: usize,
    #[arg(long = "np", default_value_t = 101)]
    n_p: usize,
    #[command(flatten)]
    output: OutputArgs,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| if k == n - 1 { b } else { a + (b - a) * k as f64 / (n - 1) as f64 }).collect()
}

fn fmt(x: f64) -> String {
    format!("{x:?}")
}

fn cmd_wavefn(args: &WavefnArgs) -> Result<u8, Error> {
    let (qn, z) = args.state.resolve()?;
    let which = match args.representation.as_str() {
        "position" => Representation::Position,
        "momentum" => Representation::Momentum,
        other => return Err(Error::invalid(format!("unknown representation '{other}' (position or momentum)"))),
    };
    let n = f64::from(qn.n());
    let max = args.max.unwrap_or(match which {
        Representation::Position => 5.0 * n * n / z.value(),
        Representation::Momentum => 4.0 * z.value() / n,
    });
    if !(max.is_finite() && max > 0.0) || args.points < 2 {
        return Err(Error::invalid("need --max > 0 and --points >= 2"));
    }
    let meta = vec![
        ("tool".into(), format!("hydrogen-kr {}", hydrogen_kr::VERSION)),
        ("state".into(), qn.label()),
        ("z".into(), fmt(z.value())),
        ("representation".into(), args.representation.clone()),
        ("theta".into(), fmt(args.theta)),
        ("phi".into(), fmt(args.phi)),
    ];
    let mut table = Table::new(meta, &["x", "radial", "re", "im"]);
    for x in linspace(0.0, max, args.points) {
        let at = SphericalCoord::new(x, args.theta, args.phi)?;
        let psi = match which {
            Representation::Position => psi_position(&qn, z, &at),
            Representation::Momentum => psi_momentum(&qn, z, &at),
        };
        table.push(vec![x, radial(&qn, z, which, x), psi.re, psi.im]);
    }
    args.output.emit(&table.render(args.output.format, args.output.options())?)?;
    Ok(0)
}

fn cmd_slice(args: &SliceCmd) -> Result<u8, Error> {
    let spec = args.slice.spec(args.quantity)?;
    let result = sample_slice(&spec)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    args.output
        .emit(&export::render_slice(&result, args.output.format, args.output.options())?)?;
    Ok(0)
}

fn cmd_extrema(args: &ExtremaCmd) -> Result<u8, Error> {
    let spec = args.slice.spec(Quantity::Abs)?;
    let result = sample_slice(&spec)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let mut found = find_extrema(&result)?;
    if args.refine {
        found = found
            .iter()
            .map(|rec| refine_extremum(&spec, rec, 40))
            .collect::<Result<_, _>>()?;
    }
    let n_l = spec.qn.n() - spec.qn.l();
    eprintln!("{} maxima ((n-l)^2 = {})", found.len(), n_l * n_l);
    args.output.emit(&export::render_extrema(
        &result,
        &found,
        args.output.format,
        args.output.options(),
    )?)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let mut options = SuiteOptions::default();
    if let Some(text) = &args.tolerance_overrides {
        options.overrides = text.parse::<ToleranceOverrides>()?;
    }
    let report = run_verify(args.n_max, &options)?;
    for c in &report.checks {
        let status = match (c.is_unexpected_failure(), c.as_expected()) {
            (true, _) => "FAIL",
            (false, true) if c.expectation == hydrogen_kr::verify::Expectation::Divergence => "FLAGGED",
            (false, true) => "ok",
            (false, false) => "UNEXPECTED-AGREEMENT",
        };
        if args.verbose || status != "ok" {
            eprintln!(
                "{status:>8}  {}  computed={:.12e} target={:.12e} err={:.3e} tol={:.1e}{}",
                c.name,
                c.computed,
                c.target,
                c.abs_error,
                c.tolerance,
                c.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default()
            );
        }
    }
    let failures = report.failures().count();
    eprintln!(
        "{} checks, {} unexpected failures, {} flagged divergences",
        report.checks.len(),
        failures,
        report
            .checks
            .iter()
            .filter(|c| c.expectation == hydrogen_kr::verify::Expectation::Divergence)
            .count()
    );
    if args.output.out.is_some() {
        export::export_report(
            &report,
            args.output.format,
            args.output.out.as_deref().expect("checked"),
            args.output.options(),
        )?;
    }
    Ok(if report.all_passed() { 0 } else { EXIT_VERIFY_FAILED })
}

fn one_dim_grid(args: &OneDimArgs, psi: &TabulatedWavefunction1D) -> Result<(Vec<f64>, Vec<f64>), Error> {
    let q0 = args.qmin.unwrap_or(psi.q_min());
    let q1 = args.qmax.unwrap_or(psi.q_max());
    if !(q0.is_finite() && q1.is_finite() && q1 >= q0 && args.pmax >= args.pmin) || args.nq == 0 || args.n_p == 0 {
        return Err(Error::invalid("invalid (q, p) grid"));
    }
    Ok((linspace(q0, q1, args.nq), linspace(args.pmin, args.pmax, args.n_p)))
}

fn one_dim_meta(args: &OneDimArgs, kind: &str) -> Vec<(String, String)> {
    vec![
        ("tool".into(), format!("hydrogen-kr {}", hydrogen_kr::VERSION)),
        ("distribution".into(), kind.into()),
        ("input".into(), args.input.display().to_string()),
    ]
}

fn cmd_kr1d(args: &OneDimArgs) -> Result<u8, Error> {
    let psi = TabulatedWavefunction1D::from_csv_path(&args.input)?;
    let (qs, ps) = one_dim_grid(args, &psi)?;
    let mut table = Table::new(one_dim_meta(args, "kirkwood_rihaczek"), &["q", "p", "re", "im"]);
    for &q in &qs {
        for &p in &ps {
            let k = kr_1d(&psi, q, p)?;
            table.push(vec![q, p, k.re, k.im]);
        }
    }
    args.output.emit(&table.render(args.output.format, args.output.options())?)?;
    Ok(0)
}

fn cmd_wigner1d(args: &OneDimArgs) -> Result<u8, Error> {
    let psi = TabulatedWavefunction1D::from_csv_path(&args.input)?;
    let (qs, ps) = one_dim_grid(args, &psi)?;
    let mut table = Table::new(one_dim_meta(args, "wigner"), &["q", "p", "value"]);
    for &q in &qs {
        for &p in &ps {
            table.push(vec![q, p, wigner_1d(&psi, q, p)?]);
        }
    }
    args.output.emit(&table.render(args.output.format, args.output.options())?)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Wavefn(a) => cmd_wavefn(a),
        Command::KrSlice(a) => cmd_slice(a),
        Command::Extrema(a) => cmd_extrema(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Kr1d(a) => cmd_kr1d(a),
        Command::Wigner1d(a) => cmd_wigner1d(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
