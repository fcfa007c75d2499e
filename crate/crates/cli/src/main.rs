//! Command-line front end: coefficient generation, time-history simulation,
//! response spectra, stability reports, and oracle comparisons. Scalar
//! artifacts are emitted as JSON, series as CSV with `#` provenance headers;
//! everything goes to stdout so the output is plot-ready.
//!
//! Exit codes: 0 success, 2 usage error, 3 method or data precondition
//! failure, 4 diverged simulation.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sdof::method::{method_biquad, method_dss, simulate_response, standard_period_grid, MethodId};
use sdof::signals::{
    edge_margin, linear_resample, load_ground_motion, peak_error, rms_error, sinc_resample,
    sine_oracle, SineExcitation,
};
use sdof::spectrum::{response_spectrum, Interp, SpectrumRequest};
use sdof::stability::stability_verdict;
use sdof::steppers::{newmark_dss, NewmarkParams, NigamJenningsCoeffs};
use sdof::tf::{kanamori_tf, lsq_tf, LsqOptions};
use sdof::{Error, SdofSystem, Signal};

use output::{fmt_float, json_matrix, json_vector};

const EXIT_USAGE: u8 = 2;
const EXIT_METHOD: u8 = 3;
const EXIT_DIVERGED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "sdof",
    about = "Discrete-time oscillator analysis: coefficients, simulation, spectra, stability",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print discretization coefficients as JSON
    Coeffs(CoeffsArgs),
    /// Simulate a response time history and print CSV
    Simulate(SimulateArgs),
    /// Sweep natural periods and print a response-spectrum CSV
    Spectrum(SpectrumArgs),
    /// Print a stability report as JSON
    Stability(StabilityArgs),
    /// Compare methods against an analytic or file reference, printing an
    /// error-table CSV
    Compare(CompareArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Natural period in seconds (canonical; exclusive with --wn)
    #[arg(long)]
    tn: Option<f64>,
    /// Natural angular frequency in rad/s (exclusive with --tn)
    #[arg(long)]
    wn: Option<f64>,
    /// Damping ratio (0 <= xi < 1)
    #[arg(long)]
    xi: f64,
}

impl SystemArgs {
    fn build(&self) -> Result<SdofSystem, CliError> {
        let sys = match (self.tn, self.wn) {
            (Some(tn), None) => SdofSystem::from_period(tn, self.xi),
            (None, Some(wn)) => SdofSystem::new(wn, self.xi),
            (Some(_), Some(_)) => {
                return Err(CliError::usage("--tn and --wn are mutually exclusive"))
            }
            (None, None) => return Err(CliError::usage("one of --tn or --wn is required")),
        };
        sys.map_err(CliError::method)
    }
}

#[derive(Args)]
struct ResampleArgs {
    /// Integer upsampling factor for the input
    #[arg(long, default_value_t = 1)]
    upsample: u32,
    /// Input reconstruction: none, linear, or sinc
    #[arg(long, default_value = "none")]
    interp: String,
    /// Integer band-limited resampling factor applied to the response
    #[arg(long, default_value_t = 1)]
    display_factor: u32,
}

impl ResampleArgs {
    fn interp(&self) -> Result<Interp, CliError> {
        self.interp.parse().map_err(|e: Error| CliError::usage(e.to_string()))
    }

    fn prepare(&self, motion: &Signal) -> Result<Signal, CliError> {
        if self.upsample == 0 || self.display_factor == 0 {
            return Err(CliError::usage("resampling factors must be at least 1"));
        }
        Ok(match self.interp()? {
            Interp::None => {
                if self.upsample > 1 {
                    return Err(CliError::usage(
                        "--upsample > 1 requires --interp linear or --interp sinc",
                    ));
                }
                motion.clone()
            }
            Interp::Linear => linear_resample(motion, self.upsample),
            Interp::Sinc => sinc_resample(motion, self.upsample),
        })
    }
}

#[derive(Args)]
struct CoeffsArgs {
    /// Method identifier (see `sdof coeffs --help` notes)
    #[arg(long)]
    method: String,
    #[command(flatten)]
    system: SystemArgs,
    /// Sample interval in seconds
    #[arg(long)]
    dt: f64,
    /// Upper frequency bound of the least-squares grid, Hz (default Nyquist)
    #[arg(long)]
    fmax: Option<f64>,
    /// Frequency spacing of the least-squares grid, Hz
    #[arg(long)]
    fstep: Option<f64>,
    /// Fit band for the effective-parameter method, `fmin:fmax` in Hz
    #[arg(long)]
    band: Option<String>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Ground-motion file (header or two-column CSV layout)
    #[arg(long)]
    input: String,
    #[arg(long)]
    method: String,
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    resample: ResampleArgs,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    method: String,
    /// Damping ratio shared by all periods
    #[arg(long)]
    xi: f64,
    /// Period grid `start:step:stop` in seconds (default: 0.05 s to 10 s,
    /// 18 standard points)
    #[arg(long)]
    periods: Option<String>,
    /// File with one period per line
    #[arg(long)]
    periods_file: Option<String>,
    #[command(flatten)]
    resample: ResampleArgs,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    method: String,
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long)]
    dt: f64,
    /// Newmark gamma (with `--method newmark`)
    #[arg(long)]
    gamma: Option<f64>,
    /// Newmark beta (with `--method newmark`)
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args)]
struct CompareArgs {
    /// Analytic reference kind; only `sine` is available
    #[arg(long)]
    oracle: Option<String>,
    /// Excitation frequency as a ratio of the natural frequency
    #[arg(long)]
    w0_ratio: Option<f64>,
    /// Excitation amplitude
    #[arg(long, default_value_t = 1.0)]
    amp: f64,
    /// Excitation duration in seconds
    #[arg(long)]
    duration: Option<f64>,
    /// Reference response file instead of an analytic oracle
    #[arg(long)]
    reference: Option<String>,
    /// Comma-separated method list, or `all`
    #[arg(long)]
    methods: String,
    #[command(flatten)]
    system: SystemArgs,
    /// Ground-motion sample interval in seconds
    #[arg(long)]
    dt: f64,
    #[command(flatten)]
    resample: ResampleArgs,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: msg.into() }
    }

    fn method(err: impl ToString) -> Self {
        Self { code: EXIT_METHOD, message: err.to_string() }
    }

    fn from_core(err: Error) -> Self {
        let code = match &err {
            Error::Diverged { .. } => EXIT_DIVERGED,
            Error::UnknownMethod(_) => EXIT_USAGE,
            _ => EXIT_METHOD,
        };
        Self { code, message: err.to_string() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::from_core(err)
    }
}

fn parse_method(s: &str) -> Result<MethodId, CliError> {
    s.parse().map_err(|e: Error| CliError::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    let result = match cli.command {
        Command::Coeffs(args) => cmd_coeffs(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Stability(args) => cmd_stability(&args),
        Command::Compare(args) => cmd_compare(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<(), CliError> {
    let method = parse_method(&args.method)?;
    let sys = args.system.build()?;
    let dt = args.dt;
    let header = format!(
        "\"method\":\"{}\",\"omega_n\":{},\"xi\":{},\"dt\":{}",
        method,
        fmt_float(sys.omega_n()),
        fmt_float(sys.xi()),
        fmt_float(dt)
    );

    match method {
        MethodId::Lsq => {
            let mut opts = LsqOptions::default_for(dt);
            if let Some(fmax) = args.fmax {
                opts.f_max = fmax;
            }
            if let Some(fstep) = args.fstep {
                opts.freq_step = fstep;
            }
            let fit = lsq_tf(&sys, dt, &opts)?;
            let tf = fit.tf;
            println!(
                "{{{header},\"b\":{},\"a\":{},\"converged\":{},\"iterations\":{}}}",
                json_vector(&[tf.b0, tf.b1, tf.b2]),
                json_vector(&[1.0, tf.a1, tf.a2]),
                fit.converged,
                fit.iterations
            );
        }
        MethodId::Kanamori => {
            let (f_min, f_max) = match &args.band {
                None => sdof::method::KANAMORI_DEFAULT_BAND,
                Some(spec) => {
                    let mut it = spec.splitn(2, ':');
                    let lo = it.next().and_then(|v| v.parse().ok());
                    let hi = it.next().and_then(|v| v.parse().ok());
                    match (lo, hi) {
                        (Some(lo), Some(hi)) => (lo, hi),
                        _ => return Err(CliError::usage("--band expects `fmin:fmax` in Hz")),
                    }
                }
            };
            let fit = kanamori_tf(&sys, dt, f_min, f_max)?;
            if fit.xi_eff < -fit.omega_eff * dt / 2.0 {
                eprintln!(
                    "warning: effective damping {:.4} is below the stability limit {:.4}; \
                     the fitted filter is unstable",
                    fit.xi_eff,
                    -fit.omega_eff * dt / 2.0
                );
            }
            let tf = fit.tf;
            println!(
                "{{{header},\"b\":{},\"a\":{},\"omega_eff\":{},\"xi_eff\":{}}}",
                json_vector(&[tf.b0, tf.b1, tf.b2]),
                json_vector(&[1.0, tf.a1, tf.a2]),
                fmt_float(fit.omega_eff),
                fmt_float(fit.xi_eff)
            );
        }
        MethodId::NigamJennings => {
            let c = NigamJenningsCoeffs::new(&sys, dt)?;
            let a: Vec<Vec<f64>> = c.a_hat.iter().map(|r| r.to_vec()).collect();
            let b: Vec<Vec<f64>> = c.b_hat.iter().map(|r| r.to_vec()).collect();
            println!(
                "{{{header},\"a_hat\":{},\"b_hat\":{}}}",
                json_matrix(&a),
                json_matrix(&b)
            );
        }
        MethodId::Newmark(params) => {
            let dss = newmark_dss(&sys, dt, params)?;
            println!(
                "{{{header},\"gamma\":{},\"beta\":{},\"a_d\":{},\"b_d\":{},\"c_d\":{},\"d_d\":{}}}",
                fmt_float(params.gamma()),
                fmt_float(params.beta()),
                json_matrix(dss.a_d()),
                json_vector(dss.b_d()),
                json_matrix(dss.c_d()),
                json_vector(dss.d_d())
            );
        }
        m => {
            if let Some(tf) = method_biquad(m, &sys, dt)? {
                println!(
                    "{{{header},\"b\":{},\"a\":{}}}",
                    json_vector(&[tf.b0, tf.b1, tf.b2]),
                    json_vector(&[1.0, tf.a1, tf.a2])
                );
            } else if let Some(dss) = method_dss(m, &sys, dt)? {
                println!(
                    "{{{header},\"a_d\":{},\"b_d\":{},\"c_d\":{},\"d_d\":{}}}",
                    json_matrix(dss.a_d()),
                    json_vector(dss.b_d()),
                    json_matrix(dss.c_d()),
                    json_vector(dss.d_d())
                );
            } else {
                return Err(CliError::usage(format!("no coefficient form for `{m}`")));
            }
        }
    }
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let method = parse_method(&args.method)?;
    let sys = args.system.build()?;
    let motion = load_ground_motion(&args.input)?;
    let prepared = args.resample.prepare(&motion)?;
    let response = simulate_response(method, &sys, &prepared)?;
    let displayed = sinc_resample(&response, args.resample.display_factor);

    println!("# sdof simulate");
    println!("# method: {method}");
    println!("# omega_n: {} rad/s", fmt_float(sys.omega_n()));
    println!("# xi: {}", fmt_float(sys.xi()));
    println!("# input: {}", args.input);
    println!("# input-dt: {} s", fmt_float(motion.dt()));
    println!("# upsample: {}", args.resample.upsample);
    println!("# interp: {}", args.resample.interp);
    println!("# display-factor: {}", args.resample.display_factor);
    println!("# output-dt: {} s", fmt_float(displayed.dt()));
    if args.resample.display_factor > 1 {
        // Band-limited resampling treats the signal as zero outside its ends;
        // this many samples at each end carry the resulting kernel fringe.
        println!(
            "# display-edge-margin-samples: {}",
            edge_margin(args.resample.display_factor)
        );
    }
    println!("time,displacement");
    let mut out = String::new();
    for (k, v) in displayed.samples().iter().enumerate() {
        out.push_str(&format!("{:.9},{}\n", displayed.time_at(k), fmt_float(*v)));
    }
    print!("{out}");
    Ok(())
}

fn parse_periods(args: &SpectrumArgs) -> Result<Vec<f64>, CliError> {
    match (&args.periods, &args.periods_file) {
        (Some(_), Some(_)) => Err(CliError::usage(
            "--periods and --periods-file are mutually exclusive",
        )),
        (None, None) => Ok(standard_period_grid()),
        (Some(spec), None) => {
            let parts: Vec<&str> = spec.split(':').collect();
            if parts.len() != 3 {
                return Err(CliError::usage("--periods expects `start:step:stop`"));
            }
            let nums: Vec<f64> = parts
                .iter()
                .map(|p| p.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::usage("--periods expects numeric `start:step:stop`"))?;
            let (start, step, stop) = (nums[0], nums[1], nums[2]);
            if !(start > 0.0 && step > 0.0 && stop >= start) {
                return Err(CliError::usage("--periods requires 0 < start <= stop, step > 0"));
            }
            let mut periods = Vec::new();
            let mut k = 0usize;
            loop {
                let t = start + k as f64 * step;
                if t > stop * (1.0 + 1e-12) {
                    break;
                }
                periods.push(t);
                k += 1;
            }
            Ok(periods)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(CliError::method)?;
            let mut periods = Vec::new();
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let t: f64 = line.parse().map_err(|_| {
                    CliError::method(format!("periods file line {}: bad value `{line}`", idx + 1))
                })?;
                periods.push(t);
            }
            Ok(periods)
        }
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let method = parse_method(&args.method)?;
    let motion = load_ground_motion(&args.input)?;
    let periods = parse_periods(args)?;
    let req = SpectrumRequest {
        periods,
        xi: args.xi,
        method,
        upsample: args.resample.upsample,
        interp: args.resample.interp()?,
        display_factor: args.resample.display_factor,
    };
    req.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let result = response_spectrum(&motion, &req)?;

    println!("# sdof spectrum");
    println!("# method: {method}");
    println!("# xi: {}", fmt_float(args.xi));
    println!("# input: {}", args.input);
    println!("# upsample: {} interp: {}", args.resample.upsample, args.resample.interp);
    println!("# display-factor: {}", args.resample.display_factor);
    println!("Tn,Sd,PSV,PSA,stable");
    for k in 0..result.periods.len() {
        let verdict = result.diagnostics[k]
            .verdict
            .map(|v| v.to_string())
            .unwrap_or_else(|| "unknown".to_string());
        match result.sd[k] {
            Some(sd) => println!(
                "{},{},{},{},{}",
                fmt_float(result.periods[k]),
                fmt_float(sd),
                fmt_float(result.psv[k].unwrap()),
                fmt_float(result.psa[k].unwrap()),
                verdict
            ),
            None => println!("{},,,,{verdict}", fmt_float(result.periods[k])),
        }
    }
    Ok(())
}

fn cmd_stability(args: &StabilityArgs) -> Result<(), CliError> {
    let mut method = parse_method(&args.method).or_else(|e| {
        // `--method newmark` with explicit --gamma/--beta flags.
        if args.method == "newmark" {
            let gamma = args.gamma.unwrap_or(0.5);
            let beta = args.beta.unwrap_or(0.25);
            Ok(MethodId::Newmark(
                NewmarkParams::new(gamma, beta).map_err(|e| CliError::usage(e.to_string()))?,
            ))
        } else {
            Err(e)
        }
    })?;
    if let (MethodId::Newmark(_), Some(gamma), Some(beta)) = (method, args.gamma, args.beta) {
        method = MethodId::Newmark(
            NewmarkParams::new(gamma, beta).map_err(|e| CliError::usage(e.to_string()))?,
        );
    }
    let sys = args.system.build()?;
    let report = stability_verdict(method, &sys, args.dt)?;
    let poles: Vec<String> = report
        .poles
        .iter()
        .map(|p| format!("[{},{}]", fmt_float(p.re), fmt_float(p.im)))
        .collect();
    println!(
        "{{\"method\":\"{}\",\"poles\":[{}],\"magnitudes\":{},\"verdict\":\"{}\",\"condition\":\"{}\",\"margin\":{}}}",
        report.method,
        poles.join(","),
        json_vector(&report.magnitudes),
        report.verdict,
        report.condition.replace('"', "'"),
        fmt_float(report.margin)
    );
    Ok(())
}

fn parse_method_list(spec: &str) -> Result<Vec<MethodId>, CliError> {
    if spec == "all" {
        return Ok(MethodId::all());
    }
    spec.split(',')
        .map(|s| parse_method(s.trim()))
        .collect()
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let methods = parse_method_list(&args.methods)?;
    let sys = args.system.build()?;
    let dt = args.dt;

    enum Reference {
        Sine(SineExcitation),
        File(Signal),
    }

    let (motion, reference) = match (&args.oracle, &args.reference) {
        (Some(kind), None) => {
            if kind != "sine" {
                return Err(CliError::usage(format!("unknown oracle `{kind}`")));
            }
            let ratio = args
                .w0_ratio
                .ok_or_else(|| CliError::usage("--oracle sine requires --w0-ratio"))?;
            let duration = args
                .duration
                .ok_or_else(|| CliError::usage("--oracle sine requires --duration"))?;
            if !ratio.is_finite() || ratio <= 0.0 || !duration.is_finite() || duration <= 0.0 {
                return Err(CliError::usage("--w0-ratio and --duration must be positive"));
            }
            if sys.xi() == 0.0 && ratio == 1.0 {
                return Err(CliError::method(Error::UndampedResonance));
            }
            let exc = SineExcitation::new(args.amp, ratio * sys.omega_n())?;
            let n = (duration / dt).round() as usize + 1;
            (exc.sample(dt, n)?, Reference::Sine(exc))
        }
        (None, Some(path)) => {
            let reference = load_reference_series(path)?;
            let ratio = args.w0_ratio.unwrap_or(1.0);
            let exc = SineExcitation::new(args.amp, ratio * sys.omega_n())?;
            let n = reference.len();
            // The reference grid defines the comparison grid; the motion is
            // regenerated at the base rate.
            let duration = args.duration.unwrap_or((n - 1) as f64 * reference.dt());
            let base_n = (duration / dt).round() as usize + 1;
            (exc.sample(dt, base_n)?, Reference::File(reference))
        }
        _ => {
            return Err(CliError::usage(
                "exactly one of --oracle or --reference is required",
            ))
        }
    };

    let prepared = args.resample.prepare(&motion)?;
    let analysis_dt = prepared.dt();
    let display_factor = args.resample.display_factor;
    // Resampling edge fringes are excluded from the metrics: the input
    // reconstruction fringe (when sinc upsampling) plus the response display
    // fringe, expressed in display samples.
    let input_fringe = match args.resample.interp()? {
        Interp::Sinc => edge_margin(args.resample.upsample),
        _ => 0,
    };
    let trim = input_fringe * display_factor as usize + edge_margin(display_factor);

    println!("# sdof compare");
    println!("# omega_n: {} rad/s, xi: {}", fmt_float(sys.omega_n()), fmt_float(sys.xi()));
    println!("# dt: {} s, upsample: {}, interp: {}, display-factor: {}",
        fmt_float(dt), args.resample.upsample, args.resample.interp, display_factor);
    println!("method,eps_sd,eps_rms,stable");
    for method in methods {
        let verdict = stability_verdict(method, &sys, analysis_dt)
            .map(|r| r.verdict.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        match simulate_response(method, &sys, &prepared) {
            Ok(response) => {
                let displayed = sinc_resample(&response, display_factor);
                let reference_signal = match &reference {
                    Reference::Sine(exc) => {
                        sine_oracle(&sys, exc, displayed.dt(), displayed.len())?
                    }
                    Reference::File(sig) => sig.clone(),
                };
                if reference_signal.len() != displayed.len()
                    || (reference_signal.dt() - displayed.dt()).abs() > 1e-12 * displayed.dt()
                {
                    return Err(CliError::method(format!(
                        "reference grid ({} samples at {} s) does not match the response grid \
                         ({} samples at {} s)",
                        reference_signal.len(),
                        reference_signal.dt(),
                        displayed.len(),
                        displayed.dt()
                    )));
                }
                let (u, u_ref) = trim_pair(&displayed, &reference_signal, trim)?;
                let eps_sd = peak_error(&u, &u_ref)?;
                let eps_rms = rms_error(&u, &u_ref)?;
                println!("{method},{:.6},{:.6},{verdict}", eps_sd, eps_rms);
            }
            Err(Error::Diverged { .. }) => {
                println!("{method},,,{verdict}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

/// Load a reference response series: the ground-motion grammars, with one
/// leading non-numeric CSV column-header row tolerated so `sdof simulate`
/// output can be fed straight back in.
fn load_reference_series(path: &str) -> Result<Signal, CliError> {
    let text = std::fs::read_to_string(path).map_err(CliError::method)?;
    let cleaned: Vec<&str> = text
        .lines()
        .enumerate()
        .filter(|(idx, line)| {
            let l = line.trim();
            if *idx < 32 && l.contains(',') {
                // Drop a column-header row such as `time,displacement`.
                let first = l.split(',').next().unwrap_or("");
                if first.parse::<f64>().is_err() && !l.starts_with('#') && !first.is_empty() {
                    return false;
                }
            }
            true
        })
        .map(|(_, line)| line)
        .collect();
    Ok(sdof::signals::parse_ground_motion(&cleaned.join("\n"))?)
}

fn trim_pair(u: &Signal, u_ref: &Signal, trim: usize) -> Result<(Signal, Signal), CliError> {
    if trim == 0 || u.len() <= 2 * trim + 2 {
        return Ok((u.clone(), u_ref.clone()));
    }
    let range = trim..u.len() - trim;
    let a = Signal::new(u.dt(), u.samples()[range.clone()].to_vec())?;
    let b = Signal::new(u_ref.dt(), u_ref.samples()[range].to_vec())?;
    Ok((a, b))
}
