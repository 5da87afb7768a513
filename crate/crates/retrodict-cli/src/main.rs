//! Command-line driver: simulate homodyne record ensembles, retrodict
//! initial states with matched filters, estimate spectra, and sweep
//! imprecision limits. Every run is reproducible from `(config, seed)`;
//! repeated invocations produce byte-identical outputs.

mod output;
mod state_spec;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use retrodict::filters::{
    avg_filters, exp_filters, exp_filters_auto, gls_filters, ols_filters, FilterBank, GlsGrid,
};
use retrodict::model::{ConfigFile, System};
use retrodict::noise::{
    broadened_second_moments, infer_state_cov, mean_square_empirical, mean_square_signal,
    noise_covariances, BroadenedOptions, CovarianceEstimate,
};
use retrodict::psd::estimate_psd;
use retrodict::records::{read_records, write_records, write_records_csv};
use retrodict::sim::{run_ensemble, HomodyneRecord};
use retrodict::sweep::{log_grid, sweep_single_sql, sweep_two_mode};

#[derive(Parser)]
#[command(
    name = "retrodict",
    about = "Simulate and retrodict multi-mode optomechanical homodyne measurements",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration file and print derived quantities.
    ValidateConfig(ValidateArgs),
    /// Simulate an ensemble of homodyne records and persist it.
    Simulate(SimulateArgs),
    /// Retrodict initial-state statistics from records (stored or simulated).
    Retrodict(RetrodictArgs),
    /// Welch PSD of stored records, normalized to the shot-noise floor.
    Psd(PsdArgs),
    /// Single-oscillator added-noise sweep over cooperativity and filter
    /// decay rate.
    SweepSql(SweepSqlArgs),
    /// Two-mode imprecision sweep over frequency splitting and cooperativity.
    SweepTwoMode(SweepTwoModeArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Configuration JSON (frequencies in Hz).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    config: PathBuf,
    /// Initial state: vacuum | thermal:NU[,NU2,...] | smss:zeta=R@THETA,dx=X,dp=P | tmss:z=COMPLEX
    #[arg(long, default_value = "vacuum")]
    state: String,
    #[arg(long)]
    shots: usize,
    #[arg(long)]
    seed: u64,
    /// Output path of the binary record container.
    #[arg(long)]
    out: PathBuf,
    /// Also export a CSV copy next to the container.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct RetrodictArgs {
    #[arg(long)]
    config: PathBuf,
    /// Read records from this container...
    #[arg(long, conflicts_with = "simulate")]
    records: Option<PathBuf>,
    /// ...or simulate them in place.
    #[arg(long)]
    simulate: bool,
    #[arg(long, default_value = "vacuum")]
    state: String,
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Filter family: ols | exp | gls | avg
    #[arg(long, default_value = "gls")]
    family: String,
    /// Exponential decay rates in Hz ("auto" uses the optimal rate per
    /// oscillator).
    #[arg(long, default_value = "auto")]
    gamma: String,
    /// Output directory for the report files.
    #[arg(long)]
    out_dir: PathBuf,
    /// Frequency draws for the broadened (avg) second-moment inversion.
    #[arg(long, default_value_t = 512)]
    n_omega: usize,
    /// Also dump the filter bank and per-row amplitude spectra.
    #[arg(long)]
    dump_bank: bool,
}

#[derive(Args)]
struct PsdArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    records: PathBuf,
    /// Welch segment length in samples.
    #[arg(long, default_value_t = 4096)]
    segments: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepSqlArgs {
    /// Single-oscillator configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Cooperativity grid lo:hi (log spaced).
    #[arg(long, default_value = "0.1:100")]
    c_range: String,
    /// Filter decay grid lo:hi in units of Gamma (log spaced).
    #[arg(long, default_value = "0.5:300")]
    gamma_range: String,
    /// Log-grid density per decade.
    #[arg(long, default_value_t = 40)]
    points_per_decade: usize,
    /// Also evaluate the GLS bound per cooperativity.
    #[arg(long)]
    gls: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepTwoModeArgs {
    #[arg(long)]
    omega1_hz: f64,
    #[arg(long)]
    gamma_hz: f64,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Splittings in units of Gamma, comma separated.
    #[arg(long, default_value = "2,10,50")]
    deltas: String,
    /// Cooperativity grid lo:hi (log spaced).
    #[arg(long, default_value = "0.5:100")]
    c_range: String,
    #[arg(long, default_value_t = 16)]
    points_per_decade: usize,
    #[arg(long)]
    fs_hz: f64,
    #[arg(long)]
    tf_s: f64,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::ValidateConfig(a) => validate_config(a),
        Command::Simulate(a) => simulate(a),
        Command::Retrodict(a) => retrodict(a),
        Command::Psd(a) => psd(a),
        Command::SweepSql(a) => sweep_sql(a),
        Command::SweepTwoMode(a) => sweep_two(a),
    }
}

fn load_system(path: &PathBuf) -> Result<(System, String)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let sys = ConfigFile::from_json(&text)?.build()?;
    Ok((sys, text))
}

fn validate_config(args: ValidateArgs) -> Result<()> {
    let (sys, text) = load_system(&args.config)?;
    println!("config ok: {} oscillator(s), nt = {}", sys.n_osc(), sys.grid().nt);
    println!("config hash: {}", output::fnv1a_hex(text.as_bytes()));
    println!("shot-noise PSD: {:.6e}", sys.psn);
    for (i, d) in sys.derived.iter().enumerate() {
        let coop = d
            .cooperativity
            .map(|c| format!("{c:.4}"))
            .unwrap_or_else(|| "undefined (Gamma = 0)".into());
        println!(
            "oscillator {i}: g_eff = {:.6e} rad/s, phi = {:.3e} rad, C = {}, backaction rate = {:.6e} rad/s",
            d.g_eff, d.phi, coop, d.backaction_rate
        );
    }
    for (i, j, ratio) in &sys.resolution {
        println!("resolution |w_{i} - w_{j}| / Gamma = {ratio:.3}");
    }
    for w in &sys.warnings {
        println!("warning: {w}");
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let (sys, _) = load_system(&args.config)?;
    let state = state_spec::parse(&args.state, sys.n_osc())?;
    let shots = run_ensemble(&sys, &state, args.shots, args.seed)?;
    let records: Vec<HomodyneRecord> = shots.into_iter().map(|s| s.record).collect();
    let file = fs::File::create(&args.out)?;
    write_records(std::io::BufWriter::new(file), &records, sys.grid().fs)?;
    println!("wrote {} records to {}", records.len(), args.out.display());
    if args.csv {
        let csv_path = args.out.with_extension("csv");
        let file = fs::File::create(&csv_path)?;
        write_records_csv(std::io::BufWriter::new(file), &records, sys.grid().fs)?;
        println!("wrote CSV copy to {}", csv_path.display());
    }
    Ok(())
}

fn build_bank(sys: &System, family: &str, gamma: &str) -> Result<FilterBank> {
    Ok(match family {
        "ols" => ols_filters(sys)?,
        "avg" => avg_filters(sys)?,
        "gls" => gls_filters(sys, &GlsGrid::default())?,
        "exp" => {
            if gamma == "auto" {
                exp_filters_auto(sys)?
            } else {
                let gammas: Vec<f64> = gamma
                    .split(',')
                    .map(|g| {
                        g.trim()
                            .parse::<f64>()
                            .map(|hz| hz * 2.0 * std::f64::consts::PI)
                            .map_err(|e| anyhow::anyhow!("bad gamma {g}: {e}"))
                    })
                    .collect::<Result<_>>()?;
                exp_filters(sys, &gammas)?
            }
        }
        other => bail!("unknown filter family `{other}` (expected ols|exp|gls|avg)"),
    })
}

fn retrodict(args: RetrodictArgs) -> Result<()> {
    let (sys, config_text) = load_system(&args.config)?;
    let (records, truth): (Vec<HomodyneRecord>, Option<Vec<nalgebra::DVector<f64>>>) =
        if args.simulate {
            let state = state_spec::parse(&args.state, sys.n_osc())?;
            let shots = run_ensemble(&sys, &state, args.shots, args.seed)?;
            let truth = shots.iter().map(|s| s.initial.clone()).collect();
            (shots.into_iter().map(|s| s.record).collect(), Some(truth))
        } else {
            let path = args
                .records
                .as_ref()
                .context("either --records or --simulate is required")?;
            let file = fs::File::open(path)?;
            let (records, fs_stored) = read_records(std::io::BufReader::new(file))?;
            if (fs_stored - sys.grid().fs).abs() > 1e-9 * sys.grid().fs {
                bail!(
                    "records sampled at {fs_stored} Hz, config grid at {} Hz",
                    sys.grid().fs
                );
            }
            (records, None)
        };

    let bank = build_bank(&sys, &args.family, &args.gamma)?;
    let estimates = bank.estimate_ensemble(&records)?;
    let est = CovarianceEstimate::from_samples(&estimates)?;
    let set = noise_covariances(&sys, &bank);
    let inferred = infer_state_cov(&est, &set)?;

    // mean-square check against the inferred state (second moments follow
    // the estimated mean and inferred covariance)
    let state_for_model = retrodict::gaussian::GaussianState::new(
        est.mean.clone(),
        symmetrize(&inferred.cov),
    );
    let msq_model = state_for_model
        .as_ref()
        .ok()
        .map(|s| mean_square_signal(&sys, s));
    let (msq_emp, msq_se) = mean_square_empirical(&records)?;

    fs::create_dir_all(&args.out_dir)?;
    output::write_estimates_csv(&args.out_dir.join("estimates.csv"), &estimates)?;
    output::write_covariance_json(&args.out_dir.join("covariance.json"), &est)?;
    fs::write(args.out_dir.join("noise.json"), set.to_json())?;
    output::write_inferred_json(&args.out_dir.join("inferred.json"), &inferred)?;
    output::write_mean_square_csv(
        &args.out_dir.join("mean_square.csv"),
        sys.grid(),
        msq_model.as_deref(),
        &msq_emp,
        &msq_se,
    )?;
    if args.family == "avg" {
        let opts = BroadenedOptions {
            n_omega: args.n_omega,
            seed: 0x5EED,
        };
        let broad = broadened_second_moments(&sys, &bank, &records, &opts)?;
        output::write_broadened_json(&args.out_dir.join("broadened.json"), &broad)?;
    }
    if args.dump_bank {
        let f = fs::File::create(args.out_dir.join("bank.csv"))?;
        bank.write_csv(std::io::BufWriter::new(f))?;
        for row in 0..bank.rows.len() {
            let f = fs::File::create(args.out_dir.join(format!("bank_spectrum_m{row}.csv")))?;
            bank.write_spectrum_csv(std::io::BufWriter::new(f), row, 4)?;
        }
    }
    output::write_summary_json(
        &args.out_dir.join("summary.json"),
        &sys,
        &config_text,
        &args.family,
        args.seed,
        records.len(),
        &bank,
        &set,
        &inferred,
        truth.as_deref(),
        &estimates,
    )?;

    println!(
        "retrodicted {} records with {} filters (cond J = {:.3e})",
        records.len(),
        args.family,
        bank.cond_j
    );
    for i in 0..sys.n_osc() {
        println!(
            "oscillator {i}: added occupation = {:.4}",
            set.added_occupation(i)
        );
    }
    println!(
        "inferred state physical: {} (min symplectic eigenvalue {:.4}, min eigenvalue {:.4})",
        inferred.physical, inferred.min_symplectic, inferred.min_eigenvalue
    );
    Ok(())
}

fn symmetrize(m: &nalgebra::DMatrix<f64>) -> nalgebra::DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn psd(args: PsdArgs) -> Result<()> {
    let (sys, _) = load_system(&args.config)?;
    let file = fs::File::open(&args.records)?;
    let (records, fs_stored) = read_records(std::io::BufReader::new(file))?;
    if (fs_stored - sys.grid().fs).abs() > 1e-9 * sys.grid().fs {
        bail!("records sampled at {fs_stored} Hz, config at {} Hz", sys.grid().fs);
    }
    let psd = estimate_psd(&records, sys.grid().fs, sys.psn, args.segments)?;
    output::write_psd_csv(&args.out, &psd)?;
    println!(
        "wrote {} bins ({} segments averaged) to {}",
        psd.freqs.len(),
        psd.segments,
        args.out.display()
    );
    Ok(())
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let mut it = text.split(':');
    let lo: f64 = it.next().context("range lo")?.parse()?;
    let hi: f64 = it.next().context("range hi")?.parse()?;
    if it.next().is_some() || !(hi > lo) || !(lo > 0.0) {
        bail!("range must be lo:hi with 0 < lo < hi, got `{text}`");
    }
    Ok((lo, hi))
}

fn sweep_sql(args: SweepSqlArgs) -> Result<()> {
    let (sys, _) = load_system(&args.config)?;
    if sys.n_osc() != 1 {
        bail!("sweep-sql needs a single-oscillator config");
    }
    let o = sys.osc(0);
    let (clo, chi) = parse_range(&args.c_range)?;
    let (glo, ghi) = parse_range(&args.gamma_range)?;
    let c_values = log_grid(clo, chi, args.points_per_decade);
    let gamma_values: Vec<f64> = log_grid(glo, ghi, args.points_per_decade)
        .into_iter()
        .map(|x| x * o.gamma)
        .collect();
    let sweep = sweep_single_sql(
        o.omega,
        o.gamma,
        o.nu,
        sys.config.cavity.epsilon,
        &c_values,
        &gamma_values,
        sys.grid().fs,
        sys.grid().tf,
        args.gls,
    )?;
    output::write_sql_sweep(&args.out, &sweep)?;
    println!(
        "wrote {} points and {} optima to {} (asymptote {:.4})",
        sweep.points.len(),
        sweep.optima.len(),
        args.out.display(),
        sweep.asymptote
    );
    let failed = sweep.points.iter().filter(|p| p.error.is_some()).count();
    if failed > 0 {
        bail!("{failed} sweep point(s) failed; rows carry error tags");
    }
    Ok(())
}

fn sweep_two(args: SweepTwoModeArgs) -> Result<()> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let gamma = args.gamma_hz * two_pi;
    let deltas: Vec<f64> = args
        .deltas
        .split(',')
        .map(|d| {
            d.trim()
                .parse::<f64>()
                .map(|x| x * gamma)
                .map_err(|e| anyhow::anyhow!("bad delta {d}: {e}"))
        })
        .collect::<Result<_>>()?;
    let (clo, chi) = parse_range(&args.c_range)?;
    let c_values = log_grid(clo, chi, args.points_per_decade);
    let sweep = sweep_two_mode(
        args.omega1_hz * two_pi,
        gamma,
        args.epsilon,
        &deltas,
        &c_values,
        args.fs_hz,
        args.tf_s,
    )?;
    output::write_two_mode_sweep(&args.out, &sweep)?;
    println!(
        "wrote {} points and {} optima to {}",
        sweep.points.len(),
        sweep.optima.len(),
        args.out.display()
    );
    let failed = sweep.points.iter().filter(|p| p.error.is_some()).count();
    if failed > 0 {
        bail!("{failed} sweep point(s) failed; rows carry error tags");
    }
    Ok(())
}
