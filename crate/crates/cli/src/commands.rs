//! The analysis and simulation subcommands.

use std::path::PathBuf;

use num_traits::ToPrimitive;

use ergodic_align::report::ComparisonRow;
use ergodic_align::{
    delay_digamma, delay_harmonic, delay_integral, delay_time_sharing, monte_carlo,
    rate_first_to_complete, rate_time_sharing, FadeSampleSet, MarkovModel, RateConfig, SchemeTuple,
    TimeShareVector,
};

use crate::output::{cell_beta, cell_f64, write_bytes, Format, Table};
use crate::CliError;

fn tuple_label(sizes: &[u32]) -> String {
    sizes
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

fn scheme(sizes: &[u32], n: u64) -> Result<SchemeTuple, CliError> {
    SchemeTuple::new(sizes.to_vec(), n).map_err(|e| CliError::Validation(e.to_string()))
}

const DELAY_AGREEMENT_TOLERANCE: f64 = 1e-8;

pub fn cmd_table(
    tuples: &[Vec<u32>],
    n: u64,
    absolute: bool,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let max_sets = tuples.iter().map(|t| t.len()).max().unwrap_or(0);
    let mut header = vec!["tuple".to_string(), "n".to_string()];
    for i in 1..=max_sets {
        header.push(format!("beta_{i}"));
    }
    header.extend(
        ["d_markov", "d_harmonic", "d_integral", "d_digamma", "agree"]
            .iter()
            .map(|s| s.to_string()),
    );
    let mut table = Table::new(header);
    let scale = if absolute { n as f64 } else { 1.0 };

    for sizes in tuples {
        let tuple = scheme(sizes, n)?;
        let analysis = MarkovModel::build(&tuple)
            .map_err(|e| CliError::Validation(e.to_string()))?
            .analyze()
            .map_err(|e| CliError::Validation(e.to_string()))?;

        let markov = analysis.delay_f64();
        let harmonic = delay_harmonic(sizes)
            .map_err(|e| CliError::Validation(e.to_string()))?
            .to_f64()
            .unwrap();
        let integral = delay_integral(sizes).map_err(|e| CliError::Validation(e.to_string()))?;
        let digamma = delay_digamma(sizes).map_err(|e| CliError::Validation(e.to_string()))?;
        let spread = [markov, integral, digamma]
            .iter()
            .map(|d| (d - harmonic).abs())
            .fold(0.0f64, f64::max);

        let mut row = vec![tuple_label(sizes), n.to_string()];
        let betas = analysis.beta_f64();
        for i in 0..max_sets {
            row.push(betas.get(i).map(|&b| cell_beta(b)).unwrap_or_default());
        }
        row.push(cell_f64(markov * scale));
        row.push(cell_f64(harmonic * scale));
        row.push(cell_f64(integral * scale));
        row.push(cell_f64(digamma * scale));
        row.push(if spread > DELAY_AGREEMENT_TOLERANCE {
            format!("mismatch:{spread:e}")
        } else {
            "ok".to_string()
        });
        table.push(row);
    }
    table.emit(format, out)
}

pub fn cmd_sweep(
    size: u32,
    max_n: usize,
    n: u64,
    absolute: bool,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let scale = if absolute { n as f64 } else { 1.0 };
    let mut table = Table::new(vec!["sets".into(), "delay".into()]);
    for count in 1..=max_n {
        let sizes = vec![size; count];
        let d = delay_harmonic(&sizes)
            .map_err(|e| CliError::Validation(e.to_string()))?
            .to_f64()
            .unwrap();
        table.push(vec![count.to_string(), cell_f64(d * scale)]);
    }
    table.emit(format, out)
}

pub struct TradeoffParams {
    pub tuples: Vec<Vec<u32>>,
    pub alpha_grid: Vec<f64>,
    pub n: u64,
    pub snr: Vec<f64>,
    pub fades: Option<PathBuf>,
    pub absolute: bool,
}

pub fn cmd_tradeoff(
    params: &TradeoffParams,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    if params.tuples.len() != 2 {
        return Err(CliError::Usage(
            "tradeoff blends exactly two schemes; pass --tuples \"2;2,4\"".into(),
        ));
    }
    for &alpha in &params.alpha_grid {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(CliError::Usage(format!("alpha {alpha} outside [0, 1]")));
        }
    }
    let fades = match &params.fades {
        Some(path) => {
            FadeSampleSet::from_csv_path(path).map_err(|e| CliError::Validation(e.to_string()))?
        }
        None => FadeSampleSet::two_point_unit(),
    };
    let config =
        RateConfig::new(params.snr.clone()).map_err(|e| CliError::Validation(e.to_string()))?;

    let mut schemes = Vec::new();
    let mut rates = Vec::new();
    let mut delays = Vec::new();
    for sizes in &params.tuples {
        let tuple = scheme(sizes, params.n)?;
        let analysis = MarkovModel::build(&tuple)
            .map_err(|e| CliError::Validation(e.to_string()))?
            .analyze()
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let rate = rate_first_to_complete(sizes, &analysis.beta_f64(), &fades, &config)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        rates.push(rate);
        delays.push(analysis.delay_f64());
        schemes.push(tuple);
    }

    let blend = |alpha: f64| -> Result<(f64, Vec<f64>), CliError> {
        let share = TimeShareVector::two_scheme(schemes[0].clone(), schemes[1].clone(), alpha)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let d =
            delay_time_sharing(&share, &delays).map_err(|e| CliError::Validation(e.to_string()))?;
        let r =
            rate_time_sharing(&share, &rates).map_err(|e| CliError::Validation(e.to_string()))?;
        Ok((d, r))
    };

    // Affinity self-check: endpoints match the pure schemes and the
    // midpoint interpolates them.
    let (d0, r0) = blend(0.0)?;
    let (d1, r1) = blend(1.0)?;
    let (dm, rm) = blend(0.5)?;
    if (d0 - delays[0]).abs() > 1e-12
        || (d1 - delays[1]).abs() > 1e-12
        || (dm - (d0 + d1) / 2.0).abs() > 1e-12
        || rm
            .iter()
            .zip(r0.iter().zip(&r1))
            .any(|(m, (a, b))| (m - (a + b) / 2.0).abs() > 1e-12)
    {
        return Err(CliError::Validation(
            "time-sharing failed the affine endpoint/midpoint self-check".into(),
        ));
    }

    let scale = if params.absolute {
        params.n as f64
    } else {
        1.0
    };
    let mut header = vec!["alpha".to_string(), "delay".to_string()];
    for k in 1..=config.k_users() {
        header.push(format!("rate_{k}"));
    }
    let mut table = Table::new(header);
    for &alpha in &params.alpha_grid {
        let (d, r) = blend(alpha)?;
        let mut row = vec![cell_f64(alpha), cell_f64(d * scale)];
        row.extend(r.iter().map(|&x| cell_f64(x)));
        table.push(row);
    }
    table.emit(format, out)
}

pub struct SimulateParams {
    pub tuples: Vec<Vec<u32>>,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub absolute: bool,
}

pub fn cmd_simulate(
    params: &SimulateParams,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    if params.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let scale = if params.absolute {
        params.n as f64
    } else {
        1.0
    };
    let mut rows: Vec<ComparisonRow> = Vec::new();
    let mut worst_z: f64 = 0.0;
    for sizes in &params.tuples {
        let tuple = scheme(sizes, params.n)?;
        let analysis = MarkovModel::build(&tuple)
            .map_err(|e| CliError::Validation(e.to_string()))?
            .analyze()
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let report = monte_carlo(&tuple, params.trials, params.seed)
            .map_err(|e| CliError::Validation(e.to_string()))?;

        let analytic_delay = analysis.delay_f64();
        let delay_z = report
            .std_err_delay
            .map(|se| (report.delay_hat - analytic_delay) / se)
            .unwrap_or(f64::NAN);
        if delay_z.is_finite() {
            worst_z = worst_z.max(delay_z.abs());
        }
        for (i, analytic_beta) in analysis.beta_f64().iter().enumerate() {
            let beta_hat = report.beta_hat[i];
            let se = (analytic_beta * (1.0 - analytic_beta) / params.trials as f64).sqrt();
            let z = (beta_hat - analytic_beta) / se;
            if z.is_finite() {
                worst_z = worst_z.max(z.abs());
            }
            rows.push(ComparisonRow {
                tuple: tuple_label(sizes),
                n: params.n,
                trials: params.trials,
                set_index: i,
                size: sizes[i],
                beta_hat,
                beta_analytic: *analytic_beta,
                delay_hat: report.delay_hat * scale,
                delay_analytic: analytic_delay * scale,
                std_err: report.std_err_beta[i].unwrap_or(f64::NAN),
            });
            eprintln!(
                "{} set {i} (size {}): beta {beta_hat:.6} vs {analytic_beta:.6} (z = {z:+.2})",
                tuple_label(sizes),
                sizes[i],
            );
        }
        eprintln!(
            "{}: delay/N {:.6} vs {:.6} (z = {delay_z:+.2})",
            tuple_label(sizes),
            report.delay_hat,
            analytic_delay,
        );
    }

    let bytes = match format {
        Format::Csv => {
            let mut buffer = Vec::new();
            ergodic_align::report::write_comparison_csv(&rows, &mut buffer)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            buffer
        }
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&rows)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            b.push(b'\n');
            b
        }
    };
    write_bytes(&bytes, out)?;

    if worst_z > 4.0 {
        return Err(CliError::Statistical(format!(
            "worst |z| = {worst_z:.2} exceeds 4"
        )));
    }
    Ok(())
}
