//! The `validate` subcommand: the full invariant suite as a self-check,
//! one pass/fail line per group.

use num_traits::ToPrimitive;

use ergodic_align::{
    delay_digamma, delay_harmonic, delay_integral, demo_alignment_set, is_alignment_set,
    monte_carlo, rate_complement, rate_first_to_complete, simulate_transmission, sinr_bound,
    verify_theorem_size2, AlignmentFamily, Complex64, FadeSampleSet, MarkovModel, RateConfig,
    SchemeTuple, TrialRng, DEFAULT_TUPLES,
};

use crate::CliError;

const REFERENCE_TABLE: &[(&[u32], &[f64], f64)] = &[
    (&[2, 4], &[0.75, 0.25], 0.75),
    (&[2, 6], &[0.8333, 0.1667], 0.8333),
    (&[2, 4, 4], &[0.6429, 0.1786, 0.1786], 0.6429),
    (&[2, 4, 6], &[0.6944, 0.2083, 0.0972], 0.6944),
    (&[4, 4], &[0.5, 0.5], 1.2167),
    (&[4, 6], &[0.625, 0.375], 1.3988),
    (&[4, 8], &[0.7, 0.3], 1.4972),
    (&[4, 4, 4], &[0.3333, 0.3333, 0.3333], 0.9790),
    (&[6, 10], &[0.6429, 0.3571], 1.8607),
];

enum Outcome {
    Pass,
    Fail(String),
    Reject(String),
}

fn check_reference_table() -> Outcome {
    for (sizes, betas, delay) in REFERENCE_TABLE {
        let tuple = match SchemeTuple::new(sizes.to_vec(), 64) {
            Ok(t) => t,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let analysis = match MarkovModel::build(&tuple).and_then(|m| m.analyze()) {
            Ok(a) => a,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        for (got, expected) in analysis.beta_f64().iter().zip(*betas) {
            if (got - expected).abs() >= 5e-5 {
                return Outcome::Fail(format!("{sizes:?}: beta {got} vs {expected}"));
            }
        }
        if (analysis.delay_f64() - delay).abs() >= 5e-5 {
            return Outcome::Fail(format!(
                "{sizes:?}: delay {} vs {delay}",
                analysis.delay_f64()
            ));
        }
    }
    Outcome::Pass
}

fn random_tuples(seed: u64, count: usize, force_size2: bool) -> Vec<Vec<u32>> {
    let mut rng = TrialRng::seeded(seed);
    let menu = [2u32, 4, 6, 8, 10];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = 1 + rng.next_below(4) as usize;
        let mut sizes: Vec<u32> = (0..len)
            .map(|_| menu[rng.next_below(menu.len() as u64) as usize])
            .collect();
        if force_size2 {
            let pos = rng.next_below(sizes.len() as u64) as usize;
            sizes[pos] = 2;
        }
        let demand: u64 = sizes.iter().map(|&m| (m - 1) as u64).sum();
        let states: u64 = sizes.iter().map(|&m| (m - 1) as u64).product();
        if demand > 40 || states > 4000 {
            continue;
        }
        out.push(sizes);
    }
    out
}

fn check_delay_agreement() -> Outcome {
    let mut tuples: Vec<Vec<u32>> = DEFAULT_TUPLES.iter().map(|s| s.to_vec()).collect();
    tuples.extend(random_tuples(0x5EED, 20, false));
    for sizes in &tuples {
        let exact = match delay_harmonic(sizes) {
            Ok(d) => d,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let n = SchemeTuple::min_alphabet(sizes) + 3;
        let chain = SchemeTuple::new(sizes.clone(), n)
            .and_then(|t| MarkovModel::build(&t))
            .and_then(|m| m.hitting_time_normalized());
        match chain {
            Ok(chain) if chain == exact => {}
            Ok(chain) => {
                return Outcome::Fail(format!("{sizes:?}: chain {chain} != harmonic {exact}"))
            }
            Err(e) => return Outcome::Fail(e.to_string()),
        }
        let exact_f = exact.to_f64().unwrap();
        match (delay_integral(sizes), delay_digamma(sizes)) {
            (Ok(i), Ok(d)) => {
                if (i - exact_f).abs() > 1e-8 || (d - exact_f).abs() > 1e-9 {
                    return Outcome::Fail(format!("{sizes:?}: integral {i} / digamma {d}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass
}

fn check_size2_identity() -> Outcome {
    for sizes in random_tuples(0xF00D, 60, true) {
        let n = SchemeTuple::min_alphabet(&sizes) + 2;
        match SchemeTuple::new(sizes.clone(), n).and_then(|t| verify_theorem_size2(&t)) {
            Ok(true) => {}
            Ok(false) => return Outcome::Fail(format!("{sizes:?}: identity violated")),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass
}

fn check_demo_set() -> Outcome {
    let set = demo_alignment_set();
    if !is_alignment_set(set.members()) {
        return Outcome::Fail("demo set failed the structural check".into());
    }
    let sum = set.sum_matrix();
    for r in 0..3 {
        for c in 0..3 {
            let expected = if r == c { 4 } else { 0 };
            if sum.coord(r, c).re != expected || sum.coord(r, c).im != 0 {
                return Outcome::Fail("demo set sum is not 4I".into());
            }
        }
    }
    let seed = set.members()[0].clone();
    let family = match AlignmentFamily::from_sets(seed, vec![set.clone()]) {
        Ok(f) => f,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let config = match RateConfig::uniform(3, 4.0) {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let x = vec![
        Complex64::new(1.0, -0.5),
        Complex64::new(-0.25, 0.25),
        Complex64::new(0.5, 1.5),
    ];
    let noise = vec![vec![Complex64::new(0.0, 0.0); 3]; 4];
    match simulate_transmission(&family, &set, &x, &noise, &config) {
        Ok(out) => {
            for (k, symbol) in x.iter().enumerate() {
                if out.combined[k] != Complex64::new(4.0, 0.0) * symbol {
                    return Outcome::Fail(format!("user {k}: combined output not exactly 4x"));
                }
            }
            Outcome::Pass
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn check_rate_arithmetic() -> Outcome {
    let fades = FadeSampleSet::two_point_unit();
    let config = match RateConfig::uniform(1, 1.5) {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let r2 = rate_complement(&fades, &config);
    if r2[0] != 1.0 {
        return Outcome::Fail(format!("complement rate {} != 1", r2[0]));
    }
    let r24 = match rate_first_to_complete(&[2, 4], &[0.75, 0.25], &fades, &config) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let expected = 0.75 + 7.0f64.log2() / 16.0;
    if (r24[0] - expected).abs() > 1e-9 {
        return Outcome::Fail(format!("first-to-complete rate {} vs {expected}", r24[0]));
    }
    Outcome::Pass
}

fn check_sweep_monotone() -> Outcome {
    let mut previous = None;
    for n in 1..=8usize {
        let d = match delay_harmonic(&vec![4u32; n]) {
            Ok(d) => d,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if let Some(prev) = &previous {
            if d >= *prev {
                return Outcome::Fail(format!("delay not decreasing at {n} sets"));
            }
        }
        previous = Some(d);
    }
    Outcome::Pass
}

fn check_sinr_limit() -> Outcome {
    let config = match RateConfig::uniform(3, 1.0) {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let h = Complex64::new(1.0, 0.0);
    match sinr_bound(4, h, 1e-4, &config, 0) {
        Ok(b) => {
            let ratio = b / 4.0;
            if (ratio - 1.0).abs() < 1e-3 {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("ratio {ratio} at gamma = 1e-4"))
            }
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn check_monte_carlo(trials: u64, seed: u64) -> Outcome {
    let tuple = match SchemeTuple::new(vec![2, 4], 64) {
        Ok(t) => t,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let analysis = match MarkovModel::build(&tuple).and_then(|m| m.analyze()) {
        Ok(a) => a,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let report = match monte_carlo(&tuple, trials, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    for (i, analytic) in analysis.beta_f64().iter().enumerate() {
        let se = (analytic * (1.0 - analytic) / trials as f64).sqrt();
        let z = (report.beta_hat[i] - analytic) / se;
        if z.abs() > 4.0 {
            return Outcome::Reject(format!("set {i}: z = {z:.2}"));
        }
    }
    if let Some(se) = report.std_err_delay {
        let z = (report.delay_hat - analysis.delay_f64()) / se;
        if z.abs() > 4.0 {
            return Outcome::Reject(format!("delay z = {z:.2}"));
        }
    }
    Outcome::Pass
}

pub fn cmd_validate(trials: u64, seed: u64) -> Result<(), CliError> {
    let checks: Vec<(&str, Outcome)> = vec![
        ("reference table", check_reference_table()),
        ("three-way delay agreement", check_delay_agreement()),
        ("size-2 delay identity", check_size2_identity()),
        ("demo set exactness", check_demo_set()),
        ("rate arithmetic", check_rate_arithmetic()),
        ("same-size sweep monotone", check_sweep_monotone()),
        ("sinr limit", check_sinr_limit()),
        ("monte carlo concordance", check_monte_carlo(trials, seed)),
    ];
    let mut failed = None;
    let mut rejected = None;
    for (name, outcome) in &checks {
        match outcome {
            Outcome::Pass => println!("PASS {name}"),
            Outcome::Fail(msg) => {
                println!("FAIL {name}: {msg}");
                failed.get_or_insert_with(|| format!("{name}: {msg}"));
            }
            Outcome::Reject(msg) => {
                println!("REJECT {name}: {msg}");
                rejected.get_or_insert_with(|| format!("{name}: {msg}"));
            }
        }
    }
    if let Some(msg) = failed {
        return Err(CliError::Validation(msg));
    }
    if let Some(msg) = rejected {
        return Err(CliError::Statistical(msg));
    }
    Ok(())
}
