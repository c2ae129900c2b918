//! Monte Carlo simulation of the channel-realization race and of aligned
//! transmission.
//!
//! Every trial draws from its own counter-based random stream derived from
//! the master seed and the trial index, and reports aggregate integer
//! counters, so results are bit-identical regardless of execution order or
//! thread count.  Two backends exist: the abstract one draws category
//! indices directly (mirroring the Markov chain), the enumerated one draws
//! concrete matrices from an explicit alphabet and matches them by
//! equality, exercising the structural machinery end to end.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{AlignmentFamily, AlignmentSet, ChannelAlphabet, QuantizedMatrix};
use crate::closed_form::{RateConfig, TimeShareVector};
use crate::error::{Error, Result};
use crate::markov::SchemeTuple;

/// A deterministic per-trial random stream.
///
/// SplitMix64 over a stream-specific origin: output `k` is a pure function
/// of `(master_seed, trial, k)`, which is the reproducibility contract for
/// parallel simulation.
#[derive(Clone, Debug)]
pub struct TrialRng {
    state: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl TrialRng {
    /// Stream for one `(master_seed, trial)` pair.
    pub fn for_trial(master_seed: u64, trial: u64) -> Self {
        let origin = mix64(master_seed ^ mix64(trial.wrapping_add(GOLDEN)));
        Self { state: origin }
    }

    /// A single-stream generator (trial 0 of the seed).
    pub fn seeded(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform draw from `0..n`, unbiased via widening multiply with
    /// rejection.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            let wide = (x as u128) * (n as u128);
            if (wide as u64) >= threshold {
                return (wide >> 64) as u64;
            }
        }
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }
}

/// Result of one first-to-complete race.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RaceOutcome {
    /// Tuple index of the set that completed first.
    pub winner_index: usize,
    /// Time steps from the seed occurrence to completion (the completing
    /// draw included).  Always at least `m_winner - 1`.
    pub delay_steps: u64,
}

/// Runs one race over an abstract alphabet: categories
/// `0..sum(m_i - 1)` are the non-seed members (set by set), everything
/// else is inert.  Re-drawing an already-seen member gives no progress.
pub fn run_race(tuple: &SchemeTuple, rng: &mut TrialRng) -> RaceOutcome {
    let sizes = tuple.sizes();
    // Per-set progress is tracked in a 64-bit membership mask.
    assert!(
        sizes.iter().all(|&m| m <= 64),
        "alignment sets beyond size 64 are not simulated"
    );
    let n = tuple.alphabet_n();
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut total: u64 = 0;
    for &m in sizes {
        offsets.push(total);
        total += (m - 1) as u64;
    }
    let mut seen: Vec<u64> = vec![0; sizes.len()];
    let mut progress: Vec<u32> = vec![0; sizes.len()];
    let mut steps: u64 = 0;
    loop {
        steps += 1;
        let draw = rng.next_below(n);
        if draw >= total {
            continue;
        }
        let set = match offsets.binary_search(&draw) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let member = draw - offsets[set];
        if seen[set] & (1 << member) == 0 {
            seen[set] |= 1 << member;
            progress[set] += 1;
            if progress[set] == sizes[set] - 1 {
                return RaceOutcome {
                    winner_index: set,
                    delay_steps: steps,
                };
            }
        }
    }
}

/// Race over an explicit alphabet: draws an index into the matrix list and
/// resolves set membership by matrix equality.
fn run_race_over_categories(
    sizes: &[u32],
    category_of: &[Option<(usize, u32)>],
    rng: &mut TrialRng,
) -> RaceOutcome {
    let n = category_of.len() as u64;
    let mut seen: Vec<u64> = vec![0; sizes.len()];
    let mut progress: Vec<u32> = vec![0; sizes.len()];
    let mut steps: u64 = 0;
    loop {
        steps += 1;
        let draw = rng.next_below(n) as usize;
        let Some((set, member)) = category_of[draw] else {
            continue;
        };
        if seen[set] & (1 << member) == 0 {
            seen[set] |= 1 << member;
            progress[set] += 1;
            if progress[set] == sizes[set] - 1 {
                return RaceOutcome {
                    winner_index: set,
                    delay_steps: steps,
                };
            }
        }
    }
}

/// Estimates from a batch of races: completion frequencies per set and the
/// mean delay, with standard errors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub trials: u64,
    pub alphabet_n: u64,
    /// Completion counts per set (exact integer accumulators).
    pub completions: Vec<u64>,
    /// Completion frequency per set.
    pub beta_hat: Vec<f64>,
    /// Standard error of each `beta_hat`; `None` with fewer than 2 trials.
    pub std_err_beta: Vec<Option<f64>>,
    /// Mean delay in steps.
    pub mean_steps: f64,
    /// Mean delay divided by the alphabet cardinality.
    pub delay_hat: f64,
    /// Standard error of `delay_hat`; `None` with fewer than 2 trials.
    pub std_err_delay: Option<f64>,
}

#[derive(Clone)]
struct Accumulator {
    wins: Vec<u64>,
    steps_sum: u128,
    steps_sq_sum: u128,
}

impl Accumulator {
    fn zero(sets: usize) -> Self {
        Self {
            wins: vec![0; sets],
            steps_sum: 0,
            steps_sq_sum: 0,
        }
    }

    fn absorb(mut self, outcome: RaceOutcome) -> Self {
        self.wins[outcome.winner_index] += 1;
        self.steps_sum += outcome.delay_steps as u128;
        self.steps_sq_sum += (outcome.delay_steps as u128) * (outcome.delay_steps as u128);
        self
    }

    fn combine(mut self, other: Self) -> Self {
        for (a, b) in self.wins.iter_mut().zip(&other.wins) {
            *a += b;
        }
        self.steps_sum += other.steps_sum;
        self.steps_sq_sum += other.steps_sq_sum;
        self
    }

    fn into_report(self, trials: u64, n: u64) -> EmpiricalReport {
        let t = trials as f64;
        let beta_hat: Vec<f64> = self.wins.iter().map(|&w| w as f64 / t).collect();
        let std_err_beta = beta_hat
            .iter()
            .map(|&b| (trials >= 2).then(|| (b * (1.0 - b) / t).sqrt()))
            .collect();
        let mean_steps = self.steps_sum as f64 / t;
        let std_err_delay = (trials >= 2).then(|| {
            let var = (self.steps_sq_sum as f64 / t - mean_steps * mean_steps) * t / (t - 1.0);
            (var / t).sqrt() / n as f64
        });
        EmpiricalReport {
            trials,
            alphabet_n: n,
            completions: self.wins,
            beta_hat,
            std_err_beta,
            mean_steps,
            delay_hat: mean_steps / n as f64,
            std_err_delay,
        }
    }
}

fn aggregate_trials<F>(sets: usize, trials: u64, run: F) -> Accumulator
where
    F: Fn(u64) -> RaceOutcome + Sync,
{
    (0..trials)
        .into_par_iter()
        .fold(
            || Accumulator::zero(sets),
            |acc, trial| acc.absorb(run(trial)),
        )
        .reduce(|| Accumulator::zero(sets), Accumulator::combine)
}

/// Runs `trials` independent races with per-trial streams derived from
/// `master_seed`.  Trials may execute in parallel; the report is
/// bit-identical for a fixed seed regardless of thread count.
pub fn monte_carlo(tuple: &SchemeTuple, trials: u64, master_seed: u64) -> Result<EmpiricalReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let acc = aggregate_trials(tuple.sizes().len(), trials, |trial| {
        let mut rng = TrialRng::for_trial(master_seed, trial);
        run_race(tuple, &mut rng)
    });
    Ok(acc.into_report(trials, tuple.alphabet_n()))
}

/// [`monte_carlo`] over an enumerated alphabet, with set membership
/// resolved by matrix equality against the family.
pub fn monte_carlo_enumerated(
    family: &AlignmentFamily,
    alphabet: &ChannelAlphabet,
    trials: u64,
    master_seed: u64,
) -> Result<EmpiricalReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let Some(matrices) = alphabet.matrices() else {
        return Err(Error::InvalidInput(
            "enumerated simulation needs an enumerated alphabet".into(),
        ));
    };
    let sizes = family.sizes();
    let n = matrices.len() as u64;
    if n < SchemeTuple::min_alphabet(&sizes) {
        return Err(Error::InvalidTuple(format!(
            "alphabet of {n} matrices is below the validity bound"
        )));
    }
    // Membership lookup once; the race then runs on plain indices.
    let mut lookup: std::collections::HashMap<&QuantizedMatrix, (usize, u32)> =
        std::collections::HashMap::new();
    for (set_idx, set) in family.sets().iter().enumerate() {
        for (member_idx, member) in set.members()[1..].iter().enumerate() {
            lookup.insert(member, (set_idx, member_idx as u32));
        }
    }
    let category_of: Vec<Option<(usize, u32)>> =
        matrices.iter().map(|m| lookup.get(m).copied()).collect();

    let acc = aggregate_trials(sizes.len(), trials, |trial| {
        let mut rng = TrialRng::for_trial(master_seed, trial);
        run_race_over_categories(&sizes, &category_of, &mut rng)
    });
    Ok(acc.into_report(trials, n))
}

/// Combined channel outputs of sending the same symbol vector at every
/// realization of a completed alignment set.
#[derive(Clone, Debug)]
pub struct TransmissionOutcome {
    /// Per-user sum of the received symbols across the set.
    pub combined: Vec<Complex64>,
    /// Per-user realized signal power over summed-noise power
    /// (infinite when the supplied noise sums to zero).
    pub realized_sinr: Vec<f64>,
}

/// Sends `x` across every realization of `winner` and sums the outputs.
///
/// The non-noise part is computed from the set's integer member sum, whose
/// off-diagonals are exactly zero, so interference cancellation is exact:
/// user `k` receives `m * h_kk * x_k` plus the summed noise draws.
/// `noise_draws` holds one length-K vector per realization.
pub fn simulate_transmission(
    family: &AlignmentFamily,
    winner: &AlignmentSet,
    x: &[Complex64],
    noise_draws: &[Vec<Complex64>],
    config: &RateConfig,
) -> Result<TransmissionOutcome> {
    let k = family.seed().k_users();
    if !family.sets().iter().any(|s| s == winner) {
        return Err(Error::InvalidInput(
            "winning set does not belong to the family".into(),
        ));
    }
    if x.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} symbols for {k} users",
            x.len()
        )));
    }
    if config.k_users() != k {
        return Err(Error::DimensionMismatch(format!(
            "rate config covers {} users, family has {k}",
            config.k_users()
        )));
    }
    if noise_draws.len() != winner.size() || noise_draws.iter().any(|z| z.len() != k) {
        return Err(Error::DimensionMismatch(format!(
            "need {} noise vectors of length {k}",
            winner.size()
        )));
    }
    for (user, symbol) in x.iter().enumerate() {
        if symbol.norm_sqr() > config.snr()[user] + 1e-12 {
            return Err(Error::PowerViolation(format!(
                "user {user}: |x|^2 = {} exceeds SNR {}",
                symbol.norm_sqr(),
                config.snr()[user]
            )));
        }
    }

    let sum = winner.sum_matrix();
    let mut combined = Vec::with_capacity(k);
    let mut realized_sinr = Vec::with_capacity(k);
    for user in 0..k {
        let mut acc = Complex64::new(0.0, 0.0);
        for (col, symbol) in x.iter().enumerate() {
            let gain = sum.value(user, col);
            if gain != Complex64::new(0.0, 0.0) {
                acc += gain * symbol;
            }
        }
        let noise: Complex64 = noise_draws.iter().map(|z| z[user]).sum();
        let signal_power = (sum.value(user, user) * x[user]).norm_sqr();
        realized_sinr.push(signal_power / noise.norm_sqr());
        combined.push(acc + noise);
    }
    Ok(TransmissionOutcome {
        combined,
        realized_sinr,
    })
}

/// Time-shared simulation: each trial first picks a scheme according to
/// the weights (skipped when one weight is exactly 1), then races it.
/// `beta_hat` reports the per-scheme selection frequencies; `delay_hat`
/// estimates the time-shared delay.  All schemes must share one alphabet
/// cardinality.
pub fn time_share_simulate(
    alpha: &TimeShareVector,
    trials: u64,
    master_seed: u64,
) -> Result<EmpiricalReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let entries = alpha.entries();
    let n = entries[0].0.alphabet_n();
    if entries.iter().any(|(t, _)| t.alphabet_n() != n) {
        return Err(Error::InvalidInput(
            "time-shared schemes must share one alphabet cardinality".into(),
        ));
    }
    let fixed_choice = entries.iter().position(|(_, w)| *w == 1.0);

    let acc = aggregate_trials(entries.len(), trials, |trial| {
        let mut rng = TrialRng::for_trial(master_seed, trial);
        let choice = match fixed_choice {
            Some(idx) => idx,
            None => {
                let u = rng.next_f64();
                let mut cumulative = 0.0;
                let mut picked = entries.len() - 1;
                for (idx, (_, w)) in entries.iter().enumerate() {
                    cumulative += w;
                    if u < cumulative {
                        picked = idx;
                        break;
                    }
                }
                picked
            }
        };
        let outcome = run_race(&entries[choice].0, &mut rng);
        // Reported per scheme chosen, not per winning set.
        RaceOutcome {
            winner_index: choice,
            delay_steps: outcome.delay_steps,
        }
    });
    Ok(acc.into_report(trials, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::demo_alignment_set;
    use crate::markov::MarkovModel;

    fn tuple(sizes: &[u32], n: u64) -> SchemeTuple {
        SchemeTuple::new(sizes.to_vec(), n).unwrap()
    }

    #[test]
    fn stream_outputs_are_deterministic_and_distinct() {
        let mut a = TrialRng::for_trial(7, 0);
        let mut b = TrialRng::for_trial(7, 0);
        let mut c = TrialRng::for_trial(7, 1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn bounded_draws_cover_range_uniformly_enough() {
        let mut rng = TrialRng::seeded(3);
        let mut counts = [0u32; 5];
        for _ in 0..50_000 {
            counts[rng.next_below(5) as usize] += 1;
        }
        for &c in &counts {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "counts {counts:?}");
        }
    }

    #[test]
    fn single_pair_race_always_finds_the_complement() {
        let t = tuple(&[2], 16);
        let mut total = 0u64;
        let trials = 20_000;
        for trial in 0..trials {
            let mut rng = TrialRng::for_trial(11, trial);
            let outcome = run_race(&t, &mut rng);
            assert_eq!(outcome.winner_index, 0);
            assert!(outcome.delay_steps >= 1);
            total += outcome.delay_steps;
        }
        // Geometric with mean N = 16; standard error is about 0.11.
        let mean = total as f64 / trials as f64;
        assert!((mean - 16.0).abs() < 0.5, "mean {mean}");
    }

    #[test]
    fn fixed_seed_replays_bit_exactly() {
        let t = tuple(&[2, 4], 16);
        let mut rng = TrialRng::for_trial(99, 5);
        let first = run_race(&t, &mut rng);
        let mut rng = TrialRng::for_trial(99, 5);
        let second = run_race(&t, &mut rng);
        assert_eq!(first, second);
    }

    #[test]
    fn winner_size_never_exceeds_steps_plus_one() {
        let t = tuple(&[2, 4, 6], 32);
        for trial in 0..5_000 {
            let mut rng = TrialRng::for_trial(17, trial);
            let outcome = run_race(&t, &mut rng);
            let m = t.sizes()[outcome.winner_index] as u64;
            assert!(outcome.delay_steps + 1 >= m);
        }
    }

    #[test]
    fn monte_carlo_is_reproducible_and_consistent() {
        let t = tuple(&[2, 4], 64);
        let a = monte_carlo(&t, 10_000, 42).unwrap();
        let b = monte_carlo(&t, 10_000, 42).unwrap();
        assert_eq!(a.completions, b.completions);
        assert_eq!(a.mean_steps, b.mean_steps);
        let total: u64 = a.completions.iter().sum();
        assert_eq!(total, 10_000);
        let freq_sum: f64 = a.beta_hat.iter().sum();
        assert!((freq_sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_trial_report_flags_std_errs() {
        let t = tuple(&[2, 4], 16);
        let report = monte_carlo(&t, 1, 5).unwrap();
        assert_eq!(report.trials, 1);
        assert!(report.std_err_delay.is_none());
        assert!(report.std_err_beta.iter().all(|e| e.is_none()));
        assert!(monte_carlo(&t, 0, 5).is_err());
    }

    #[test]
    fn empirical_beta_tracks_analytic_beta() {
        use num_traits::ToPrimitive;
        let t = tuple(&[2, 4], 64);
        let trials = 200_000;
        let report = monte_carlo(&t, trials, 2024).unwrap();
        let beta = MarkovModel::build(&t)
            .unwrap()
            .absorption_probabilities()
            .unwrap();
        for (hat, exact) in report.beta_hat.iter().zip(&beta) {
            let exact = exact.to_f64().unwrap();
            let se = (exact * (1.0 - exact) / trials as f64).sqrt();
            assert!((hat - exact).abs() < 4.0 * se, "{hat} vs {exact}");
        }
    }

    fn demo_family_and_alphabet(n: u64) -> (AlignmentFamily, ChannelAlphabet) {
        let seed = demo_alignment_set().members()[0].clone();
        let family = AlignmentFamily::generate(&seed, &[2, 4]).unwrap();
        let alphabet = ChannelAlphabet::enumerated_for_family(&family, n).unwrap();
        (family, alphabet)
    }

    #[test]
    fn enumerated_backend_matches_abstract_backend_draw_for_draw() {
        let (family, alphabet) = demo_family_and_alphabet(16);
        let t = tuple(&[2, 4], 16);
        let abstract_report = monte_carlo(&t, 5_000, 77).unwrap();
        let enumerated_report = monte_carlo_enumerated(&family, &alphabet, 5_000, 77).unwrap();
        // Progress members occupy the same leading indices in both
        // backends, so identical streams give identical outcomes.
        assert_eq!(abstract_report.completions, enumerated_report.completions);
        assert_eq!(abstract_report.mean_steps, enumerated_report.mean_steps);
    }

    #[test]
    fn enumerated_backend_statistically_matches_under_fresh_seeds() {
        let (family, alphabet) = demo_family_and_alphabet(16);
        let t = tuple(&[2, 4], 16);
        let trials = 100_000;
        let a = monte_carlo(&t, trials, 1).unwrap();
        let b = monte_carlo_enumerated(&family, &alphabet, trials, 2).unwrap();
        for i in 0..2 {
            let se_a = a.std_err_beta[i].unwrap();
            let se_b = b.std_err_beta[i].unwrap();
            let combined = (se_a * se_a + se_b * se_b).sqrt();
            assert!(
                (a.beta_hat[i] - b.beta_hat[i]).abs() <= 4.0 * combined,
                "set {i}: {} vs {}",
                a.beta_hat[i],
                b.beta_hat[i]
            );
        }
    }

    #[test]
    fn transmission_amplifies_signal_and_cancels_interference() {
        let seed = demo_alignment_set().members()[0].clone();
        let family = AlignmentFamily::generate(&seed, &[2, 4]).unwrap();
        let winner = family.sets()[1].clone(); // the size-4 set
        let config = RateConfig::uniform(3, 2.0).unwrap();
        let x = vec![
            Complex64::new(0.3, 0.7),
            Complex64::new(-1.1, 0.2),
            Complex64::new(0.0, -0.9),
        ];
        let zero_noise = vec![vec![Complex64::new(0.0, 0.0); 3]; 4];
        let out = simulate_transmission(&family, &winner, &x, &zero_noise, &config).unwrap();
        for (k, symbol) in x.iter().enumerate() {
            assert_eq!(out.combined[k], Complex64::new(4.0, 0.0) * symbol);
            assert!(out.realized_sinr[k].is_infinite());
        }

        // Zero input passes only the summed noise through.
        let noise: Vec<Vec<Complex64>> = (0..4)
            .map(|i| {
                (0..3)
                    .map(|j| Complex64::new(i as f64 * 0.1, j as f64 * 0.2))
                    .collect()
            })
            .collect();
        let zeros = vec![Complex64::new(0.0, 0.0); 3];
        let out = simulate_transmission(&family, &winner, &zeros, &noise, &config).unwrap();
        for k in 0..3 {
            let expected: Complex64 = noise.iter().map(|z| z[k]).sum();
            assert_eq!(out.combined[k], expected);
        }

        // The complement pair doubles each diagonal entry.
        let pair = family.sets()[0].clone();
        let pair_noise = vec![vec![Complex64::new(0.0, 0.0); 3]; 2];
        let out = simulate_transmission(&family, &pair, &x, &pair_noise, &config).unwrap();
        for (k, symbol) in x.iter().enumerate() {
            let h_kk = seed.value(k, k);
            assert_eq!(out.combined[k], Complex64::new(2.0, 0.0) * h_kk * symbol);
        }
    }

    #[test]
    fn transmission_rejects_power_violation() {
        let seed = demo_alignment_set().members()[0].clone();
        let family = AlignmentFamily::generate(&seed, &[2]).unwrap();
        let winner = family.sets()[0].clone();
        let config = RateConfig::uniform(3, 1.0).unwrap();
        let x = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let noise = vec![vec![Complex64::new(0.0, 0.0); 3]; 2];
        let err = simulate_transmission(&family, &winner, &x, &noise, &config).unwrap_err();
        assert!(matches!(err, Error::PowerViolation(_)));
    }

    #[test]
    fn time_share_endpoints() {
        let base = tuple(&[2], 64);
        let first = tuple(&[2, 4], 64);
        // Weight 1 on the race skips the selection draw, so the report
        // reduces to plain monte_carlo on that scheme.
        let alpha = TimeShareVector::two_scheme(base.clone(), first.clone(), 1.0).unwrap();
        let shared = time_share_simulate(&alpha, 20_000, 12).unwrap();
        let direct = monte_carlo(&first, 20_000, 12).unwrap();
        assert_eq!(shared.mean_steps, direct.mean_steps);
        assert_eq!(shared.completions, vec![0, 20_000]);

        let alpha = TimeShareVector::two_scheme(base, first, 0.0).unwrap();
        let report = time_share_simulate(&alpha, 20_000, 12).unwrap();
        assert!((report.delay_hat - 1.0).abs() < 0.05);
        assert_eq!(report.completions, vec![20_000, 0]);
    }

    #[test]
    fn time_share_half_weight_delay_tracks_the_blend() {
        // Equal weights over the pair scheme and the (2,4) race: the
        // time-shared normalized delay is (1 + 3/4) / 2 = 0.875.
        let base = tuple(&[2], 64);
        let first = tuple(&[2, 4], 64);
        let alpha = TimeShareVector::two_scheme(base, first, 0.5).unwrap();
        let trials = 200_000;
        let report = time_share_simulate(&alpha, trials, 31).unwrap();
        let se = report.std_err_delay.unwrap();
        assert!(
            (report.delay_hat - 0.875).abs() <= 4.0 * se,
            "delay_hat {} (se {se})",
            report.delay_hat
        );
        // Selection frequencies track the weights.
        for hat in &report.beta_hat {
            assert!((hat - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn time_share_requires_matching_alphabets() {
        let a = tuple(&[2], 64);
        let b = tuple(&[2, 4], 32);
        let alpha = TimeShareVector::two_scheme(a, b, 0.5).unwrap();
        assert!(time_share_simulate(&alpha, 10, 1).is_err());
    }

    #[test]
    fn report_round_trips_through_json() {
        let t = tuple(&[2, 4], 16);
        let report = monte_carlo(&t, 100, 9).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let parsed: EmpiricalReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.completions, report.completions);
        assert_eq!(parsed.delay_hat, report.delay_hat);
    }
}
