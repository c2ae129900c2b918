//! The absorbing Markov chain of the first-to-complete race.
//!
//! For a tuple of alignment-set sizes `I = (m_1, ..., m_|I|)` over an
//! alphabet of `N` equiprobable realizations, the chain tracks how many
//! non-seed members of each set have been realized.  Coordinate `i` of the
//! state vector moves up with probability `(m_i - 1 - s_i) / N`; reaching
//! `m_i - 1` absorbs into the state "set i completed".  All probabilities
//! have denominator `N`, so the chain is stored as integer numerators and
//! every derived quantity (absorption probabilities, hitting time) is an
//! exact rational.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve, SparseIntMatrix};

/// Largest supported transient state count (`prod (m_i - 1)`).
const MAX_TRANSIENT_STATES: u64 = 1_000_000;

/// A first-to-complete scheme: the tuple of alignment-set sizes plus the
/// alphabet cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchemeTuple {
    sizes: Vec<u32>,
    alphabet_n: u64,
}

impl SchemeTuple {
    pub fn new(sizes: Vec<u32>, alphabet_n: u64) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidTuple("tuple must be nonempty".into()));
        }
        for &m in &sizes {
            if m < 2 || !m.is_multiple_of(2) {
                return Err(Error::InvalidTuple(format!(
                    "sizes must be even and >= 2, got {m}"
                )));
            }
        }
        let min_n = Self::min_alphabet(&sizes);
        if alphabet_n < min_n {
            return Err(Error::InvalidTuple(format!(
                "alphabet cardinality {alphabet_n} below the validity bound {min_n}"
            )));
        }
        Ok(Self { sizes, alphabet_n })
    }

    /// Validity bound `1 + sum(m_i - 1)`: the seed plus one slot per
    /// distinct non-seed member.
    pub fn min_alphabet(sizes: &[u32]) -> u64 {
        1 + sizes.iter().map(|&m| (m - 1) as u64).sum::<u64>()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn alphabet_n(&self) -> u64 {
        self.alphabet_n
    }

    pub fn with_alphabet(&self, n: u64) -> Result<Self> {
        Self::new(self.sizes.clone(), n)
    }
}

impl fmt::Display for SchemeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Absorption probabilities and normalized hitting time for one scheme,
/// exact, with floating views derived at the boundary.
#[derive(Clone, Debug)]
pub struct AbsorptionResult {
    /// Probability of each set completing first, in tuple order.
    pub beta: Vec<BigRational>,
    /// `beta` grouped by set size.
    pub per_size_beta: BTreeMap<u32, Vec<BigRational>>,
    /// Mean steps to any completion divided by the alphabet cardinality.
    pub hitting_time_normalized: BigRational,
}

impl AbsorptionResult {
    pub fn beta_f64(&self) -> Vec<f64> {
        self.beta.iter().map(|b| b.to_f64().unwrap()).collect()
    }

    pub fn delay_f64(&self) -> f64 {
        self.hitting_time_normalized.to_f64().unwrap()
    }
}

/// The chain itself: transient states are the mixed-radix product of the
/// per-set progress counts, absorbing states sit one per tuple entry.
/// Transition probabilities are stored as integer numerators over the
/// alphabet cardinality.
#[derive(Clone, Debug)]
pub struct MarkovModel {
    sizes: Vec<u32>,
    n: u64,
    radices: Vec<u64>,
    strides: Vec<u64>,
    transient_count: usize,
    /// Row `i`: `(transient column, numerator)`, sorted by column.
    q_rows: Vec<Vec<(usize, u64)>>,
    /// Row `i`: `(absorbing column, numerator)`, sorted by column.
    r_rows: Vec<Vec<(usize, u64)>>,
}

impl MarkovModel {
    /// Builds the chain for `tuple`.  The initial state (all-zero progress)
    /// has index 0 under the mixed-radix encoding, with the first tuple
    /// coordinate as the fastest digit.
    pub fn build(tuple: &SchemeTuple) -> Result<Self> {
        let sizes = tuple.sizes().to_vec();
        let n = tuple.alphabet_n();
        if n < SchemeTuple::min_alphabet(&sizes) {
            return Err(Error::InvalidTuple(format!(
                "alphabet cardinality {n} below the validity bound {}",
                SchemeTuple::min_alphabet(&sizes)
            )));
        }
        let radices: Vec<u64> = sizes.iter().map(|&m| (m - 1) as u64).collect();
        let mut strides = Vec::with_capacity(radices.len());
        let mut acc: u64 = 1;
        for &r in &radices {
            strides.push(acc);
            acc = acc
                .checked_mul(r)
                .ok_or_else(|| Error::InvalidInput("transient state space overflows".into()))?;
            if acc > MAX_TRANSIENT_STATES {
                return Err(Error::InvalidInput(format!(
                    "transient state space exceeds {MAX_TRANSIENT_STATES} states"
                )));
            }
        }
        let transient_count = acc as usize;

        let mut q_rows = Vec::with_capacity(transient_count);
        let mut r_rows = Vec::with_capacity(transient_count);
        let mut digits = vec![0u64; radices.len()];
        for idx in 0..transient_count {
            let mut q = Vec::new();
            let mut r = Vec::new();
            let mut leaving: u64 = 0;
            for (i, &s) in digits.iter().enumerate() {
                let remaining = radices[i] - s;
                leaving += remaining;
                if s + 1 < radices[i] {
                    q.push((idx + strides[i] as usize, remaining));
                } else {
                    r.push((i, remaining));
                }
            }
            // Self-loop: the seed itself, inert alphabet entries, and
            // repeats of already-realized members.
            q.insert(0, (idx, n - leaving));
            q_rows.push(q);
            r_rows.push(r);

            // Next mixed-radix state.
            for (d, &radix) in digits.iter_mut().zip(&radices) {
                *d += 1;
                if *d < radix {
                    break;
                }
                *d = 0;
            }
        }

        Ok(Self {
            sizes,
            n,
            radices,
            strides,
            transient_count,
            q_rows,
            r_rows,
        })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn alphabet_n(&self) -> u64 {
        self.n
    }

    pub fn transient_count(&self) -> usize {
        self.transient_count
    }

    pub fn absorbing_count(&self) -> usize {
        self.sizes.len()
    }

    /// Index of the all-zero initial state.
    pub fn initial_state(&self) -> usize {
        0
    }

    /// Progress vector of transient state `idx`.
    pub fn state_vector(&self, idx: usize) -> Vec<u64> {
        self.radices
            .iter()
            .zip(&self.strides)
            .map(|(&radix, &stride)| (idx as u64 / stride) % radix)
            .collect()
    }

    /// Transient-to-transient transition probability.
    pub fn q(&self, from: usize, to: usize) -> BigRational {
        self.lookup(&self.q_rows, from, to)
    }

    /// Transient-to-absorbing transition probability.
    pub fn r(&self, from: usize, to: usize) -> BigRational {
        self.lookup(&self.r_rows, from, to)
    }

    fn lookup(&self, rows: &[Vec<(usize, u64)>], from: usize, to: usize) -> BigRational {
        rows[from]
            .iter()
            .find(|(c, _)| *c == to)
            .map(|(_, num)| BigRational::new(BigInt::from(*num), BigInt::from(self.n)))
            .unwrap_or_else(BigRational::zero)
    }

    /// Sum of a transient row across both blocks, exact.
    pub fn row_sum(&self, from: usize) -> BigRational {
        let total: u64 = self.q_rows[from]
            .iter()
            .map(|(_, v)| *v)
            .chain(self.r_rows[from].iter().map(|(_, v)| *v))
            .sum();
        BigRational::new(BigInt::from(total), BigInt::from(self.n))
    }

    /// Probability of each alignment set completing first, i.e. of the
    /// chain absorbing into each absorbing state from the initial state.
    ///
    /// Computed by one exact solve of the transposed system
    /// `(I - Q)^T y = e_0` followed by `beta = R^T y`; no inverse is formed.
    pub fn absorption_probabilities(&self) -> Result<Vec<BigRational>> {
        let n_big = BigInt::from(self.n);
        let mut a = SparseIntMatrix::new(self.transient_count);
        for (i, row) in self.q_rows.iter().enumerate() {
            for &(j, num) in row {
                // Entry (j, i) of N * (I - Q)^T.
                if i == j {
                    a.add(j, i, &n_big - BigInt::from(num));
                } else {
                    a.add(j, i, -BigInt::from(num));
                }
            }
        }
        let mut rhs = vec![BigInt::zero(); self.transient_count];
        rhs[self.initial_state()] = n_big.clone();
        let y = solve(&a, &rhs)?;

        let mut beta = vec![BigRational::zero(); self.absorbing_count()];
        for (i, row) in self.r_rows.iter().enumerate() {
            for &(j, num) in row {
                beta[j] += &y[i] * BigRational::from_integer(BigInt::from(num));
            }
        }
        let n_rat = BigRational::from_integer(n_big);
        for b in &mut beta {
            *b /= &n_rat;
        }
        Ok(beta)
    }

    /// Mean number of steps until any set completes, divided by the
    /// alphabet cardinality.  The normalized value does not depend on the
    /// cardinality.
    ///
    /// Computed by an exact solve of `(I - Q) d = 1`, a different linear
    /// system (and substitution direction) than the absorption solve, so
    /// agreement between the two is a genuine cross-check.
    pub fn hitting_time_normalized(&self) -> Result<BigRational> {
        let n_big = BigInt::from(self.n);
        let mut a = SparseIntMatrix::new(self.transient_count);
        for (i, row) in self.q_rows.iter().enumerate() {
            for &(j, num) in row {
                if i == j {
                    a.add(i, j, &n_big - BigInt::from(num));
                } else {
                    a.add(i, j, -BigInt::from(num));
                }
            }
        }
        let rhs = vec![n_big.clone(); self.transient_count];
        let d = solve(&a, &rhs)?;
        Ok(d[self.initial_state()].clone() / BigRational::from_integer(n_big))
    }

    /// Absorption probabilities, their per-size grouping, and the
    /// normalized hitting time in one record.
    pub fn analyze(&self) -> Result<AbsorptionResult> {
        let beta = self.absorption_probabilities()?;
        let mut per_size_beta: BTreeMap<u32, Vec<BigRational>> = BTreeMap::new();
        for (i, b) in beta.iter().enumerate() {
            per_size_beta
                .entry(self.sizes[i])
                .or_default()
                .push(b.clone());
        }
        Ok(AbsorptionResult {
            beta,
            per_size_beta,
            hitting_time_normalized: self.hitting_time_normalized()?,
        })
    }

    /// Debug serialization with dense `Q` and `R` blocks and rationals as
    /// `"p/q"` strings.  Intended for small chains.
    pub fn to_debug_json(&self) -> serde_json::Value {
        let fmt_ratio = |num: u64| format!("{}/{}", num, self.n);
        let dense = |rows: &[Vec<(usize, u64)>], cols: usize| -> Vec<Vec<String>> {
            rows.iter()
                .map(|row| {
                    let mut out = vec![format!("0/{}", self.n); cols];
                    for &(c, num) in row {
                        out[c] = fmt_ratio(num);
                    }
                    out
                })
                .collect()
        };
        serde_json::json!({
            "sizes": self.sizes,
            "n": self.n,
            "q": dense(&self.q_rows, self.transient_count),
            "r": dense(&self.r_rows, self.absorbing_count()),
        })
    }
}

/// Exact check that the normalized hitting time equals the absorption
/// probability of every size-2 set in the tuple.
///
/// Errors with [`Error::NotApplicable`] when the tuple has no size-2 entry.
pub fn verify_theorem_size2(tuple: &SchemeTuple) -> Result<bool> {
    if !tuple.sizes().contains(&2) {
        return Err(Error::NotApplicable(
            "tuple does not contain a size-2 alignment set".into(),
        ));
    }
    let model = MarkovModel::build(tuple)?;
    let beta = model.absorption_probabilities()?;
    let delay = model.hitting_time_normalized()?;
    Ok(tuple
        .sizes()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m == 2)
        .all(|(i, _)| beta[i] == delay))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tuple(sizes: &[u32], n: u64) -> SchemeTuple {
        SchemeTuple::new(sizes.to_vec(), n).unwrap()
    }

    /// Independent oracle: iterate the distribution of the chain forward
    /// in f64 until the remaining transient mass is negligible.  Returns
    /// (absorption probabilities, mean steps).
    fn forward_iteration_oracle(model: &MarkovModel) -> (Vec<f64>, f64) {
        let n = model.alphabet_n() as f64;
        let states = model.transient_count();
        let mut p = vec![0.0f64; states];
        p[model.initial_state()] = 1.0;
        let mut absorbed = vec![0.0f64; model.absorbing_count()];
        let mut mean = 0.0f64;
        for _ in 0..2_000_000 {
            let mass: f64 = p.iter().sum();
            if mass < 1e-14 {
                break;
            }
            // E[T] = sum over t >= 0 of P(T > t).
            mean += mass;
            let mut next = vec![0.0f64; states];
            for (i, &pi) in p.iter().enumerate() {
                if pi == 0.0 {
                    continue;
                }
                for &(j, num) in &model.q_rows[i] {
                    next[j] += pi * num as f64 / n;
                }
                for &(j, num) in &model.r_rows[i] {
                    absorbed[j] += pi * num as f64 / n;
                }
            }
            p = next;
        }
        (absorbed, mean)
    }

    #[test]
    fn chain_2_4_matches_success_runs_structure() {
        let n = 64;
        let model = MarkovModel::build(&tuple(&[2, 4], n)).unwrap();
        assert_eq!(model.transient_count(), 3);
        assert_eq!(model.absorbing_count(), 2);
        let n = n as i64;
        // Q = [[1-4/N, 3/N, 0], [0, 1-3/N, 2/N], [0, 0, 1-2/N]]
        assert_eq!(model.q(0, 0), ratio(n - 4, n));
        assert_eq!(model.q(0, 1), ratio(3, n));
        assert_eq!(model.q(0, 2), ratio(0, 1));
        assert_eq!(model.q(1, 1), ratio(n - 3, n));
        assert_eq!(model.q(1, 2), ratio(2, n));
        assert_eq!(model.q(2, 2), ratio(n - 2, n));
        // Complement column all 1/N; completion-of-4 column (0, 0, 1/N).
        for row in 0..3 {
            assert_eq!(model.r(row, 0), ratio(1, n));
        }
        assert_eq!(model.r(0, 1), ratio(0, 1));
        assert_eq!(model.r(1, 1), ratio(0, 1));
        assert_eq!(model.r(2, 1), ratio(1, n));
    }

    #[test]
    fn single_pair_tuple_has_one_absorbing_route() {
        let model = MarkovModel::build(&tuple(&[2], 16)).unwrap();
        assert_eq!(model.transient_count(), 1);
        let beta = model.absorption_probabilities().unwrap();
        assert_eq!(beta, vec![ratio(1, 1)]);
        assert_eq!(model.hitting_time_normalized().unwrap(), ratio(1, 1));
    }

    #[test]
    fn minimum_alphabet_rows_sum_to_one() {
        // (4,4) admits N = 7 at the smallest.
        assert_eq!(SchemeTuple::min_alphabet(&[4, 4]), 7);
        let model = MarkovModel::build(&tuple(&[4, 4], 7)).unwrap();
        assert_eq!(model.transient_count(), 9);
        for i in 0..model.transient_count() {
            assert_eq!(model.row_sum(i), ratio(1, 1));
        }
    }

    #[test]
    fn invalid_alphabet_rejected() {
        let err = SchemeTuple::new(vec![4, 4], 6).unwrap_err();
        assert!(matches!(err, Error::InvalidTuple(_)));
        let err = SchemeTuple::new(vec![3], 10).unwrap_err();
        assert!(matches!(err, Error::InvalidTuple(_)));
        let err = SchemeTuple::new(vec![], 10).unwrap_err();
        assert!(matches!(err, Error::InvalidTuple(_)));
    }

    #[test]
    fn absorption_values_for_reference_tuples() {
        let beta = MarkovModel::build(&tuple(&[2, 4], 64))
            .unwrap()
            .absorption_probabilities()
            .unwrap();
        assert_eq!(beta, vec![ratio(3, 4), ratio(1, 4)]);

        let beta = MarkovModel::build(&tuple(&[2, 4, 4], 64))
            .unwrap()
            .absorption_probabilities()
            .unwrap();
        assert_eq!(beta, vec![ratio(9, 14), ratio(5, 28), ratio(5, 28)]);

        let beta = MarkovModel::build(&tuple(&[4, 4, 4], 64))
            .unwrap()
            .absorption_probabilities()
            .unwrap();
        assert_eq!(beta, vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn analysis_groups_beta_by_size() {
        let analysis = MarkovModel::build(&tuple(&[2, 4, 4], 64))
            .unwrap()
            .analyze()
            .unwrap();
        assert_eq!(analysis.per_size_beta[&2], vec![ratio(9, 14)]);
        assert_eq!(analysis.per_size_beta[&4], vec![ratio(5, 28), ratio(5, 28)]);
        assert_eq!(analysis.hitting_time_normalized, ratio(9, 14));
        let total: f64 = analysis.beta_f64().iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hitting_times_for_reference_tuples() {
        let d = MarkovModel::build(&tuple(&[2, 4], 64))
            .unwrap()
            .hitting_time_normalized()
            .unwrap();
        assert_eq!(d, ratio(3, 4));

        let d = MarkovModel::build(&tuple(&[2], 64))
            .unwrap()
            .hitting_time_normalized()
            .unwrap();
        assert_eq!(d, ratio(1, 1));

        let d = MarkovModel::build(&tuple(&[4, 6], 64))
            .unwrap()
            .hitting_time_normalized()
            .unwrap();
        let f = d.to_f64().unwrap();
        assert!((f - 1.3988).abs() < 5e-5, "got {f}");
    }

    #[test]
    fn size2_theorem_examples() {
        assert!(verify_theorem_size2(&tuple(&[2, 4], 64)).unwrap());
        assert!(verify_theorem_size2(&tuple(&[2, 6], 64)).unwrap());
        assert!(verify_theorem_size2(&tuple(&[2, 4, 6], 64)).unwrap());
        let err = verify_theorem_size2(&tuple(&[4, 4], 64)).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn forward_iteration_agrees_with_exact_solve() {
        for (sizes, n) in [
            (&[2u32, 4][..], 8u64),
            (&[4, 4][..], 9),
            (&[2, 4, 4][..], 16),
            (&[6][..], 12),
        ] {
            let model = MarkovModel::build(&tuple(sizes, n)).unwrap();
            let beta = model.absorption_probabilities().unwrap();
            let delay = model.hitting_time_normalized().unwrap();
            let (beta_dp, mean_dp) = forward_iteration_oracle(&model);
            for (exact, dp) in beta.iter().zip(&beta_dp) {
                assert!((exact.to_f64().unwrap() - dp).abs() < 1e-9);
            }
            let exact_steps = delay.to_f64().unwrap() * n as f64;
            assert!(
                (exact_steps - mean_dp).abs() < 1e-8,
                "sizes {sizes:?}: {exact_steps} vs {mean_dp}"
            );
        }
    }

    #[test]
    fn debug_json_shape() {
        let model = MarkovModel::build(&tuple(&[2, 4], 64)).unwrap();
        let json = model.to_debug_json();
        assert_eq!(json["n"], 64);
        assert_eq!(json["sizes"], serde_json::json!([2, 4]));
        assert_eq!(json["q"][0][0], "60/64");
        assert_eq!(json["q"][0][2], "0/64");
        assert_eq!(json["r"][2][1], "1/64");
    }

    fn arb_tuple() -> impl Strategy<Value = SchemeTuple> {
        (
            proptest::collection::vec(prop_oneof![Just(2u32), Just(4), Just(6), Just(8)], 1..=3),
            0u64..64,
        )
            .prop_map(|(sizes, extra)| {
                let n = SchemeTuple::min_alphabet(&sizes) + extra;
                SchemeTuple::new(sizes, n).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rows_sum_to_one(t in arb_tuple()) {
            let model = MarkovModel::build(&t).unwrap();
            for i in 0..model.transient_count() {
                prop_assert_eq!(model.row_sum(i), ratio(1, 1));
            }
        }

        #[test]
        fn absorption_probabilities_sum_to_one(t in arb_tuple()) {
            let beta = MarkovModel::build(&t).unwrap().absorption_probabilities().unwrap();
            let total: BigRational = beta.iter().cloned().sum();
            prop_assert_eq!(total, BigRational::one());
        }

        #[test]
        fn normalized_hitting_time_independent_of_alphabet(t in arb_tuple()) {
            let d1 = MarkovModel::build(&t).unwrap().hitting_time_normalized().unwrap();
            let doubled = t.with_alphabet(t.alphabet_n() * 2).unwrap();
            let d2 = MarkovModel::build(&doubled).unwrap().hitting_time_normalized().unwrap();
            prop_assert_eq!(d1, d2);
        }

        #[test]
        fn permutation_invariance(t in arb_tuple(), rotate in 0usize..3) {
            let mut sizes = t.sizes().to_vec();
            let r = rotate % sizes.len();
            sizes.rotate_left(r);
            let permuted = SchemeTuple::new(sizes, t.alphabet_n()).unwrap();

            let base = MarkovModel::build(&t).unwrap();
            let perm = MarkovModel::build(&permuted).unwrap();
            let mut beta = base.absorption_probabilities().unwrap();
            beta.rotate_left(r);
            prop_assert_eq!(beta, perm.absorption_probabilities().unwrap());
            prop_assert_eq!(
                base.hitting_time_normalized().unwrap(),
                perm.hitting_time_normalized().unwrap()
            );
        }

        #[test]
        fn size2_theorem_holds_for_random_tuples(
            others in proptest::collection::vec(prop_oneof![Just(4u32), Just(6), Just(8)], 0..=2),
            position in 0usize..3,
            extra in 0u64..32,
        ) {
            let mut sizes = others;
            let pos = position.min(sizes.len());
            sizes.insert(pos, 2);
            let n = SchemeTuple::min_alphabet(&sizes) + extra;
            let t = SchemeTuple::new(sizes, n).unwrap();
            prop_assert!(verify_theorem_size2(&t).unwrap());
        }

        #[test]
        fn appending_a_set_strictly_decreases_delay(t in arb_tuple(), m in prop_oneof![Just(2u32), Just(4), Just(6)]) {
            let base = MarkovModel::build(&t).unwrap().hitting_time_normalized().unwrap();
            let mut sizes = t.sizes().to_vec();
            sizes.push(m);
            let n = SchemeTuple::min_alphabet(&sizes).max(t.alphabet_n());
            let extended = SchemeTuple::new(sizes, n).unwrap();
            let longer = MarkovModel::build(&extended).unwrap().hitting_time_normalized().unwrap();
            prop_assert!(longer < base);
        }
    }
}
