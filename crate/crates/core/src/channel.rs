//! Quantized channel matrices, complements, alignment sets, and disjoint
//! families of alignment sets sharing a seed realization.
//!
//! Channel entries live on the Gaussian-integer lattice scaled by the
//! quantization step `gamma` and are stored as exact integer coordinates.
//! All structural checks (equal diagonals, sign-balanced off-diagonals,
//! cancellation of the member sum) are exact integer comparisons; floating
//! point enters only when a matrix is evaluated as complex values.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gaussian-integer lattice coordinate; the channel value it encodes is
/// `(re + j*im) * gamma` for the owning matrix's `gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub re: i64,
    pub im: i64,
}

impl LatticePoint {
    pub fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn negated(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// Squared magnitude in lattice units (exact).
    pub fn norm_sq(self) -> i128 {
        self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128
    }

    pub fn value(self, gamma: f64) -> Complex64 {
        Complex64::new(self.re as f64 * gamma, self.im as f64 * gamma)
    }
}

/// Rounds `h` to the closest point of the lattice `(Z + jZ) * gamma`.
///
/// Exact half-step ties break toward the smaller coordinate, so the map is
/// deterministic and reproducible across platforms.
///
/// Panics if `gamma <= 0`; the operation is total otherwise.
pub fn quantize(h: Complex64, gamma: f64) -> Complex64 {
    quantize_coord(h, gamma).value(gamma)
}

/// Integer-coordinate form of [`quantize`].
pub fn quantize_coord(h: Complex64, gamma: f64) -> LatticePoint {
    assert!(gamma > 0.0, "quantization step must be positive");
    LatticePoint::new(round_half_down(h.re / gamma), round_half_down(h.im / gamma))
}

/// Nearest integer, ties toward the smaller value.
fn round_half_down(x: f64) -> i64 {
    (x - 0.5).ceil() as i64
}

/// A K x K channel matrix with entries on the `gamma`-spaced lattice and
/// magnitudes capped by `tau * sqrt(2) + gamma`.
///
/// Equality and hashing compare the user count, the quantization step, and
/// the exact lattice coordinates; `tau` is bookkeeping for the magnitude
/// cap and does not participate.
#[derive(Clone, Debug)]
pub struct QuantizedMatrix {
    k: usize,
    gamma: f64,
    tau: f64,
    entries: Vec<LatticePoint>,
}

impl PartialEq for QuantizedMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.gamma.to_bits() == other.gamma.to_bits()
            && self.entries == other.entries
    }
}

impl Eq for QuantizedMatrix {}

impl std::hash::Hash for QuantizedMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.gamma.to_bits().hash(state);
        self.entries.hash(state);
    }
}

impl QuantizedMatrix {
    /// Builds a matrix from lattice coordinates in row-major order.
    pub fn new(k: usize, gamma: f64, tau: f64, entries: Vec<LatticePoint>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 users, got {k}"
            )));
        }
        if !gamma.is_finite() || gamma <= 0.0 || !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidInput("gamma and tau must be positive".into()));
        }
        if entries.len() != k * k {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for k = {k}, got {}",
                k * k,
                entries.len()
            )));
        }
        let cap = tau * std::f64::consts::SQRT_2 + gamma;
        for e in &entries {
            let mag = (e.norm_sq() as f64).sqrt() * gamma;
            if mag > cap + 1e-9 {
                return Err(Error::InvalidInput(format!(
                    "entry magnitude {mag} exceeds cap {cap}"
                )));
            }
        }
        Ok(Self {
            k,
            gamma,
            tau,
            entries,
        })
    }

    /// Quantizes complex entries (row-major) onto the lattice and builds
    /// the matrix.
    pub fn from_complex(k: usize, gamma: f64, tau: f64, values: &[Complex64]) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidInput("gamma must be positive".into()));
        }
        let entries = values.iter().map(|&v| quantize_coord(v, gamma)).collect();
        Self::new(k, gamma, tau, entries)
    }

    /// Internal constructor for derived matrices (member sums) whose
    /// entries legitimately exceed the per-realization magnitude cap.
    fn from_parts_unchecked(k: usize, gamma: f64, tau: f64, entries: Vec<LatticePoint>) -> Self {
        Self {
            k,
            gamma,
            tau,
            entries,
        }
    }

    pub fn k_users(&self) -> usize {
        self.k
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn coord(&self, row: usize, col: usize) -> LatticePoint {
        self.entries[row * self.k + col]
    }

    /// Complex value of entry `(row, col)`.
    pub fn value(&self, row: usize, col: usize) -> Complex64 {
        self.coord(row, col).value(self.gamma)
    }

    /// The complementary matrix: same diagonal, negated off-diagonals.
    /// `{H, H.complement()}` is the unique size-2 alignment set around `H`.
    pub fn complement(&self) -> Self {
        let mut entries = self.entries.clone();
        for r in 0..self.k {
            for c in 0..self.k {
                if r != c {
                    entries[r * self.k + c] = entries[r * self.k + c].negated();
                }
            }
        }
        Self::from_parts_unchecked(self.k, self.gamma, self.tau, entries)
    }

    fn off_diagonals_nonzero(&self) -> bool {
        (0..self.k).all(|r| (0..self.k).all(|c| r == c || !self.coord(r, c).is_zero()))
    }

    /// JSON literal form: `{"k": K, "gamma": g, "entries": [[[re, im], ...], ...]}`
    /// with entries as integer lattice coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixRepr::from(self)).expect("matrix serialization")
    }

    /// Parses the JSON literal form.  The magnitude cap `tau` is not part
    /// of the wire format and is inferred as the largest entry magnitude.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: MatrixRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad matrix literal: {e}")))?;
        repr.try_into()
    }
}

impl fmt::Display for QuantizedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.k {
            for c in 0..self.k {
                let e = self.coord(r, c);
                write!(f, "{}({},{})", if c == 0 { "" } else { " " }, e.re, e.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    k: usize,
    gamma: f64,
    entries: Vec<Vec<(i64, i64)>>,
}

impl From<&QuantizedMatrix> for MatrixRepr {
    fn from(m: &QuantizedMatrix) -> Self {
        let entries = (0..m.k)
            .map(|r| {
                (0..m.k)
                    .map(|c| (m.coord(r, c).re, m.coord(r, c).im))
                    .collect()
            })
            .collect();
        Self {
            k: m.k,
            gamma: m.gamma,
            entries,
        }
    }
}

impl TryFrom<MatrixRepr> for QuantizedMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        let mut entries = Vec::with_capacity(repr.k * repr.k);
        if repr.entries.len() != repr.k {
            return Err(Error::InvalidInput("row count does not match k".into()));
        }
        for row in &repr.entries {
            if row.len() != repr.k {
                return Err(Error::InvalidInput("column count does not match k".into()));
            }
            for &(re, im) in row {
                entries.push(LatticePoint::new(re, im));
            }
        }
        let max_mag = entries
            .iter()
            .map(|e| (e.norm_sq() as f64).sqrt() * repr.gamma)
            .fold(0.0_f64, f64::max);
        let tau = if max_mag > 0.0 { max_mag } else { repr.gamma };
        QuantizedMatrix::new(repr.k, repr.gamma, tau, entries)
    }
}

/// Checks whether `ms` (with `ms[0]` as the reference matrix) is an
/// alignment set: even cardinality, distinct members, identical diagonals,
/// and per off-diagonal position equal magnitudes with exactly
/// `m/2 - 1` members matching the reference entry and `m/2` matching its
/// negation.  All comparisons are exact.
pub fn is_alignment_set(ms: &[QuantizedMatrix]) -> bool {
    let m = ms.len();
    if m < 2 || !m.is_multiple_of(2) {
        return false;
    }
    let seed = &ms[0];
    let k = seed.k_users();
    if ms
        .iter()
        .any(|x| x.k_users() != k || x.gamma().to_bits() != seed.gamma().to_bits())
    {
        return false;
    }
    let distinct: HashSet<&QuantizedMatrix> = ms.iter().collect();
    if distinct.len() != m {
        return false;
    }
    for r in 0..k {
        if ms.iter().any(|x| x.coord(r, r) != seed.coord(r, r)) {
            return false;
        }
    }
    for r in 0..k {
        for c in 0..k {
            if r == c {
                continue;
            }
            let reference = seed.coord(r, c);
            let mut same = 0;
            let mut negated = 0;
            for x in &ms[1..] {
                let e = x.coord(r, c);
                if e.norm_sq() != reference.norm_sq() {
                    return false;
                }
                if e == reference {
                    same += 1;
                } else if e == reference.negated() {
                    negated += 1;
                } else {
                    return false;
                }
            }
            if same != m / 2 - 1 || negated != m / 2 {
                return false;
            }
        }
    }
    true
}

/// An even-sized set of channel matrices whose sum amplifies the diagonal
/// and cancels every off-diagonal entry.  `members()[0]` is the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentSet {
    members: Vec<QuantizedMatrix>,
}

impl AlignmentSet {
    pub fn new(members: Vec<QuantizedMatrix>) -> Result<Self> {
        if !is_alignment_set(&members) {
            return Err(Error::InvalidInput(
                "matrices do not form an alignment set".into(),
            ));
        }
        Ok(Self { members })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[QuantizedMatrix] {
        &self.members
    }

    pub fn seed(&self) -> &QuantizedMatrix {
        &self.members[0]
    }

    pub fn contains(&self, m: &QuantizedMatrix) -> bool {
        self.members.iter().any(|x| x == m)
    }

    /// Member sum `B`: diagonal `m * h_kk(seed)`, every off-diagonal
    /// exactly zero.  Computed in integer arithmetic.
    pub fn sum_matrix(&self) -> QuantizedMatrix {
        let seed = self.seed();
        let k = seed.k_users();
        let mut entries = vec![LatticePoint::new(0, 0); k * k];
        for m in &self.members {
            for r in 0..k {
                for c in 0..k {
                    let e = m.coord(r, c);
                    entries[r * k + c].re += e.re;
                    entries[r * k + c].im += e.im;
                }
            }
        }
        QuantizedMatrix::from_parts_unchecked(k, seed.gamma(), seed.tau(), entries)
    }
}

/// Disjoint alignment sets of the requested sizes, all containing the same
/// seed; any two sets intersect exactly in the seed.
#[derive(Clone, Debug)]
pub struct AlignmentFamily {
    seed: QuantizedMatrix,
    sets: Vec<AlignmentSet>,
}

impl AlignmentFamily {
    /// Builds one alignment set per entry of `sizes` around `seed`.
    ///
    /// Per off-diagonal position each candidate set assigns a balanced
    /// sign vector (leading `+`) drawn from the canonical lexicographic
    /// enumeration; the enumeration index advances per set until the
    /// candidate's members collide with nothing previously emitted, which
    /// makes the construction deterministic.
    pub fn generate(seed: &QuantizedMatrix, sizes: &[u32]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidInput(
                "no alignment set sizes requested".into(),
            ));
        }
        for &m in sizes {
            if m < 2 || !m.is_multiple_of(2) {
                return Err(Error::InvalidInput(format!(
                    "alignment set sizes must be even and >= 2, got {m}"
                )));
            }
            if m > 64 {
                return Err(Error::InvalidInput(format!(
                    "alignment set size {m} exceeds the supported maximum of 64"
                )));
            }
        }
        if !seed.off_diagonals_nonzero() {
            return Err(Error::InsufficientPatterns(
                "seed has a zero off-diagonal entry, so no sign-balanced partners exist".into(),
            ));
        }

        let k = seed.k_users();
        let positions = k * (k - 1);
        let total_demand: u128 = sizes.iter().map(|&m| (m - 1) as u128).sum();
        let capacity = if positions >= 128 {
            u128::MAX
        } else {
            (1u128 << positions) - 1
        };
        if total_demand > capacity {
            return Err(Error::InsufficientPatterns(format!(
                "{total_demand} distinct non-seed members requested but only {capacity} exist \
                 for {k} users"
            )));
        }
        for &m in sizes {
            let requested = sizes.iter().filter(|&&x| x == m).count() as u128;
            if let Some(available) = checked_pow(balanced_vector_count(m), positions) {
                if requested > available {
                    return Err(Error::InsufficientPatterns(format!(
                        "{requested} sets of size {m} requested but only {available} sign \
                         assignments exist for {k} users"
                    )));
                }
            }
        }

        // Smaller sizes have fewer sign assignments to choose from (the
        // size-2 set is unique), so claim those first and restore the
        // requested order afterwards.
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by_key(|&i| sizes[i]);

        let mut used: HashSet<QuantizedMatrix> = HashSet::new();
        let mut cursors: std::collections::HashMap<u32, Odometer> =
            std::collections::HashMap::new();
        let mut sets: Vec<Option<AlignmentSet>> = vec![None; sizes.len()];
        for &slot in &order {
            let m = sizes[slot];
            let odometer = cursors
                .entry(m)
                .or_insert_with(|| Odometer::new(positions, balanced_vector_count(m)));
            let members = next_disjoint_candidate(seed, m, odometer, &used)?;
            for member in &members[1..] {
                used.insert(member.clone());
            }
            sets[slot] = Some(AlignmentSet::new(members)?);
        }
        Ok(Self {
            seed: seed.clone(),
            sets: sets.into_iter().map(|s| s.unwrap()).collect(),
        })
    }

    /// Wraps already-validated sets into a family, checking that every set
    /// leads with `seed` and that any two sets share only the seed.
    pub fn from_sets(seed: QuantizedMatrix, sets: Vec<AlignmentSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidInput("family needs at least one set".into()));
        }
        for set in &sets {
            if set.seed() != &seed {
                return Err(Error::InvalidInput(
                    "every set must contain the family seed as its reference".into(),
                ));
            }
        }
        for (i, a) in sets.iter().enumerate() {
            for b in sets.iter().skip(i + 1) {
                if a.members()[1..].iter().any(|m| b.contains(m)) {
                    return Err(Error::InvalidInput("sets share a non-seed member".into()));
                }
            }
        }
        Ok(Self { seed, sets })
    }

    pub fn seed(&self) -> &QuantizedMatrix {
        &self.seed
    }

    pub fn sets(&self) -> &[AlignmentSet] {
        &self.sets
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.sets.iter().map(|s| s.size() as u32).collect()
    }
}

/// Mixed-radix counter over per-position sign-vector indices.
struct Odometer {
    digits: Vec<u128>,
    radix: u128,
    exhausted: bool,
}

impl Odometer {
    fn new(positions: usize, radix: u128) -> Self {
        Self {
            digits: vec![0; positions],
            radix,
            exhausted: false,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.radix {
                return;
            }
            *d = 0;
        }
        self.exhausted = true;
    }
}

// Candidate sets whose sign assignment maps some member onto the seed or
// onto an already-used matrix are skipped, never silently repaired, so the
// scan is bounded in case a pathological request slips past the counting
// preconditions.
const MAX_CANDIDATES_PER_SET: u64 = 1 << 22;

fn next_disjoint_candidate(
    seed: &QuantizedMatrix,
    m: u32,
    odometer: &mut Odometer,
    used: &HashSet<QuantizedMatrix>,
) -> Result<Vec<QuantizedMatrix>> {
    let k = seed.k_users();
    let mut attempts = 0u64;
    while !odometer.exhausted {
        attempts += 1;
        if attempts > MAX_CANDIDATES_PER_SET {
            return Err(Error::InsufficientPatterns(format!(
                "gave up after scanning {MAX_CANDIDATES_PER_SET} sign assignments for a \
                 size-{m} set"
            )));
        }
        let signs: Vec<Vec<bool>> = odometer
            .digits
            .iter()
            .map(|&idx| unrank_balanced(m, idx))
            .collect();
        odometer.advance();

        let mut members = Vec::with_capacity(m as usize);
        members.push(seed.clone());
        // The sign table is indexed position-major but members are built
        // member-major, so the transposed access stays an index loop.
        #[allow(clippy::needless_range_loop)]
        for i in 0..(m as usize - 1) {
            let mut entries = Vec::with_capacity(k * k);
            let mut position = 0;
            for r in 0..k {
                for c in 0..k {
                    let e = seed.coord(r, c);
                    if r == c {
                        entries.push(e);
                    } else {
                        entries.push(if signs[position][i] { e.negated() } else { e });
                        position += 1;
                    }
                }
            }
            members.push(QuantizedMatrix::from_parts_unchecked(
                k,
                seed.gamma(),
                seed.tau(),
                entries,
            ));
        }

        let mut ok = true;
        for (i, member) in members.iter().enumerate().skip(1) {
            if member == seed || used.contains(member) || members[1..i].contains(member) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(members);
        }
    }
    Err(Error::InsufficientPatterns(format!(
        "sign-assignment enumeration exhausted while building a size-{m} set"
    )))
}

/// Number of balanced sign vectors of length `m` with leading `+`:
/// `C(m-1, m/2)` ways to place the minus signs among the trailing entries.
pub fn balanced_vector_count(m: u32) -> u128 {
    binomial((m - 1) as u64, (m / 2) as u64)
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// The `idx`-th balanced sign vector for trailing members `1..m-1`, in
/// lexicographic order with `+` before `-`.  `true` means the member takes
/// the negated seed entry; exactly `m/2` entries are `true`.
fn unrank_balanced(m: u32, idx: u128) -> Vec<bool> {
    let slots = (m - 1) as u64;
    let mut minus_left = (m / 2) as u64;
    let mut idx = idx;
    let mut out = Vec::with_capacity(slots as usize);
    for pos in 0..slots {
        let remaining = slots - pos - 1;
        if minus_left == 0 {
            out.push(false);
            continue;
        }
        if minus_left > remaining {
            out.push(true);
            minus_left -= 1;
            continue;
        }
        let with_plus_here = binomial(remaining, minus_left);
        if idx < with_plus_here {
            out.push(false);
        } else {
            idx -= with_plus_here;
            out.push(true);
            minus_left -= 1;
        }
    }
    out
}

/// The finite alphabet of channel realizations.
///
/// In abstract mode only the cardinality is tracked, which is all the
/// race statistics depend on.  In enumerated mode the matrices are listed
/// explicitly, are pairwise distinct, and are closed under complementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChannelAlphabet {
    Abstract { cardinality: u64 },
    Enumerated { matrices: Vec<QuantizedMatrix> },
}

impl ChannelAlphabet {
    pub fn with_cardinality(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "alphabet cardinality must be >= 1".into(),
            ));
        }
        Ok(Self::Abstract { cardinality: n })
    }

    /// Builds an explicit alphabet of exactly `n` matrices carrying the
    /// family: every set's non-seed members first (in family order), then
    /// the seed, then any member complements not already present, then
    /// diagonal-only self-complementary fillers up to `n`.
    ///
    /// Listing the progress members first makes index `c` in this alphabet
    /// mean the same thing as category `c` in the abstract simulator, so
    /// the two backends agree draw-for-draw under the same random stream.
    pub fn enumerated_for_family(family: &AlignmentFamily, n: u64) -> Result<Self> {
        let seed = family.seed();
        let mut matrices: Vec<QuantizedMatrix> = Vec::new();
        let mut index: HashSet<QuantizedMatrix> = HashSet::new();
        let mut push_unique = |m: QuantizedMatrix, matrices: &mut Vec<QuantizedMatrix>| {
            if index.insert(m.clone()) {
                matrices.push(m);
            }
        };
        for set in family.sets() {
            for member in &set.members()[1..] {
                push_unique(member.clone(), &mut matrices);
            }
        }
        push_unique(seed.clone(), &mut matrices);
        let snapshot = matrices.clone();
        for m in snapshot {
            push_unique(m.complement(), &mut matrices);
        }

        if (matrices.len() as u64) > n {
            return Err(Error::InvalidInput(format!(
                "n = {n} is too small: the family and its complements need {}",
                matrices.len()
            )));
        }
        let k = seed.k_users();
        let mut filler_level: i64 = 2;
        while (matrices.len() as u64) < n {
            // Diagonal-only matrices are their own complements, so each
            // filler keeps the alphabet closed under complementation.
            let mut entries = vec![LatticePoint::new(0, 0); k * k];
            for r in 0..k {
                entries[r * k + r] = LatticePoint::new(filler_level, 0);
            }
            let filler = QuantizedMatrix::from_parts_unchecked(
                k,
                seed.gamma(),
                filler_level as f64 * seed.gamma(),
                entries,
            );
            push_unique(filler, &mut matrices);
            filler_level += 1;
        }
        let alphabet = Self::Enumerated { matrices };
        alphabet.validate()?;
        Ok(alphabet)
    }

    pub fn cardinality(&self) -> u64 {
        match self {
            Self::Abstract { cardinality } => *cardinality,
            Self::Enumerated { matrices } => matrices.len() as u64,
        }
    }

    pub fn matrices(&self) -> Option<&[QuantizedMatrix]> {
        match self {
            Self::Abstract { .. } => None,
            Self::Enumerated { matrices } => Some(matrices),
        }
    }

    fn validate(&self) -> Result<()> {
        let Self::Enumerated { matrices } = self else {
            return Ok(());
        };
        let distinct: HashSet<&QuantizedMatrix> = matrices.iter().collect();
        if distinct.len() != matrices.len() {
            return Err(Error::InvalidInput(
                "alphabet matrices are not distinct".into(),
            ));
        }
        for m in matrices {
            if !distinct.contains(&m.complement()) {
                return Err(Error::InvalidInput(
                    "alphabet is not closed under complementation".into(),
                ));
            }
        }
        Ok(())
    }
}

/// A 3-user, size-4 alignment set with unit-magnitude entries
/// (quantization step 1).  Its member sum is exactly `4 I`, so with the
/// same symbol vector sent at all four realizations the combined channel
/// output is `4 x` plus summed noise.
pub fn demo_alignment_set() -> AlignmentSet {
    let rows: [[i64; 9]; 4] = [
        [1, -1, 1, 1, 1, -1, -1, 1, 1],
        [1, -1, -1, -1, 1, 1, 1, 1, 1],
        [1, 1, -1, -1, 1, 1, -1, -1, 1],
        [1, 1, 1, 1, 1, -1, 1, -1, 1],
    ];
    let members = rows
        .iter()
        .map(|flat| {
            let entries = flat.iter().map(|&v| LatticePoint::new(v, 0)).collect();
            QuantizedMatrix::new(3, 1.0, 1.0, entries).expect("demo matrix")
        })
        .collect();
    AlignmentSet::new(members).expect("demo set is a valid alignment set")
}
