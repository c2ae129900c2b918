//! Exact sparse linear solver over the integers.
//!
//! Systems are solved by fraction-free Gaussian elimination: row updates
//! are integer row combinations (`pivot * row_i - factor * row_p`) followed
//! by a gcd reduction, so no rationals appear until back substitution.  No
//! matrix inverse is ever formed.  The matrices arising from the racing
//! chains are triangular up to state ordering, so elimination degenerates
//! to a scan and the cost is dominated by back substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Square sparse integer matrix in row-major form.  Each row holds its
/// nonzero entries sorted by column.
#[derive(Debug, Clone)]
pub struct SparseIntMatrix {
    n: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `value` to entry `(row, col)`, keeping the row sorted.
    pub fn add(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.n && col < self.n);
        if value.is_zero() {
            return;
        }
        let r = &mut self.rows[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(pos) => {
                r[pos].1 += value;
                if r[pos].1.is_zero() {
                    r.remove(pos);
                }
            }
            Err(pos) => r.insert(pos, (col, value)),
        }
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }
}

/// Solves `A x = b` exactly, returning rationals.
///
/// Fails with [`Error::SingularSystem`] when `A` is singular.
pub fn solve(matrix: &SparseIntMatrix, rhs: &[BigInt]) -> Result<Vec<BigRational>> {
    let n = matrix.dim();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {n}x{n} but rhs has length {}",
            rhs.len()
        )));
    }
    let mut rows = matrix.rows.clone();
    let mut b = rhs.to_vec();

    for p in 0..n {
        // After eliminating columns < p every remaining row leads at
        // column >= p, so the pivot candidates are exactly the rows that
        // lead at p.
        let pivot_row = (p..n).find(|&r| rows[r].first().map(|e| e.0) == Some(p));
        let Some(pivot_row) = pivot_row else {
            return Err(Error::SingularSystem);
        };
        rows.swap(p, pivot_row);
        b.swap(p, pivot_row);

        for r in p + 1..n {
            if rows[r].first().map(|e| e.0) != Some(p) {
                continue;
            }
            let pivot = rows[p][0].1.clone();
            let factor = rows[r][0].1.clone();
            let combined = combine_rows(&pivot, &rows[r][1..], &factor, &rows[p][1..]);
            let combined_b = &pivot * &b[r] - &factor * &b[p];
            let (row, bval) = reduce_row(combined, combined_b);
            rows[r] = row;
            b[r] = bval;
        }
    }

    // Back substitution on the upper-triangular remainder.
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(b[i].clone());
        let mut diag: Option<&BigInt> = None;
        for (col, val) in &rows[i] {
            if *col == i {
                diag = Some(val);
            } else {
                acc -= BigRational::from_integer(val.clone()) * &x[*col];
            }
        }
        let Some(diag) = diag else {
            return Err(Error::SingularSystem);
        };
        x[i] = acc / BigRational::from_integer(diag.clone());
    }
    Ok(x)
}

/// `pivot * a - factor * b` over sparse rows sorted by column.
fn combine_rows(
    pivot: &BigInt,
    a: &[(usize, BigInt)],
    factor: &BigInt,
    b: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&(ca, ref va)), Some(&(cb, ref vb))) if ca == cb => {
                i += 1;
                j += 1;
                (ca, pivot * va - factor * vb)
            }
            (Some(&(ca, ref va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, pivot * va)
            }
            (Some(&(ca, ref va)), None) => {
                i += 1;
                (ca, pivot * va)
            }
            (_, Some(&(cb, ref vb))) => {
                j += 1;
                (cb, -(factor * vb))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Divides a row (and its rhs entry) by the gcd of all entries.
fn reduce_row(mut row: Vec<(usize, BigInt)>, mut b: BigInt) -> (Vec<(usize, BigInt)>, BigInt) {
    let mut g = b.abs();
    for (_, v) in &row {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            return (row, b);
        }
    }
    if g.is_zero() || g == BigInt::from(1) {
        return (row, b);
    }
    for (_, v) in &mut row {
        *v = &*v / &g;
    }
    b /= &g;
    (row, b)
}
