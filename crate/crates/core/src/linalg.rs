//! Row-appendable Cholesky factorization with diagonal jitter escalation.
//!
//! The factor is stored as packed lower-triangular rows so that a factor can
//! grow one row at a time. Factoring a full matrix is exactly the same
//! sequence of row appends, so an incrementally grown factor is bit-identical
//! to one rebuilt from scratch at the same jitter level.

use crate::error::{Error, Result};

/// First diagonal jitter tried by [`Cholesky::factor`].
pub const JITTER_START: f64 = 1e-10;
/// Largest diagonal jitter tried before giving up.
pub const JITTER_MAX: f64 = 1e-4;

/// Jitter levels 1e-10, 1e-9, ..., 1e-4.
pub fn jitter_levels() -> impl Iterator<Item = f64> {
    (-10..=-4).map(|e| 10f64.powi(e))
}

/// Lower-triangular factor `L` with `L Lᵀ = A + jitter·I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    data: Vec<f64>,
    n: usize,
    jitter: f64,
}

#[inline]
fn offset(i: usize) -> usize {
    i * (i + 1) / 2
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    // four accumulators let the compiler vectorise the loop
    let mut acc = [0.0; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let k = 4 * c;
        acc[0] += a[k] * b[k];
        acc[1] += a[k + 1] * b[k + 1];
        acc[2] += a[k + 2] * b[k + 2];
        acc[3] += a[k + 3] * b[k + 3];
    }
    let mut tail = 0.0;
    for k in 4 * chunks..a.len() {
        tail += a[k] * b[k];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

impl Cholesky {
    /// An empty factor that will add `jitter` to every appended diagonal.
    pub fn empty(jitter: f64) -> Self {
        Self {
            data: Vec::new(),
            n: 0,
            jitter,
        }
    }

    /// Factor the symmetric `n × n` matrix whose lower entries are given by
    /// `entry(i, j)` for `j ≤ i`, escalating the jitter from
    /// [`JITTER_START`] by factors of ten up to [`JITTER_MAX`].
    pub fn factor<F>(n: usize, entry: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> f64,
    {
        let mut last = None;
        for jitter in jitter_levels() {
            match Self::factor_with_jitter(n, &entry, jitter) {
                Ok(f) => return Ok(f),
                Err(e) => last = Some(e),
            }
        }
        let mut err = last.unwrap_or(Error::EmptyInput("jitter levels"));
        if let Error::Factorization { condition, .. } = &mut err {
            *condition = diagonal_ratio(n, &entry);
        }
        Err(err)
    }

    pub fn factor_with_jitter<F>(n: usize, entry: F, jitter: f64) -> Result<Self>
    where
        F: Fn(usize, usize) -> f64,
    {
        let mut chol = Self::empty(jitter);
        chol.data.reserve(offset(n));
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            col.clear();
            col.extend((0..i).map(|j| entry(i, j)));
            chol.push(&col, entry(i, i))?;
        }
        Ok(chol)
    }

    /// Append one row/column. `col` holds the new off-diagonal entries
    /// `A[n, 0..n]` and `diag` is `A[n, n]` before jitter. On failure the
    /// factor is left unchanged.
    pub fn push(&mut self, col: &[f64], diag: f64) -> Result<()> {
        if col.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: col.len(),
            });
        }
        let start = self.data.len();
        self.data.extend_from_slice(col);
        for j in 0..self.n {
            let (head, row) = self.data.split_at_mut(start);
            let rj = &head[offset(j)..offset(j) + j + 1];
            let v = (row[j] - dot(&rj[..j], &row[..j])) / rj[j];
            row[j] = v;
        }
        let row = &self.data[start..];
        let pivot = diag + self.jitter - dot(row, row);
        if !(pivot > 0.0 && pivot.is_finite()) {
            self.data.truncate(start);
            return Err(Error::Factorization {
                size: self.n + 1,
                row: self.n,
                pivot,
                jitter: self.jitter,
                condition: f64::NAN,
            });
        }
        self.data.push(pivot.sqrt());
        self.n += 1;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Jitter added to the diagonal of every row.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Row `i` of `L`, entries `0..=i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[offset(i)..offset(i) + i + 1]
    }

    pub fn diag(&self, i: usize) -> f64 {
        self.data[offset(i) + i]
    }

    /// Solve `L x = b` in place.
    pub fn solve_lower_in_place(&self, b: &mut [f64]) {
        debug_assert_eq!(b.len(), self.n);
        for i in 0..self.n {
            let r = self.row(i);
            b[i] = (b[i] - dot(&r[..i], &b[..i])) / r[i];
        }
    }

    /// Solve `Lᵀ x = b` in place.
    pub fn solve_upper_in_place(&self, b: &mut [f64]) {
        debug_assert_eq!(b.len(), self.n);
        for i in (0..self.n).rev() {
            let r = self.row(i);
            let xi = b[i] / r[i];
            b[i] = xi;
            for (bj, lij) in b[..i].iter_mut().zip(&r[..i]) {
                *bj -= lij * xi;
            }
        }
    }

    /// Solve `(L Lᵀ) x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        self.solve_lower_in_place(b);
        self.solve_upper_in_place(b);
    }

    /// `L z`.
    pub fn mul_lower(&self, z: &[f64]) -> Vec<f64> {
        debug_assert_eq!(z.len(), self.n);
        (0..self.n).map(|i| dot(self.row(i), &z[..=i])).collect()
    }

    /// `log det(L Lᵀ)`.
    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.n).map(|i| self.diag(i).ln()).sum::<f64>()
    }
}

fn diagonal_ratio<F: Fn(usize, usize) -> f64>(n: usize, entry: &F) -> f64 {
    let (lo, hi) = (0..n).map(|i| entry(i, i)).fold((f64::INFINITY, 0.0f64), |(lo, hi), d| {
        (lo.min(d), hi.max(d))
    });
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spd(n: usize) -> Vec<Vec<f64>> {
        // A = B Bᵀ + n I with a fixed B
        let b: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i * 7 + j * 3) % 5) as f64 - 2.0).collect())
            .collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: f64 = (0..n).map(|k| b[i][k] * b[j][k]).sum();
                        s + if i == j { n as f64 } else { 0.0 }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn reconstructs_matrix() {
        let a = spd(6);
        let chol = Cholesky::factor(6, |i, j| a[i][j]).unwrap();
        assert_eq!(chol.jitter(), JITTER_START);
        for i in 0..6 {
            for j in 0..=i {
                let s = dot(&chol.row(i)[..=j], chol.row(j));
                let expect = a[i][j] + if i == j { chol.jitter() } else { 0.0 };
                assert!((s - expect).abs() < 1e-10, "{i},{j}: {s} vs {expect}");
            }
        }
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = spd(5);
        let chol = Cholesky::factor(5, |i, j| a[i][j]).unwrap();
        let x: Vec<f64> = (0..5).map(|i| i as f64 - 1.5).collect();
        let mut b: Vec<f64> = (0..5)
            .map(|i| (0..5).map(|j| a[i][j] * x[j]).sum::<f64>() + chol.jitter() * x[i])
            .collect();
        chol.solve_in_place(&mut b);
        for (got, want) in b.iter().zip(&x) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn incremental_matches_full_bitwise() {
        let a = spd(7);
        let full = Cholesky::factor_with_jitter(7, |i, j| a[i][j], 1e-10).unwrap();
        let mut inc = Cholesky::factor_with_jitter(3, |i, j| a[i][j], 1e-10).unwrap();
        for i in 3..7 {
            let col: Vec<f64> = (0..i).map(|j| a[i][j]).collect();
            inc.push(&col, a[i][i]).unwrap();
        }
        assert_eq!(full, inc);
    }

    #[test]
    fn singular_matrix_escalates_jitter() {
        // slightly indefinite: smallest eigenvalue is -1e-9
        let chol = Cholesky::factor(2, |i, j| if i == j { 1.0 } else { 1.0 + 1e-9 }).unwrap();
        assert!(chol.jitter() > JITTER_START);
        assert!(chol.jitter() <= JITTER_MAX);
    }

    #[test]
    fn indefinite_matrix_fails_with_condition_report() {
        let err = Cholesky::factor(2, |i, j| if i == j { 1.0 } else { 2.0 }).unwrap_err();
        match err {
            Error::Factorization { jitter, condition, .. } => {
                assert!((jitter - JITTER_MAX).abs() < 1e-18);
                assert_eq!(condition, 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn failed_push_leaves_factor_untouched() {
        let mut chol = Cholesky::factor_with_jitter(1, |_, _| 1.0, 0.0).unwrap();
        let before = chol.clone();
        assert!(chol.push(&[1.0], 1.0).is_err());
        assert_eq!(chol, before);
    }
}
