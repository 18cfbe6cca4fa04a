//! Dense exact matrices: row reduction, rank, nullspace, linear solves and
//! rational eigenspaces.

use num_traits::{One, Zero};

use super::field::Field;
use super::upoly::UniPoly;
use super::{AlgebraError, Rational};

/// A rectangular matrix over an exact field.
///
/// `zero` is a prototype element of the field; it fixes the context (for
/// instance the number of variables of a rational function field) for
/// entries the algorithms create.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
    zero: F,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, zero: F) -> Self {
        let zero = zero.zero_like();
        ExactMatrix {
            rows,
            cols,
            entries: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn identity(n: usize, zero: F) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.set(i, i, m.zero.one_like());
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<F>>, zero: F) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            zero: zero.zero_like(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.zero.clone(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix<F>) -> ExactMatrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            zero: self.zero.clone(),
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|r| !m.get(*r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.entries.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c).sub(&factor.mul(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : M v = 0}`, one vector per free column, in reduced form.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let one = self.zero.one_like();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = one.clone();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1, self.zero.clone());
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the reduced
/// row echelon form, so equal spans give equal bases.
pub fn canonical_span_basis<F: Field>(vectors: &[Vec<F>], zero: &F) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return vec![];
    }
    let m = ExactMatrix::from_rows(vectors.to_vec(), zero.clone());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Nullspace convenience wrapper over the rationals.
pub fn nullspace(m: &ExactMatrix<Rational>) -> Vec<Vec<Rational>> {
    m.nullspace()
}

/// Rational eigenvalues with eigenspace bases.
#[derive(Clone, PartialEq, Debug)]
pub struct EigenReport {
    /// `(eigenvalue, basis of ker(M - λI))`, eigenvalues increasing.
    pub pairs: Vec<(Rational, Vec<Vec<Rational>>)>,
    /// The characteristic polynomial has roots outside the rationals.
    pub non_rational_spectrum: bool,
    /// Characteristic polynomial `det(λI - M)`.
    pub char_poly: UniPoly,
}

/// `det(λI - M)` by the Faddeev-LeVerrier recurrence.
pub fn char_poly(m: &ExactMatrix<Rational>) -> Result<UniPoly, AlgebraError> {
    if m.rows() != m.cols() {
        return Err(AlgebraError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = ExactMatrix::zeros(n, n, Rational::zero());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(m, &mk);
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let am = matmul(m, &next);
        let trace: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer(k.into());
        mk = next;
    }
    Ok(UniPoly::new(coeffs))
}

fn matmul(a: &ExactMatrix<Rational>, b: &ExactMatrix<Rational>) -> ExactMatrix<Rational> {
    let mut out = ExactMatrix::zeros(a.rows(), b.cols(), Rational::zero());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let aik = a.get(i, k);
            if Zero::is_zero(aik) {
                continue;
            }
            for j in 0..b.cols() {
                let bkj = b.get(k, j);
                if !Zero::is_zero(bkj) {
                    let v = out.get(i, j) + aik * bkj;
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

/// Rational eigenvalues of a square rational matrix and their eigenspaces.
///
/// Eigenvalues are the rational roots of the primitive integer form of the
/// characteristic polynomial; any remaining spectrum is reported through
/// `non_rational_spectrum` and otherwise ignored.
pub fn rational_eigen(m: &ExactMatrix<Rational>) -> Result<EigenReport, AlgebraError> {
    let cp = char_poly(m)?;
    let roots = cp.rational_roots();
    let rational_mult: usize = roots.iter().map(|(_, k)| k).sum();
    let n = m.rows();
    let pairs = roots
        .into_iter()
        .map(|(lambda, _)| {
            let mut shifted = m.clone();
            for i in 0..n {
                let v = shifted.get(i, i) - &lambda;
                shifted.set(i, i, v);
            }
            (lambda, shifted.nullspace())
        })
        .collect();
    Ok(EigenReport {
        pairs,
        non_rational_spectrum: rational_mult < n,
        char_poly: cp,
    })
}
