//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(n_rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(n_rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n_rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> F {
        self.diagonal().into_iter().fold(F::zero(), |a, b| a + b)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form.
    ///
    /// Forward elimination is fraction-free (Bareiss): each update is
    /// `(p * a_ij - a_ic * a_pj) / p_prev`, where the division is exact. The
    /// pivot in each column is the first nonzero entry at or below the
    /// current row, columns scanned left to right; that order fixes every
    /// downstream basis choice.
    pub fn rref(&self) -> Echelon<F> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let pivot = a[(r, c)].clone();
            for i in r + 1..a.rows {
                let lead = a[(i, c)].clone();
                for j in c + 1..a.cols {
                    let v = (pivot.clone() * a[(i, j)].clone() - lead.clone() * a[(r, j)].clone()) / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, c)] = F::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        // back substitution to the reduced form
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = F::one() / a[(k, c)].clone();
            for j in c..a.cols {
                a[(k, j)] = a[(k, j)].clone() * inv.clone();
            }
            for i in 0..k {
                let f = a[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column in
    /// ascending column order; the vector for free column `c` has a 1 at `c`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.rref().nullspace()
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_space_basis(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        (0..e.pivots.len()).map(|k| e.reduced.row(k).to_vec()).collect()
    }

    /// Coordinates `y` with `self * y = b` when `self` has full column rank
    /// and `b` lies in its column space.
    pub fn solve_in_column_space(&self, b: &[F]) -> Option<Vec<F>> {
        let aug = Matrix::from_columns(self.rows, &{
            let mut cols: Vec<Vec<F>> = (0..self.cols).map(|j| self.column(j)).collect();
            cols.push(b.to_vec());
            cols
        });
        let e = aug.rref();
        if e.pivots.len() != self.cols || e.pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        Some((0..self.cols).map(|k| e.reduced[(k, self.cols)].clone()).collect())
    }

    /// Characteristic polynomial `det(t I - A)`, coefficients from the
    /// constant term upward (monic). Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            m = next;
            let t = self.mul(&m).trace();
            coeffs[n - k] = -t / F::from_i64(k as i64);
        }
        coeffs
    }

    /// `p(self)` for `p` given by coefficients from the constant term up.
    pub fn eval_poly(&self, coeffs: &[F]) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].clone() + c.clone();
            }
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let cols = self.reduced.cols();
        let mut basis = Vec::new();
        let mut pivot_iter = self.pivots.iter().peekable();
        for c in 0..cols {
            if pivot_iter.peek() == Some(&&c) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![F::zero(); cols];
            v[c] = F::one();
            for (k, &pc) in self.pivots.iter().enumerate() {
                if pc < c {
                    v[pc] = -self.reduced[(k, c)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Rational roots of a univariate polynomial (coefficients from the constant
/// term up) with multiplicities, in ascending order of the root, together
/// with the cofactor left after dividing out all of them.
///
/// Candidates come from the rational root theorem. Divisors are enumerated
/// by trial division up to 10^6; a cofactor above that bound is treated as
/// prime, so roots whose numerator or denominator has two such large prime
/// factors can be missed. Missed roots stay in the returned cofactor.
pub fn rational_roots(coeffs: &[BigRational]) -> (Vec<(BigRational, usize)>, Vec<BigRational>) {
    let mut poly: Vec<BigRational> = coeffs.to_vec();
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    if poly.len() <= 1 {
        return (roots, poly);
    }
    let zero_mult = poly.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
        poly.drain(..zero_mult);
    }
    let mut candidates = Vec::new();
    if poly.len() > 1 {
        let ints = integer_coefficients(&poly);
        let lead_divs = divisors(&ints.last().unwrap().magnitude().clone());
        let const_divs = divisors(&ints[0].magnitude().clone());
        for p in &const_divs {
            for q in &lead_divs {
                let r = BigRational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
    }
    for r in candidates {
        let mut mult = 0;
        while poly.len() > 1 {
            let (quot, rem) = synthetic_division(&poly, &r);
            if !rem.is_zero() {
                break;
            }
            poly = quot;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, poly)
}

fn synthetic_division(poly: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let n = poly.len() - 1;
    let mut quot = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..=n).rev() {
        let v = &poly[k] + &carry * r;
        if k == 0 {
            return (quot, v);
        }
        quot[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

fn integer_coefficients(poly: &[BigRational]) -> Vec<BigInt> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    poly.iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return vec![BigUint::one()];
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p <= 1_000_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &f;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Evaluates a univariate polynomial (constant term first).
pub fn eval_univariate(coeffs: &[BigRational], t: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}
