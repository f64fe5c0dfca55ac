//! Casimirs, rational Casimirs written as quotients, and algebraic relations.
//!
//! Quotients are never formed: `a/b` is a Casimir of the fraction field iff
//! `b·{x_i, a} − a·{x_i, b} = 0` for every generator, and that identity is
//! what gets tested.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{primitive_integer_form, Field};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::normality::{is_poisson_normal, weight_decompose, GpaCertificate};
use crate::poisson::PoissonAlgebra;
use crate::poly::Polynomial;
use crate::signature::Signature;

/// The first generator `x_i` with `{x_i, f} ≠ 0`, and that bracket.
pub fn casimir_witness<F: Field>(algebra: &PoissonAlgebra<F>, f: &Polynomial<F>) -> Result<Option<(usize, Polynomial<F>)>> {
    algebra.require_verified()?;
    let f = f.with_signature(algebra.signature())?;
    Ok((0..algebra.num_generators()).find_map(|i| {
        let b = algebra.bracket(&algebra.generator(i), &f);
        (!b.is_zero()).then_some((i, b))
    }))
}

pub fn is_casimir<F: Field>(algebra: &PoissonAlgebra<F>, f: &Polynomial<F>) -> Result<bool> {
    Ok(casimir_witness(algebra, f)?.is_none())
}

/// The first generator at which `b·{x_i, a} − a·{x_i, b}` is nonzero, and
/// that residual.
pub fn casimir_quotient_witness<F: Field>(
    algebra: &PoissonAlgebra<F>,
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> Result<Option<(usize, Polynomial<F>)>> {
    algebra.require_verified()?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("quotient with a zero term".into()));
    }
    let a = a.with_signature(algebra.signature())?;
    let b = b.with_signature(algebra.signature())?;
    Ok((0..algebra.num_generators()).find_map(|i| {
        let x = algebra.generator(i);
        let r = &(&b * &algebra.bracket(&x, &a)) - &(&a * &algebra.bracket(&x, &b));
        (!r.is_zero()).then_some((i, r))
    }))
}

/// Whether `a/b` is a Casimir of the fraction field.
pub fn is_casimir_quotient<F: Field>(algebra: &PoissonAlgebra<F>, a: &Polynomial<F>, b: &Polynomial<F>) -> Result<bool> {
    Ok(casimir_quotient_witness(algebra, a, b)?.is_none())
}

/// Both arguments normal, with equal weights.
pub fn same_weight_normal<F: Field>(algebra: &PoissonAlgebra<F>, a: &Polynomial<F>, b: &Polynomial<F>) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("the zero element has no weight".into()));
    }
    let (Some(wa), Some(wb)) = (is_poisson_normal(algebra, a)?, is_poisson_normal(algebra, b)?) else {
        return Ok(false);
    };
    Ok(wa == wb)
}

/// A nonzero `f(X, Y) = Σ s_ij X^i Y^j`, found within a degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationPolynomial<F> {
    poly: Polynomial<F>,
    degree_bound: usize,
}

impl<F: Field> RelationPolynomial<F> {
    fn from_coefficients(columns: &[(i32, i32)], s: &[F], degree_bound: usize) -> Self {
        let sig = relation_signature();
        let terms = columns
            .iter()
            .zip(s)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| (Monomial::from_exponents(vec![i, j]), c.clone()));
        RelationPolynomial {
            poly: Polynomial::from_terms(&sig, terms).expect("nonnegative exponents"),
            degree_bound,
        }
    }

    /// `f` as a polynomial in the variables `X`, `Y`.
    pub fn polynomial(&self) -> &Polynomial<F> {
        &self.poly
    }

    /// `s_ij`, the coefficient of `X^i Y^j`.
    pub fn coefficient(&self, i: i32, j: i32) -> F {
        self.poly.coefficient(&Monomial::from_exponents(vec![i, j]))
    }

    pub fn degree(&self) -> usize {
        self.poly.total_degree().unwrap_or(0) as usize
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// `f(a, b)`.
    pub fn substitute(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.poly.substitute(&[a.clone(), b.clone()])
    }
}

impl<F: Field> fmt::Display for RelationPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn relation_signature() -> Arc<Signature> {
    Signature::polynomial(&["X", "Y"]).expect("valid names")
}

/// Kernel of the linear map sending the coordinate vector `s` to
/// `Σ s_k · polys[k]`, written over the union of the monomials involved.
fn linear_relations<F: Field>(polys: &[Polynomial<F>]) -> Vec<Vec<F>> {
    let mut rows: Vec<Monomial> = polys.iter().flat_map(|p| p.monomials().cloned()).collect();
    rows.sort();
    rows.dedup();
    let mut m = Matrix::zeros(rows.len(), polys.len());
    for (c, p) in polys.iter().enumerate() {
        for (mono, coef) in p.terms() {
            let r = rows.binary_search(mono).expect("monomial collected above");
            m[(r, c)] = coef.clone();
        }
    }
    m.nullspace()
}

/// Picks the kernel basis vector whose support, listed from the largest
/// column monomial down, is smallest; then scales it to coprime integers
/// with a positive leading coefficient.
fn select_kernel_vector<F: Field>(kernel: Vec<Vec<F>>, columns: &[Monomial]) -> Option<Vec<F>> {
    let support = |v: &Vec<F>| {
        let mut s: Vec<&Monomial> = v
            .iter()
            .zip(columns)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, m)| m)
            .collect();
        s.sort_by(|a, b| b.cmp(a));
        s
    };
    let v = kernel.into_iter().min_by(|a, b| support(a).cmp(&support(b)))?;
    Some(primitive_integer_form(&v))
}

/// Searches for `f ≠ 0` of total degree at most `max_degree` with
/// `f(a, b) = 0`, trying `d = 1, 2, …` and returning at the first degree
/// where one exists.
///
/// At degree `d` the unknowns are `s_ij`, `i + j ≤ d`, ordered by
/// descending graded-lex order of `X^i Y^j`. The relation is normalised to
/// coprime integer coefficients with the coefficient of its largest
/// monomial positive.
pub fn algebraic_relation<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
    max_degree: usize,
) -> Result<Option<RelationPolynomial<F>>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("relation search with a zero element".into()));
    }
    if max_degree == 0 {
        return Err(Error::Domain("degree bound must be at least 1".into()));
    }
    let b = b.with_signature(a.signature())?;
    let mut a_pow = vec![Polynomial::one(a.signature())];
    let mut b_pow = vec![Polynomial::one(a.signature())];
    for k in 1..=max_degree {
        a_pow.push(&a_pow[k - 1] * a);
        b_pow.push(&b_pow[k - 1] * &b);
    }
    for d in 1..=max_degree as i32 {
        let mut columns: Vec<(i32, i32)> = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect();
        let monomials = |cols: &[(i32, i32)]| -> Vec<Monomial> {
            cols.iter().map(|&(i, j)| Monomial::from_exponents(vec![i, j])).collect()
        };
        columns.sort_by(|p, q| Monomial::from_exponents(vec![q.0, q.1]).cmp(&Monomial::from_exponents(vec![p.0, p.1])));
        let polys: Vec<_> = columns
            .iter()
            .map(|&(i, j)| &a_pow[i as usize] * &b_pow[j as usize])
            .collect();
        if let Some(s) = select_kernel_vector(linear_relations(&polys), &monomials(&columns)) {
            return Ok(Some(RelationPolynomial::from_coefficients(&columns, &s, max_degree)));
        }
    }
    Ok(None)
}

/// A pure monomial power `b^(d−m)` in the principal ideal `(a)`, with the
/// homogeneous relation `Σ_i s_i a^i b^(d−i) = 0` it was read off from.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialCertificate<F> {
    pub a: Polynomial<F>,
    /// Leading monomial of `a`, with coefficient 1.
    pub b: Polynomial<F>,
    pub d: usize,
    /// `min { i : s_i ≠ 0 }`; always `< d`.
    pub m: usize,
    /// `s_0, …, s_d`.
    pub s: Vec<F>,
    /// `b^(d−m)`.
    pub power: Polynomial<F>,
    /// `c` with `b^(d−m) = a·c`.
    pub cofactor: Polynomial<F>,
}

impl<F: Field> MonomialCertificate<F> {
    /// Checks `s_m b^(d−m) + Σ_{i>m} s_i a^(i−m) b^(d−i) = 0` and
    /// `b^(d−m) = a·cofactor`.
    pub fn verify(&self) -> bool {
        let (d, m) = (self.d as u32, self.m as u32);
        let mut sum = self.b.pow(d - m).scale(&self.s[self.m]);
        for i in m + 1..=d {
            sum = sum + (&self.a.pow(i - m) * &self.b.pow(d - i)).scale(&self.s[i as usize]);
        }
        self.m < self.d && sum.is_zero() && self.power == self.b.pow(d - m) && self.power == &self.a * &self.cofactor
    }

    /// `Σ_i s_i X^i Y^(d−i)`.
    pub fn relation(&self) -> RelationPolynomial<F> {
        let columns: Vec<(i32, i32)> = (0..=self.d as i32).map(|i| (i, self.d as i32 - i)).collect();
        RelationPolynomial::from_coefficients(&columns, &self.s, self.d)
    }
}

/// For homogeneous `a`, searches `d = 1..=max_degree` for a relation
/// `Σ_{i=0}^d s_i a^i b^(d−i) = 0` with `b` the leading monomial of `a`,
/// and turns the first one found into a [`MonomialCertificate`].
pub fn monomial_in_ideal<F: Field>(
    cert: &GpaCertificate<F>,
    a: &Polynomial<F>,
    max_degree: usize,
) -> Result<Option<MonomialCertificate<F>>> {
    if a.is_zero() {
        return Err(Error::Domain("the zero element generates the zero ideal".into()));
    }
    if max_degree == 0 {
        return Err(Error::Domain("degree bound must be at least 1".into()));
    }
    let components = weight_decompose(cert, a)?.len();
    if components != 1 {
        return Err(Error::Precondition(format!(
            "element is not homogeneous ({components} weight components)"
        )));
    }
    let a = a.with_signature(cert.algebra().signature())?;
    let lead = a.leading_monomial().expect("nonzero").clone();
    let b = Polynomial::from_monomial(a.signature(), lead, F::one())?;
    for d in 1..=max_degree {
        // column k holds a^(d−k) b^k, i.e. the unknown s_(d−k)
        let polys: Vec<_> = (0..=d).map(|k| &a.pow((d - k) as u32) * &b.pow(k as u32)).collect();
        let columns: Vec<Monomial> = (0..=d as i32).map(|k| Monomial::from_exponents(vec![d as i32 - k, k])).collect();
        let Some(v) = select_kernel_vector(linear_relations(&polys), &columns) else {
            continue;
        };
        let s: Vec<F> = v.into_iter().rev().collect();
        let m = s.iter().position(|c| !c.is_zero()).expect("kernel vector is nonzero");
        let sm = s[m].clone();
        let mut cofactor = Polynomial::zero(a.signature());
        for i in m + 1..=d {
            let t = &a.pow((i - m - 1) as u32) * &b.pow((d - i) as u32);
            cofactor = cofactor - t.scale(&(s[i].clone() / sm.clone()));
        }
        return Ok(Some(MonomialCertificate {
            power: b.pow((d - m) as u32),
            a,
            b,
            d,
            m,
            s,
            cofactor,
        }));
    }
    Ok(None)
}
