#![allow(dead_code, clippy::needless_range_loop)]

use std::sync::Arc;

use proptest::prelude::*;
use semicentre::lie::{lie_from_brackets, LieAlgebra};
use semicentre::linalg::Matrix;
use semicentre::parse::parse_polynomial;
use semicentre::poisson::PoissonAlgebra;
use semicentre::poly::Polynomial;
use semicentre::{Monomial, Rational, Signature};

pub type P = Polynomial<Rational>;
pub type Algebra = PoissonAlgebra<Rational>;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn coefficient() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| q(n, d)))
}

pub fn small_integer() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(int)
}

/// Polynomials with up to `max_terms` terms and exponents in `0..=max_exp`
/// (down to `-2` on invertible variables).
pub fn polynomial(sig: Arc<Signature>, max_terms: usize, max_exp: i32) -> impl Strategy<Value = P> {
    let n = sig.len();
    let ranges: Vec<_> = (0..n)
        .map(|i| if sig.is_invertible(i) { -2..=max_exp } else { 0..=max_exp })
        .collect();
    prop::collection::vec((ranges, coefficient()), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(&sig, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c))).unwrap()
    })
}

pub fn nonzero_polynomial(sig: Arc<Signature>, max_terms: usize, max_exp: i32) -> impl Strategy<Value = P> {
    polynomial(sig, max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn polynomial_signature(n: usize) -> Arc<Signature> {
    Signature::new(names(n).into_iter().map(|s| (s, false))).unwrap()
}

pub fn laurent_signature() -> Arc<Signature> {
    Signature::new([("t", true), ("u", false), ("v", true)]).unwrap()
}

/// Antisymmetric matrices with small integer entries above the diagonal.
pub fn antisymmetric(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(small_integer(), n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![int(0); n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                m[j][i] = -v.clone();
                m[i][j] = v;
            }
        }
        m
    })
}

/// `{x_i, x_j} = λ_ij x_i x_j`.
pub fn affine_space(lambda: &[Vec<Rational>]) -> Algebra {
    let n = lambda.len();
    let sig = polynomial_signature(n);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = Monomial::from_exponents((0..n).map(|k| (k == i || k == j) as i32).collect());
            entries.push((i, j, Polynomial::from_monomial(&sig, m, lambda[i][j].clone()).unwrap()));
        }
    }
    PoissonAlgebra::new(&sig, entries).unwrap().verified().unwrap()
}

pub fn algebra(vars: &[(&str, bool)], brackets: &[(&str, &str, &str)]) -> Algebra {
    let sig = Signature::new(vars.iter().copied()).unwrap();
    let entries: Vec<_> = brackets
        .iter()
        .map(|(a, b, e)| (sig.index_of(a).unwrap(), sig.index_of(b).unwrap(), parse_polynomial(e, &sig).unwrap()))
        .collect();
    PoissonAlgebra::new(&sig, entries).unwrap().verified().unwrap()
}

pub fn not_p() -> Algebra {
    algebra(
        &[("x", false), ("y", false), ("z", false)],
        &[("x", "y", "x*y*z"), ("x", "z", "x"), ("y", "z", "y")],
    )
}

pub fn sl2() -> Algebra {
    algebra(
        &[("h", false), ("e", false), ("f", false)],
        &[("h", "e", "2*e"), ("h", "f", "-2*f"), ("e", "f", "h")],
    )
}

pub fn desk() -> Algebra {
    algebra(
        &[("Y0", true), ("X", false), ("Y2", false), ("Y3", false)],
        &[("X", "Y0", "Y0^2"), ("X", "Y2", "3*Y0*Y2"), ("X", "Y3", "4*Y0*Y3")],
    )
}

pub fn not_w(p: &str) -> Algebra {
    let e = format!("({p})*x*y");
    algebra(&[("x", false), ("y", false)], &[("x", "y", e.as_str())])
}

/// Verified algebras used for bracket identities.
pub fn corpus() -> Vec<Algebra> {
    vec![
        not_p(),
        sl2(),
        desk(),
        not_w("x + y"),
        affine_space(&[
            vec![int(0), int(1), int(-2)],
            vec![int(-1), int(0), q(1, 2)],
            vec![int(2), q(-1, 2), int(0)],
        ]),
    ]
}

/// An algebra from [`corpus`] with three random elements over it.
pub fn corpus_triple(max_terms: usize, max_exp: i32) -> impl Strategy<Value = (Algebra, P, P, P)> {
    (0..corpus().len()).prop_flat_map(move |k| {
        let a = corpus().swap_remove(k);
        let sig = a.signature().clone();
        let p = || polynomial(sig.clone(), max_terms, max_exp);
        (Just(a), p(), p(), p())
    })
}

pub type Lie = LieAlgebra<Rational>;

/// Three-dimensional Lie algebras, given on the basis `x, y, z`.
pub fn lie_bases() -> Vec<Algebra> {
    let v = [("x", false), ("y", false), ("z", false)];
    vec![
        algebra(&v, &[("z", "x", "2*x"), ("z", "y", "-2*y"), ("x", "y", "z")]),
        algebra(&v, &[("x", "y", "x")]),
        algebra(&v, &[("x", "y", "z")]),
        algebra(&v, &[("z", "x", "y"), ("z", "y", "-x")]),
        algebra(&v, &[("z", "x", "x"), ("z", "y", "2*y")]),
        algebra(&v, &[]),
    ]
}

/// Rewrites a Lie algebra in the basis given by the columns of `change`.
pub fn change_basis(base: &Algebra, change: &Matrix<Rational>) -> Option<Lie> {
    let lie = lie_from_brackets(base).unwrap();
    let n = lie.dim();
    if change.rank() != n {
        return None;
    }
    let sig = Signature::new((0..n).map(|i| (format!("y{i}"), false))).unwrap();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = lie.bracket_vector(&change.column(i), &change.column(j));
            let c = change.solve_in_column_space(&v).unwrap();
            let terms = c
                .into_iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(n, k), c));
            entries.push((i, j, Polynomial::from_terms(&sig, terms).unwrap()));
        }
    }
    let a = PoissonAlgebra::new(&sig, entries).unwrap().verified().unwrap();
    Some(lie_from_brackets(&a).unwrap())
}

/// A random basis of one of [`lie_bases`].
pub fn random_lie() -> impl Strategy<Value = Lie> {
    (0..lie_bases().len(), prop::collection::vec(-2i64..=2, 9)).prop_filter_map("singular change of basis", |(k, entries)| {
        let rows = entries.chunks(3).map(|r| r.iter().map(|&e| int(e)).collect()).collect();
        change_basis(&lie_bases()[k], &Matrix::from_rows(rows))
    })
}
