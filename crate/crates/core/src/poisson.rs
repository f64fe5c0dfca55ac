//! Poisson brackets determined by their values on generators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::signature::Signature;

/// A Poisson structure on the (Laurent) polynomial ring of a signature,
/// given by the antisymmetric matrix `B[i][j] = {x_i, x_j}`.
///
/// The bracket of arbitrary elements is the biderivation
/// `{f, g} = Σ_{i,j} ∂_i f · ∂_j g · B[i][j]`. Jacobi is not implied by the
/// matrix; [`PoissonAlgebra::verify_jacobi`] checks it on generator triples
/// and records the result.
#[derive(Clone, Debug)]
pub struct PoissonAlgebra<F> {
    sig: Arc<Signature>,
    matrix: Vec<Vec<Polynomial<F>>>,
    jacobi_verified: bool,
}

/// A generator triple whose Jacobiator does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFailure<F> {
    pub triple: (usize, usize, usize),
    pub residual: Polynomial<F>,
}

impl<F: Field> PartialEq for PoissonAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.sig == *other.sig && self.matrix == other.matrix
    }
}

impl<F: Field> PoissonAlgebra<F> {
    /// Builds the algebra from the listed brackets `{x_i, x_j} = p`; unlisted
    /// pairs are zero. Each unordered pair may be listed once, `i != j`.
    pub fn new(sig: &Arc<Signature>, brackets: impl IntoIterator<Item = (usize, usize, Polynomial<F>)>) -> Result<Self> {
        let n = sig.len();
        let mut matrix = vec![vec![Polynomial::zero(sig); n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, j, p) in brackets {
            if i >= n || j >= n {
                return Err(Error::Domain(format!("generator index out of range in bracket ({i}, {j})")));
            }
            if i == j {
                return Err(Error::Domain(format!("bracket of `{}` with itself", sig.name(i))));
            }
            if set[i][j] {
                return Err(Error::Domain(format!(
                    "bracket {{{}, {}}} given twice",
                    sig.name(i),
                    sig.name(j)
                )));
            }
            let p = p.with_signature(sig)?;
            set[i][j] = true;
            set[j][i] = true;
            matrix[j][i] = -&p;
            matrix[i][j] = p;
        }
        Ok(PoissonAlgebra {
            sig: Arc::clone(sig),
            matrix,
            jacobi_verified: false,
        })
    }

    /// Builds the algebra from a full matrix, checking antisymmetry.
    pub fn from_matrix(sig: &Arc<Signature>, matrix: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let n = sig.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("bracket matrix has the wrong shape".into()));
        }
        let matrix = matrix
            .into_iter()
            .map(|row| row.iter().map(|p| p.with_signature(sig)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for i in 0..n {
            for j in i..n {
                if matrix[i][j] != -&matrix[j][i] {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(PoissonAlgebra {
            sig: Arc::clone(sig),
            matrix,
            jacobi_verified: false,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn num_generators(&self) -> usize {
        self.sig.len()
    }

    /// `{x_i, x_j}`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.matrix[i][j]
    }

    pub fn generator(&self, i: usize) -> Polynomial<F> {
        Polynomial::var(&self.sig, i)
    }

    pub fn is_jacobi_verified(&self) -> bool {
        self.jacobi_verified
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.jacobi_verified {
            Ok(())
        } else {
            Err(Error::Precondition("the bracket has not passed Jacobi verification".into()))
        }
    }

    /// `{f, g}`. Panics on a signature mismatch; see [`Self::checked_bracket`].
    pub fn bracket(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.checked_bracket(f, g).expect("bracket operands over a foreign signature")
    }

    pub fn checked_bracket(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
        if **f.signature() != *self.sig || **g.signature() != *self.sig {
            return Err(Error::SignatureMismatch);
        }
        let n = self.sig.len();
        let df: Vec<_> = (0..n).map(|i| f.partial_derivative(i)).collect();
        let dg: Vec<_> = (0..n).map(|i| g.partial_derivative(i)).collect();
        let mut out = Polynomial::zero(&self.sig);
        for i in 0..n {
            for j in i + 1..n {
                let b = &self.matrix[i][j];
                if b.is_zero() {
                    continue;
                }
                let cross = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
                if !cross.is_zero() {
                    out = out + &cross * b;
                }
            }
        }
        Ok(out)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&self, f: &Polynomial<F>, g: &Polynomial<F>, h: &Polynomial<F>) -> Polynomial<F> {
        self.bracket(f, &self.bracket(g, h)) + self.bracket(g, &self.bracket(h, f)) + self.bracket(h, &self.bracket(f, g))
    }

    /// Checks the Jacobi identity on all generator triples `i < j < k`,
    /// which suffices for a biderivation. Marks the algebra verified on
    /// success; the first failing triple in lexicographic order is reported.
    pub fn verify_jacobi(&mut self) -> Result<(), JacobiFailure<F>> {
        let n = self.sig.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let residual = self.jacobiator(&self.generator(i), &self.generator(j), &self.generator(k));
                    if !residual.is_zero() {
                        self.jacobi_verified = false;
                        return Err(JacobiFailure {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        self.jacobi_verified = true;
        Ok(())
    }

    /// Consuming form of [`Self::verify_jacobi`].
    pub fn verified(mut self) -> Result<Self, JacobiFailure<F>> {
        self.verify_jacobi()?;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::Rational;

    type P = Polynomial<Rational>;

    fn algebra(vars: &[&str], brackets: &[(&str, &str, &str)]) -> PoissonAlgebra<Rational> {
        let sig = Signature::polynomial(vars).unwrap();
        let entries = brackets.iter().map(|(a, b, e)| {
            (
                sig.index_of(a).unwrap(),
                sig.index_of(b).unwrap(),
                parse_polynomial(e, &sig).unwrap(),
            )
        });
        PoissonAlgebra::new(&sig, entries.collect::<Vec<_>>()).unwrap()
    }

    fn not_p() -> PoissonAlgebra<Rational> {
        algebra(&["x", "y", "z"], &[("x", "y", "x*y*z"), ("x", "z", "x"), ("y", "z", "y")])
    }

    fn p(a: &PoissonAlgebra<Rational>, s: &str) -> P {
        parse_polynomial(s, a.signature()).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let a = not_p();
        assert_eq!(a.bracket(&p(&a, "x"), &p(&a, "y")), p(&a, "x*y*z"));
        // {x^2, z} = 2x {x, z} = 2x^2
        assert_eq!(a.bracket(&p(&a, "x^2"), &p(&a, "z")), p(&a, "2*x^2"));
        assert!(a.bracket(&p(&a, "x^3 + y"), &P::one(a.signature())).is_zero());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(not_p().verify_jacobi(), Ok(()));
        let mut bad = algebra(&["x", "y", "z"], &[("x", "y", "x*y*z"), ("x", "z", "y"), ("y", "z", "y")]);
        let err = bad.verify_jacobi().unwrap_err();
        assert_eq!(err.triple, (0, 1, 2));
        assert_eq!(err.residual, p(&bad, "-y^2*z"));
        assert!(!bad.is_jacobi_verified());
        let mut abelian = algebra(&["x", "y", "z"], &[]);
        assert_eq!(abelian.verify_jacobi(), Ok(()));
        assert!(abelian.is_jacobi_verified());
    }

    #[test]
    fn construction_errors() {
        let sig = Signature::polynomial(&["x", "y"]).unwrap();
        let x = P::var(&sig, 0);
        assert!(PoissonAlgebra::new(&sig, vec![(0, 0, x.clone())]).is_err());
        assert!(PoissonAlgebra::new(&sig, vec![(0, 1, x.clone()), (1, 0, x.clone())]).is_err());
        let m = vec![vec![P::zero(&sig), x.clone()], vec![x.clone(), P::zero(&sig)]];
        assert_eq!(PoissonAlgebra::from_matrix(&sig, m), Err(Error::NotAntisymmetric { i: 0, j: 1 }));
    }

    #[test]
    fn foreign_operands_are_rejected() {
        let a = not_p();
        let other = P::var(&Signature::polynomial(&["u"]).unwrap(), 0);
        assert_eq!(a.checked_bracket(&other, &p(&a, "x")), Err(Error::SignatureMismatch));
    }
}
