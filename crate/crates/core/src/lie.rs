//! Lie algebras as linear Poisson structures on their symmetric algebras.
//!
//! A Lie algebra with basis `x_1, …, x_n` is stored as the Poisson algebra
//! on `k[x_1, …, x_n]` whose generator brackets are the (linear) Lie
//! brackets. Since `{x_i, ·}` preserves degree, each `S^d` is a finite
//! dimensional `ad`-module and semi-invariants are computed degree by degree.

use num_traits::Zero;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::field::{primitive_integer_form, Field};
use crate::linalg::{rational_roots, Matrix};
use crate::monomial::Monomial;
use crate::normality::is_poisson_normal;
use crate::poisson::PoissonAlgebra;
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct LieAlgebra<F> {
    algebra: PoissonAlgebra<F>,
}

/// Accepts a Jacobi-verified Poisson algebra with homogeneous linear
/// generator brackets and no invertible variables.
pub fn lie_from_brackets<F: Field>(algebra: &PoissonAlgebra<F>) -> Result<LieAlgebra<F>> {
    algebra.require_verified()?;
    let sig = algebra.signature();
    if sig.has_invertible() {
        return Err(Error::Precondition("a Lie algebra needs a polynomial ring, found invertible variables".into()));
    }
    let n = algebra.num_generators();
    for i in 0..n {
        for j in i + 1..n {
            let e = algebra.entry(i, j);
            if !e.is_homogeneous_of_degree(1) {
                return Err(Error::NonlinearBracket {
                    left: sig.name(i).to_string(),
                    right: sig.name(j).to_string(),
                    entry: e.to_string(),
                });
            }
        }
    }
    Ok(LieAlgebra {
        algebra: algebra.clone(),
    })
}

impl<F: Field> LieAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.algebra.num_generators()
    }

    /// The symmetric algebra with its linear Poisson bracket.
    pub fn poisson(&self) -> &PoissonAlgebra<F> {
        &self.algebra
    }

    /// The linear polynomial `Σ v_i x_i`.
    pub fn element(&self, v: &[F]) -> Polynomial<F> {
        let sig = self.algebra.signature();
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(sig.len(), i), c.clone()));
        Polynomial::from_terms(sig, terms).expect("nonnegative exponents")
    }

    /// Coordinates of a linear polynomial.
    pub fn coordinates(&self, p: &Polynomial<F>) -> Vec<F> {
        let n = self.dim();
        (0..n).map(|i| p.coefficient(&Monomial::var(n, i))).collect()
    }

    /// `[v, w]` in coordinates.
    pub fn bracket_vector(&self, v: &[F], w: &[F]) -> Vec<F> {
        self.coordinates(&self.algebra.bracket(&self.element(v), &self.element(w)))
    }

    fn bracket_vectors(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.coordinates(self.algebra.entry(i, j)));
            }
        }
        out
    }
}

/// Basis of `[g, g]`: the nonzero rows of the reduced echelon form of all
/// `[x_i, x_j]`.
pub fn derived_subalgebra<F: Field>(lie: &LieAlgebra<F>) -> Vec<Vec<F>> {
    let rows = lie.bracket_vectors();
    if rows.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(rows).row_space_basis()
}

/// Monomials of total degree `d` in `n` variables, in descending
/// graded-lex order (for `x, y` and `d = 2`: `x^2, x*y, y^2`).
pub fn degree_basis(n: usize, d: usize) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<i32>, n: usize, left: i32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            fill(prefix, n, left - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(&mut Vec::with_capacity(n), n, d as i32, &mut out);
    }
    out
}

fn coordinates_in_basis<F: Field>(p: &Polynomial<F>, basis: &[Monomial]) -> Vec<F> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

fn polynomial_from_coordinates<F: Field>(lie: &LieAlgebra<F>, v: &[F], basis: &[Monomial]) -> Polynomial<F> {
    let terms = basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone()));
    Polynomial::from_terms(lie.algebra.signature(), terms).expect("nonnegative exponents")
}

/// Matrix of `{v, ·}` on `S^d`, columns and rows indexed by
/// [`degree_basis`].
pub fn ad_action_matrix<F: Field>(lie: &LieAlgebra<F>, v: &[F], d: usize) -> Result<Matrix<F>> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let basis = degree_basis(lie.dim(), d);
    Ok(ad_matrix_on(lie, &lie.element(v), &basis))
}

fn ad_matrix_on<F: Field>(lie: &LieAlgebra<F>, v: &Polynomial<F>, basis: &[Monomial]) -> Matrix<F> {
    let sig = lie.algebra.signature();
    let columns: Vec<Vec<F>> = basis
        .iter()
        .map(|m| {
            let f = Polynomial::from_monomial(sig, m.clone(), F::one()).expect("nonnegative exponents");
            coordinates_in_basis(&lie.algebra.bracket(v, &f), basis)
        })
        .collect();
    Matrix::from_columns(basis.len(), &columns)
}

/// A linear functional on `g`, by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character<F> {
    pub values: Vec<F>,
}

impl<F: Field> Character<F> {
    pub fn value(&self, i: usize) -> &F {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, v: &[F]) -> F {
        self.values
            .iter()
            .zip(v)
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// True when the functional vanishes on every `[x_i, x_j]`.
    pub fn kills_derived(&self, lie: &LieAlgebra<F>) -> bool {
        lie.bracket_vectors().iter().all(|v| self.evaluate(v).is_zero())
    }
}

/// Part of `V` on which some completing operator has no rational
/// eigenvalue: the kernel of the irrational factor of its characteristic
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct UnsplitBlock<F> {
    /// Basis index of the completing operator `ad(x_operator)`.
    pub operator: usize,
    /// The factor without rational roots, coefficients from the constant
    /// term up.
    pub factor: Vec<F>,
    pub basis: Vec<Polynomial<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemiInvariantEntry<F> {
    pub character: Character<F>,
    pub basis: Vec<Polynomial<F>>,
}

/// Degree-`d` semi-invariants grouped by character, in increasing order of
/// the character value vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiInvariantSpace<F> {
    pub degree: usize,
    pub entries: Vec<SemiInvariantEntry<F>>,
    pub unsplit: Vec<UnsplitBlock<F>>,
}

impl<F: Field> SemiInvariantSpace<F> {
    /// The character-zero entry, i.e. the degree-`d` Casimirs.
    pub fn invariants(&self) -> Option<&SemiInvariantEntry<F>> {
        self.entries.iter().find(|e| e.character.is_zero())
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.basis.len()).sum()
    }
}

/// Columns of `w` as vectors.
fn columns<F: Field>(w: &Matrix<F>) -> Vec<Vec<F>> {
    (0..w.cols()).map(|j| w.column(j)).collect()
}

/// Semi-invariants of degree `d`.
///
/// Characters vanish on `[g, g]`, so all semi-invariants lie in
/// `V = ∩ ker ad(z)` over a basis of `[g, g]`. The basis of `[g, g]` is
/// completed by input basis vectors, taken in order whenever they raise the
/// rank; their `ad` operators preserve `V` and commute on it. `V` is split
/// into their simultaneous rational eigenspaces one operator at a time.
pub fn semi_invariants<F: Field>(lie: &LieAlgebra<F>, d: usize) -> Result<SemiInvariantSpace<F>> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let n = lie.dim();
    let basis = degree_basis(n, d);
    let size = basis.len();
    let derived = derived_subalgebra(lie);

    let v_basis: Vec<Vec<F>> = if derived.is_empty() {
        columns(&Matrix::identity(size))
    } else {
        let stacked = derived
            .iter()
            .map(|z| ad_matrix_on(lie, &lie.element(z), &basis))
            .reduce(|a, b| a.vstack(&b))
            .expect("nonempty");
        stacked.nullspace()
    };

    let mut completers = Vec::new();
    let mut spanning = derived.clone();
    for i in 0..n {
        let mut e = vec![F::zero(); n];
        e[i] = F::one();
        spanning.push(e);
        if Matrix::from_rows(spanning.clone()).rank() == spanning.len() {
            completers.push(i);
        } else {
            spanning.pop();
        }
    }

    let mut blocks: Vec<Vec<Vec<F>>> = if v_basis.is_empty() { Vec::new() } else { vec![v_basis] };
    let mut unsplit = Vec::new();
    for &c in &completers {
        let ad = ad_matrix_on(lie, &lie.generator_poly(c), &basis);
        let mut next = Vec::new();
        for block in blocks {
            let w = Matrix::from_columns(size, &block);
            let restricted: Vec<Vec<F>> = block
                .iter()
                .map(|col| {
                    w.solve_in_column_space(&ad.mul_vec(col))
                        .expect("ad(x) preserves the common kernel of ad([g, g])")
                })
                .collect();
            let m = Matrix::from_columns(block.len(), &restricted);
            let charpoly: Vec<_> = m.charpoly().iter().map(Field::to_rational).collect();
            let (roots, cofactor) = rational_roots(&charpoly);
            for (r, _) in roots {
                let r = F::from_rational(&r).ok_or_else(|| Error::Unrepresentable(r.to_string()))?;
                let shifted = m.sub(&Matrix::identity(block.len()).scale(&r));
                let eigen: Vec<Vec<F>> = shifted.nullspace().iter().map(|y| w.mul_vec(y)).collect();
                if !eigen.is_empty() {
                    next.push(eigen);
                }
            }
            if cofactor.len() > 1 {
                let factor = cofactor
                    .iter()
                    .map(|q| F::from_rational(q).ok_or_else(|| Error::Unrepresentable(q.to_string())))
                    .collect::<Result<Vec<F>>>()?;
                let kernel = m.eval_poly(&factor).nullspace();
                if !kernel.is_empty() {
                    let vectors: Vec<Vec<F>> = kernel.iter().map(|y| w.mul_vec(y)).collect();
                    unsplit.push(UnsplitBlock {
                        operator: c,
                        factor,
                        basis: canonical_basis(lie, &vectors, &basis),
                    });
                }
            }
        }
        blocks = next;
    }

    let mut entries = Vec::with_capacity(blocks.len());
    for block in blocks {
        let polys = canonical_basis(lie, &block, &basis);
        let f = &polys[0];
        let values = (0..n)
            .map(|i| {
                let q = lie
                    .algebra
                    .bracket(&lie.generator_poly(i), f)
                    .exact_divide(f)?
                    .and_then(|q| q.constant_value().or_else(|| q.is_zero().then(F::zero)))
                    .expect("eigenvectors of every ad(x_i) have constant weight");
                Ok(q)
            })
            .collect::<Result<Vec<F>>>()?;
        entries.push(SemiInvariantEntry {
            character: Character { values },
            basis: polys,
        });
    }
    entries.sort_by(|a, b| a.character.cmp(&b.character));
    Ok(SemiInvariantSpace {
        degree: d,
        entries,
        unsplit,
    })
}

impl<F: Field> LieAlgebra<F> {
    fn generator_poly(&self, i: usize) -> Polynomial<F> {
        self.algebra.generator(i)
    }
}

/// Reduced echelon basis of the span of `vectors`, each row scaled to
/// coprime integers with positive leading coefficient.
fn canonical_basis<F: Field>(lie: &LieAlgebra<F>, vectors: &[Vec<F>], basis: &[Monomial]) -> Vec<Polynomial<F>> {
    Matrix::from_rows(vectors.to_vec())
        .row_space_basis()
        .iter()
        .map(|row| polynomial_from_coordinates(lie, &primitive_integer_form(row), basis))
        .collect()
}

/// Evidence that semi-invariants and Poisson normal elements disagree.
#[derive(Clone, Debug, PartialEq)]
pub enum PnormWitness<F> {
    /// A computed semi-invariant that is not Poisson normal.
    NotNormal { element: Polynomial<F> },
    /// A semi-invariant whose weight image at `generator` is not the
    /// character value there.
    WeightMismatch {
        element: Polynomial<F>,
        generator: usize,
        image: Polynomial<F>,
        expected: F,
    },
    /// A normal monomial of degree `d` outside the computed semi-invariants.
    MissingNormal { element: Polynomial<F>, weight: Derivation<F> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum PnormCheck<F> {
    Pass,
    Fail(PnormWitness<F>),
}

/// Checks that every computed degree-`d` semi-invariant is Poisson normal
/// with constant weight images equal to its character; conversely, every
/// Poisson normal monomial of degree `d` must have constant weight and lie
/// in the span of the entry with that character.
pub fn pnorm_crosscheck<F: Field>(lie: &LieAlgebra<F>, d: usize) -> Result<PnormCheck<F>> {
    let space = semi_invariants(lie, d)?;
    let a = &lie.algebra;
    for entry in &space.entries {
        for f in &entry.basis {
            let Some(w) = is_poisson_normal(a, f)? else {
                return Ok(PnormCheck::Fail(PnormWitness::NotNormal { element: f.clone() }));
            };
            for (i, expected) in entry.character.values.iter().enumerate() {
                let image = w.image(i);
                if *image != Polynomial::constant(a.signature(), expected.clone()) {
                    return Ok(PnormCheck::Fail(PnormWitness::WeightMismatch {
                        element: f.clone(),
                        generator: i,
                        image: image.clone(),
                        expected: expected.clone(),
                    }));
                }
            }
        }
    }

    let basis = degree_basis(lie.dim(), d);
    for m in &basis {
        let f = Polynomial::from_monomial(a.signature(), m.clone(), F::one())?;
        let Some(w) = is_poisson_normal(a, &f)? else {
            continue;
        };
        let missing = || PnormWitness::MissingNormal {
            element: f.clone(),
            weight: w.clone(),
        };
        let Some(values) = w
            .images()
            .iter()
            .map(|p| p.constant_value().or_else(|| p.is_zero().then(F::zero)))
            .collect::<Option<Vec<F>>>()
        else {
            return Ok(PnormCheck::Fail(missing()));
        };
        let Some(entry) = space.entries.iter().find(|e| e.character.values == values) else {
            return Ok(PnormCheck::Fail(missing()));
        };
        let span: Vec<Vec<F>> = entry.basis.iter().map(|p| coordinates_in_basis(p, &basis)).collect();
        let target = coordinates_in_basis(&f, &basis);
        if Matrix::from_columns(basis.len(), &span)
            .solve_in_column_space(&target)
            .is_none()
        {
            return Ok(PnormCheck::Fail(missing()));
        }
    }
    Ok(PnormCheck::Pass)
}
