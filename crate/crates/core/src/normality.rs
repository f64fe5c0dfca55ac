//! Poisson normal elements and the weight grading they induce.
//!
//! An element `a` is Poisson normal when `{b, a} ∈ A·a` for every `b`; in a
//! domain this defines a derivation `λ` (the weight of `a`) with
//! `{b, a} = λ(b)·a`. By the Leibniz rule it is enough to check the
//! generators, and `λ` is stored by its generator images `{x_i, a}/a`.
//!
//! When every generator is normal and the generator weights pairwise
//! commute, the algebra is a generalised Poisson affine space: each
//! monomial is homogeneous, the weight of `x^k` is `Σ k_i λ_i`, and every
//! element splits into weight components ([`weight_decompose`]).

use std::cmp::Ordering;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poisson::PoissonAlgebra;
use crate::poly::Polynomial;

/// Outcome of a normality test.
#[derive(Clone, Debug, PartialEq)]
pub enum Normality<F> {
    /// Normal, with its weight derivation.
    Normal(Derivation<F>),
    /// `{x_generator, a}` is not divisible by `a`.
    NotNormal { generator: usize, bracket: Polynomial<F> },
}

impl<F> Normality<F> {
    pub fn weight(&self) -> Option<&Derivation<F>> {
        match self {
            Normality::Normal(w) => Some(w),
            Normality::NotNormal { .. } => None,
        }
    }
}

/// Tests `a` for normality, reporting the first generator (in signature
/// order) whose bracket with `a` is not divisible by `a`.
pub fn check_normal<F: Field>(algebra: &PoissonAlgebra<F>, a: &Polynomial<F>) -> Result<Normality<F>> {
    algebra.require_verified()?;
    if a.is_zero() {
        return Err(Error::Domain("the zero element has no weight".into()));
    }
    let a = a.with_signature(algebra.signature())?;
    let mut images = Vec::with_capacity(algebra.num_generators());
    for i in 0..algebra.num_generators() {
        let bracket = algebra.bracket(&algebra.generator(i), &a);
        match bracket.exact_divide(&a)? {
            Some(q) => images.push(q),
            None => return Ok(Normality::NotNormal { generator: i, bracket }),
        }
    }
    Ok(Normality::Normal(Derivation::new(algebra.signature(), images)?))
}

/// The weight of `a` if `a` is Poisson normal.
pub fn is_poisson_normal<F: Field>(algebra: &PoissonAlgebra<F>, a: &Polynomial<F>) -> Result<Option<Derivation<F>>> {
    Ok(match check_normal(algebra, a)? {
        Normality::Normal(w) => Some(w),
        Normality::NotNormal { .. } => None,
    })
}

/// Proof that the algebra is a generalised Poisson affine space on its
/// generators: every generator is normal and the weights commute.
#[derive(Clone, Debug)]
pub struct GpaCertificate<F> {
    algebra: PoissonAlgebra<F>,
    weights: Vec<Derivation<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GpaFailure<F> {
    /// Generator `x_generator` is not normal: `{x_against, x_generator}`
    /// is not divisible by it.
    NotNormal {
        generator: usize,
        against: usize,
        bracket: Polynomial<F>,
    },
    /// `[λ_i, λ_j] ≠ 0`; `commutator` holds all of its generator images.
    NonCommuting { i: usize, j: usize, commutator: Derivation<F> },
}

#[derive(Clone, Debug)]
pub enum Certification<F> {
    Certified(GpaCertificate<F>),
    Failed(GpaFailure<F>),
}

impl<F> Certification<F> {
    pub fn certificate(self) -> Option<GpaCertificate<F>> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Failed(_) => None,
        }
    }
}

/// Per-generator normality plus the first non-commuting pair among the
/// weights of the normal generators.
#[derive(Clone, Debug)]
pub struct WeightReport<F> {
    pub generators: Vec<Normality<F>>,
    pub non_commuting: Option<(usize, usize, Derivation<F>)>,
}

impl<F: Field> WeightReport<F> {
    pub fn all_normal(&self) -> bool {
        self.generators.iter().all(|n| n.weight().is_some())
    }
}

pub fn weight_report<F: Field>(algebra: &PoissonAlgebra<F>) -> Result<WeightReport<F>> {
    let generators = (0..algebra.num_generators())
        .map(|i| check_normal(algebra, &algebra.generator(i)))
        .collect::<Result<Vec<_>>>()?;
    let mut non_commuting = None;
    'outer: for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if let (Some(a), Some(b)) = (generators[i].weight(), generators[j].weight()) {
                let c = a.commutator(b);
                if !c.is_zero() {
                    non_commuting = Some((i, j, c));
                    break 'outer;
                }
            }
        }
    }
    Ok(WeightReport {
        generators,
        non_commuting,
    })
}

/// Certifies the abelian weight property on the generators. Normality is
/// checked first; the first non-normal generator or the first
/// non-commuting pair `(i, j)`, `i < j`, is returned as the failure.
pub fn gpa_certify<F: Field>(algebra: &PoissonAlgebra<F>) -> Result<Certification<F>> {
    let report = weight_report(algebra)?;
    let mut weights = Vec::with_capacity(report.generators.len());
    for (generator, n) in report.generators.into_iter().enumerate() {
        match n {
            Normality::Normal(w) => weights.push(w),
            Normality::NotNormal { generator: against, bracket } => {
                return Ok(Certification::Failed(GpaFailure::NotNormal {
                    generator,
                    against,
                    bracket,
                }))
            }
        }
    }
    if let Some((i, j, commutator)) = report.non_commuting {
        return Ok(Certification::Failed(GpaFailure::NonCommuting { i, j, commutator }));
    }
    Ok(Certification::Certified(GpaCertificate {
        algebra: algebra.clone(),
        weights,
    }))
}

impl<F: Field> GpaCertificate<F> {
    pub fn algebra(&self) -> &PoissonAlgebra<F> {
        &self.algebra
    }

    /// `λ_i`, the weight of generator `x_i`.
    pub fn generator_weight(&self, i: usize) -> &Derivation<F> {
        &self.weights[i]
    }

    pub fn generator_weights(&self) -> &[Derivation<F>] {
        &self.weights
    }

    /// True when `f` is nonzero and lies in a single weight space.
    pub fn is_homogeneous(&self, f: &Polynomial<F>) -> bool {
        weight_decompose(self, f).is_ok_and(|d| d.len() == 1)
    }
}

/// `Σ_i k_i λ_i` for `m = x^k`; exponents may be negative.
pub fn monomial_weight<F: Field>(cert: &GpaCertificate<F>, m: &Monomial) -> Derivation<F> {
    let sig = cert.algebra.signature();
    let mut w = Derivation::zero(sig);
    for (i, &k) in m.exponents().iter().enumerate() {
        if k != 0 {
            w = w.add(&cert.weights[i].scale(&F::from_i64(k as i64)));
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightComponent<F> {
    pub weight: Derivation<F>,
    pub part: Polynomial<F>,
}

/// Homogeneous components of an element, ordered by weight (image vectors
/// compared with [`Polynomial::graded_cmp`], generator by generator).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightDecomposition<F> {
    pub components: Vec<WeightComponent<F>>,
}

impl<F: Field> WeightDecomposition<F> {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sum(&self) -> Option<Polynomial<F>> {
        let mut it = self.components.iter();
        let first = it.next()?.part.clone();
        Some(it.fold(first, |acc, c| acc + &c.part))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Derivation<F>> {
        self.components.iter().map(|c| &c.weight)
    }
}

pub(crate) fn weight_cmp<F: Field>(a: &Derivation<F>, b: &Derivation<F>) -> Ordering {
    a.images()
        .iter()
        .zip(b.images())
        .map(|(x, y)| x.graded_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Splits `f` into weight components by grouping its monomials by weight.
pub fn weight_decompose<F: Field>(cert: &GpaCertificate<F>, f: &Polynomial<F>) -> Result<WeightDecomposition<F>> {
    if f.is_zero() {
        return Err(Error::Domain("cannot decompose the zero element".into()));
    }
    let sig = cert.algebra.signature();
    let f = f.with_signature(sig)?;
    let mut components: Vec<WeightComponent<F>> = Vec::new();
    for (m, c) in f.terms() {
        let w = monomial_weight(cert, m);
        let term = Polynomial::from_monomial(sig, m.clone(), c.clone())?;
        match components.iter_mut().find(|comp| comp.weight == w) {
            Some(comp) => comp.part = &comp.part + &term,
            None => components.push(WeightComponent { weight: w, part: term }),
        }
    }
    components.sort_by(|a, b| weight_cmp(&a.weight, &b.weight));
    Ok(WeightDecomposition { components })
}

/// One reduction `a ← c·a − {x_generator, a}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogenizationStep<F> {
    pub generator: usize,
    pub multiplier: Polynomial<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogenizationTrace<F> {
    pub steps: Vec<HomogenizationStep<F>>,
}

impl<F: Field> HomogenizationTrace<F> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step to `input`.
    pub fn replay(&self, algebra: &PoissonAlgebra<F>, input: &Polynomial<F>) -> Polynomial<F> {
        self.steps.iter().fold(input.clone(), |a, step| {
            &(&step.multiplier * &a) - &algebra.bracket(&algebra.generator(step.generator), &a)
        })
    }
}

/// Finds a nonzero homogeneous element of the Poisson ideal generated by `a`.
///
/// While `a` has more than one weight component, take the first generator
/// `x_i` at which the component weights are not all equal and the weight
/// `μ` whose value `μ(x_i)` is smallest under [`Polynomial::graded_cmp`],
/// then replace `a` by `μ(x_i)·a − {x_i, a}`. Components of weight `λ` get
/// multiplied by `μ(x_i) − λ(x_i)`, so every component sharing the value
/// `μ(x_i)` is annihilated and the count drops at each step.
pub fn extract_homogeneous<F: Field>(
    cert: &GpaCertificate<F>,
    a: &Polynomial<F>,
) -> Result<(Polynomial<F>, HomogenizationTrace<F>)> {
    let algebra = &cert.algebra;
    let mut current = a.with_signature(algebra.signature())?;
    let mut decomposition = weight_decompose(cert, &current)?;
    let mut steps = Vec::new();
    while decomposition.len() > 1 {
        let (generator, multiplier) = (0..algebra.num_generators())
            .find_map(|i| {
                let mut values = decomposition.weights().map(|w| w.image(i));
                let first = values.next()?;
                let min = decomposition
                    .weights()
                    .map(|w| w.image(i))
                    .min_by(|x, y| x.graded_cmp(y))?;
                values.any(|v| v != first).then(|| (i, min.clone()))
            })
            .expect("distinct weights differ on some generator");
        let next = &(&multiplier * &current) - &algebra.bracket(&algebra.generator(generator), &current);
        let next_decomposition = weight_decompose(cert, &next)?;
        assert!(
            next_decomposition.len() < decomposition.len(),
            "homogenization step did not reduce the number of weight components"
        );
        steps.push(HomogenizationStep { generator, multiplier });
        current = next;
        decomposition = next_decomposition;
    }
    Ok((current, HomogenizationTrace { steps }))
}
