//! Sparse multivariate Laurent polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::signature::Signature;

/// A polynomial in the generators of a [`Signature`].
///
/// Terms are kept in a map keyed by graded-lex ordered monomials with no zero
/// coefficients, so structural equality is mathematical equality. The
/// canonical listing order (rendering, "leading term") is descending.
#[derive(Clone, Debug)]
pub struct Polynomial<F> {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: PartialEq> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.sig, &other.sig) || *self.sig == *other.sig) && self.terms == other.terms
    }
}

impl<F: Eq> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Polynomial {
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, F::one())
    }

    pub fn constant(sig: &Arc<Signature>, c: F) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(Monomial::one(sig.len()), c);
        p
    }

    /// The generator `x_i`.
    pub fn var(sig: &Arc<Signature>, i: usize) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(Monomial::var(sig.len(), i), F::one());
        p
    }

    pub fn from_monomial(sig: &Arc<Signature>, m: Monomial, c: F) -> Result<Self> {
        Self::from_terms(sig, [(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging repeats and dropping
    /// zeros. Fails on a wrong exponent-vector length or a negative exponent
    /// on a non-invertible variable.
    pub fn from_terms(sig: &Arc<Signature>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Result<Self> {
        let mut p = Self::zero(sig);
        for (m, c) in terms {
            if m.len() != sig.len() {
                return Err(Error::Domain(format!(
                    "monomial has {} exponents, signature has {} variables",
                    m.len(),
                    sig.len()
                )));
            }
            if let Some(i) = (0..sig.len()).find(|&i| m.exponent(i) < 0 && !sig.is_invertible(i)) {
                return Err(Error::NonInvertible(sig.name(i).to_string()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn same_signature(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || *self.sig == *other.sig
    }

    fn check_signature(&self, other: &Self) -> Result<()> {
        if self.same_signature(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// True when every term has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_signature(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_signature(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_signature(other)?;
        let mut out = Self::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Polynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `m` (which must respect the signature).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.sig);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂f/∂x_i`, termwise `k x^{k-1}`, valid for negative exponents.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.sig);
        for (m, c) in &self.terms {
            let k = m.exponent(i);
            if k == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] -= 1;
            out.add_term(dm, c.clone() * F::from_i64(k as i64));
        }
        out
    }

    /// Exact division: `Some(q)` with `self = q * g` if such `q` exists in the
    /// (Laurent) ring, `None` otherwise.
    ///
    /// Both operands are first shifted by a monomial in the invertible
    /// variables so that each such variable has minimal exponent zero; the
    /// shifted problem is then ordinary polynomial division by leading terms.
    pub fn exact_divide(&self, g: &Self) -> Result<Option<Self>> {
        self.check_signature(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(&self.sig)));
        }
        let (f0, f_shift) = self.strip_unit_monomial();
        let (g0, g_shift) = g.strip_unit_monomial();
        let (lead_m, lead_c) = g0.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();

        let mut rem = f0;
        let mut quot = Self::zero(&self.sig);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lead_m.divides(rm) {
                return Ok(None);
            }
            let tm = rm.div(&lead_m);
            let tc = rc.clone() / lead_c.clone();
            rem = &rem - &g0.mul_monomial(&tm).scale(&tc);
            quot.add_term(tm, tc);
        }
        Ok(Some(quot.mul_monomial(&f_shift.div(&g_shift))))
    }

    /// Splits off the largest monomial in the invertible variables dividing
    /// every term: returns `(p, u)` with `self = p * u`.
    fn strip_unit_monomial(&self) -> (Self, Monomial) {
        let n = self.sig.len();
        let mut shift = vec![0i32; n];
        for (i, s) in shift.iter_mut().enumerate() {
            if self.sig.is_invertible(i) {
                *s = self.terms.keys().map(|m| m.exponent(i)).min().unwrap_or(0);
            }
        }
        let shift = Monomial::from_exponents(shift);
        (self.mul_monomial(&shift.pow(-1)), shift)
    }

    /// Substitutes polynomials (over another signature) for the generators.
    /// Negative exponents require the substituted value to be a unit
    /// monomial; anything else is a domain error.
    pub fn substitute(&self, values: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if values.len() != self.sig.len() {
            return Err(Error::Domain("wrong number of substitution values".into()));
        }
        let target = values[0].signature().clone();
        if values.iter().any(|v| !Arc::ptr_eq(v.signature(), &target) && **v.signature() != *target) {
            return Err(Error::SignatureMismatch);
        }
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &k) in m.exponents().iter().enumerate() {
                if k >= 0 {
                    t = &t * &values[i].pow(k as u32);
                } else {
                    let inv = values[i]
                        .unit_inverse()
                        .ok_or_else(|| Error::Domain("negative power of a non-unit".into()))?;
                    t = &t * &inv.pow((-k) as u32);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Inverse of a unit, i.e. a single-term polynomial whose monomial only
    /// involves invertible variables.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv = m.pow(-1);
        Self::from_monomial(&self.sig, inv, F::one() / c.clone()).ok()
    }

    /// Total order used for deterministic tie-breaking: terms are compared in
    /// canonical order (monomial, then coefficient); a proper prefix is
    /// smaller, so zero is the minimum.
    pub fn graded_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms();
        let mut b = other.terms();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }

    /// Reinterprets the polynomial over an equal signature object.
    pub fn with_signature(&self, sig: &Arc<Signature>) -> Result<Self> {
        if **sig != *self.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(Polynomial {
            sig: Arc::clone(sig),
            terms: self.terms.clone(),
        })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics if the operands live over different signatures.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial signature mismatch")
            }
        }

        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }

        impl<F: Field> $tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, sig: &Signature, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &k) in m.exponents().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(sig.name(i))?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Renders in canonical order using the expression grammar accepted by
    /// [`crate::parse::parse_polynomial`], e.g. `h^2 + 4*e*f`, `x^-1*y - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.sig, m)?;
            }
        }
        Ok(())
    }
}
