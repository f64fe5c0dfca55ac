use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::signature::Signature;

/// A derivation of the (Laurent) polynomial ring, stored by its images on
/// the generators and extended by the Leibniz rule,
/// `D(f) = Σ_i ∂_i f · D(x_i)`.
///
/// Two derivations agreeing on the generators agree everywhere, so equality
/// is equality of the image vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<F> {
    sig: Arc<Signature>,
    images: Vec<Polynomial<F>>,
}

impl<F: Field> Derivation<F> {
    pub fn new(sig: &Arc<Signature>, images: Vec<Polynomial<F>>) -> Result<Self> {
        if images.len() != sig.len() {
            return Err(Error::Domain(format!(
                "derivation needs {} generator images, got {}",
                sig.len(),
                images.len()
            )));
        }
        let images = images.iter().map(|p| p.with_signature(sig)).collect::<Result<_>>()?;
        Ok(Derivation {
            sig: Arc::clone(sig),
            images,
        })
    }

    pub fn zero(sig: &Arc<Signature>) -> Self {
        Derivation {
            sig: Arc::clone(sig),
            images: vec![Polynomial::zero(sig); sig.len()],
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// `D(x_i)`.
    pub fn image(&self, i: usize) -> &Polynomial<F> {
        &self.images[i]
    }

    pub fn images(&self) -> &[Polynomial<F>] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// True when every image is a constant.
    pub fn is_constant(&self) -> bool {
        self.images.iter().all(|p| p.constant_value().is_some())
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero(&self.sig);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial_derivative(i);
            if !d.is_zero() {
                out = out + &d * img;
            }
        }
        out
    }

    /// `[self, other]`, with images `self(other(x_i)) - other(self(x_i))`.
    pub fn commutator(&self, other: &Self) -> Self {
        let images = (0..self.sig.len())
            .map(|i| self.apply(&other.images[i]) - other.apply(&self.images[i]))
            .collect();
        Derivation {
            sig: Arc::clone(&self.sig),
            images,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &F) -> Self {
        Derivation {
            sig: Arc::clone(&self.sig),
            images: self.images.iter().map(|p| p.scale(c)).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&Polynomial<F>, &Polynomial<F>) -> Polynomial<F>) -> Self {
        Derivation {
            sig: Arc::clone(&self.sig),
            images: self.images.iter().zip(&other.images).map(|(a, b)| op(a, b)).collect(),
        }
    }
}
