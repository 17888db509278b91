//! The free linear space generated by the carrier set `X × Y`.
//!
//! A free vector is a finitely supported scalar function on pairs `(x, y)`.
//! Distinct pairs are independent basis elements, so `e_{(x,y)}` and
//! `e_{(2x,y)}` never interact here; identifying them is the job of the
//! quotient realization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::space::{Vector, VectorSpace};

/// Canonical byte encoding of a carrier point `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CarrierKey(Vec<u8>);

impl CarrierKey {
    pub fn new<F: Field>(x: &Vector<F>, y: &Vector<F>) -> Self {
        let mut out = Vec::new();
        for v in [x, y] {
            out.extend_from_slice(&(v.dim() as u32).to_le_bytes());
            for c in v.coords() {
                c.write_key(&mut out);
            }
        }
        CarrierKey(out)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTerm<F> {
    pub x: Vector<F>,
    pub y: Vector<F>,
    pub coeff: F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector<F> {
    left: VectorSpace,
    right: VectorSpace,
    terms: BTreeMap<CarrierKey, FreeTerm<F>>,
}

impl<F: Field> FreeVector<F> {
    pub fn zero(left: &VectorSpace, right: &VectorSpace) -> Self {
        FreeVector {
            left: left.clone(),
            right: right.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn left(&self) -> &VectorSpace {
        &self.left
    }

    pub fn right(&self) -> &VectorSpace {
        &self.right
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = &FreeTerm<F>> {
        self.terms.values()
    }

    pub fn coefficient(&self, x: &Vector<F>, y: &Vector<F>) -> F {
        self.terms
            .get(&CarrierKey::new(x, y))
            .map_or_else(F::zero, |t| t.coeff.clone())
    }

    /// Adds `coeff · e_{(x,y)}`, pruning the entry if it cancels.
    pub fn add_term(&mut self, coeff: F, x: &Vector<F>, y: &Vector<F>) -> Result<()> {
        self.left.check_vector(x)?;
        self.right.check_vector(y)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let key = CarrierKey::new(x, y);
        let updated = match self.terms.get(&key) {
            Some(t) => t.coeff.clone() + coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(
                key,
                FreeTerm {
                    x: x.clone(),
                    y: y.clone(),
                    coeff: updated,
                },
            );
        }
        Ok(())
    }

    fn check_carrier(&self, other: &FreeVector<F>) -> Result<()> {
        if self.left.compatible(&other.left) && self.right.compatible(&other.right) {
            Ok(())
        } else {
            Err(Error::MixedCarriers(format!(
                "{}x{} vs {}x{}",
                self.left.dim(),
                self.right.dim(),
                other.left.dim(),
                other.right.dim()
            )))
        }
    }

    /// `self + alpha · other`.
    pub fn add_scaled(&self, alpha: &F, other: &FreeVector<F>) -> Result<Self> {
        self.check_carrier(other)?;
        let mut out = self.clone();
        for t in other.terms() {
            out.add_term(alpha.clone() * t.coeff.clone(), &t.x, &t.y)?;
        }
        Ok(out)
    }

    pub fn scale(&self, alpha: &F) -> Self {
        let mut out = FreeVector::zero(&self.left, &self.right);
        for t in self.terms() {
            out.add_term(alpha.clone() * t.coeff.clone(), &t.x, &t.y)
                .expect("terms already validated");
        }
        out
    }
}

/// The characteristic function `e_{(x,y)}` of a single carrier point.
pub fn free_embed<F: Field>(
    left: &VectorSpace,
    right: &VectorSpace,
    x: &Vector<F>,
    y: &Vector<F>,
) -> Result<FreeVector<F>> {
    left.field().ensure_same(&right.field())?;
    let mut f = FreeVector::zero(left, right);
    f.add_term(F::one(), x, y)?;
    Ok(f)
}

/// Pointwise linear combination `Σ αᵢ fᵢ`.
pub fn free_combine<F: Field>(terms: &[(F, FreeVector<F>)]) -> Result<FreeVector<F>> {
    let (_, first) = terms
        .first()
        .ok_or_else(|| Error::MixedCarriers("empty combination has no carrier".into()))?;
    let mut acc = FreeVector::zero(&first.left, &first.right);
    for (alpha, f) in terms {
        acc = acc.add_scaled(alpha, f)?;
    }
    Ok(acc)
}
