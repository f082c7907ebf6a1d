use std::collections::BTreeMap;

use super::poly::Poly;
use super::rational::Rational;

/// Finite formal linear combination of basis elements `B` with polynomial
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Poly>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(b: B) -> Self {
        Self::term(b, Poly::one())
    }

    pub fn term(b: B, c: Poly) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Poly)> {
        self.terms.iter()
    }

    pub fn basis(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn coeff(&self, b: &B) -> Poly {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, b: B, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * factor);
        }
    }

    pub fn add_scaled_rat(&mut self, other: &Self, factor: &Rational) {
        self.add_scaled(other, &Poly::constant(factor.clone()));
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Poly::from_int(-1));
        out
    }

    pub fn scale(&self, factor: &Poly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn scale_rat(&self, factor: &Rational) -> Self {
        self.scale(&Poly::constant(factor.clone()))
    }

    /// Keeps only the terms whose basis element satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients as exact rationals, `None` if any coefficient is a
    /// non-constant polynomial.
    pub fn rational_coeffs(&self) -> Option<Vec<(B, Rational)>> {
        self.terms
            .iter()
            .map(|(b, c)| c.as_constant().map(|r| (b.clone(), r)))
            .collect()
    }
}

impl<B: Ord + Clone> FromIterator<(B, Poly)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Poly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}
