//! Elements of the square-free quotient algebra `B(E) = Q[x_e] / (x_e^2)`.
//!
//! A monomial is an edge subset; multiplication of monomials with overlapping
//! support is zero because the repeated variable squares away. There are no
//! signs: the algebra is a commutative polynomial quotient, not an exterior
//! algebra.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::AlgebraError;
use crate::rational::Rational;
use crate::subset::EdgeSubset;

/// Element of `B(E)`: a finite sum of rational multiples of square-free
/// monomials over a ground set of `num_edges` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeElement {
    num_edges: usize,
    terms: BTreeMap<u64, Rational>,
}

impl SquareFreeElement {
    pub fn zero(num_edges: usize) -> Self {
        SquareFreeElement {
            num_edges,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit (the empty monomial with coefficient one).
    pub fn one(num_edges: usize) -> Self {
        Self::monomial(num_edges, EdgeSubset::empty(), crate::rational::rat(1))
    }

    /// The single variable `x_e`.
    pub fn variable(num_edges: usize, e: usize) -> Self {
        assert!(e < num_edges);
        Self::monomial(
            num_edges,
            EdgeSubset::empty().with(e),
            crate::rational::rat(1),
        )
    }

    pub fn monomial(num_edges: usize, support: EdgeSubset, coefficient: Rational) -> Self {
        assert!(
            support.is_subset_of(EdgeSubset::full(num_edges)),
            "monomial support outside the ground set"
        );
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(support.mask(), coefficient);
        }
        SquareFreeElement { num_edges, terms }
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, support: EdgeSubset) -> Rational {
        self.terms
            .get(&support.mask())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms as `(support, coefficient)` pairs in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (EdgeSubset, &Rational)> {
        self.terms
            .iter()
            .map(|(&m, c)| (EdgeSubset::from_mask(m), c))
    }

    fn check_ground(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.num_edges != other.num_edges {
            return Err(AlgebraError::DimensionMismatch {
                left: self.num_edges,
                right: other.num_edges,
            });
        }
        Ok(())
    }

    /// Coefficient-wise sum; errors on mismatched ground sets.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ground(other)?;
        let mut terms = self.terms.clone();
        for (&mask, coeff) in &other.terms {
            let entry = terms.entry(mask).or_insert_with(Rational::zero);
            *entry += coeff;
            if entry.is_zero() {
                terms.remove(&mask);
            }
        }
        Ok(SquareFreeElement {
            num_edges: self.num_edges,
            terms,
        })
    }

    /// Product in `B(E)`: monomials with overlapping support vanish, the
    /// rest multiply to the union of supports.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ground(other)?;
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&s, a) in &self.terms {
            for (&t, b) in &other.terms {
                if s & t != 0 {
                    continue;
                }
                let entry = terms.entry(s | t).or_insert_with(Rational::zero);
                *entry += a * b;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SquareFreeElement {
            num_edges: self.num_edges,
            terms,
        })
    }

    #[must_use]
    pub fn negated(&self) -> Self {
        self.scaled(&crate::rational::rat(-1))
    }

    #[must_use]
    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.num_edges);
        }
        SquareFreeElement {
            num_edges: self.num_edges,
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, c * factor))
                .collect(),
        }
    }
}

impl fmt::Display for SquareFreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (support, coeff)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if support.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                write!(f, "{coeff}*")?;
                for (j, e) in support.iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "x{e}")?;
                }
            }
        }
        Ok(())
    }
}
