//! Graded Hilbert function of the subalgebra generated by matrix rows.
//!
//! The generators are `y_v = sum_e A[v,e] x_e`, one per matrix row. The
//! degree-k component is spanned by all products of k generators (multisets,
//! since `y_v^2` need not vanish); its dimension is the rank of those
//! products expanded in the degree-k monomial basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::square_free::SquareFreeElement;
use crate::rational::Rational;

/// Graded dimensions, truncated at the top nonzero degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
    pub total: usize,
}

impl HilbertFunction {
    pub fn new(mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        let total = dims.iter().sum();
        HilbertFunction { dims, total }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, " | total {}", self.total)
    }
}

/// One degree-one generator per matrix row; zero rows give zero elements.
pub fn generators_from_matrix(a: &ExactMatrix) -> Vec<SquareFreeElement> {
    let m = a.num_cols();
    (0..a.num_rows())
        .map(|v| {
            let mut y = SquareFreeElement::zero(m);
            for e in 0..m {
                let coeff: &Rational = a.get(v, e);
                if !num::Zero::is_zero(coeff) {
                    let term = SquareFreeElement::variable(m, e).scaled(coeff);
                    y = y.try_add(&term).expect("same ground set");
                }
            }
            y
        })
        .collect()
}

/// Rank of a list of elements viewed as vectors over the monomials that
/// actually occur in them.
fn span_rank(elements: &[SquareFreeElement]) -> usize {
    let mut basis: Vec<u64> = elements
        .iter()
        .flat_map(|e| e.terms().map(|(s, _)| s.mask()))
        .collect();
    basis.sort_unstable();
    basis.dedup();
    if basis.is_empty() {
        return 0;
    }
    let rows = elements
        .iter()
        .map(|e| {
            let mut row = vec![Rational::from_integer(0.into()); basis.len()];
            for (s, c) in e.terms() {
                let j = basis.binary_search(&s.mask()).expect("term in basis");
                row[j] = c.clone();
            }
            row
        })
        .collect();
    ExactMatrix::from_rows(rows)
        .expect("uniform row length")
        .rank()
}

/// Nonzero products of `k` generators taken with repetition, paired with the
/// largest generator index used (so extensions stay non-decreasing).
fn next_level(
    gens: &[SquareFreeElement],
    level: &[(usize, SquareFreeElement)],
) -> Vec<(usize, SquareFreeElement)> {
    let mut next = Vec::new();
    for (start, p) in level {
        for v in *start..gens.len() {
            let q = p.try_mul(&gens[v]).expect("same ground set");
            if !q.is_zero() {
                next.push((v, q));
            }
        }
    }
    next
}

fn unit_level(a: &ExactMatrix) -> Vec<(usize, SquareFreeElement)> {
    vec![(0, SquareFreeElement::one(a.num_cols()))]
}

/// Dimension of the degree-`k` graded component of the algebra generated by
/// the rows of `a`. Degree zero is the ground field itself.
pub fn graded_dimension(a: &ExactMatrix, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    let gens = generators_from_matrix(a);
    let mut level = unit_level(a);
    for _ in 0..k {
        level = next_level(&gens, &level);
        if level.is_empty() {
            return 0;
        }
    }
    let elements: Vec<SquareFreeElement> = level.into_iter().map(|(_, e)| e).collect();
    span_rank(&elements)
}

/// Full Hilbert function: graded dimensions from degree zero until they
/// vanish. Terminates because nothing survives past degree `cols`.
pub fn hilbert_function(a: &ExactMatrix) -> HilbertFunction {
    let gens = generators_from_matrix(a);
    let mut dims = vec![1usize];
    let mut level = unit_level(a);
    loop {
        level = next_level(&gens, &level);
        if level.is_empty() {
            break;
        }
        let elements: Vec<SquareFreeElement> = level.iter().map(|(_, e)| e.clone()).collect();
        dims.push(span_rank(&elements));
    }
    HilbertFunction::new(dims)
}
