//! Vector matroids over exact matrices, activity of independent column
//! sets, and the two orientation-independence deciders for gain graphs.

use std::cell::RefCell;
use std::collections::HashMap;

use num::One;
use thiserror::Error;

use crate::algebra::ExactMatrix;
use crate::enumeration::{enumerate_cycles, ActivityProfile, EdgeOrdering, EnumerationError};
use crate::graphs::{gain_incidence, GainAssignment, Multigraph, Orientation};
use crate::rational::Rational;
use crate::subset::EdgeSubset;

/// Default guard for the `2^|E|`-orientation sweep.
pub const DEFAULT_ORIENTATION_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("subset is not independent")]
    DependentSubset,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Matroid of the column vectors of an exact matrix, with memoized ranks.
#[derive(Debug)]
pub struct VectorMatroid {
    matrix: ExactMatrix,
    rank_cache: RefCell<HashMap<u64, usize>>,
}

impl VectorMatroid {
    pub fn new(matrix: ExactMatrix) -> Self {
        assert!(matrix.num_cols() <= 63, "ground set too large");
        VectorMatroid {
            matrix,
            rank_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// Size of the ground set (number of columns).
    pub fn ground_size(&self) -> usize {
        self.matrix.num_cols()
    }

    /// Rank of the selected column set.
    pub fn rank(&self, s: EdgeSubset) -> usize {
        if let Some(&r) = self.rank_cache.borrow().get(&s.mask()) {
            return r;
        }
        let cols: Vec<usize> = s.iter().collect();
        let r = self.matrix.select_columns(&cols).rank();
        self.rank_cache.borrow_mut().insert(s.mask(), r);
        r
    }

    pub fn is_independent(&self, s: EdgeSubset) -> bool {
        self.rank(s) == s.len()
    }

    /// All independent subsets.
    pub fn independent_sets(&self) -> Vec<EdgeSubset> {
        EdgeSubset::all(self.ground_size())
            .filter(|&s| self.is_independent(s))
            .collect()
    }

    /// Minimal dependent subsets, by exhaustive search in size order with
    /// hereditary pruning.
    pub fn circuits(&self, cap: usize) -> Result<Vec<EdgeSubset>, MatroidError> {
        let m = self.ground_size();
        if m > cap.min(63) {
            return Err(EnumerationError::EdgeCapExceeded {
                edges: m,
                cap: cap.min(63),
            }
            .into());
        }
        let mut circuits = Vec::new();
        'subset: for s in EdgeSubset::all(m) {
            if self.is_independent(s) {
                continue;
            }
            for e in s.iter() {
                if !self.is_independent(s.without(e)) {
                    continue 'subset;
                }
            }
            circuits.push(s);
        }
        Ok(circuits)
    }

    /// The unique circuit inside `independent + {v}`, when it is dependent.
    pub fn fundamental_circuit(&self, independent: EdgeSubset, v: usize) -> Option<EdgeSubset> {
        let joined = independent.with(v);
        if self.is_independent(joined) {
            return None;
        }
        let mut circuit = EdgeSubset::empty();
        let joined_rank = self.rank(joined);
        for x in joined.iter() {
            if self.rank(joined.without(x)) == joined_rank {
                circuit = circuit.with(x);
            }
        }
        Some(circuit)
    }
}

/// Number of vectors outside `independent` that are minimal in the
/// dependence they close (the fundamental circuit).
pub fn vector_external_activity(
    matroid: &VectorMatroid,
    independent: EdgeSubset,
    ordering: &EdgeOrdering,
) -> Result<usize, MatroidError> {
    if !matroid.is_independent(independent) {
        return Err(MatroidError::DependentSubset);
    }
    let mut active = 0;
    for v in 0..matroid.ground_size() {
        if independent.contains(v) {
            continue;
        }
        if let Some(circuit) = matroid.fundamental_circuit(independent, v) {
            if ordering.min_edge(circuit) == Some(v) {
                active += 1;
            }
        }
    }
    Ok(active)
}

/// Activity histogram over all independent subsets of the column matroid.
pub fn vector_activity_profile(
    matroid: &VectorMatroid,
    ordering: &EdgeOrdering,
    cap: usize,
) -> Result<ActivityProfile, MatroidError> {
    let m = matroid.ground_size();
    if m > cap.min(63) {
        return Err(EnumerationError::EdgeCapExceeded {
            edges: m,
            cap: cap.min(63),
        }
        .into());
    }
    let mut profile = ActivityProfile::new(m);
    for s in EdgeSubset::all(m) {
        if matroid.is_independent(s) {
            let act = vector_external_activity(matroid, s, ordering)?;
            profile.record(s.len(), act);
        }
    }
    Ok(profile)
}

/// Which decider produced an [`OrientationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeciderMethod {
    Criterion,
    BruteForce,
}

/// Verdict of an orientation-independence decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationReport {
    pub independent: bool,
    pub method: DeciderMethod,
    /// A cycle witnessing dependence, when `independent` is false.
    pub failing_cycle: Option<EdgeSubset>,
    /// For the criterion decider: a subset of the failing cycle whose gain
    /// product equals that of its complement.
    pub failing_subset: Option<EdgeSubset>,
}

/// Subset-product condition on every cycle, in both quantifications: over
/// all subsets `P` of the cycle, and over nonempty `P` only. The two
/// differ exactly on cycles whose total gain product is one but whose
/// proper splits are all unequal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetProductCheck {
    /// `prod(P) != prod(S \ P)` for every cycle `S` and every `P`,
    /// the empty set included.
    pub holds_all_subsets: bool,
    /// Same with `P` restricted to nonempty proper subsets.
    pub holds_nonempty_proper: bool,
    pub failing_cycle: Option<EdgeSubset>,
    pub failing_subset: Option<EdgeSubset>,
}

fn subset_product(gains: &GainAssignment, s: EdgeSubset) -> Rational {
    s.iter()
        .fold(Rational::one(), |acc, e| acc * gains.gain(e))
}

/// Evaluates the subset-product condition over every simple cycle.
pub fn subset_product_condition(
    g: &Multigraph,
    gains: &GainAssignment,
    cap: usize,
) -> Result<SubsetProductCheck, MatroidError> {
    let cycles = enumerate_cycles(g, cap)?;
    let mut check = SubsetProductCheck {
        holds_all_subsets: true,
        holds_nonempty_proper: true,
        failing_cycle: None,
        failing_subset: None,
    };
    for cycle in cycles {
        let total = subset_product(gains, cycle);
        for p in cycle.subsets_by_size() {
            let prod = subset_product(gains, p);
            let complement = &total / &prod;
            if prod == complement {
                check.holds_all_subsets = false;
                if !p.is_empty() && p != cycle {
                    check.holds_nonempty_proper = false;
                }
                if check.failing_cycle.is_none() {
                    check.failing_cycle = Some(cycle);
                    check.failing_subset = Some(p);
                }
            }
        }
    }
    Ok(check)
}

/// Criterion decider: the gain matroid is orientation-independent iff every
/// cycle either carries only gains of absolute value one, or has all
/// subset products distinct from their complements (so it is gainless under
/// no orientation at all).
pub fn orientation_independent_criterion(
    g: &Multigraph,
    gains: &GainAssignment,
    cap: usize,
) -> Result<OrientationReport, MatroidError> {
    let cycles = enumerate_cycles(g, cap)?;
    for cycle in cycles {
        let all_unit = cycle
            .iter()
            .all(|e| gains.gain(e) == &Rational::one() || gains.gain(e) == &(-Rational::one()));
        if all_unit {
            continue;
        }
        let total = subset_product(gains, cycle);
        for p in cycle.subsets_by_size() {
            let prod = subset_product(gains, p);
            if &total / &prod == prod {
                return Ok(OrientationReport {
                    independent: false,
                    method: DeciderMethod::Criterion,
                    failing_cycle: Some(cycle),
                    failing_subset: Some(p),
                });
            }
        }
    }
    Ok(OrientationReport {
        independent: true,
        method: DeciderMethod::Criterion,
        failing_cycle: None,
        failing_subset: None,
    })
}

/// Independence family of the gain incidence matrix as a sorted mask list.
fn independence_family(g: &Multigraph, orientation: &Orientation, gains: &GainAssignment) -> Vec<u64> {
    let matroid = VectorMatroid::new(gain_incidence(g, orientation, gains));
    matroid
        .independent_sets()
        .into_iter()
        .map(EdgeSubset::mask)
        .collect()
}

/// Brute-force decider: sweeps every orientation (gains fixed to the
/// edges, flips relative to `base`) and compares the labeled independence
/// families of the resulting gain incidence matrices.
pub fn orientation_independent_bruteforce(
    g: &Multigraph,
    gains: &GainAssignment,
    base: &Orientation,
    cap: usize,
) -> Result<OrientationReport, MatroidError> {
    let m = g.num_edges();
    if m > cap.min(63) {
        return Err(EnumerationError::EdgeCapExceeded {
            edges: m,
            cap: cap.min(63),
        }
        .into());
    }
    // flipping a loop never changes the matrix, so sweep non-loop edges only
    let movable: Vec<usize> = (0..m).filter(|&e| !g.is_loop(e)).collect();
    let reference = independence_family(g, base, gains);
    for pattern in 1u64..1 << movable.len() {
        let mut orientation = base.clone();
        for (bit, &e) in movable.iter().enumerate() {
            if pattern >> bit & 1 == 1 {
                orientation = orientation.with_toggled(e);
            }
        }
        let family = independence_family(g, &orientation, gains);
        if family != reference {
            let witness = find_differing_cycle(g, base, &orientation, gains, cap)?;
            return Ok(OrientationReport {
                independent: false,
                method: DeciderMethod::BruteForce,
                failing_cycle: witness,
                failing_subset: None,
            });
        }
    }
    Ok(OrientationReport {
        independent: true,
        method: DeciderMethod::BruteForce,
        failing_cycle: None,
        failing_subset: None,
    })
}

/// A simple cycle whose independence differs between the two orientations.
/// One always exists when the families differ.
fn find_differing_cycle(
    g: &Multigraph,
    first: &Orientation,
    second: &Orientation,
    gains: &GainAssignment,
    cap: usize,
) -> Result<Option<EdgeSubset>, MatroidError> {
    let a = VectorMatroid::new(gain_incidence(g, first, gains));
    let b = VectorMatroid::new(gain_incidence(g, second, gains));
    for cycle in enumerate_cycles(g, cap)? {
        if a.is_independent(cycle) != b.is_independent(cycle) {
            return Ok(Some(cycle));
        }
    }
    Ok(None)
}
