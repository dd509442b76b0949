//! Multigraphs, orientations, gain assignments, and the incidence-matrix
//! families they generate.
//!
//! Edge order matters: it is both the default linear ordering used by the
//! activity statistics and the default orientation (stored tail to stored
//! head). Loops and parallel edges are allowed everywhere.

use num::{One, Zero};
use thiserror::Error;

use crate::algebra::ExactMatrix;
use crate::rational::{rat, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({tail},{head}) out of range for {vertices} vertices")]
    VertexOutOfRange {
        tail: usize,
        head: usize,
        vertices: usize,
    },
    #[error("gain for edge {edge} is zero")]
    ZeroGain { edge: usize },
    #[error("expected {edges} per-edge values, got {got}")]
    EdgeCountMismatch { edges: usize, got: usize },
    #[error("column {column} has {nonzeros} nonzero entries, at most two allowed")]
    NotGeneralizedIncidence { column: usize, nonzeros: usize },
    #[error("column {column} encodes a loop whose gain would be zero")]
    LoopGainZero { column: usize },
    #[error("zero column {column} needs at least one row to host its loop")]
    NoRowForZeroColumn { column: usize },
}

/// Undirected multigraph: a vertex count and an ordered edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(num_vertices: usize) -> Self {
        Multigraph {
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn with_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(num_vertices);
        for &(t, h) in edges {
            g.add_edge(t, h)?;
        }
        Ok(g)
    }

    /// Appends an edge and returns its index.
    pub fn add_edge(&mut self, tail: usize, head: usize) -> Result<usize, GraphError> {
        if tail >= self.num_vertices || head >= self.num_vertices {
            return Err(GraphError::VertexOutOfRange {
                tail,
                head,
                vertices: self.num_vertices,
            });
        }
        self.edges.push((tail, head));
        Ok(self.edges.len() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (t, h) = self.edges[e];
        t == h
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }
}

/// Per-edge flip flags relative to the stored tail -> head direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    flips: Vec<bool>,
}

impl Orientation {
    /// Every edge as stored, tail to head.
    pub fn forward(num_edges: usize) -> Self {
        Orientation {
            flips: vec![false; num_edges],
        }
    }

    pub fn from_flips(flips: Vec<bool>) -> Self {
        Orientation { flips }
    }

    /// Flip flags taken from the bits of `mask` (edge `e` flipped iff bit
    /// `e` is set).
    pub fn from_mask(num_edges: usize, mask: u64) -> Self {
        Orientation {
            flips: (0..num_edges).map(|e| mask >> e & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn flipped(&self, e: usize) -> bool {
        self.flips[e]
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    #[must_use]
    pub fn with_toggled(&self, e: usize) -> Self {
        let mut flips = self.flips.clone();
        flips[e] = !flips[e];
        Orientation { flips }
    }

    /// Actual (tail, head) of edge `e` under this orientation.
    pub fn directed_endpoints(&self, g: &Multigraph, e: usize) -> (usize, usize) {
        let (t, h) = g.endpoints(e);
        if self.flips[e] {
            (h, t)
        } else {
            (t, h)
        }
    }
}

/// Nonzero rational gain per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainAssignment {
    gains: Vec<Rational>,
}

impl GainAssignment {
    pub fn try_new(gains: Vec<Rational>) -> Result<Self, GraphError> {
        if let Some(e) = gains.iter().position(Zero::is_zero) {
            return Err(GraphError::ZeroGain { edge: e });
        }
        Ok(GainAssignment { gains })
    }

    /// Constant gain on every edge; panics on zero.
    pub fn constant(num_edges: usize, gain: Rational) -> Self {
        Self::try_new(vec![gain; num_edges]).expect("nonzero constant gain")
    }

    pub fn from_i64(gains: &[i64]) -> Result<Self, GraphError> {
        Self::try_new(gains.iter().map(|&n| rat(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }

    pub fn gain(&self, e: usize) -> &Rational {
        &self.gains[e]
    }

    pub fn gains(&self) -> &[Rational] {
        &self.gains
    }

    #[must_use]
    pub fn with_inverted(&self, e: usize) -> Self {
        let mut gains = self.gains.clone();
        gains[e] = gains[e].recip();
        GainAssignment { gains }
    }

    /// Gains inverted on every edge flipped by `mask`.
    #[must_use]
    pub fn inverted_on_mask(&self, mask: u64) -> Self {
        let gains = self
            .gains
            .iter()
            .enumerate()
            .map(|(e, g)| if mask >> e & 1 == 1 { g.recip() } else { g.clone() })
            .collect();
        GainAssignment { gains }
    }
}

fn check_edge_count(g: &Multigraph, got: usize) {
    assert_eq!(
        g.num_edges(),
        got,
        "per-edge data must match the edge count"
    );
}

/// Directed incidence matrix: -1 at the tail, +1 at the head of every
/// non-loop edge under the orientation; loop columns are zero.
pub fn directed_incidence(g: &Multigraph, orientation: &Orientation) -> ExactMatrix {
    check_edge_count(g, orientation.len());
    let mut a = ExactMatrix::zeros(g.num_vertices(), g.num_edges());
    for e in 0..g.num_edges() {
        if g.is_loop(e) {
            continue;
        }
        let (t, h) = orientation.directed_endpoints(g, e);
        a.set(t, e, rat(-1));
        a.set(h, e, rat(1));
    }
    a
}

/// Undirected incidence matrix: 1 at both endpoints of every non-loop edge.
/// A loop contributes a single entry 2, so that the column stays nonzero and
/// the column matroid matches the even-circle matroid (a single loop is an
/// odd cycle, hence independent).
pub fn undirected_incidence(g: &Multigraph) -> ExactMatrix {
    let mut a = ExactMatrix::zeros(g.num_vertices(), g.num_edges());
    for e in 0..g.num_edges() {
        let (t, h) = g.endpoints(e);
        if t == h {
            a.set(t, e, rat(2));
        } else {
            a.set(t, e, rat(1));
            a.set(h, e, rat(1));
        }
    }
    a
}

/// Gain incidence matrix: -1 at the tail, the gain at the head, and
/// `gain - 1` for a loop.
pub fn gain_incidence(
    g: &Multigraph,
    orientation: &Orientation,
    gains: &GainAssignment,
) -> ExactMatrix {
    check_edge_count(g, orientation.len());
    check_edge_count(g, gains.len());
    let mut a = ExactMatrix::zeros(g.num_vertices(), g.num_edges());
    for e in 0..g.num_edges() {
        let (t, h) = orientation.directed_endpoints(g, e);
        if t == h {
            a.set(t, e, gains.gain(e) - Rational::one());
        } else {
            a.set(t, e, rat(-1));
            a.set(h, e, gains.gain(e).clone());
        }
    }
    a
}

/// Result of [`reorient_edge`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reorientation {
    pub orientation: Orientation,
    pub gains: GainAssignment,
    /// Set when the edge was a loop and nothing changed.
    pub loop_unchanged: bool,
}

/// Flips one edge and inverts its gain, which preserves the circulation
/// algebra up to isomorphism. Loops are left untouched and flagged, since
/// their incidence entry does not depend on the orientation.
pub fn reorient_edge(
    g: &Multigraph,
    orientation: &Orientation,
    gains: &GainAssignment,
    e: usize,
) -> Reorientation {
    check_edge_count(g, orientation.len());
    check_edge_count(g, gains.len());
    assert!(e < g.num_edges(), "edge index out of range");
    if g.is_loop(e) {
        return Reorientation {
            orientation: orientation.clone(),
            gains: gains.clone(),
            loop_unchanged: true,
        };
    }
    Reorientation {
        orientation: orientation.with_toggled(e),
        gains: gains.with_inverted(e),
        loop_unchanged: false,
    }
}

/// Matrix with at most two nonzero entries per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedIncidenceMatrix(ExactMatrix);

impl GeneralizedIncidenceMatrix {
    pub fn as_matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ExactMatrix {
        self.0
    }
}

impl TryFrom<ExactMatrix> for GeneralizedIncidenceMatrix {
    type Error = GraphError;

    fn try_from(a: ExactMatrix) -> Result<Self, GraphError> {
        for c in 0..a.num_cols() {
            let nonzeros = (0..a.num_rows()).filter(|&r| !a.get(r, c).is_zero()).count();
            if nonzeros > 2 {
                return Err(GraphError::NotGeneralizedIncidence { column: c, nonzeros });
            }
        }
        Ok(GeneralizedIncidenceMatrix(a))
    }
}

/// Gain graph recovered from a generalized incidence matrix, together with
/// the per-column scale factors that reconstruct the original columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredGainGraph {
    pub graph: Multigraph,
    pub orientation: Orientation,
    pub gains: GainAssignment,
    /// `column_scales[e] * gain_incidence(..)` column `e` equals the input
    /// column `e`.
    pub column_scales: Vec<Rational>,
}

/// Reads a gain graph off a generalized incidence matrix: rows become
/// vertices; a column with entries at rows `v < u` becomes the edge `v -> u`
/// with gain `-A[u,e]/A[v,e]`; a single-entry column at row `v` becomes a
/// loop with gain `A[v,e] + 1`. All-zero columns become gainless loops at
/// vertex 0 so the ground set and the column matroid are preserved.
///
/// The vector matroid of the input equals the gain matroid of the result.
pub fn gain_graph_from_matrix(
    a: &GeneralizedIncidenceMatrix,
) -> Result<RecoveredGainGraph, GraphError> {
    let m = a.as_matrix();
    let mut graph = Multigraph::new(m.num_rows());
    let mut gains = Vec::with_capacity(m.num_cols());
    let mut scales = Vec::with_capacity(m.num_cols());
    for c in 0..m.num_cols() {
        let support: Vec<usize> = (0..m.num_rows())
            .filter(|&r| !m.get(r, c).is_zero())
            .collect();
        match support.as_slice() {
            [] => {
                if m.num_rows() == 0 {
                    return Err(GraphError::NoRowForZeroColumn { column: c });
                }
                graph.add_edge(0, 0)?;
                gains.push(Rational::one());
                scales.push(Rational::one());
            }
            [v] => {
                let gain = m.get(*v, c) + Rational::one();
                if gain.is_zero() {
                    return Err(GraphError::LoopGainZero { column: c });
                }
                graph.add_edge(*v, *v)?;
                gains.push(gain);
                scales.push(Rational::one());
            }
            [v, u] => {
                // v < u by construction; orient from the smaller row.
                graph.add_edge(*v, *u)?;
                gains.push(-(m.get(*u, c) / m.get(*v, c)));
                scales.push(-m.get(*v, c).clone());
            }
            _ => unreachable!("validated at construction"),
        }
    }
    let num_edges = graph.num_edges();
    Ok(RecoveredGainGraph {
        graph,
        orientation: Orientation::forward(num_edges),
        gains: GainAssignment::try_new(gains)?,
        column_scales: scales,
    })
}

/// Triangle on vertices 0,1,2 with edges (0,1), (1,2), (2,0).
pub fn triangle() -> Multigraph {
    Multigraph::with_edges(3, &[(0, 1), (1, 2), (2, 0)]).expect("valid")
}

/// Cycle on `n` vertices with edges (0,1), (1,2), .., (n-1,0).
pub fn cycle_graph(n: usize) -> Multigraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::with_edges(n, &edges).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hilbert_function, parallel_vectors};
    use crate::rational::ratio;

    #[test]
    fn directed_incidence_of_triangle() {
        let g = triangle();
        let a = directed_incidence(&g, &Orientation::forward(3));
        assert_eq!(a.column(0), vec![rat(-1), rat(1), rat(0)]);
        assert_eq!(a.column(1), vec![rat(0), rat(-1), rat(1)]);
        assert_eq!(a.column(2), vec![rat(1), rat(0), rat(-1)]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn loop_gives_zero_column_directed() {
        let g = Multigraph::with_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let a = directed_incidence(&g, &Orientation::forward(2));
        assert!(a.column_is_zero(0));
        assert!(!a.column_is_zero(1));
    }

    #[test]
    fn flip_negates_exactly_one_column() {
        let g = triangle();
        let base = directed_incidence(&g, &Orientation::forward(3));
        let flipped = directed_incidence(&g, &Orientation::from_flips(vec![false, true, false]));
        for e in 0..3 {
            let expect = if e == 1 { rat(-1) } else { rat(1) };
            let col = base.column(e);
            let got = flipped.column(e);
            for (a, b) in col.iter().zip(&got) {
                assert_eq!(&(a * &expect), b);
            }
        }
    }

    #[test]
    fn undirected_incidence_of_triangle_and_path() {
        let a = undirected_incidence(&triangle());
        assert_eq!(a.column(0), vec![rat(1), rat(1), rat(0)]);
        assert_eq!(a.rank(), 3);

        let path = Multigraph::with_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(undirected_incidence(&path).rank(), 2);
    }

    #[test]
    fn undirected_loop_entry_is_two() {
        let g = Multigraph::with_edges(1, &[(0, 0)]).unwrap();
        let a = undirected_incidence(&g);
        assert_eq!(a.get(0, 0), &rat(2));
    }

    #[test]
    fn gain_incidence_matches_the_worked_triangle() {
        let g = triangle();
        let gains = GainAssignment::from_i64(&[1, 2, 2]).unwrap();
        let a = gain_incidence(&g, &Orientation::forward(3), &gains);
        assert_eq!(a.column(0), vec![rat(-1), rat(1), rat(0)]);
        assert_eq!(a.column(1), vec![rat(0), rat(-1), rat(2)]);
        assert_eq!(a.column(2), vec![rat(2), rat(0), rat(-1)]);
    }

    #[test]
    fn constant_gain_one_reproduces_directed_incidence() {
        let g = Multigraph::with_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 1), (2, 2)]).unwrap();
        let o = Orientation::from_flips(vec![false, true, false, true, false]);
        let gains = GainAssignment::constant(5, rat(1));
        assert_eq!(gain_incidence(&g, &o, &gains), directed_incidence(&g, &o));
    }

    #[test]
    fn constant_gain_minus_one_matches_undirected_up_to_column_signs() {
        let g = Multigraph::with_edges(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        let o = Orientation::forward(4);
        let gains = GainAssignment::constant(4, rat(-1));
        let a = gain_incidence(&g, &o, &gains);
        let b = undirected_incidence(&g);
        for e in 0..4 {
            assert!(parallel_vectors(&a.column(e), &b.column(e)));
        }
    }

    #[test]
    fn reorient_inverts_gain_and_preserves_hilbert() {
        let g = triangle();
        let o = Orientation::forward(3);
        let gains = GainAssignment::from_i64(&[1, 2, 2]).unwrap();
        let re = reorient_edge(&g, &o, &gains, 2);
        assert!(!re.loop_unchanged);
        assert!(re.orientation.flipped(2));
        assert_eq!(re.gains.gain(2), &ratio(1, 2));

        let before = hilbert_function(&gain_incidence(&g, &o, &gains));
        let after = hilbert_function(&gain_incidence(&g, &re.orientation, &re.gains));
        assert_eq!(before, after);

        // double flip restores the original pair
        let back = reorient_edge(&g, &re.orientation, &re.gains, 2);
        assert_eq!(back.orientation, o);
        assert_eq!(back.gains, gains);
    }

    #[test]
    fn reorient_loop_is_a_flagged_noop() {
        let g = Multigraph::with_edges(1, &[(0, 0)]).unwrap();
        let o = Orientation::forward(1);
        let gains = GainAssignment::from_i64(&[3]).unwrap();
        let re = reorient_edge(&g, &o, &gains, 0);
        assert!(re.loop_unchanged);
        assert_eq!(re.orientation, o);
        assert_eq!(re.gains, gains);
    }

    #[test]
    fn generalized_incidence_validation() {
        let ok = ExactMatrix::from_i64_rows(&[&[1, 0], &[1, 2], &[0, 0]]);
        assert!(GeneralizedIncidenceMatrix::try_from(ok).is_ok());
        let bad = ExactMatrix::from_i64_rows(&[&[1], &[1], &[1]]);
        assert_eq!(
            GeneralizedIncidenceMatrix::try_from(bad).unwrap_err(),
            GraphError::NotGeneralizedIncidence {
                column: 0,
                nonzeros: 3
            }
        );
    }

    #[test]
    fn gain_graph_from_two_entry_column() {
        // column (0, 3, -6)^T: edge 1 -> 2 with gain -(-6)/3 = 2
        let a = ExactMatrix::from_i64_rows(&[&[0], &[3], &[-6]]);
        let rec = gain_graph_from_matrix(&a.try_into().unwrap()).unwrap();
        assert_eq!(rec.graph.endpoints(0), (1, 2));
        assert_eq!(rec.gains.gain(0), &rat(2));
        assert_eq!(rec.column_scales[0], rat(-3));
    }

    #[test]
    fn gain_graph_from_directed_incidence_has_unit_gains() {
        let g = triangle();
        let a = directed_incidence(&g, &Orientation::forward(3));
        let rec = gain_graph_from_matrix(&a.clone().try_into().unwrap()).unwrap();
        assert!(rec.gains.gains().iter().all(|x| x == &rat(1)));
        round_trip_columns(&a, &rec);
    }

    #[test]
    fn gain_graph_from_undirected_incidence_has_gain_minus_one() {
        let g = triangle();
        let a = undirected_incidence(&g);
        let rec = gain_graph_from_matrix(&a.clone().try_into().unwrap()).unwrap();
        assert!(rec.gains.gains().iter().all(|x| x == &rat(-1)));
        round_trip_columns(&a, &rec);
    }

    #[test]
    fn gain_graph_loop_and_zero_columns() {
        let a = ExactMatrix::from_i64_rows(&[&[0, 4], &[0, 0]]);
        let rec = gain_graph_from_matrix(&a.clone().try_into().unwrap()).unwrap();
        // zero column: gainless loop at vertex 0; entry column: loop gain 5
        assert_eq!(rec.graph.endpoints(0), (0, 0));
        assert_eq!(rec.gains.gain(0), &rat(1));
        assert_eq!(rec.graph.endpoints(1), (0, 0));
        assert_eq!(rec.gains.gain(1), &rat(5));
        round_trip_columns(&a, &rec);

        let bad = ExactMatrix::from_i64_rows(&[&[-1]]);
        assert_eq!(
            gain_graph_from_matrix(&bad.try_into().unwrap()).unwrap_err(),
            GraphError::LoopGainZero { column: 0 }
        );
    }

    /// The rebuilt incidence matrix columns must be the stored scales times
    /// the original columns.
    fn round_trip_columns(a: &ExactMatrix, rec: &RecoveredGainGraph) {
        let rebuilt = gain_incidence(&rec.graph, &rec.orientation, &rec.gains);
        for e in 0..a.num_cols() {
            let scaled: Vec<Rational> = rebuilt
                .column(e)
                .iter()
                .map(|x| x * &rec.column_scales[e])
                .collect();
            assert_eq!(scaled, a.column(e), "column {e}");
        }
    }
}
