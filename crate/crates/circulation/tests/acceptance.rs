//! Acceptance suite: every criterion runs both computation engines at desk
//! scale and demands exact agreement. One pass/fail line prints per
//! criterion (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use circulation::corpus::{
    builtin_corpus, c4, figure_eight, gain_pool, handcuff, k3, random_connected_multigraph,
    random_gains,
};
use circulation::enumeration::{
    even_activity_profile, forest_activity_profile, ActivityProfile,
};
use circulation::matroid::vector_activity_profile;
use circulation::verify::{sweep_theorem, SweepOptions, TheoremKind, VerificationRecord};
use circulation::{
    gain_incidence, hilbert_function, kernel_basis, parallel_vectors, rat, ratio,
    reorient_edge, undirected_incidence, EdgeOrdering, ExactMatrix, GainAssignment, Multigraph,
    Orientation, Rational, DEFAULT_EDGE_CAP,
};

fn conclude(number: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} ({name}): {verdict} [{detail}]");
    assert!(pass, "criterion {number} ({name}) failed: {detail}");
}

fn failures(records: &[VerificationRecord]) -> Vec<&VerificationRecord> {
    records.iter().filter(|r| r.is_failure()).collect()
}

fn describe_failures(records: &[VerificationRecord]) -> String {
    failures(records)
        .iter()
        .take(3)
        .map(|r| format!("{}: {}", r.id, serde_json::to_string(&r.computed).unwrap()))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The one concrete numeric example: a 3-cycle with gains (1, 2, 2) has
/// algebra dimension 8 when the gain-2 edges point the same way around the
/// cycle and 7 when they oppose (the cycle turns gainless).
#[test]
fn criterion_1_worked_gain_example() {
    let start = Instant::now();
    let g = k3();
    let gains = GainAssignment::from_i64(&[1, 2, 2]).unwrap();

    let co_directed = Orientation::forward(3);
    let total_co = hilbert_function(&gain_incidence(&g, &co_directed, &gains)).total;

    let opposed = Orientation::from_flips(vec![false, false, true]);
    let total_op = hilbert_function(&gain_incidence(&g, &opposed, &gains)).total;

    let elapsed = start.elapsed();
    let pass = total_co == 8 && total_op == 7 && elapsed.as_secs_f64() < 1.0;
    conclude(
        1,
        "worked gain example 8 vs 7",
        pass,
        &format!("co-directed={total_co}, opposed={total_op}, {elapsed:.2?}"),
    );
}

/// Forest theorem sweep: Hilbert function of the directed incidence algebra
/// equals the re-indexed external-activity profile on every corpus graph,
/// for three random orientations each.
#[test]
fn criterion_2_forest_theorem_sweep() {
    let start = Instant::now();
    let corpus = builtin_corpus();
    let opts = SweepOptions {
        seed: 2,
        orientations_per_graph: 3,
        ..SweepOptions::default()
    };
    let records = sweep_theorem(TheoremKind::A, &corpus, &opts).unwrap();
    let elapsed = start.elapsed();
    let pass = failures(&records).is_empty() && elapsed.as_secs_f64() < 300.0;
    conclude(
        2,
        "forest count and activity grading",
        pass,
        &format!(
            "{} checks over {} graphs, {elapsed:.2?} {}",
            records.len(),
            corpus.len(),
            describe_failures(&records)
        ),
    );
}

/// Odd-circle pseudoforest theorem sweep: Hilbert function of the
/// undirected incidence algebra equals the re-indexed even-activity
/// profile on every corpus graph.
#[test]
fn criterion_3_odd_circle_theorem_sweep() {
    let start = Instant::now();
    let corpus = builtin_corpus();
    let records = sweep_theorem(TheoremKind::One, &corpus, &SweepOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let pass = failures(&records).is_empty() && elapsed.as_secs_f64() < 300.0;
    conclude(
        3,
        "odd-circle pseudoforest grading",
        pass,
        &format!(
            "{} graphs, {elapsed:.2?} {}",
            records.len(),
            describe_failures(&records)
        ),
    );
}

/// Even-circle lemma: a column set of the undirected incidence matrix is
/// dependent exactly when the subgraph contains an even circuit, over every
/// subset of every corpus graph; plus the two named kernel witnesses.
#[test]
fn criterion_4_even_circle_lemma() {
    let start = Instant::now();
    let corpus = builtin_corpus();
    let records: Vec<VerificationRecord> = corpus
        .par_iter()
        .map(|i| circulation::verify_lemma(&i.id, &i.graph, DEFAULT_EDGE_CAP).unwrap())
        .collect();

    // the four-cycle: one kernel vector, +1/-1 alternating
    let c4_kernel = kernel_basis(&undirected_incidence(&c4()));
    let c4_ok = c4_kernel.len() == 1
        && parallel_vectors(&c4_kernel[0], &[rat(1), rat(-1), rat(1), rat(-1)]);

    // the odd handcuff: +-1 on both triangles, +-2 on the bridge
    let expected: Vec<Rational> = [1, -1, -1, -1, 1, -1, 2].iter().map(|&n| rat(n)).collect();
    let cuff_kernel = kernel_basis(&undirected_incidence(&handcuff()));
    let cuff_ok = cuff_kernel.len() == 1 && parallel_vectors(&cuff_kernel[0], &expected);

    let elapsed = start.elapsed();
    let pass = failures(&records).is_empty() && c4_ok && cuff_ok && elapsed.as_secs_f64() < 300.0;
    conclude(
        4,
        "even-circle dependence lemma",
        pass,
        &format!(
            "{} graphs exhausted, C4 kernel ok={c4_ok}, handcuff kernel ok={cuff_ok}, {elapsed:.2?} {}",
            records.len(),
            describe_failures(&records)
        ),
    );
}

/// Generic-gain theorem: with distinct odd-prime gains the Hilbert total
/// equals the pseudoforest count and the whole Hilbert function is the same
/// under every one of the 2^|E| orientations.
#[test]
fn criterion_5_generic_gain_pseudoforest_theorem() {
    let start = Instant::now();
    let corpus = builtin_corpus();
    let records = sweep_theorem(TheoremKind::Two, &corpus, &SweepOptions::default()).unwrap();
    let all_match = records.iter().all(|r| r.matched());
    let elapsed = start.elapsed();
    let pass = all_match && elapsed.as_secs_f64() < 600.0;
    conclude(
        5,
        "prime gains count pseudoforests",
        pass,
        &format!(
            "{} graphs with full orientation sweeps, {elapsed:.2?} {}",
            records.len(),
            describe_failures(&records)
        ),
    );
}

/// Orientation-independence deciders: the cycle-wise criterion and the
/// brute-force all-orientations sweep agree on the corpus with sampled
/// gains and on 200 random gain graphs.
#[test]
fn criterion_6_orientation_independence_deciders() {
    let start = Instant::now();
    let corpus = builtin_corpus();
    let opts = SweepOptions {
        seed: 6,
        trials: 200,
        ..SweepOptions::default()
    };
    let records = sweep_theorem(TheoremKind::Main, &corpus, &opts).unwrap();
    let elapsed = start.elapsed();
    let pass = failures(&records).is_empty() && elapsed.as_secs_f64() < 600.0;
    conclude(
        6,
        "criterion vs brute-force deciders",
        pass,
        &format!(
            "{} instances ({} random), {elapsed:.2?} {}",
            records.len(),
            opts.trials,
            describe_failures(&records)
        ),
    );
}

fn profiles_for_ordering(
    g: &Multigraph,
    matroid: &circulation::VectorMatroid,
    ordering: &EdgeOrdering,
) -> (ActivityProfile, ActivityProfile, ActivityProfile) {
    (
        forest_activity_profile(g, ordering, DEFAULT_EDGE_CAP).unwrap(),
        even_activity_profile(g, ordering, DEFAULT_EDGE_CAP).unwrap(),
        vector_activity_profile(matroid, ordering, DEFAULT_EDGE_CAP).unwrap(),
    )
}

fn profile_triple_equal(
    a: &(ActivityProfile, ActivityProfile, ActivityProfile),
    b: &(ActivityProfile, ActivityProfile, ActivityProfile),
) -> bool {
    a.0 == b.0 && a.1 == b.1 && a.2 == b.2
}

/// Activity counts do not depend on the edge ordering: all orderings for
/// graphs with at most five edges, twenty sampled orderings for six to
/// eight edges. Checked for forest activity, even activity, and
/// vector-matroid activity.
#[test]
fn criterion_7_ordering_independence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let corpus = builtin_corpus();
    let mut small: Vec<&Multigraph> = corpus
        .iter()
        .map(|i| &i.graph)
        .filter(|g| g.num_edges() <= 5)
        .collect();
    if small.len() > 300 {
        small.shuffle(&mut rng);
        small.truncate(300);
    }

    let mut checked_orderings = 0usize;
    let mut failure: Option<String> = None;
    'small: for g in &small {
        let m = g.num_edges();
        let matroid = circulation::VectorMatroid::new(undirected_incidence(g));
        let reference = profiles_for_ordering(g, &matroid, &EdgeOrdering::natural(m));
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let ordering = EdgeOrdering::from_permutation(&perm).unwrap();
            let probe = profiles_for_ordering(g, &matroid, &ordering);
            if !profile_triple_equal(&reference, &probe) {
                failure = Some(format!("profiles changed under ordering {perm:?}"));
                break 'small;
            }
            checked_orderings += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }

    let mut bigger: Vec<Multigraph> = vec![figure_eight(), handcuff()];
    for _ in 0..4 {
        loop {
            let g = random_connected_multigraph(&mut rng, 5, 8);
            if (6..=8).contains(&g.num_edges()) {
                bigger.push(g);
                break;
            }
        }
    }
    if failure.is_none() {
        'bigger: for g in &bigger {
            let m = g.num_edges();
            let matroid = circulation::VectorMatroid::new(undirected_incidence(g));
            let reference = profiles_for_ordering(g, &matroid, &EdgeOrdering::natural(m));
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                let ordering = EdgeOrdering::from_permutation(&perm).unwrap();
                let probe = profiles_for_ordering(g, &matroid, &ordering);
                if !profile_triple_equal(&reference, &probe) {
                    failure = Some(format!("profiles changed under sampled ordering {perm:?}"));
                    break 'bigger;
                }
                checked_orderings += 1;
            }
        }
    }

    let elapsed = start.elapsed();
    let detail = format!(
        "{} graphs exhaustively, {} larger sampled, {checked_orderings} orderings, {elapsed:.2?} {}",
        small.len(),
        bigger.len(),
        failure.clone().unwrap_or_default()
    );
    conclude(7, "activity is ordering-independent", failure.is_none(), &detail);
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn random_matrix<R: Rng>(rng: &mut R) -> ExactMatrix {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=6);
    let mut a = ExactMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.7) {
                a.set(r, c, rat(rng.gen_range(-3..=3)));
            }
        }
    }
    a
}

fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    let candidates = [rat(2), rat(-1), rat(3), ratio(1, 2), ratio(-3, 2), rat(5)];
    candidates[rng.gen_range(0..candidates.len())].clone()
}

/// Hilbert functions are blind to row/column permutations, nonzero
/// row/column scaling (sign flips included), and to reorienting an edge
/// while inverting its gain.
#[test]
fn criterion_8_algebra_invariances() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool = gain_pool();
    let mut failure: Option<String> = None;
    for trial in 0..50 {
        let a = random_matrix(&mut rng);
        let reference = hilbert_function(&a);

        let mut row_perm: Vec<usize> = (0..a.num_rows()).collect();
        row_perm.shuffle(&mut rng);
        let mut col_perm: Vec<usize> = (0..a.num_cols()).collect();
        col_perm.shuffle(&mut rng);
        let mut transformed = a.permuted_rows(&row_perm).permuted_columns(&col_perm);
        let col = rng.gen_range(0..a.num_cols());
        transformed.scale_column(col, &random_nonzero(&mut rng));
        let row = rng.gen_range(0..a.num_rows());
        transformed.scale_row(row, &random_nonzero(&mut rng));
        let flip = rng.gen_range(0..a.num_cols());
        transformed.scale_column(flip, &rat(-1));
        if hilbert_function(&transformed) != reference {
            failure = Some(format!("matrix transform changed Hilbert on trial {trial}"));
            break;
        }

        // gain-graph reorientation invariance
        let g = random_connected_multigraph(&mut rng, 4, 6);
        let m = g.num_edges();
        let gains = random_gains(&mut rng, m, &pool);
        let orientation = Orientation::forward(m);
        let before = hilbert_function(&gain_incidence(&g, &orientation, &gains));
        let edge = rng.gen_range(0..m);
        let re = reorient_edge(&g, &orientation, &gains, edge);
        let after = hilbert_function(&gain_incidence(&g, &re.orientation, &re.gains));
        if before != after {
            failure = Some(format!("reorientation changed Hilbert on trial {trial}"));
            break;
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "50 matrix trials and 50 reorientations, {elapsed:.2?} {}",
        failure.clone().unwrap_or_default()
    );
    conclude(8, "hilbert invariances", failure.is_none(), &detail);
}
