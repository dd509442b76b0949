//! Named instances, the builtin corpus of small connected multigraphs, and
//! seeded random graph/gain generators for the verification sweeps.

use itertools::Itertools;
use rand::Rng;

use crate::graphs::{GainAssignment, Multigraph, Orientation};
use crate::rational::{rat, ratio, Rational};

/// A corpus member with a stable identifier.
#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub id: String,
    pub graph: Multigraph,
}

/// Triangle.
pub fn k3() -> Multigraph {
    crate::graphs::triangle()
}

/// Four-cycle.
pub fn c4() -> Multigraph {
    crate::graphs::cycle_graph(4)
}

/// Five-cycle.
pub fn c5() -> Multigraph {
    crate::graphs::cycle_graph(5)
}

/// Two triangles sharing vertex 0.
pub fn figure_eight() -> Multigraph {
    Multigraph::with_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
        .expect("valid figure-eight")
}

/// Two disjoint triangles joined by a one-edge bridge.
pub fn handcuff() -> Multigraph {
    Multigraph::with_edges(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
    )
    .expect("valid handcuff")
}

/// `k` loops at a single vertex.
pub fn loop_bouquet(k: usize) -> Multigraph {
    let edges: Vec<(usize, usize)> = (0..k).map(|_| (0, 0)).collect();
    Multigraph::with_edges(1, &edges).expect("valid bouquet")
}

/// The named instances that always ride along with the builtin corpus.
pub fn named_instances() -> Vec<CorpusInstance> {
    vec![
        CorpusInstance {
            id: "K3".into(),
            graph: k3(),
        },
        CorpusInstance {
            id: "C4".into(),
            graph: c4(),
        },
        CorpusInstance {
            id: "C5".into(),
            graph: c5(),
        },
        CorpusInstance {
            id: "figure-eight".into(),
            graph: figure_eight(),
        },
        CorpusInstance {
            id: "handcuff".into(),
            graph: handcuff(),
        },
        CorpusInstance {
            id: "loop-bouquet-3".into(),
            graph: loop_bouquet(3),
        },
    ]
}

fn is_connected(g: &Multigraph) -> bool {
    let n = g.num_vertices();
    if n <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            parent[v] = find(parent, parent[v]);
        }
        parent[v]
    }
    for (t, h) in g.edges() {
        let (rt, rh) = (find(&mut parent, t), find(&mut parent, h));
        parent[rt] = rh;
    }
    let root = find(&mut parent, 0);
    (1..n).all(|v| find(&mut parent, v) == root)
}

/// All connected labeled multigraphs on exactly `num_vertices` vertices
/// with at most `max_edges` edges (edge multisets over vertex pairs, loops
/// included).
pub fn connected_multigraphs(num_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for i in 0..num_vertices {
        for j in i..num_vertices {
            slots.push((i, j));
        }
    }
    let mut out = Vec::new();
    for size in 0..=max_edges {
        for combo in (0..slots.len()).combinations_with_replacement(size) {
            let edges: Vec<(usize, usize)> = combo.iter().map(|&s| slots[s]).collect();
            let g = Multigraph::with_edges(num_vertices, &edges).expect("slots are in range");
            if is_connected(&g) {
                out.push(g);
            }
        }
    }
    out
}

fn instance_id(g: &Multigraph) -> String {
    let edges = g
        .edges()
        .map(|(t, h)| format!("{t}{h}"))
        .collect::<Vec<_>>()
        .join(".");
    if edges.is_empty() {
        format!("{}v", g.num_vertices())
    } else {
        format!("{}v:{}", g.num_vertices(), edges)
    }
}

/// Builtin corpus: every connected multigraph with at most four vertices
/// and at most six edges, plus the named instances.
pub fn builtin_corpus() -> Vec<CorpusInstance> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for g in connected_multigraphs(n, 6) {
            out.push(CorpusInstance {
                id: instance_id(&g),
                graph: g,
            });
        }
    }
    out.extend(named_instances());
    out
}

/// Gains `3, 5, 7, ..`: the e-th odd prime per edge, which makes every
/// subset product distinct.
pub fn prime_gains(num_edges: usize) -> GainAssignment {
    let mut primes = Vec::with_capacity(num_edges);
    let mut candidate: i64 = 3;
    while primes.len() < num_edges {
        if (2..candidate).take_while(|d| d * d <= candidate).all(|d| candidate % d != 0) {
            primes.push(rat(candidate));
        }
        candidate += 2;
    }
    GainAssignment::try_new(primes).expect("primes are nonzero")
}

/// The sampling pool used by the orientation-independence sweeps.
pub fn gain_pool() -> Vec<Rational> {
    vec![
        rat(1),
        rat(-1),
        rat(2),
        rat(-2),
        rat(3),
        rat(-3),
        ratio(1, 2),
        rat(3),
        rat(5),
    ]
}

/// Gains drawn uniformly from a pool.
pub fn random_gains<R: Rng>(rng: &mut R, num_edges: usize, pool: &[Rational]) -> GainAssignment {
    let gains = (0..num_edges)
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    GainAssignment::try_new(gains).expect("pool gains are nonzero")
}

/// Uniformly random flips.
pub fn random_orientation<R: Rng>(rng: &mut R, num_edges: usize) -> Orientation {
    Orientation::from_flips((0..num_edges).map(|_| rng.gen_bool(0.5)).collect())
}

/// Random connected multigraph with up to `max_vertices` vertices and up to
/// `max_edges` edges (at least one edge). Loops and parallel edges occur.
pub fn random_connected_multigraph<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
) -> Multigraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let m = rng.gen_range(1..=max_edges);
        let mut g = Multigraph::new(n);
        for _ in 0..m {
            let t = rng.gen_range(0..n);
            let h = rng.gen_range(0..n);
            g.add_edge(t, h).expect("in range");
        }
        if is_connected(&g) {
            return g;
        }
    }
}
