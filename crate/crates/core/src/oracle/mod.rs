//! Ground truth computed without the grid reduction formulas: exact
//! Laplacian solves on explicit graphs, the graph-level transformations,
//! and the Fibonacci results on straight 2-trees.

mod fib;
mod graph;
mod transform;

use rand::Rng;
use thiserror::Error;

use crate::arith::{ArithError, Rational};
use crate::grid::Grid;
use crate::reduction::reduce_once;
use crate::report::Report;

pub use fib::{fib, lucas, r_formula_straight, straight_2tree, verify_fib_identities, verify_straight_2tree, FibPair};
pub use graph::{invert, parallel, solve, WeightedGraph};
pub use transform::{delta_to_wye, graph_level_reduce, graph_transform, series, wye_to_delta, Transform};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("resistance must be positive (got {0})")]
    NonPositive(String),
    #[error("effective resistance needs two distinct vertices (got {0} twice)")]
    SameVertex(usize),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(usize, usize),
    #[error("singular Laplacian")]
    Singular,
    #[error("malformed transformation site: {0}")]
    MalformedSite(String),
    #[error("unexpected structure during graph reduction: {0}")]
    Structure(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("graph json: {0}")]
    Json(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A positive rational `p/q` with `1 <= p, q <= 9`.
pub fn random_resistance<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::frac(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Connected graph on 3..=`max_vertices` vertices: a random spanning tree
/// plus each remaining pair with probability `density`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, density: f64) -> WeightedGraph {
    let n = rng.gen_range(3..=max_vertices.max(3));
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v, random_resistance(rng)).expect("valid vertices");
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.resistance(u, v).is_none() && rng.gen_bool(density) {
                g.add_edge(u, v, random_resistance(rng)).expect("valid vertices");
            }
        }
    }
    g
}

/// An m-grid with independent random positive labels.
pub fn random_grid<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Grid<Rational> {
    Grid::from_fn(m, |_| random_resistance(rng)).expect("m >= 1")
}

fn retained_agree(before: &WeightedGraph, after: &WeightedGraph) -> Result<(), String> {
    let rb = before.resistance_matrix().map_err(|e| e.to_string())?;
    let ra = after.resistance_matrix().map_err(|e| e.to_string())?;
    for ((a, b), r) in &ra {
        if let Some(orig) = rb.get(&(*a, *b)) {
            if orig != r {
                return Err(format!("r({a},{b}) changed from {orig} to {r}"));
            }
        }
    }
    Ok(())
}

/// Every transformation site of `g`: all 3-loops, degree-3 and degree-2
/// vertices.
pub fn transform_sites(g: &WeightedGraph) -> Vec<Transform> {
    let live = g.live_vertices();
    let mut out = Vec::new();
    for (i, &a) in live.iter().enumerate() {
        for (j, &b) in live.iter().enumerate().skip(i + 1) {
            for &c in &live[j + 1..] {
                if g.resistance(a, b).is_some() && g.resistance(b, c).is_some() && g.resistance(a, c).is_some() {
                    out.push(Transform::DeltaToWye([a, b, c]));
                }
            }
        }
    }
    for &v in &live {
        match g.degree(v) {
            3 => out.push(Transform::WyeToDelta(v)),
            2 => out.push(Transform::Series(v)),
            _ => {}
        }
    }
    out
}

/// Applies every available transformation to each graph and compares all
/// effective resistances between vertices present before and after.
/// Δ-Y sites are also undone with Y-Δ and must restore the loop exactly.
pub fn verify_transform_soundness(graphs: &[WeightedGraph]) -> Report {
    let mut rep = Report::new("transformation soundness");
    let (mut applied, mut bad) = (0usize, None);
    for (gi, g) in graphs.iter().enumerate() {
        for t in transform_sites(g) {
            let after = match graph_transform(g, t) {
                Ok(a) => a,
                Err(e) => {
                    bad.get_or_insert(format!("graph {gi} {t:?}: {e}"));
                    continue;
                }
            };
            applied += 1;
            if let Err(e) = retained_agree(g, &after) {
                bad.get_or_insert(format!("graph {gi} {t:?}: {e}"));
            }
            if let Transform::DeltaToWye([a, b, c]) = t {
                let center = after.vertex_count() - 1;
                let back = graph_transform(&after, Transform::WyeToDelta(center));
                let restored = back.is_ok_and(|back| {
                    [(a, b), (b, c), (a, c)]
                        .iter()
                        .all(|&(x, y)| back.resistance(x, y) == g.resistance(x, y))
                });
                if !restored {
                    bad.get_or_insert(format!("graph {gi}: Y-Δ did not undo Δ-Y at {a},{b},{c}"));
                }
            }
        }
    }
    match bad {
        None => rep.pass(
            "all sites",
            format!(
                "{applied} transformations on {} graphs preserve every retained resistance",
                graphs.len()
            ),
        ),
        Some(d) => rep.fail("all sites", d),
    }
    rep
}

/// Formula-based reduction against the graph-level reduction, label for
/// label.
pub fn verify_dual_pipeline(grids: &[Grid<Rational>]) -> Report {
    let mut rep = Report::new("dual pipeline");
    for g in grids {
        let name = format!("m={} reductions={}", g.m(), g.reductions());
        let fast = reduce_once(g);
        let slow = graph_level_reduce(g);
        match (fast, slow) {
            (Ok(a), Ok(b)) => {
                let diff = a.iter().zip(b.iter()).find(|((_, x), (_, y))| x != y);
                match diff {
                    None => rep.pass(name, format!("{} labels equal", a.labels().len())),
                    Some(((e, x), (_, y))) => rep.fail(name, format!("{e}: formula {x}, graph {y}")),
                }
            }
            (a, b) => rep.fail(name, format!("formula {:?}, graph {:?}", a.err(), b.err())),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_connected_graph(&mut rng, 8, 0.4);
            assert!(g.is_connected());
            assert!((3..=8).contains(&g.vertex_count()));
        }
    }

    #[test]
    fn soundness_on_a_few_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let graphs: Vec<_> = (0..5).map(|_| random_connected_graph(&mut rng, 6, 0.5)).collect();
        let rep = verify_transform_soundness(&graphs);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn dual_pipeline_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut grids: Vec<_> = (2..=5).map(|n| Grid::all_one(n).unwrap()).collect();
        grids.push(random_grid(&mut rng, 3));
        let rep = verify_dual_pipeline(&grids);
        assert!(rep.passed(), "{rep}");
    }
}
