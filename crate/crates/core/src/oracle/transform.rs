//! Δ-Y, Y-Δ and series transformations on explicit graphs, and the
//! row-removal reduction carried out entirely at graph level.

use super::{OracleError, WeightedGraph};
use crate::arith::Rational;
use crate::grid::{all_edges, vertex_count, EdgeRef, Grid, GridVertex};
use crate::reduction::{delta, wye};

/// Where to apply a transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// Replace the 3-loop on these vertices with a claw around a new vertex.
    DeltaToWye([usize; 3]),
    /// Replace the degree-3 vertex and its claw with a 3-loop.
    WyeToDelta(usize),
    /// Replace the degree-2 vertex and its two edges with one edge.
    Series(usize),
}

fn malformed(msg: String) -> OracleError {
    OracleError::MalformedSite(msg)
}

/// Applies `t` to a copy of `g`. For [`Transform::DeltaToWye`] the new claw
/// center is the last vertex of the result.
pub fn graph_transform(g: &WeightedGraph, t: Transform) -> Result<WeightedGraph, OracleError> {
    let mut out = g.clone();
    match t {
        Transform::DeltaToWye(vs) => {
            delta_to_wye(&mut out, vs)?;
        }
        Transform::WyeToDelta(c) => wye_to_delta(&mut out, c)?,
        Transform::Series(v) => series(&mut out, v)?,
    }
    Ok(out)
}

/// In-place Δ-Y; returns the new center.
pub fn delta_to_wye(g: &mut WeightedGraph, [a, b, c]: [usize; 3]) -> Result<usize, OracleError> {
    if a == b || b == c || a == c {
        return Err(malformed(format!("repeated vertex in loop {a},{b},{c}")));
    }
    let side = |x: usize, y: usize| {
        g.resistance(x, y)
            .cloned()
            .ok_or_else(|| malformed(format!("no edge {x}-{y} in loop {a},{b},{c}")))
    };
    let (ab, bc, ca) = (side(a, b)?, side(b, c)?, side(c, a)?);
    let legs = [delta(&ab, &ca, &bc)?, delta(&bc, &ab, &ca)?, delta(&ca, &bc, &ab)?];
    for (x, y) in [(a, b), (b, c), (c, a)] {
        g.remove_edge(x, y);
    }
    let center = g.add_vertex();
    for (v, leg) in [a, b, c].into_iter().zip(legs) {
        g.add_edge(center, v, leg)?;
    }
    Ok(center)
}

/// In-place Y-Δ at a degree-3 vertex.
pub fn wye_to_delta(g: &mut WeightedGraph, center: usize) -> Result<(), OracleError> {
    let nb = g.neighbors(center);
    if !g.is_live(center) || nb.len() != 3 {
        return Err(malformed(format!(
            "vertex {center} has degree {}, expected 3",
            nb.len()
        )));
    }
    let [(a, ra), (b, rb), (c, rc)] = [nb[0].clone(), nb[1].clone(), nb[2].clone()];
    g.remove_vertex(center)?;
    g.add_edge(b, c, wye(&ra, &rb, &rc)?)?;
    g.add_edge(c, a, wye(&rb, &rc, &ra)?)?;
    g.add_edge(a, b, wye(&rc, &ra, &rb)?)?;
    Ok(())
}

/// In-place series merge at a degree-2 vertex.
pub fn series(g: &mut WeightedGraph, v: usize) -> Result<(), OracleError> {
    let nb = g.neighbors(v);
    if !g.is_live(v) || nb.len() != 2 {
        return Err(malformed(format!("vertex {v} has degree {}, expected 2", nb.len())));
    }
    g.remove_vertex(v)?;
    g.add_edge(nb[0].0, nb[1].0, &nb[0].1 + &nb[1].1)?;
    Ok(())
}

/// One reduction step performed on the explicit circuit: Δ-Y on every
/// upright triangle, drop the three corner tails, merge series pairs at the
/// remaining boundary vertices, and Y-Δ at every interior vertex. The star
/// center of parent `T_{r,d}` becomes child vertex `(r-1, d-1)`.
pub fn graph_level_reduce(g: &Grid<Rational>) -> Result<Grid<Rational>, OracleError> {
    let m = g.m();
    if m < 2 {
        return Err(OracleError::Structure(format!("a {m}-grid cannot be reduced")));
    }
    let mut graph = g.to_graph();
    let originals = vertex_count(m);
    let mut centers = Vec::new();
    for r in 1..=m {
        for d in 1..=r {
            let v = |vrow, vpos| GridVertex::new(vrow, vpos).index();
            let c = delta_to_wye(&mut graph, [v(r - 1, d - 1), v(r, d - 1), v(r, d)])?;
            centers.push(c);
        }
    }
    if graph.edges().any(|(a, b, _)| a < originals && b < originals) {
        return Err(OracleError::Structure("grid edge survived the Δ-Y pass".into()));
    }
    for v in 0..originals {
        match graph.degree(v) {
            1 => graph.remove_vertex(v)?,
            2 => series(&mut graph, v)?,
            3 => wye_to_delta(&mut graph, v)?,
            k => {
                return Err(OracleError::Structure(format!(
                    "grid vertex {v} has degree {k} after Δ-Y"
                )))
            }
        }
    }
    let child_m = m - 1;
    if graph.edge_count() != crate::grid::edge_count(child_m) {
        return Err(OracleError::Structure(format!(
            "expected {} child edges, found {}",
            crate::grid::edge_count(child_m),
            graph.edge_count()
        )));
    }
    let center_of = |p: GridVertex| centers[p.vrow * (p.vrow + 1) / 2 + p.vpos];
    let labels = all_edges(child_m)
        .map(|e: EdgeRef| {
            let (p, q) = e.endpoints();
            graph
                .resistance(center_of(p), center_of(q))
                .cloned()
                .ok_or_else(|| OracleError::Structure(format!("child edge {e} missing")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Grid::from_labels(child_m, g.reductions() + 1, labels).map_err(|e| OracleError::Structure(e.to_string()))
}
