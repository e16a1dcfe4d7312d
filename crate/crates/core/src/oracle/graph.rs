use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::arith::Rational;

/// Undirected graph with exact positive resistances.
///
/// Vertices are `0..vertex_count()`. A removed vertex keeps its id but has
/// no edges and is skipped by [`WeightedGraph::live_vertices`]. Adding an
/// edge parallel to an existing one combines the two by conductance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rational>,
    removed: BTreeSet<usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// `r1 ∥ r2 = r1 r2 / (r1 + r2)`.
pub fn parallel(r1: &Rational, r2: &Rational) -> Rational {
    (r1 * r2)
        .checked_div(&(r1 + r2))
        .expect("positive resistances have a positive sum")
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: BTreeMap::new(),
            removed: BTreeSet::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn check_vertex(&self, v: usize) -> Result<(), OracleError> {
        if v >= self.n || self.removed.contains(&v) {
            return Err(OracleError::NoSuchVertex(v));
        }
        Ok(())
    }

    /// Adds a resistor, merging with any existing parallel edge.
    pub fn add_edge(&mut self, u: usize, v: usize, r: Rational) -> Result<(), OracleError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(OracleError::SelfLoop(u));
        }
        if !r.is_positive() {
            return Err(OracleError::NonPositive(r.to_string()));
        }
        let merged = match self.edges.get(&key(u, v)) {
            Some(old) => parallel(old, &r),
            None => r,
        };
        self.edges.insert(key(u, v), merged);
        Ok(())
    }

    pub fn resistance(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edges.get(&key(u, v))
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<Rational> {
        self.edges.remove(&key(u, v))
    }

    /// Removes `v` and every edge at it.
    pub fn remove_vertex(&mut self, v: usize) -> Result<(), OracleError> {
        self.check_vertex(v)?;
        for (w, _) in self.neighbors(v) {
            self.edges.remove(&key(v, w));
        }
        self.removed.insert(v);
        Ok(())
    }

    pub fn is_live(&self, v: usize) -> bool {
        v < self.n && !self.removed.contains(&v)
    }

    pub fn live_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|v| !self.removed.contains(v)).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.edges.iter().map(|(&(u, v), r)| (u, v, r))
    }

    pub fn neighbors(&self, v: usize) -> Vec<(usize, Rational)> {
        self.edges
            .iter()
            .filter_map(|(&(a, b), r)| match (a == v, b == v) {
                (true, _) => Some((b, r.clone())),
                (_, true) => Some((a, r.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.keys().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Live vertices reachable from `start`, in BFS order.
    pub fn component(&self, start: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        let live = self.live_vertices();
        live.first().is_none_or(|&v| self.component(v).len() == live.len())
    }

    /// Exact effective resistance between `u` and `v`: inject a unit current
    /// at `u`, ground `v`, and solve the reduced Laplacian.
    pub fn effective_resistance(&self, u: usize, v: usize) -> Result<Rational, OracleError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(OracleError::SameVertex(u));
        }
        let comp = self.component(u);
        if !comp.contains(&v) {
            return Err(OracleError::Disconnected(u, v));
        }
        let unknowns: Vec<usize> = comp.into_iter().filter(|&w| w != v).collect();
        let mut rhs = vec![Rational::from(0); unknowns.len()];
        rhs[unknowns.iter().position(|&w| w == u).unwrap()] = Rational::from(1);
        let x = solve(self.reduced_laplacian(&unknowns), rhs)?;
        Ok(x[unknowns.iter().position(|&w| w == u).unwrap()].clone())
    }

    /// Conductance Laplacian restricted to `vertices` (rows and columns in
    /// that order); every other vertex acts as ground.
    fn reduced_laplacian(&self, vertices: &[usize]) -> Vec<Vec<Rational>> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &w) in vertices.iter().enumerate() {
            pos[w] = i;
        }
        let k = vertices.len();
        let mut lap = vec![vec![Rational::from(0); k]; k];
        for (&(a, b), r) in &self.edges {
            let c = r.recip().expect("resistances are positive");
            let (pa, pb) = (pos[a], pos[b]);
            if pa != usize::MAX {
                lap[pa][pa] = &lap[pa][pa] + &c;
            }
            if pb != usize::MAX {
                lap[pb][pb] = &lap[pb][pb] + &c;
            }
            if pa != usize::MAX && pb != usize::MAX {
                lap[pa][pb] = &lap[pa][pb] - &c;
                lap[pb][pa] = &lap[pb][pa] - &c;
            }
        }
        lap
    }

    /// All pairwise effective resistances among the live vertices of a
    /// connected graph, from one inverse of the grounded Laplacian:
    /// `r(a, b) = M_aa + M_bb - 2 M_ab`.
    pub fn resistance_matrix(&self) -> Result<BTreeMap<(usize, usize), Rational>, OracleError> {
        let live = self.live_vertices();
        if live.len() < 2 {
            return Ok(BTreeMap::new());
        }
        if !self.is_connected() {
            return Err(OracleError::Disconnected(live[0], *live.last().unwrap()));
        }
        let (ground, rest) = live.split_first().unwrap();
        let inv = invert(self.reduced_laplacian(rest))?;
        let zero = Rational::from(0);
        let entry = |a: usize, b: usize| -> &Rational {
            if a == *ground || b == *ground {
                &zero
            } else {
                let ia = rest.iter().position(|&w| w == a).unwrap();
                let ib = rest.iter().position(|&w| w == b).unwrap();
                &inv[ia][ib]
            }
        };
        let mut out = BTreeMap::new();
        for (i, &a) in live.iter().enumerate() {
            for &b in &live[i + 1..] {
                let r = &(entry(a, a) + entry(b, b)) - &(entry(a, b) + entry(a, b));
                out.insert((a, b), r);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n,
            edges: self
                .edges()
                .map(|(u, v, r)| EdgeJson { u, v, r: r.to_string() })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph json serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, OracleError> {
        let doc: GraphJson = serde_json::from_str(s).map_err(|e| OracleError::Json(e.to_string()))?;
        let mut g = WeightedGraph::new(doc.n);
        for e in doc.edges {
            let r: Rational =
                e.r.parse()
                    .map_err(|_| OracleError::Json(format!("bad resistance {:?}", e.r)))?;
            g.add_edge(e.u, e.v, r)?;
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: usize,
    v: usize,
    r: String,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<EdgeJson>,
}

/// Gauss-Jordan elimination with first-nonzero pivoting, applied to the
/// augmented columns `rhs`.
#[allow(clippy::needless_range_loop)]
fn eliminate(mut a: Vec<Vec<Rational>>, mut rhs: Vec<Vec<Rational>>) -> Result<Vec<Vec<Rational>>, OracleError> {
    let k = a.len();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !a[r][col].is_zero()).ok_or(OracleError::Singular)?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = a[col][col].recip().expect("pivot is nonzero");
        for j in col..k {
            a[col][j] = &a[col][j] * &inv;
        }
        for x in rhs[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..k {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..k {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t;
            }
            for j in 0..rhs[r].len() {
                let t = &f * &rhs[col][j];
                rhs[r][j] = &rhs[r][j] - &t;
            }
        }
    }
    Ok(rhs)
}

/// Solves `a x = b` exactly.
pub fn solve(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Vec<Rational>, OracleError> {
    let rhs = b.into_iter().map(|x| vec![x]).collect();
    Ok(eliminate(a, rhs)?.into_iter().map(|mut row| row.remove(0)).collect())
}

pub fn invert(a: Vec<Vec<Rational>>) -> Result<Vec<Vec<Rational>>, OracleError> {
    let k = a.len();
    let id = (0..k)
        .map(|i| (0..k).map(|j| Rational::from(i64::from(i == j))).collect())
        .collect();
    eliminate(a, id)
}
