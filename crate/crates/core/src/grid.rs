//! Triangular m-grids with field-valued edge labels.
//!
//! Row `r` (1-based, top to bottom) holds upright triangles `T_{r,d}` for
//! `d = 1..=r`. Every grid edge is exactly one side of one upright triangle,
//! so a label set is a dense array of `3·m(m+1)/2` scalars.
//!
//! Vertices are `(vrow, vpos)` with `0 <= vpos <= vrow <= m`. Triangle
//! `T_{r,d}` has apex `(r-1, d-1)`, bottom-left `(r, d-1)` and bottom-right
//! `(r, d)`; side L joins apex and bottom-left, R joins apex and bottom-right,
//! B joins the two bottom vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Field, Rational};
use crate::oracle::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid size must be at least 1 (got {0})")]
    InvalidSize(usize),
    #[error("edge {edge} is outside the {m}-grid")]
    EdgeOutOfRange { edge: EdgeRef, m: usize },
    #[error("partial labelling is missing edge {0}")]
    MissingEdge(EdgeRef),
    #[error("partial labelling has edge {0} outside the upper-left half")]
    ExtraEdge(EdgeRef),
    #[error("edge {edge} determined twice with different values ({first} vs {second})")]
    Inconsistent {
        edge: EdgeRef,
        first: String,
        second: String,
    },
    #[error("label of {edge} must be positive (got {value})")]
    NonPositive { edge: EdgeRef, value: String },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("bad label value {0:?}")]
    BadValue(String),
    #[error("grid json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
    B,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::L, Side::R, Side::B];

    fn offset(self) -> usize {
        match self {
            Side::L => 0,
            Side::R => 1,
            Side::B => 2,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Side::L => "L",
            Side::R => "R",
            Side::B => "B",
        };
        f.write_str(s)
    }
}

/// Side `side` of upright triangle `T_{row,diag}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub row: usize,
    pub diag: usize,
    pub side: Side,
}

impl EdgeRef {
    pub const fn new(row: usize, diag: usize, side: Side) -> Self {
        EdgeRef { row, diag, side }
    }

    pub fn is_valid_for(&self, m: usize) -> bool {
        self.diag >= 1 && self.diag <= self.row && self.row <= m
    }

    pub fn endpoints(&self) -> (GridVertex, GridVertex) {
        let (r, d) = (self.row, self.diag);
        let apex = GridVertex::new(r - 1, d - 1);
        let bl = GridVertex::new(r, d - 1);
        let br = GridVertex::new(r, d);
        match self.side {
            Side::L => (apex, bl),
            Side::R => (apex, br),
            Side::B => (bl, br),
        }
    }

    /// The edge joining two adjacent vertices, if they are adjacent.
    pub fn from_endpoints(a: GridVertex, b: GridVertex) -> Option<EdgeRef> {
        let (p, q) = if (a.vrow, a.vpos) <= (b.vrow, b.vpos) {
            (a, b)
        } else {
            (b, a)
        };
        if p.vrow == q.vrow {
            (q.vpos == p.vpos + 1).then(|| EdgeRef::new(p.vrow, q.vpos, Side::B))
        } else if q.vrow == p.vrow + 1 {
            if q.vpos == p.vpos {
                Some(EdgeRef::new(q.vrow, p.vpos + 1, Side::L))
            } else if q.vpos == p.vpos + 1 {
                Some(EdgeRef::new(q.vrow, p.vpos + 1, Side::R))
            } else {
                None
            }
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{})", self.row, self.diag, self.side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVertex {
    pub vrow: usize,
    pub vpos: usize,
}

impl GridVertex {
    pub const fn new(vrow: usize, vpos: usize) -> Self {
        GridVertex { vrow, vpos }
    }

    /// Dense index in row-major order.
    pub fn index(&self) -> usize {
        self.vrow * (self.vrow + 1) / 2 + self.vpos
    }
}

pub fn vertex_count(m: usize) -> usize {
    (m + 1) * (m + 2) / 2
}

pub fn edge_count(m: usize) -> usize {
    3 * m * (m + 1) / 2
}

fn edge_index(e: &EdgeRef) -> usize {
    ((e.row - 1) * e.row / 2 + (e.diag - 1)) * 3 + e.side.offset()
}

/// Whether `e` lies on the outer boundary of the m-grid.
pub fn is_boundary(e: &EdgeRef, m: usize) -> Result<bool, GridError> {
    if !e.is_valid_for(m) {
        return Err(GridError::EdgeOutOfRange { edge: *e, m });
    }
    Ok(match e.side {
        Side::L => e.diag == 1,
        Side::R => e.diag == e.row,
        Side::B => e.row == m,
    })
}

/// All edges of an m-grid in storage order.
pub fn all_edges(m: usize) -> impl Iterator<Item = EdgeRef> {
    (1..=m).flat_map(|r| (1..=r).flat_map(move |d| Side::ALL.into_iter().map(move |s| EdgeRef::new(r, d, s))))
}

/// An element of the dihedral symmetry group of the triangle: a rotation by
/// `rotation * 2π/3`, preceded by a vertical reflection when `reflect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    pub rotation: u8,
    pub reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        rotation: 0,
        reflect: false,
    };
    pub const REFLECT: Symmetry = Symmetry {
        rotation: 0,
        reflect: true,
    };
    pub const ROTATE: Symmetry = Symmetry {
        rotation: 1,
        reflect: false,
    };

    pub const ALL: [Symmetry; 6] = [
        Symmetry {
            rotation: 0,
            reflect: false,
        },
        Symmetry {
            rotation: 1,
            reflect: false,
        },
        Symmetry {
            rotation: 2,
            reflect: false,
        },
        Symmetry {
            rotation: 0,
            reflect: true,
        },
        Symmetry {
            rotation: 1,
            reflect: true,
        },
        Symmetry {
            rotation: 2,
            reflect: true,
        },
    ];

    pub fn apply_vertex(&self, v: GridVertex, m: usize) -> GridVertex {
        // barycentric (a, b, c) = (vpos, vrow - vpos, m - vrow)
        let (mut a, mut b, mut c) = (v.vpos, v.vrow - v.vpos, m - v.vrow);
        if self.reflect {
            std::mem::swap(&mut a, &mut b);
        }
        for _ in 0..self.rotation {
            (a, b, c) = (c, a, b);
        }
        GridVertex::new(m - c, a)
    }

    pub fn apply_edge(&self, e: &EdgeRef, m: usize) -> EdgeRef {
        let (p, q) = e.endpoints();
        EdgeRef::from_endpoints(self.apply_vertex(p, m), self.apply_vertex(q, m))
            .expect("symmetries preserve adjacency")
    }

    /// Image of upright triangle `T_{r,d}` as `(row, diag)`.
    pub fn apply_triangle(&self, r: usize, d: usize, m: usize) -> (usize, usize) {
        let e = self.apply_edge(&EdgeRef::new(r, d, Side::L), m);
        (e.row, e.diag)
    }
}

/// Triangles forming the upper-left half: the lexicographically smallest
/// `(row, diag)` in each symmetry orbit. Their edges, pushed through the
/// symmetry group, reach every edge of the grid.
pub fn upper_left_half(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 1..=m {
        for d in 1..=r {
            let min = Symmetry::ALL.iter().map(|g| g.apply_triangle(r, d, m)).min().unwrap();
            if min == (r, d) {
                out.push((r, d));
            }
        }
    }
    out
}

pub fn upper_left_half_edges(m: usize) -> Vec<EdgeRef> {
    upper_left_half(m)
        .into_iter()
        .flat_map(|(r, d)| Side::ALL.into_iter().map(move |s| EdgeRef::new(r, d, s)))
        .collect()
}

/// An m-grid of edge labels. `reductions` counts how many reduction steps
/// produced it from an all-one grid.
#[derive(Clone, PartialEq, Eq)]
pub struct Grid<T> {
    m: usize,
    reductions: usize,
    labels: Vec<T>,
}

impl<T: Field> Grid<T> {
    pub fn all_one(n: usize) -> Result<Self, GridError> {
        Self::from_fn(n, |_| T::one())
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(EdgeRef) -> T) -> Result<Self, GridError> {
        if m == 0 {
            return Err(GridError::InvalidSize(m));
        }
        Ok(Grid {
            m,
            reductions: 0,
            labels: all_edges(m).map(&mut f).collect(),
        })
    }

    /// Builds a grid from its labels in [`all_edges`] order.
    pub fn from_labels(m: usize, reductions: usize, labels: Vec<T>) -> Result<Self, GridError> {
        if m == 0 {
            return Err(GridError::InvalidSize(m));
        }
        if labels.len() != edge_count(m) {
            return Err(GridError::LabelCount {
                expected: edge_count(m),
                got: labels.len(),
            });
        }
        let g = Grid { m, reductions, labels };
        g.check_positive()?;
        Ok(g)
    }

    fn check_positive(&self) -> Result<(), GridError> {
        for (e, v) in self.iter() {
            if v.is_positive() == Some(false) {
                return Err(GridError::NonPositive {
                    edge: e,
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn reductions(&self) -> usize {
        self.reductions
    }

    pub fn with_reductions(mut self, reductions: usize) -> Self {
        self.reductions = reductions;
        self
    }

    /// Label of `e`. Panics if `e` is outside the grid; use [`Grid::try_get`]
    /// for unchecked input.
    pub fn get(&self, e: EdgeRef) -> &T {
        assert!(e.is_valid_for(self.m), "{e} outside {}-grid", self.m);
        &self.labels[edge_index(&e)]
    }

    pub fn try_get(&self, e: EdgeRef) -> Result<&T, GridError> {
        if !e.is_valid_for(self.m) {
            return Err(GridError::EdgeOutOfRange { edge: e, m: self.m });
        }
        Ok(&self.labels[edge_index(&e)])
    }

    pub fn label(&self, r: usize, d: usize, side: Side) -> &T {
        self.get(EdgeRef::new(r, d, side))
    }

    /// The three labels `(L, R, B)` of `T_{r,d}`.
    pub fn triangle(&self, r: usize, d: usize) -> [&T; 3] {
        let base = edge_index(&EdgeRef::new(r, d, Side::L));
        [&self.labels[base], &self.labels[base + 1], &self.labels[base + 2]]
    }

    pub fn set(&mut self, e: EdgeRef, value: T) -> Result<(), GridError> {
        if !e.is_valid_for(self.m) {
            return Err(GridError::EdgeOutOfRange { edge: e, m: self.m });
        }
        self.labels[edge_index(&e)] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeRef, &T)> {
        all_edges(self.m).zip(self.labels.iter())
    }

    pub fn labels(&self) -> &[T] {
        &self.labels
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Grid<U> {
        Grid {
            m: self.m,
            reductions: self.reductions,
            labels: self.labels.iter().map(f).collect(),
        }
    }

    /// The grid seen through symmetry `g`: label at `e` is the original label
    /// at `g(e)`.
    pub fn transformed(&self, g: Symmetry) -> Grid<T> {
        let labels = all_edges(self.m)
            .map(|e| self.get(g.apply_edge(&e, self.m)).clone())
            .collect();
        Grid {
            m: self.m,
            reductions: self.reductions,
            labels,
        }
    }

    /// Invariant under the vertical reflection and the 2π/3 rotation.
    pub fn is_symmetric(&self) -> bool {
        [Symmetry::REFLECT, Symmetry::ROTATE]
            .iter()
            .all(|g| self.iter().all(|(e, v)| self.get(g.apply_edge(&e, self.m)) == v))
    }

    /// Labels on the upper-left half.
    pub fn restrict(&self) -> BTreeMap<EdgeRef, T> {
        upper_left_half_edges(self.m)
            .into_iter()
            .map(|e| (e, self.get(e).clone()))
            .collect()
    }

    /// Extends labels on the upper-left half to the whole m-grid through the
    /// reflection and rotation symmetries.
    pub fn symmetry_complete(partial: &BTreeMap<EdgeRef, T>, m: usize, reductions: usize) -> Result<Self, GridError> {
        if m == 0 {
            return Err(GridError::InvalidSize(m));
        }
        let expected: BTreeSet<EdgeRef> = upper_left_half_edges(m).into_iter().collect();
        if let Some(e) = partial.keys().find(|e| !expected.contains(e)) {
            return Err(GridError::ExtraEdge(*e));
        }
        if let Some(e) = expected.iter().find(|e| !partial.contains_key(e)) {
            return Err(GridError::MissingEdge(*e));
        }
        let mut slots: Vec<Option<T>> = vec![None; edge_count(m)];
        for (e, v) in partial {
            for g in Symmetry::ALL {
                let image = g.apply_edge(e, m);
                let slot = &mut slots[edge_index(&image)];
                match slot {
                    Some(existing) if existing != v => {
                        return Err(GridError::Inconsistent {
                            edge: image,
                            first: existing.to_string(),
                            second: v.to_string(),
                        });
                    }
                    Some(_) => {}
                    None => *slot = Some(v.clone()),
                }
            }
        }
        let labels = slots
            .into_iter()
            .map(|s| s.expect("upper-left half orbits cover the grid"))
            .collect();
        Ok(Grid { m, reductions, labels })
    }
}

impl Grid<Rational> {
    /// Explicit circuit: one vertex per grid vertex, one resistor per edge.
    pub fn to_graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(vertex_count(self.m));
        for (e, v) in self.iter() {
            let (a, b) = e.endpoints();
            g.add_edge(a.index(), b.index(), v.clone())
                .expect("grid labels are positive");
        }
        g
    }
}

impl<T: Field> fmt::Debug for Grid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Grid(m={}, reductions={})", self.m, self.reductions)?;
        for r in 1..=self.m {
            write!(f, "  row {r}:")?;
            for d in 1..=r {
                let [l, rr, b] = self.triangle(r, d);
                write!(f, " ({l}, {rr}, {b})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct LabelJson {
    r: usize,
    d: usize,
    side: Side,
    value: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GridJson {
    m: usize,
    reductions: usize,
    labels: Vec<LabelJson>,
}

impl<T: Field> Grid<T> {
    pub fn to_json(&self) -> String {
        let doc = GridJson {
            m: self.m,
            reductions: self.reductions,
            labels: self
                .iter()
                .map(|(e, v)| LabelJson {
                    r: e.row,
                    d: e.diag,
                    side: e.side,
                    value: v.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("grid json serializes")
    }
}

impl<T: Field + FromStr> Grid<T> {
    pub fn from_json(s: &str) -> Result<Self, GridError> {
        let doc: GridJson = serde_json::from_str(s).map_err(|e| GridError::Json(e.to_string()))?;
        if doc.m == 0 {
            return Err(GridError::InvalidSize(0));
        }
        let mut slots: Vec<Option<T>> = vec![None; edge_count(doc.m)];
        for l in doc.labels {
            let e = EdgeRef::new(l.r, l.d, l.side);
            if !e.is_valid_for(doc.m) {
                return Err(GridError::EdgeOutOfRange { edge: e, m: doc.m });
            }
            let v = l.value.parse::<T>().map_err(|_| GridError::BadValue(l.value.clone()))?;
            if slots[edge_index(&e)].replace(v).is_some() {
                return Err(GridError::Json(format!("duplicate label for {e}")));
            }
        }
        let labels: Vec<T> = all_edges(doc.m)
            .zip(slots)
            .map(|(e, s)| s.ok_or(GridError::MissingEdge(e)))
            .collect::<Result<_, _>>()?;
        Grid::from_labels(doc.m, doc.reductions, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalFunction;

    type G = Grid<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn all_one_grid_sizes() {
        for (n, edges) in [(1, 3), (3, 18), (4, 30)] {
            let g = G::all_one(n).unwrap();
            assert_eq!(g.labels().len(), edges);
            assert!(g.labels().iter().all(|v| *v == 1));
            assert_eq!(g.reductions(), 0);
        }
        assert_eq!(G::all_one(0), Err(GridError::InvalidSize(0)));
    }

    #[test]
    fn boundary_classification() {
        assert_eq!(is_boundary(&EdgeRef::new(2, 1, Side::L), 3), Ok(true));
        assert_eq!(is_boundary(&EdgeRef::new(2, 1, Side::R), 3), Ok(false));
        assert_eq!(is_boundary(&EdgeRef::new(3, 2, Side::B), 3), Ok(true));
        assert!(is_boundary(&EdgeRef::new(4, 1, Side::L), 3).is_err());
        assert!(is_boundary(&EdgeRef::new(2, 3, Side::L), 3).is_err());
        for m in 1..10 {
            let n = all_edges(m).filter(|e| is_boundary(e, m).unwrap()).count();
            assert_eq!(n, 3 * m);
        }
    }

    #[test]
    fn endpoints_round_trip() {
        for e in all_edges(6) {
            let (a, b) = e.endpoints();
            assert_eq!(EdgeRef::from_endpoints(a, b), Some(e));
            assert_eq!(EdgeRef::from_endpoints(b, a), Some(e));
        }
        assert_eq!(
            EdgeRef::from_endpoints(GridVertex::new(0, 0), GridVertex::new(2, 1)),
            None
        );
    }

    #[test]
    fn symmetries_map_corners_and_are_bijective() {
        for m in 1..8 {
            let corners = [(1, 1), (m, 1), (m, m)];
            let rot = |t: (usize, usize)| Symmetry::ROTATE.apply_triangle(t.0, t.1, m);
            let images: BTreeSet<_> = corners.iter().map(|&c| rot(c)).collect();
            assert_eq!(images, corners.iter().copied().collect());
            if m > 1 {
                assert_ne!(rot((1, 1)), (1, 1));
            }
            for g in Symmetry::ALL {
                let imgs: BTreeSet<_> = all_edges(m).map(|e| g.apply_edge(&e, m)).collect();
                assert_eq!(imgs.len(), edge_count(m));
            }
        }
    }

    #[test]
    fn reflection_swaps_left_and_right() {
        let e = Symmetry::REFLECT.apply_edge(&EdgeRef::new(5, 2, Side::L), 7);
        assert_eq!(e, EdgeRef::new(5, 4, Side::R));
        let b = Symmetry::REFLECT.apply_edge(&EdgeRef::new(5, 2, Side::B), 7);
        assert_eq!(b, EdgeRef::new(5, 4, Side::B));
    }

    #[test]
    fn upper_left_half_small_cases() {
        assert_eq!(upper_left_half(1), vec![(1, 1)]);
        assert_eq!(upper_left_half(3), vec![(1, 1), (2, 1)]);
        // the centre triangle of the 4-grid is its own orbit
        assert!(upper_left_half(4).contains(&(3, 2)));
    }

    #[test]
    fn completion_of_single_edge_orbit() {
        let mut partial = BTreeMap::new();
        let a = q(5, 7);
        for s in Side::ALL {
            partial.insert(EdgeRef::new(1, 1, s), a.clone());
        }
        let g = G::symmetry_complete(&partial, 1, 0).unwrap();
        assert_eq!(g.labels(), &[a.clone(), a.clone(), a]);
    }

    #[test]
    fn completion_rejects_bad_partials() {
        let mut partial = G::all_one(3).unwrap().restrict();
        partial.insert(EdgeRef::new(1, 1, Side::L), q(2, 3));
        assert!(matches!(
            G::symmetry_complete(&partial, 3, 0),
            Err(GridError::Inconsistent { .. })
        ));
        let mut missing = G::all_one(3).unwrap().restrict();
        missing.remove(&EdgeRef::new(2, 1, Side::B));
        assert_eq!(
            G::symmetry_complete(&missing, 3, 0),
            Err(GridError::MissingEdge(EdgeRef::new(2, 1, Side::B)))
        );
        let mut extra = G::all_one(3).unwrap().restrict();
        extra.insert(EdgeRef::new(3, 3, Side::R), q(1, 1));
        assert_eq!(
            G::symmetry_complete(&extra, 3, 0),
            Err(GridError::ExtraEdge(EdgeRef::new(3, 3, Side::R)))
        );
    }

    #[test]
    fn once_reduced_pattern_completes() {
        // boundary 2/3, interior 1
        let full = G::from_fn(2, |e| if is_boundary(&e, 2).unwrap() { q(2, 3) } else { q(1, 1) }).unwrap();
        let rebuilt = G::symmetry_complete(&full.restrict(), 2, 1).unwrap();
        assert_eq!(rebuilt.labels(), full.labels());
        assert!(full.is_symmetric());
    }

    #[test]
    fn graph_conversion_counts() {
        let g = G::all_one(2).unwrap().to_graph();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        let k3 = G::all_one(1).unwrap().to_graph();
        assert_eq!(k3.edge_count(), 3);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = G::from_fn(3, |e| q(e.row as i64, e.diag as i64 + 1)).unwrap();
        let back = G::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"m":1,"reductions":0,"labels":[{"r":1,"d":1,"side":"L","value":"1"}]}"#;
        assert!(matches!(G::from_json(bad), Err(GridError::MissingEdge(_))));
        let neg = r#"{"m":1,"reductions":0,"labels":[
            {"r":1,"d":1,"side":"L","value":"-1"},
            {"r":1,"d":1,"side":"R","value":"1"},
            {"r":1,"d":1,"side":"B","value":"1"}]}"#;
        assert!(matches!(G::from_json(neg), Err(GridError::NonPositive { .. })));
        let sym: Grid<RationalFunction> = Grid::all_one(2).unwrap();
        assert_eq!(Grid::<RationalFunction>::from_json(&sym.to_json()).unwrap(), sym);
    }
}
