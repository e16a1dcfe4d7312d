//! One-step reduction of an m-grid to an (m-1)-grid.
//!
//! Each parent triangle is replaced by a star (Δ-Y). Its three legs are
//! computed once per triangle and shared by every child edge that touches
//! it. A child edge is then either the Y-Δ image of the claw around an
//! interior parent vertex, or the series sum of the two legs meeting at a
//! boundary parent vertex.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::{ArithError, Field};
use crate::grid::{all_edges, upper_left_half_edges, EdgeRef, Grid, GridError, Side, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{kind:?} at {edge} requires {constraint}")]
    Domain {
        kind: Option<TransformKind>,
        edge: EdgeRef,
        constraint: &'static str,
    },
    #[error("a {0}-grid has nothing left to reduce")]
    NothingToReduce(usize),
    #[error("cannot apply {k} reductions to a {m}-grid (need k < m)")]
    TooManySteps { k: usize, m: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// The four edge transformation functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    BoundaryLeft,
    NonBoundaryLeft,
    NonBoundaryRight,
    Base,
}

/// `Δ(x, y, z) = xy / (x + y + z)`: the star leg between the two delta
/// edges `x` and `y`.
pub fn delta<T: Field>(x: &T, y: &T, z: &T) -> Result<T, ArithError> {
    x.delta(y, z)
}

/// `Y(x, y, z) = (xy + yz + zx) / x`: the delta edge opposite star leg `x`.
pub fn wye<T: Field>(x: &T, y: &T, z: &T) -> Result<T, ArithError> {
    x.wye(y, z)
}

pub fn series_merge<T: Field>(r1: &T, r2: &T) -> T {
    r1.add(r2)
}

/// Star legs of a parent triangle after Δ-Y: `[apex, bottom_left, bottom_right]`.
fn triangle_legs<T: Field>([l, r, b]: [&T; 3]) -> Result<[T; 3], ArithError> {
    Ok([delta(l, r, b)?, delta(b, l, r)?, delta(r, b, l)?])
}

/// Lazily memoized star legs for every triangle of a parent grid.
struct Legs<'a, T> {
    parent: &'a Grid<T>,
    cache: Vec<OnceLock<Result<[T; 3], ArithError>>>,
}

impl<'a, T: Field> Legs<'a, T> {
    fn new(parent: &'a Grid<T>) -> Self {
        let m = parent.m();
        Legs {
            parent,
            cache: (0..m * (m + 1) / 2).map(|_| OnceLock::new()).collect(),
        }
    }

    fn get(&self, r: usize, d: usize) -> Result<&[T; 3], ArithError> {
        let slot = &self.cache[(r - 1) * r / 2 + (d - 1)];
        slot.get_or_init(|| triangle_legs(self.parent.triangle(r, d)))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn apex(&self, r: usize, d: usize) -> Result<&T, ArithError> {
        Ok(&self.get(r, d)?[0])
    }

    fn bottom_left(&self, r: usize, d: usize) -> Result<&T, ArithError> {
        Ok(&self.get(r, d)?[1])
    }

    fn bottom_right(&self, r: usize, d: usize) -> Result<&T, ArithError> {
        Ok(&self.get(r, d)?[2])
    }
}

/// Which transformation function produces child edge `e` of a reduced
/// `parent_m`-grid, or `None` when the edge is only reachable by symmetry
/// (right and bottom boundaries).
pub fn transform_kind(e: &EdgeRef, parent_m: usize) -> Option<TransformKind> {
    let child_m = parent_m.checked_sub(1)?;
    if !e.is_valid_for(child_m) {
        return None;
    }
    match e.side {
        Side::L if e.diag == 1 => Some(TransformKind::BoundaryLeft),
        Side::L => Some(TransformKind::NonBoundaryLeft),
        Side::R if e.diag < e.row => Some(TransformKind::NonBoundaryRight),
        Side::B if e.row + 2 <= parent_m => Some(TransformKind::Base),
        _ => None,
    }
}

fn domain_error(kind: Option<TransformKind>, edge: EdgeRef, constraint: &'static str) -> ReductionError {
    ReductionError::Domain { kind, edge, constraint }
}

fn check_domain(e: &EdgeRef, parent_m: usize) -> Result<TransformKind, ReductionError> {
    if parent_m < 2 {
        return Err(ReductionError::NothingToReduce(parent_m));
    }
    if e.diag < 1 || e.diag > e.row {
        return Err(domain_error(None, *e, "1 <= d <= r"));
    }
    if e.row + 1 > parent_m {
        return Err(domain_error(None, *e, "r + 1 <= m"));
    }
    match e.side {
        Side::L if e.diag == 1 => Ok(TransformKind::BoundaryLeft),
        Side::L => Ok(TransformKind::NonBoundaryLeft),
        Side::R if e.diag < e.row => Ok(TransformKind::NonBoundaryRight),
        Side::R => Err(domain_error(Some(TransformKind::NonBoundaryRight), *e, "d + 1 <= r")),
        Side::B if e.row + 2 <= parent_m => Ok(TransformKind::Base),
        Side::B => Err(domain_error(Some(TransformKind::Base), *e, "r + 2 <= m")),
    }
}

fn child_edge_with<T: Field>(legs: &Legs<'_, T>, e: &EdgeRef) -> Result<T, ReductionError> {
    let kind = check_domain(e, legs.parent.m())?;
    let (r, d) = (e.row, e.diag);
    let value = match kind {
        TransformKind::BoundaryLeft => series_merge(legs.bottom_left(r, 1)?, legs.apex(r + 1, 1)?),
        TransformKind::NonBoundaryLeft => wye(
            legs.bottom_right(r, d - 1)?,
            legs.bottom_left(r, d)?,
            legs.apex(r + 1, d)?,
        )?,
        TransformKind::NonBoundaryRight => wye(
            legs.bottom_left(r, d + 1)?,
            legs.bottom_right(r, d)?,
            legs.apex(r + 1, d + 1)?,
        )?,
        TransformKind::Base => wye(
            legs.apex(r + 2, d + 1)?,
            legs.bottom_right(r + 1, d)?,
            legs.bottom_left(r + 1, d + 1)?,
        )?,
    };
    Ok(value)
}

/// Label of child edge `T_{r,d,side}` after one reduction of `parent`.
pub fn child_edge<T: Field>(parent: &Grid<T>, r: usize, d: usize, side: Side) -> Result<T, ReductionError> {
    child_edge_with(&Legs::new(parent), &EdgeRef::new(r, d, side))
}

fn map_edges<T: Field>(
    edges: &[EdgeRef],
    f: impl Fn(&EdgeRef) -> Result<T, ReductionError> + Sync + Send,
) -> Result<Vec<T>, ReductionError> {
    crate::par::map(edges, f).into_iter().collect()
}

/// Reduces `parent` by one row of triangles.
///
/// A symmetric parent is handled by computing the upper-left half and
/// completing by symmetry; any other parent has every child edge computed,
/// with the right and bottom boundaries taken from the reflected or rotated
/// parent.
pub fn reduce_once<T: Field>(parent: &Grid<T>) -> Result<Grid<T>, ReductionError> {
    if parent.m() < 2 {
        return Err(ReductionError::NothingToReduce(parent.m()));
    }
    if parent.is_symmetric() {
        reduce_once_symmetric(parent)
    } else {
        reduce_once_direct(parent)
    }
}

/// Upper-left half of the child plus symmetry completion. The parent must be
/// symmetric.
pub fn reduce_once_symmetric<T: Field>(parent: &Grid<T>) -> Result<Grid<T>, ReductionError> {
    let m = parent.m();
    if m < 2 {
        return Err(ReductionError::NothingToReduce(m));
    }
    let child_m = m - 1;
    let legs = Legs::new(parent);
    let reps = upper_left_half_edges(child_m);
    let values = map_edges(&reps, |e| {
        // an uncovered edge has the value of any covered edge in its orbit
        let target = Symmetry::ALL
            .iter()
            .map(|g| g.apply_edge(e, child_m))
            .find(|img| transform_kind(img, m).is_some())
            .expect("every orbit contains a left-boundary or interior edge");
        child_edge_with(&legs, &target)
    })?;
    let partial: BTreeMap<EdgeRef, T> = reps.into_iter().zip(values).collect();
    Ok(Grid::symmetry_complete(&partial, child_m, parent.reductions() + 1)?)
}

/// Every child edge computed explicitly; valid for any parent.
pub fn reduce_once_direct<T: Field>(parent: &Grid<T>) -> Result<Grid<T>, ReductionError> {
    let m = parent.m();
    if m < 2 {
        return Err(ReductionError::NothingToReduce(m));
    }
    let child_m = m - 1;
    let views: Vec<Grid<T>> = Symmetry::ALL.iter().map(|g| parent.transformed(*g)).collect();
    let view_legs: Vec<Legs<'_, T>> = views.iter().map(Legs::new).collect();
    let edges: Vec<EdgeRef> = all_edges(child_m).collect();
    let labels = map_edges(&edges, |e| {
        if transform_kind(e, m).is_some() {
            return child_edge_with(&view_legs[0], e);
        }
        // reduction commutes with the symmetries: child(P∘g)(y) = child(P)(g y)
        for (i, g) in Symmetry::ALL.iter().enumerate() {
            for y in all_orbit(e, child_m) {
                if transform_kind(&y, m).is_some() && g.apply_edge(&y, child_m) == *e {
                    return child_edge_with(&view_legs[i], &y);
                }
            }
        }
        unreachable!("every child edge has a covered preimage")
    })?;
    Ok(Grid::from_labels(child_m, parent.reductions() + 1, labels)?)
}

fn all_orbit(e: &EdgeRef, m: usize) -> impl Iterator<Item = EdgeRef> + '_ {
    Symmetry::ALL.iter().map(move |g| g.apply_edge(e, m))
}

/// One reduction restricted to a window along the left boundary.
///
/// The parent is taken to be the top `parent.m()` rows of a larger
/// reflection-symmetric grid, of which only triangles `T_{r,d}` with
/// `r >= first_row` and `d <= width(r)` are trusted. The child has
/// `parent.m() - 2` rows. A child edge in row `r >= first_row` reads parent
/// triangles in rows `r..=r+2` and diagonals `d-1..=d+1`, so it is exact
/// when `d < min(width(r), width(r+1), width(r+2))`; every other child edge
/// is set to one and carries no meaning. Where the parent rows a child row
/// reads repeat those of the previous child row, the shared prefix is
/// copied rather than recomputed.
pub fn reduce_window<T: Field>(
    parent: &Grid<T>,
    first_row: usize,
    width: impl Fn(usize) -> usize,
) -> Result<Grid<T>, ReductionError> {
    let m = parent.m();
    if m < 3 {
        return Err(ReductionError::NothingToReduce(m));
    }
    let child_m = m - 2;
    let first_row = first_row.max(1);
    let limit: Vec<usize> = (0..=child_m)
        .map(|r| {
            if r < first_row {
                return 0;
            }
            (0..3).map(|i| width(r + i)).min().unwrap().saturating_sub(1).min(r)
        })
        .collect();
    // prefix[r]: leading diagonals of child row r equal to those of row r-1,
    // because the parent rows they read agree
    let mut prefix = vec![0; child_m + 1];
    for r in first_row + 1..=child_m {
        let w = limit[r - 1].min(limit[r]);
        if w > 0
            && w + 1 < r - 1
            && (0..3).all(|i| (1..=w + 1).all(|d| parent.triangle(r + i, d) == parent.triangle(r - 1 + i, d)))
        {
            prefix[r] = w;
        }
    }
    let legs = Legs::new(parent);
    let edges: Vec<EdgeRef> = (first_row..=child_m)
        .flat_map(|r| {
            (prefix[r] + 1..=limit[r]).flat_map(move |d| Side::ALL.into_iter().map(move |s| EdgeRef::new(r, d, s)))
        })
        .collect();
    let values = map_edges(&edges, |e| {
        if e.side == Side::R && e.diag == e.row {
            // reflection within the row
            return child_edge_with(&legs, &EdgeRef::new(e.row, 1, Side::L));
        }
        child_edge_with(&legs, e)
    })?;
    let mut child = Grid::from_fn(child_m, |_| T::one())?.with_reductions(parent.reductions() + 1);
    for (e, v) in edges.into_iter().zip(values) {
        child.set(e, v)?;
    }
    for (r, &shared) in prefix.iter().enumerate().skip(first_row + 1) {
        for d in 1..=shared {
            for side in Side::ALL {
                let v = child.label(r - 1, d, side).clone();
                child.set(EdgeRef::new(r, d, side), v)?;
            }
        }
    }
    Ok(child)
}

/// `k` successive reductions.
pub fn reduce_k<T: Field>(g: &Grid<T>, k: usize) -> Result<Grid<T>, ReductionError> {
    if k >= g.m() {
        return Err(ReductionError::TooManySteps { k, m: g.m() });
    }
    let mut cur = g.clone();
    for _ in 0..k {
        cur = reduce_once(&cur)?;
    }
    Ok(cur)
}
