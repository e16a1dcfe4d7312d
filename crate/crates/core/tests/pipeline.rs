use circarray::array::{build_array, build_array_with, diagonal_from, leftmost_diagonal, verify_n_independence};
use circarray::grid::{Grid, Side};
use circarray::oracle::{graph_level_reduce, WeightedGraph};
use circarray::reduction::{reduce_k, reduce_once};
use circarray::sequence::{nprime_sequence, symbolic_diagonal};
use circarray::{Rational, RationalFunction};

#[test]
fn windowed_diagonal_equals_full_reduction() {
    let a = build_array(10).unwrap();
    assert_eq!(leftmost_diagonal(10).unwrap(), a.diagonal());
}

#[test]
fn diagonal_from_a_larger_grid_is_unchanged() {
    let g = Grid::<Rational>::all_one(30).unwrap();
    assert_eq!(diagonal_from(g, 6).unwrap(), leftmost_diagonal(6).unwrap());
    assert!(diagonal_from(Grid::<Rational>::all_one(10).unwrap(), 6).is_err());
}

#[test]
fn larger_column_grids_change_nothing() {
    let a = build_array(5).unwrap();
    let b = build_array_with(5, |j| 4 * j + 3).unwrap();
    for e in a.entries() {
        assert_eq!(&e.value, b.entry(e.i, e.j).unwrap());
    }
    assert!(verify_n_independence(4, 2).unwrap().passed());
}

#[test]
fn repeated_reduction_agrees_with_graph_reduction() {
    let mut fast = Grid::<Rational>::all_one(7).unwrap();
    let mut slow = fast.clone();
    for _ in 0..5 {
        fast = reduce_once(&fast).unwrap();
        slow = graph_level_reduce(&slow).unwrap();
        assert_eq!(fast, slow);
    }
    assert_eq!(reduce_k(&Grid::<Rational>::all_one(7).unwrap(), 5).unwrap(), fast);
}

#[test]
fn symbolic_diagonal_evaluates_to_exact_values() {
    let exact = leftmost_diagonal(6).unwrap();
    let nine = Rational::from(9);
    for (f, l) in symbolic_diagonal(6).unwrap().iter().zip(&exact) {
        assert_eq!(&f.eval(&nine).unwrap(), l);
    }
}

#[test]
fn symbolic_grid_specializes_to_the_rational_grid() {
    let x = RationalFunction::x();
    let g = Grid::from_fn(5, |e| {
        if e.row == 5 {
            x.clone()
        } else {
            RationalFunction::from_rational(&Rational::frac(1, 2))
        }
    })
    .unwrap();
    let child = reduce_once(&g).unwrap();
    let at = Rational::from(4);
    let concrete = g.map(|f| f.eval(&at).unwrap());
    assert_eq!(child.map(|f| f.eval(&at).unwrap()), reduce_once(&concrete).unwrap());
}

#[test]
fn grid_json_round_trip() {
    let g = reduce_k(&Grid::<Rational>::all_one(8).unwrap(), 2).unwrap();
    let back = Grid::<Rational>::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.reductions(), 2);
    assert_eq!(back.label(3, 2, Side::L), &Rational::frac(26, 27));
}

#[test]
fn grid_graph_resistances_are_consistent() {
    let g = Grid::<Rational>::all_one(3).unwrap().to_graph();
    let back = WeightedGraph::from_json(&g.to_json()).unwrap();
    let r = back.effective_resistance(0, 1).unwrap();
    assert_eq!(r, g.effective_resistance(1, 0).unwrap());
    assert!(r.is_positive() && r < 1);
}

#[test]
fn array_renderings_agree() {
    let a = build_array(3).unwrap();
    let csv = a.to_csv();
    assert_eq!(csv.lines().count(), 1 + 1 + 3 + 5);
    assert!(csv.contains("1157/960"));
    assert!(a.to_markdown().contains("| 13/32 |"));
    let json: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert!(json.to_string().contains("26/27"));
}

#[test]
fn normalized_numerators_grow() {
    let seq = nprime_sequence(20).unwrap();
    assert!(seq.entries().windows(2).all(|w| w[1] > w[0]));
    assert_eq!(seq.get(5).unwrap().to_string(), "2521");
}
