//! Property suites shared by the proptest target and the acceptance run.
//! Each suite drives a caller-supplied runner so the seed is explicit.

#![allow(dead_code)]

use circarray::arith::{Field, Polynomial, Rational, RationalFunction};
use circarray::grid::{all_edges, Grid, Symmetry};
use circarray::oracle::{random_connected_graph, random_grid, verify_transform_soundness, WeightedGraph};
use circarray::reduction::reduce_once;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &bytes),
    )
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| Rational::frac(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-5i64..=5, 1..=3).prop_map(|c| Polynomial::from_i64s(&c))
}

pub fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (poly(), poly().prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

/// Connected graph with at most `max_vertices` vertices, from a seed.
pub fn graph(max_vertices: usize) -> impl Strategy<Value = WeightedGraph> {
    (any::<u64>(), 0.2f64..0.8).prop_map(move |(seed, density)| {
        random_connected_graph(&mut ChaCha8Rng::seed_from_u64(seed), max_vertices, density)
    })
}

pub fn grid(max_m: usize) -> impl Strategy<Value = Grid<Rational>> {
    (2..=max_m, any::<u64>()).prop_map(|(m, seed)| random_grid(&mut ChaCha8Rng::seed_from_u64(seed), m))
}

fn to_string<E: std::fmt::Display>(r: Result<(), E>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn field_laws<T: Field>(a: &T, b: &T, c: &T) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.add(&T::zero()), a.clone());
    prop_assert_eq!(a.mul(&T::one()), a.clone());
    prop_assert!(a.sub(a).is_zero());
    if !a.is_zero() {
        prop_assert_eq!(a.div(a).unwrap(), T::one());
        prop_assert_eq!(b.div(a).unwrap().mul(a), b.clone());
    } else {
        prop_assert!(b.div(a).is_err());
    }
    Ok(())
}

pub fn rational_field_axioms(runner: &mut TestRunner) -> Result<(), String> {
    to_string(runner.run(&(rational(), rational(), rational()), |(a, b, c)| {
        field_laws(&a, &b, &c)?;
        prop_assert!(a.is_canonical() && a.add(&b).is_canonical() && a.mul(&b).is_canonical());
        Ok(())
    }))
}

pub fn rational_function_axioms(runner: &mut TestRunner) -> Result<(), String> {
    to_string(runner.run(
        &(rational_function(), rational_function(), rational_function()),
        |(f, g, h)| {
            field_laws(&f, &g, &h)?;
            prop_assert!(f.add(&g).is_canonical() && f.mul(&g).is_canonical());
            Ok(())
        },
    ))
}

/// Evaluation at a point is a ring homomorphism wherever it is defined.
pub fn eval_homomorphism(runner: &mut TestRunner) -> Result<(), String> {
    to_string(
        runner.run(&(rational_function(), rational_function(), rational()), |(f, g, x)| {
            if let (Ok(fx), Ok(gx)) = (f.eval(&x), g.eval(&x)) {
                prop_assert_eq!(f.add(&g).eval(&x).unwrap(), &fx + &gx);
                prop_assert_eq!(f.mul(&g).eval(&x).unwrap(), &fx * &gx);
            }
            Ok(())
        }),
    )
}

/// Effective resistance is a metric on every connected graph.
pub fn metric_axioms(runner: &mut TestRunner) -> Result<(), String> {
    to_string(runner.run(&graph(7), |g| {
        let r = g.resistance_matrix().unwrap();
        let n = g.vertex_count();
        let at = |a: usize, b: usize| r[&(a.min(b), a.max(b))].clone();
        for a in 0..n {
            for b in a + 1..n {
                prop_assert!(at(a, b).is_positive());
                prop_assert_eq!(g.effective_resistance(b, a).unwrap(), at(a, b));
                for c in 0..n {
                    if c != a && c != b {
                        prop_assert!(at(a, b) <= &at(a, c) + &at(c, b));
                    }
                }
            }
        }
        Ok(())
    }))
}

/// Reflection is an involution, rotation has order three, and reduction
/// commutes with every symmetry.
pub fn symmetry_idempotence(runner: &mut TestRunner) -> Result<(), String> {
    to_string(runner.run(&grid(5), |g| {
        let m = g.m();
        for e in all_edges(m) {
            prop_assert_eq!(Symmetry::REFLECT.apply_edge(&Symmetry::REFLECT.apply_edge(&e, m), m), e);
        }
        prop_assert_eq!(&g.transformed(Symmetry::REFLECT).transformed(Symmetry::REFLECT), &g);
        let thrice = g
            .transformed(Symmetry::ROTATE)
            .transformed(Symmetry::ROTATE)
            .transformed(Symmetry::ROTATE);
        prop_assert_eq!(&thrice, &g);
        let child = reduce_once(&g).unwrap();
        for s in Symmetry::ALL {
            prop_assert_eq!(reduce_once(&g.transformed(s)).unwrap(), child.transformed(s));
        }
        Ok(())
    }))
}

pub fn transform_soundness(runner: &mut TestRunner) -> Result<(), String> {
    to_string(runner.run(&graph(6), |g| {
        let rep = verify_transform_soundness(std::slice::from_ref(&g));
        prop_assert!(rep.passed(), "{}", rep);
        Ok(())
    }))
}

pub type Suite = fn(&mut TestRunner) -> Result<(), String>;

pub const SUITES: [(&str, Suite); 6] = [
    ("rational field axioms", rational_field_axioms),
    ("rational function field axioms", rational_function_axioms),
    ("evaluation homomorphism", eval_homomorphism),
    ("metric axioms", metric_axioms),
    ("symmetry idempotence", symmetry_idempotence),
    ("transform soundness", transform_soundness),
];
