//! Fibonacci and Lucas numbers, straight linear 2-trees and the summation
//! formula for their effective resistances.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{OracleError, WeightedGraph};
use crate::arith::Rational;
use crate::report::Report;

/// `F_n` and `L_n` at one (possibly negative) index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPair {
    pub index: i64,
    pub f: BigInt,
    pub l: BigInt,
}

impl FibPair {
    pub fn at(index: i64) -> Self {
        let k = index.unsigned_abs();
        let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
        for _ in 0..k {
            let next = &f0 + &f1;
            f0 = std::mem::replace(&mut f1, next);
        }
        // L_k = F_{k-1} + F_{k+1} = 2 F_{k+1} - F_k
        let l = BigInt::from(2) * &f1 - &f0;
        let (f, l) = if index >= 0 || k.is_multiple_of(2) {
            // F_{-k} = (-1)^{k+1} F_k, L_{-k} = (-1)^k L_k
            (if index < 0 { -f0 } else { f0 }, l)
        } else {
            (f0, -l)
        };
        FibPair { index, f, l }
    }
}

pub fn fib(n: i64) -> BigInt {
    FibPair::at(n).f
}

pub fn lucas(n: i64) -> BigInt {
    FibPair::at(n).l
}

/// Square of the path on `n` vertices: vertex `i` joined to `i+1` and
/// `i+2`, unit resistors. Vertex `i` (1-based) has id `i - 1`.
pub fn straight_2tree(n: usize) -> Result<WeightedGraph, OracleError> {
    if n < 3 {
        return Err(OracleError::Index(format!("straight 2-tree needs n >= 3, got {n}")));
    }
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in [i + 1, i + 2] {
            if j < n {
                g.add_edge(i, j, Rational::from(1))?;
            }
        }
    }
    Ok(g)
}

/// Closed summation for `r(u, v)` in the straight 2-tree on `n` vertices,
/// 1-based, `u < v`.
pub fn r_formula_straight(n: usize, u: usize, v: usize) -> Result<Rational, OracleError> {
    if !(1 <= u && u < v && v <= n) {
        return Err(OracleError::Index(format!(
            "need 1 <= u < v <= n, got u={u} v={v} n={n}"
        )));
    }
    let (n, u, v) = (n as i64, u as i64, v as i64);
    let mut sum = BigInt::zero();
    for i in 1..=v - u {
        let a = fib(i) * fib(i + 2 * u - 2) - fib(i - 1) * fib(i + 2 * u - 3);
        sum += a * fib(2 * n - 2 * i - 2 * u + 1);
    }
    Ok(Rational::new(sum, fib(2 * n - 2))?)
}

fn ratio(a: BigInt, b: BigInt) -> Rational {
    Rational::new(a, b).expect("Lucas numbers with positive index are nonzero")
}

/// Checks the Lucas-ratio sum for `m <= mmax` and the alternating
/// Fibonacci sum for `5 <= n <= nmax`, `3 <= k <= n - 2`.
pub fn verify_fib_identities(mmax: usize, nmax: usize) -> Report {
    let mut rep = Report::new("fibonacci identities");
    let mut sum = Rational::from(0);
    let mut first_bad = None;
    for m in 1..=mmax as i64 {
        sum = &sum + &ratio(fib(m) * fib(m + 1), lucas(m) * lucas(m + 1));
        let rhs = ratio(
            BigInt::from(m + 1) * lucas(m + 1) - fib(m + 1),
            BigInt::from(5) * lucas(m + 1),
        );
        if sum != rhs && first_bad.is_none() {
            first_bad = Some(format!("m={m}: {sum} != {rhs}"));
        }
    }
    match first_bad {
        None => rep.pass("lucas ratio sum", format!("holds for 1 <= m <= {mmax}")),
        Some(d) => rep.fail("lucas ratio sum", d),
    }

    let mut first_bad = None;
    let mut cases = 0;
    for n in 5..=nmax as i64 {
        for k in 3..=n - 2 {
            let mut lhs = BigInt::zero();
            for j in 3..=k {
                let t = fib(n - 2 * j + 1) * (fib(n) + fib(j - 2) * fib(n - j - 1));
                if j % 2 == 0 {
                    lhs += t;
                } else {
                    lhs -= t;
                }
            }
            let rhs = -(fib(k - 2) * fib(k + 1) * fib(n - k - 2) * fib(n + 1 - k));
            cases += 1;
            if lhs != rhs && first_bad.is_none() {
                first_bad = Some(format!("n={n} k={k}: {lhs} != {rhs}"));
            }
        }
    }
    match first_bad {
        None => rep.pass(
            "alternating sum",
            format!("holds for all {cases} pairs with n <= {nmax}"),
        ),
        Some(d) => rep.fail("alternating sum", d),
    }
    rep
}

/// Summation formula against the Laplacian solve for every pair of every
/// straight 2-tree with `3 <= n <= nmax`.
pub fn verify_straight_2tree(nmax: usize) -> Report {
    let mut rep = Report::new("straight 2-tree resistances");
    for n in 3..=nmax {
        let g = straight_2tree(n).expect("n >= 3");
        let all = g.resistance_matrix().expect("2-trees are connected");
        let bad = all.iter().find_map(|(&(a, b), r)| {
            let f = r_formula_straight(n, a + 1, b + 1).expect("valid pair");
            (f != *r).then(|| format!("u={} v={}: formula {f}, oracle {r}", a + 1, b + 1))
        });
        match bad {
            None => rep.pass(format!("n={n}"), format!("{} pairs agree", all.len())),
            Some(d) => rep.fail(format!("n={n}"), d),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let f: Vec<i64> = (-4..=8).map(|n| fib(n).try_into().unwrap()).collect();
        assert_eq!(f, [-3, 2, -1, 1, 0, 1, 1, 2, 3, 5, 8, 13, 21]);
        let l: Vec<i64> = (-3..=6).map(|n| lucas(n).try_into().unwrap()).collect();
        assert_eq!(l, [-4, 3, -1, 2, 1, 3, 4, 7, 11, 18]);
    }

    #[test]
    fn tree_shape() {
        assert!(straight_2tree(2).is_err());
        assert_eq!(straight_2tree(3).unwrap().edge_count(), 3);
        let s5 = straight_2tree(5).unwrap();
        assert_eq!(s5.edge_count(), 7);
        let degs: Vec<usize> = (0..5).map(|v| s5.degree(v)).collect();
        assert_eq!(degs, [2, 3, 4, 3, 2]);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(r_formula_straight(3, 1, 2).unwrap(), Rational::frac(2, 3));
        assert_eq!(r_formula_straight(4, 1, 2).unwrap(), Rational::frac(5, 8));
        let g = straight_2tree(5).unwrap();
        assert_eq!(
            r_formula_straight(5, 2, 3).unwrap(),
            g.effective_resistance(1, 2).unwrap()
        );
        assert!(r_formula_straight(4, 3, 3).is_err());
    }

    #[test]
    fn identities_small() {
        assert!(verify_fib_identities(10, 12).passed());
        assert!(verify_straight_2tree(7).passed());
    }
}
