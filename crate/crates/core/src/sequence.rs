//! Analysis of the leftmost diagonal `L_s`: normalized numerators and their
//! Hankel determinants, the single-variable symbolic pipeline, and the
//! product approximations `A_s`, `P_s`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Field, Polynomial, Rational, RationalFunction};
use crate::array::{diagonal_from, leftmost_diagonal, ArrayError, CircuitArray};
use crate::grid::{is_boundary, Grid, Side};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("2^{exponent} * L_{s} = {value} is not an integer")]
    NonIntegral { s: usize, exponent: usize, value: Rational },
    #[error("need {needed} sequence terms, have {have}")]
    TooShort { needed: usize, have: usize },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `j(j+1)/2`.
pub fn triangular(j: usize) -> usize {
    j * (j + 1) / 2
}

/// `n'_s = 2^{4s-7} · L_s` for `s = 2..`, with the reduced pairs `(n_s, d_s)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumeratorSequence {
    #[serde(serialize_with = "ser_bigints")]
    entries: Vec<BigInt>,
    #[serde(serialize_with = "ser_pairs")]
    reduced: Vec<(BigInt, BigInt)>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

fn ser_pairs<S: serde::Serializer>(v: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(n, d)| [n.to_string(), d.to_string()]))
}

impl NumeratorSequence {
    /// From `diag[s-1] = L_s`; `L_1` is ignored.
    pub fn from_diagonal(diag: &[Rational]) -> Result<Self, SequenceError> {
        let mut entries = Vec::new();
        let mut reduced = Vec::new();
        for (i, l) in diag.iter().enumerate().skip(1) {
            let s = i + 1;
            let exponent = 4 * s - 7;
            let scaled = l * &Rational::from_integer(BigInt::one() << exponent);
            if !scaled.is_integer() {
                return Err(SequenceError::NonIntegral {
                    s,
                    exponent,
                    value: scaled,
                });
            }
            entries.push(scaled.numer().clone());
            reduced.push((l.numer().clone(), l.denom().clone()));
        }
        Ok(NumeratorSequence { entries, reduced })
    }

    /// Largest `s` held.
    pub fn max_s(&self) -> usize {
        self.entries.len() + 1
    }

    /// `n'_s`, for `s >= 2`.
    pub fn get(&self, s: usize) -> Option<&BigInt> {
        s.checked_sub(2).and_then(|i| self.entries.get(i))
    }

    /// `(n_s, d_s)`, for `s >= 2`.
    pub fn reduced(&self, s: usize) -> Option<&(BigInt, BigInt)> {
        s.checked_sub(2).and_then(|i| self.reduced.get(i))
    }

    /// `n'_2, n'_3, ...`
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }
}

/// `n'_2..n'_{max_s}` from the exact diagonal.
pub fn nprime_sequence(max_s: usize) -> Result<NumeratorSequence, SequenceError> {
    if max_s < 2 {
        return Err(SequenceError::Domain(format!("max_s must be at least 2, got {max_s}")));
    }
    NumeratorSequence::from_diagonal(&leftmost_diagonal(max_s)?)
}

/// Records `d_s | 2^{4s-7}` for every `s >= 2` of `diag`.
pub fn verify_denominator_divisibility(diag: &[Rational]) -> Report {
    let mut rep = Report::new("denominators divide 2^(4s-7)");
    for (i, l) in diag.iter().enumerate().skip(1) {
        let s = i + 1;
        let power = BigInt::one() << (4 * s - 7);
        rep.check(
            power.is_multiple_of(l.denom()),
            format!("d_{s} | 2^{}", 4 * s - 7),
            format!("d_{s} = {}", l.denom()),
        );
    }
    rep
}

/// Fraction-free Gaussian elimination. Rows are swapped on a zero pivot;
/// a singular matrix gives zero.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `k×k` matrix `[terms[start + i + j]]`.
pub fn hankel_matrix(terms: &[BigInt], start: usize, k: usize) -> Result<Vec<Vec<BigInt>>, SequenceError> {
    let needed = start + 2 * k - 1;
    if k == 0 || terms.len() < needed {
        return Err(SequenceError::TooShort {
            needed,
            have: terms.len(),
        });
    }
    Ok((0..k).map(|i| terms[start + i..start + i + k].to_vec()).collect())
}

/// Determinant of the `k×k` Hankel matrix on `n'_2..n'_{2k}`.
pub fn hankel_determinant(seq: &NumeratorSequence, k: usize) -> Result<BigInt, SequenceError> {
    Ok(bareiss_determinant(hankel_matrix(seq.entries(), 0, k)?))
}

/// `Some(e)` when `n = 9^e`.
pub fn power_of_nine(n: &BigInt) -> Option<u32> {
    if !n.is_positive() {
        return None;
    }
    let nine = BigInt::from(9);
    let mut n = n.clone();
    let mut e = 0;
    while n.is_multiple_of(&nine) {
        n /= &nine;
        e += 1;
    }
    n.is_one().then_some(e)
}

/// Checks `det_k = 9^{T(k-1)}` for `k = 2..=kmax`, and records how the
/// `(j+1)×(j+1)` reading with exponent `T(j-1)` compares.
pub fn verify_determinant_conjecture(seq: &NumeratorSequence, kmax: usize) -> Result<Report, SequenceError> {
    if kmax < 2 {
        return Err(SequenceError::Domain(format!("kmax must be at least 2, got {kmax}")));
    }
    let mut rep = Report::new("Hankel determinants of n'_s");
    let mut literal_holds = 0;
    for k in 2..=kmax {
        let det = hankel_determinant(seq, k)?;
        let e = power_of_nine(&det);
        let expect = triangular(k - 1) as u32;
        rep.check(
            e == Some(expect),
            format!("det_{k} = 9^T({})", k - 1),
            match e {
                Some(e) => format!("det_{k} = 9^{e}, T({}) = {expect}", k - 1),
                None => format!("det_{k} = {det} is not a power of 9"),
            },
        );
        // size j+1 with j = k-1 predicts exponent T(k-2)
        if e == Some(triangular(k - 2) as u32) {
            literal_holds += 1;
        }
    }
    rep.info(
        "index convention",
        format!(
            "exponent T(j-1) for the (j+1)x(j+1) matrix matches {literal_holds} of {} orders; \
             the k x k determinant has exponent T(k-1)",
            kmax - 1
        ),
    );
    Ok(rep)
}

/// Every Hankel window of orders `2..=rmax` over the available terms is
/// nonzero, so no linear homogeneous recursion with constant coefficients
/// of order below `rmax` fits the sequence. Row 0's numerators are shown as
/// a contrast when supplied.
pub fn lhrcc_ruled_out(seq: &NumeratorSequence, rmax: usize, row0: Option<&[BigInt]>) -> Result<Report, SequenceError> {
    let terms = seq.entries();
    if rmax < 2 || terms.len() < 2 * rmax - 1 {
        return Err(SequenceError::TooShort {
            needed: 2 * rmax - 1,
            have: terms.len(),
        });
    }
    let mut rep = Report::new("no constant-coefficient recursion for n'_s");
    for r in 2..=rmax {
        let windows = terms.len() + 1 - (2 * r - 1);
        let zero_at: Vec<usize> = (0..windows)
            .filter(|&w| bareiss_determinant(hankel_matrix(terms, w, r).unwrap()).is_zero())
            .map(|w| w + 2)
            .collect();
        rep.check(
            zero_at.is_empty(),
            format!("order {r} windows nonzero"),
            if zero_at.is_empty() {
                format!("{windows} windows, none vanish: no recursion of order {}", r - 1)
            } else {
                format!("vanishing at s = {zero_at:?}")
            },
        );
    }
    if let Some(row0) = row0 {
        let windows = row0.len().saturating_sub(4);
        let vanish = (0..windows).all(|w| bareiss_determinant(hankel_matrix(row0, w, 3).unwrap()).is_zero());
        rep.check(
            windows > 0 && vanish,
            "row 0 contrast",
            format!("all {windows} order-3 windows of row 0 numerators vanish: an order-2 recursion exists"),
        );
    }
    Ok(rep)
}

/// Unreduced row 0 numerators `9^s·C_{0,s}`, starting from `s = 0` (value `-2`).
pub fn row0_numerators(a: &CircuitArray) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(-2)];
    for (j, v) in a.row(0).into_iter().enumerate() {
        let scaled = v * &Rational::from_integer(BigInt::from(9).pow(j as u32 + 1));
        out.push(scaled.numer().clone());
    }
    out
}

/// `L_1(x)..L_{max_s}(x)` starting from the once-reduced grid with every
/// boundary edge `1 - 3/x` and every interior edge 1.
pub fn symbolic_diagonal(max_s: usize) -> Result<Vec<RationalFunction>, SequenceError> {
    if max_s == 0 {
        return Ok(Vec::new());
    }
    let three = RationalFunction::from_i64(3);
    let boundary = RationalFunction::one().sub(&three.div(&RationalFunction::x())?);
    let m = 4 * max_s - 1;
    let g = Grid::from_fn(m, |e| {
        if is_boundary(&e, m) == Ok(true) {
            boundary.clone()
        } else {
            RationalFunction::one()
        }
    })
    .map_err(|e| SequenceError::Domain(e.to_string()))?
    .with_reductions(1);
    let mut out = vec![g.label(1, 1, Side::L).clone()];
    out.extend(diagonal_from(g, max_s)?);
    Ok(out)
}

/// Published single-variable formulas for `L_1..L_7`, in parser syntax.
pub const PRINTED_SYMBOLIC: [&str; 7] = [
    "(x-3)/(x-1)",
    "2/3*(x-3)/(x-1)",
    "(x-3)*(3*x-1)/(6*(x-1)^2)",
    "(x-3)*(3*(x-1)*(x-3)+4*(3*x-1)^2)/(96*(x-1)^3)",
    "(x-3)*(3*(x-1)*(x-3)*(34*x-18)+16*(3*x-1)^3)/(1536*(x-1)^4)",
    "(x-3)*(3*(x-1)*(x-3)*(793*x^2-874*x+273)+64*(3*x-1)^4)/(24576*(x-1)^5)",
    "(x-3)*(6*(x-1)*(x-3)*(7895*x^3-13549*x^2+8693*x-2015)+4^4*(3*x-1)^5)/(393216*(x-1)^6)",
];

/// `c` when `f`'s denominator is exactly `c·(x-1)^e`.
pub fn denominator_constant(f: &RationalFunction, e: u32) -> Option<BigInt> {
    let base = Polynomial::from_i64s(&[-1, 1]).pow(e);
    let c = f.denom_leading_coeff().clone();
    (base.scale(&c) == *f.denom()).then_some(c)
}

/// Compares the symbolic diagonal with the printed formulas, checks the
/// denominator constants `3·2^{4(s-3)+1}` for `s >= 3`, and checks the
/// values at `x = 9` against `exact` (`exact[s-1] = L_s`).
pub fn verify_symbolic_patterns(max_s: usize, exact: &[Rational]) -> Result<Report, SequenceError> {
    if !(1..=7).contains(&max_s) {
        return Err(SequenceError::Domain(format!(
            "printed formulas cover s = 1..7, got {max_s}"
        )));
    }
    if exact.len() < max_s {
        return Err(SequenceError::TooShort {
            needed: max_s,
            have: exact.len(),
        });
    }
    let computed = symbolic_diagonal(max_s)?;
    let nine = Rational::from(9);
    let mut rep = Report::new("symbolic diagonal");
    for (i, f) in computed.iter().enumerate() {
        let s = i + 1;
        let printed: RationalFunction = PRINTED_SYMBOLIC[i].parse().expect("printed formula parses");
        if s == 1 {
            let relabeled: RationalFunction = "(x-3)/x".parse().expect("literal parses");
            rep.check_eq("L_1(x) = (x-3)/x", f, &relabeled);
            rep.info(
                "printed L_1(x)",
                format!("{} evaluates to {} at x = 9, not 2/3", printed, printed.eval(&nine)?),
            );
        } else {
            rep.check_eq(format!("L_{s}(x) matches printed form"), f, &printed);
        }
        rep.check_eq(format!("L_{s}(9) = L_{s}"), &f.eval(&nine)?, &exact[i]);
        if s >= 3 {
            let want = BigInt::from(3) << (4 * (s - 3) + 1);
            // c·(x-1)^{s-1}·L_s(x) has integer coefficients iff the reduced
            // constant divides c
            match denominator_constant(f, s as u32 - 1) {
                Some(c) => {
                    rep.check(
                        want.is_multiple_of(&c),
                        format!("denominator constant of L_{s}"),
                        format!("3*2^{} = {want}, reduced constant {c}", 4 * (s - 3) + 1),
                    );
                    if c != want {
                        rep.info(
                            format!("common factor in L_{s}"),
                            format!("numerator and {want} share {}", &want / &c),
                        );
                    }
                }
                None => {
                    rep.fail(
                        format!("denominator constant of L_{s}"),
                        format!("denominator {} is not c*(x-1)^{}", f.denom(), s - 1),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// `A_s = (2/3) ∏_{i=2}^{s} (2i-2)/(2i-1)`.
pub fn approximation_a(s: usize) -> Rational {
    (2..=s).fold(Rational::frac(2, 3), |acc, i| {
        acc * Rational::frac(2 * i as i64 - 2, 2 * i as i64 - 1)
    })
}

/// `P_s = sqrt(π / 9s)`.
pub fn approximation_p(s: usize) -> f64 {
    (std::f64::consts::PI / (9.0 * s as f64)).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub s: usize,
    pub l: Rational,
    pub a: Rational,
    pub p: f64,
}

pub const ASYMPTOTIC_HEADER: [&str; 10] = ["s", "L", "A", "L-A", "L/A", "P", "A-P", "A/P", "L-P", "L/P"];

impl AsymptoticRow {
    pub fn new(s: usize, l: Rational) -> Self {
        AsymptoticRow {
            s,
            a: approximation_a(s),
            p: approximation_p(s),
            l,
        }
    }

    pub fn l_minus_a(&self) -> Rational {
        &self.l - &self.a
    }

    pub fn l_over_a(&self) -> Rational {
        self.l.checked_div(&self.a).expect("A_s > 0")
    }

    pub fn a_minus_p(&self) -> f64 {
        self.a.to_f64() - self.p
    }

    pub fn a_over_p(&self) -> f64 {
        self.a.to_f64() / self.p
    }

    pub fn l_minus_p(&self) -> f64 {
        self.l.to_f64() - self.p
    }

    pub fn l_over_p(&self) -> f64 {
        self.l.to_f64() / self.p
    }

    /// The ten table cells, four decimals, trailing zeros dropped.
    pub fn cells(&self) -> [String; 10] {
        [
            self.s.to_string(),
            render_exact(&self.l),
            render_exact(&self.a),
            render_exact(&self.l_minus_a()),
            render_exact(&self.l_over_a()),
            render_float(self.p),
            render_float(self.a_minus_p()),
            render_float(self.a_over_p()),
            render_float(self.l_minus_p()),
            render_float(self.l_over_p()),
        ]
    }
}

fn strip_zeros(s: String) -> String {
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Four decimals from the exact value, ties away from zero.
pub fn render_exact(r: &Rational) -> String {
    strip_zeros(r.to_decimal_string(4))
}

pub fn render_float(x: f64) -> String {
    strip_zeros(format!("{x:.4}"))
}

/// Rows for each `s` in `s_values`, reading `L_s` from `diag[s-1]`.
pub fn asymptotics_table(diag: &[Rational], s_values: &[usize]) -> Result<Vec<AsymptoticRow>, SequenceError> {
    s_values
        .iter()
        .map(|&s| match s.checked_sub(1).and_then(|i| diag.get(i)) {
            Some(l) => Ok(AsymptoticRow::new(s, l.clone())),
            None => Err(SequenceError::TooShort {
                needed: s,
                have: diag.len(),
            }),
        })
        .collect()
}

pub fn table_markdown(rows: &[AsymptoticRow]) -> String {
    let mut out = format!("| {} |\n|{}\n", ASYMPTOTIC_HEADER.join(" | "), "---|".repeat(10));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.cells().join(" | ")));
    }
    out
}

pub fn table_csv(rows: &[AsymptoticRow]) -> String {
    let mut out = ASYMPTOTIC_HEADER.join(",") + "\n";
    for r in rows {
        out.push_str(&r.cells().join(","));
        out.push('\n');
    }
    out
}

const FLOAT_TOL: f64 = 1e-12;

/// Monotonicity of the table columns for `3 <= s <= smax`, from the exact
/// diagonal `diag[s-1] = L_s`, plus the telescoping and `A/P → 1` checks.
pub fn verify_monotonicity(diag: &[Rational], smax: usize) -> Result<Report, SequenceError> {
    if smax < 4 {
        return Err(SequenceError::Domain(format!("smax must be at least 4, got {smax}")));
    }
    let s_values: Vec<usize> = (1..=smax).collect();
    let rows = asymptotics_table(diag, &s_values)?;
    let mut rep = Report::new("monotonicity of L-A, L/A, A-P, A/P");
    let first_break = |bad: &dyn Fn(&AsymptoticRow, &AsymptoticRow) -> bool| {
        rows.windows(2).skip(2).find(|w| bad(&w[0], &w[1])).map(|w| w[1].s)
    };
    let mut column = |name: &str, broke: Option<usize>| {
        rep.check(
            broke.is_none(),
            format!("{name} decreasing for 3 <= s <= {smax}"),
            match broke {
                None => "strict".to_string(),
                Some(s) => format!("first increase at s = {s}"),
            },
        );
    };
    column("L-A", first_break(&|x, y| y.l_minus_a() >= x.l_minus_a()));
    column("L/A", first_break(&|x, y| y.l_over_a() >= x.l_over_a()));
    column("A-P", first_break(&|x, y| y.a_minus_p() > x.a_minus_p() + FLOAT_TOL));
    column("A/P", first_break(&|x, y| y.a_over_p() > x.a_over_p() + FLOAT_TOL));
    let rises = rows[1].l_over_a() > rows[0].l_over_a() && rows[2].l_over_a() > rows[1].l_over_a();
    rep.info(
        "L/A before s = 3",
        format!(
            "{} -> {} -> {}{}",
            render_exact(&rows[0].l_over_a()),
            render_exact(&rows[1].l_over_a()),
            render_exact(&rows[2].l_over_a()),
            if rises { " (increasing)" } else { "" }
        ),
    );
    let telescopes = rows.windows(2).all(|w| {
        w[1].a.checked_div(&w[0].a).ok() == Some(Rational::frac(2 * w[1].s as i64 - 2, 2 * w[1].s as i64 - 1))
    });
    rep.check(telescopes, "A_s / A_{s-1} = (2s-2)/(2s-1)", format!("s = 2..{smax}"));
    let gap: Vec<f64> = rows.iter().map(|r| (r.a_over_p() - 1.0).abs()).collect();
    let shrinking = gap.windows(2).all(|w| w[1] <= w[0] + FLOAT_TOL);
    rep.check(shrinking, "|A/P - 1| decreasing", format!("s = 1..{smax}"));
    if smax >= 13 {
        rep.check(gap[12] < 0.01, "|A/P - 1| < 0.01 at s = 13", format!("{:.6}", gap[12]));
    }
    Ok(rep)
}
