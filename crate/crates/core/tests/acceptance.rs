//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::Instant;

use circarray::array::{
    build_array, closed_form_row, leftmost_diagonal, verify_closed_forms, verify_row_recursions, verify_uniform_center,
    CircuitArray,
};
use circarray::grid::Grid;
use circarray::oracle::{
    random_connected_graph, random_grid, verify_dual_pipeline, verify_fib_identities, verify_straight_2tree,
    verify_transform_soundness,
};
use circarray::sequence::{
    asymptotics_table, lhrcc_ruled_out, row0_numerators, verify_denominator_divisibility,
    verify_determinant_conjecture, verify_monotonicity, verify_symbolic_patterns, NumeratorSequence,
};
use circarray::{Rational, Report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Reference circuit array, column by column, rows 0.. downward.
const KNOWN_ARRAY: [&[&str]; 6] = [
    &["2/3"],
    &["26/27", "13/12", "1/2"],
    &["242/243", "121/120", "89/100", "1157/960", "13/32"],
    &[
        "2186/2187",
        "1093/1092",
        "16243/16562",
        "1965403/1904448",
        "305041/380192",
        "224369/167424",
        "89/256",
    ],
    &[
        "19682/19683",
        "9841/9840",
        "335209/336200",
        "366383437/364552320",
        "1303624379/1372554304",
        "19373074829/18067568640",
        "296645909/412902400",
        "46041023/31211520",
        "2521/8192",
    ],
    &[
        "177146/177147",
        "88573/88572",
        "108912805/108958322",
        "1071810914005/1071023961216",
        "9044690242835/9138722473024",
        "308084703953915/303469074613248",
        "31631261501245/34990560891392",
        "112546800611915/99980909002752",
        "320676092095/495976128512",
        "4910281495/3059613696",
        "18263/65536",
    ],
];

/// Reference rows of the asymptotics tables.
const KNOWN_ASYMPTOTICS: [&str; 15] = [
    "1 0.6667 0.6667 0 1 0.5908 0.0758 1.1284 0.0758 1.1284",
    "2 0.5 0.4444 0.0556 1.125 0.4178 0.0267 1.0638 0.0822 1.1968",
    "3 0.4063 0.3556 0.0507 1.1426 0.3411 0.0144 1.0424 0.0651 1.191",
    "4 0.3477 0.3048 0.0429 1.1407 0.2954 0.0094 1.0317 0.0522 1.1769",
    "5 0.3077 0.2709 0.0368 1.136 0.2642 0.0067 1.0253 0.0435 1.1647",
    "8 0.2387 0.2122 0.0265 1.125 0.2089 0.0033 1.0157 0.0298 1.1427",
    "16 0.1658 0.1489 0.017 1.1141 0.1477 0.0012 1.0078 0.0181 1.1228",
    "24 0.1346 0.1212 0.0134 1.1103 0.1206 0.0006 1.0052 0.014 1.1161",
    "32 0.1162 0.1049 0.0114 1.1084 0.1044 0.0004 1.0039 0.0118 1.1127",
    "40 0.1038 0.0937 0.0101 1.1072 0.0934 0.0003 1.0031 0.0103 1.1107",
    "48 0.0946 0.0855 0.0091 1.1065 0.0853 0.0002 1.0026 0.0093 1.1094",
    "56 0.0875 0.0791 0.0084 1.1059 0.079 0.0002 1.0022 0.0086 1.1084",
    "64 0.0818 0.074 0.0078 1.1055 0.0739 0.0001 1.002 0.008 1.1077",
    "72 0.0771 0.0697 0.0073 1.1052 0.0696 0.0001 1.0017 0.0075 1.1071",
    "80 0.0731 0.0662 0.0069 1.105 0.0661 0.0001 1.0016 0.007 1.1067",
];

fn from_report(rep: Report) -> Outcome {
    if rep.passed() {
        Ok(rep.summary())
    } else {
        let first = rep
            .failures()
            .next()
            .map(|f| format!("{}: {}", f.check, f.detail))
            .unwrap_or_default();
        Err(format!("{} [{first}]", rep.summary()))
    }
}

fn known_array(array: &CircuitArray) -> Outcome {
    let mut n = 0;
    for (jm1, col) in KNOWN_ARRAY.iter().enumerate() {
        for (i, want) in col.iter().enumerate() {
            let got = array.entry(i, jm1 + 1).map_err(|e| e.to_string())?;
            if got.to_string() != *want {
                return Err(format!("C({i},{}) = {got}, expected {want}", jm1 + 1));
            }
            n += 1;
        }
    }
    Ok(format!("{n} reference fractions equal"))
}

fn dual_pipeline() -> Outcome {
    let mut grids: Vec<Grid<Rational>> = (3..=8).map(|n| Grid::all_one(n).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..25 {
        grids.push(random_grid(&mut rng, 3 + i % 3));
    }
    from_report(verify_dual_pipeline(&grids))
}

fn soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let graphs: Vec<_> = (0..100).map(|_| random_connected_graph(&mut rng, 8, 0.4)).collect();
    from_report(verify_transform_soundness(&graphs))
}

fn closed_forms(array: &CircuitArray) -> Outcome {
    let mut rep = verify_closed_forms(array, 10);
    let row2 = ["1/2", "89/100", "16243/16562", "335209/336200", "108912805/108958322"];
    for (k, want) in row2.iter().enumerate() {
        let got = closed_form_row(2, k + 2).map_err(|e| e.to_string())?;
        rep.check(
            got.to_string() == *want,
            format!("row 2 closed form at s = {}", k + 2),
            format!("{got}"),
        );
    }
    from_report(rep)
}

fn uniform_center() -> Outcome {
    let mut rep = Report::new("uniform center");
    for s in 1..=4 {
        for n in [4 * s, 4 * s + 2] {
            rep.extend(verify_uniform_center(n, s).map_err(|e| e.to_string())?);
        }
    }
    from_report(rep)
}

fn hankel(seq: &NumeratorSequence, array: &CircuitArray) -> Outcome {
    let mut rep = verify_determinant_conjecture(seq, 6).map_err(|e| e.to_string())?;
    rep.extend(lhrcc_ruled_out(seq, 6, Some(&row0_numerators(array))).map_err(|e| e.to_string())?);
    from_report(rep)
}

fn symbolic(diag: &[Rational]) -> Outcome {
    from_report(verify_symbolic_patterns(7, diag).map_err(|e| e.to_string())?)
}

fn asymptotics(diag: &[Rational]) -> Outcome {
    let s_values: Vec<usize> = KNOWN_ASYMPTOTICS
        .iter()
        .map(|r| r.split(' ').next().unwrap().parse().unwrap())
        .collect();
    let rows = asymptotics_table(diag, &s_values).map_err(|e| e.to_string())?;
    for (row, want) in rows.iter().zip(KNOWN_ASYMPTOTICS) {
        let got = row.cells().join(" ");
        if got != want {
            return Err(format!("s = {}: got {got}, expected {want}", row.s));
        }
    }
    let mono = from_report(verify_monotonicity(diag, 80).map_err(|e| e.to_string())?)?;
    Ok(format!("{} reference rows equal; {mono}", rows.len()))
}

fn properties() -> Outcome {
    let mut runs = 0;
    for seed in [7u64, 1234, 987654321] {
        for (name, suite) in common::SUITES {
            suite(&mut common::runner(seed, 48)).map_err(|e| format!("{name} (seed {seed}): {e}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} suite runs over 3 seeds"))
}

fn main() {
    let t0 = Instant::now();
    let array8 = build_array(8).expect("array builds");
    let build8 = t0.elapsed();
    let array10 = build_array(10).expect("array builds");
    let t_diag = Instant::now();
    let diag = leftmost_diagonal(80).expect("diagonal builds");
    let diag_time = t_diag.elapsed();
    let seq = NumeratorSequence::from_diagonal(&diag[..12]);

    let criteria: Vec<Criterion> = vec![
        (
            "circuit array values",
            Box::new(|| known_array(&array8).map(|s| format!("{s}; 8 columns built in {build8:.1?}"))),
        ),
        ("dual-pipeline equivalence", Box::new(dual_pipeline)),
        ("transformation soundness", Box::new(soundness)),
        ("closed forms for rows 0-2", Box::new(|| closed_forms(&array10))),
        (
            "row recursions G0-G4",
            Box::new(|| from_report(verify_row_recursions(&array8))),
        ),
        ("uniform center", Box::new(uniform_center)),
        (
            "Hankel determinants",
            Box::new(|| hankel(seq.as_ref().map_err(|e| e.to_string())?, &array8)),
        ),
        (
            "denominator divisibility",
            Box::new(|| from_report(verify_denominator_divisibility(&diag[..20]))),
        ),
        ("symbolic pipeline", Box::new(|| symbolic(&diag))),
        (
            "asymptotics tables",
            Box::new(|| asymptotics(&diag).map(|s| format!("{s}; diagonal to s = 80 in {:.1?}", diag_time))),
        ),
        (
            "Fibonacci identities",
            Box::new(|| {
                let mut rep = verify_fib_identities(50, 30);
                rep.extend(verify_straight_2tree(12));
                from_report(rep)
            }),
        ),
        ("property suites", Box::new(properties)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let detail = outcome.unwrap_or_else(|e| {
            failed += 1;
            e
        });
        println!("[{status}] {:>2}. {name} ({:.1?}): {detail}", i + 1, t.elapsed());
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        t0.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
