//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use arrowdiag::diagrams::{
    enumerate_oriented, enumerate_unoriented, parse_diagram, ChordDiagram, Endpoint, OrientedChordDiagram,
    ParsedDiagram,
};
use arrowdiag::families::{evaluate_weight, single_arrow_contraction, Family};
use arrowdiag::oracle::{family_basis, one_arrow_tensor, oracle_eval, oracle_poly, structure_constants};
use arrowdiag::polycount::{fmt_rational, parse_rational, PolynomialQ};
use arrowdiag::relations::{
    casimir_eval, check_bialgebra_identities, check_relation, check_structure_constants, four_t_instances,
    run_suite, six_t_instances, CheckRecord, Mode, Suite, SuiteOptions,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Four-arrow diagrams checked against the oracle for every family.
const FOUR_ARROW_SAMPLE: [&str; 10] = [
    "t1 t2 t3 t4 h1 h3 h4 h2",
    "t1 t2 t3 h1 t4 h2 h3 h4",
    "t1 t2 t3 h2 t4 h3 h4 h1",
    "t1 t2 t3 h3 h1 t4 h2 h4",
    "t1 t2 t3 h4 h1 h3 t4 h2",
    "t1 t2 h1 t3 h3 h2 t4 h4",
    "t1 t2 h1 h3 h4 t4 t3 h2",
    "t1 t2 h2 h3 t3 t4 h4 h1",
    "t1 t2 h3 t3 h4 t4 h2 h1",
    "t1 t2 h3 h1 t3 h4 t4 h2",
];

/// Oracle values computed once by direct summation and frozen here.
const FROZEN_ORACLE: [(&str, Family, usize, &str); 5] = [
    ("t1 t2 h2 h1", Family::Gl, 3, "19/4"),
    ("t1 t2 h1 h2 t3 h3", Family::SoEven, 3, "115/32"),
    ("t1 t2 t3 h1 h2 h3", Family::SoOdd, 2, "-17/16"),
    ("t1 t2 h2 h1", Family::Sp, 4, "51/2"),
    ("t1 t2 t3 h3 h2 h1", Family::SoOdd, 3, "613/32"),
];

fn binomial(coeffs: &[(i64, i64)]) -> PolynomialQ {
    let c: Vec<BigRational> = coeffs.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
    PolynomialQ::from_binomial(&c)
}

fn table(family: Family, n: usize) -> Vec<(OrientedChordDiagram, PolynomialQ)> {
    enumerate_oriented(n)
        .unwrap()
        .into_iter()
        .map(|d| {
            let p = evaluate_weight(family, &d);
            (d, p)
        })
        .collect()
}

fn render_table(rows: &[(OrientedChordDiagram, PolynomialQ)]) -> String {
    rows.iter()
        .map(|(d, p)| format!("{d} = {}", p.latex()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn table_contains(family: Family, n: usize, target: &PolynomialQ) -> Outcome {
    let rows = table(family, n);
    match rows.iter().find(|(_, p)| p == target) {
        Some((d, _)) => Ok(format!("{} at {d}", target.latex())),
        None => Err(format!("{} not among {} values: {}", target.latex(), family, render_table(&rows))),
    }
}

fn failures(records: &[CheckRecord]) -> Outcome {
    let bad: Vec<&CheckRecord> = records.iter().filter(|r| !r.passed()).collect();
    if bad.is_empty() {
        return Ok(format!("{} checks", records.len()));
    }
    let mut by_family: Vec<String> = Vec::new();
    for f in Family::ALL {
        let n = bad.iter().filter(|r| r.family == f).count();
        if n > 0 {
            by_family.push(format!("{f}: {n}"));
        }
    }
    let first = bad[0];
    Err(format!(
        "{}/{} failed ({}); first: {} {} N={} residual {}",
        bad.len(),
        records.len(),
        by_family.join(", "),
        first.check,
        first.family,
        serde_json::to_string(&first.n).unwrap(),
        first.residual
    ))
}

fn gl_two_arrow_values() -> Outcome {
    let one = binomial(&[(0, 1), (1, 4), (1, 1), (1, 1)]);
    let two = binomial(&[(0, 1), (1, 4), (2, 1), (2, 1)]);
    if one == two {
        return Err("the two values coincide".into());
    }
    let a = table_contains(Family::Gl, 2, &one)?;
    let b = table_contains(Family::Gl, 2, &two)?;
    Ok(format!("{a}; {b}"))
}

fn so_even_two_arrow_value() -> Outcome {
    table_contains(Family::SoEven, 2, &binomial(&[(0, 1), (1, 4), (1, 1)]))
}

fn so_odd_three_arrow_value() -> Outcome {
    table_contains(Family::SoOdd, 3, &binomial(&[(0, 1), (11, 8), (-7, 1), (-4, 1)]))
}

fn oracle_equivalence() -> Outcome {
    let mut diagrams: Vec<OrientedChordDiagram> = (0..=3).flat_map(|n| enumerate_oriented(n).unwrap()).collect();
    diagrams.extend(FOUR_ARROW_SAMPLE.iter().map(|w| w.parse::<OrientedChordDiagram>().unwrap()));
    let mut checked = 0;
    for f in Family::ALL {
        for d in &diagrams {
            if !d.is_canonical() {
                return Err(format!("{d} is not canonical"));
            }
            let fast = evaluate_weight(f, d);
            let slow = oracle_poly(d, f).map_err(|e| format!("{f} {d}: {e}"))?;
            if fast != slow {
                return Err(format!("{f} {d}: fast {} vs oracle {}", fast.latex(), slow.latex()));
            }
            for n in 1..=5 {
                let direct = oracle_eval(d, f, n).map_err(|e| format!("{f} {d} N={n}: {e}"))?;
                if fast.eval_int(n as i64) != direct || slow.eval_int(n as i64) != direct {
                    return Err(format!("{f} {d} N={n}: polynomial disagrees with {}", fmt_rational(&direct)));
                }
            }
            checked += 1;
        }
    }
    for (w, f, n, want) in FROZEN_ORACLE {
        let got = oracle_eval(&w.parse().unwrap(), f, n).map_err(|e| e.to_string())?;
        if got != parse_rational(want).unwrap() {
            return Err(format!("frozen {w} {f} N={n}: {} != {want}", fmt_rational(&got)));
        }
    }
    Ok(format!("{checked} diagram/family pairs, {} frozen values", FROZEN_ORACLE.len()))
}

fn single_arrow_pin() -> Outcome {
    for f in Family::ALL {
        for n in 1..=4 {
            let tensor = one_arrow_tensor(f, n);
            let dim = family_basis(f, n).dim;
            for a in 0..dim {
                for b in 0..dim {
                    for m in 0..dim {
                        for v in 0..dim {
                            let key = [a, b, m, v];
                            let want = tensor.get(&key).cloned().unwrap_or_else(BigRational::zero);
                            let got = single_arrow_contraction(f, n, key);
                            if got != want {
                                return Err(format!(
                                    "{f} N={n} at {key:?}: rules {} vs oracle {}",
                                    fmt_rational(&got),
                                    fmt_rational(&want)
                                ));
                            }
                        }
                    }
                }
            }
        }
        let half = BigRational::new(1.into(), 2.into());
        let expected = match f {
            Family::Gl => PolynomialQ::from_coeffs(vec![BigRational::zero(), BigRational::zero(), half]),
            Family::SoEven => PolynomialQ::from_coeffs(vec![BigRational::zero(), -half, BigRational::from_integer(1.into())]),
            Family::Sp | Family::SoOdd => PolynomialQ::from_coeffs(vec![BigRational::zero(), half, BigRational::from_integer(1.into())]),
        };
        let got = evaluate_weight(f, &"t1 h1".parse().unwrap());
        if got != expected {
            return Err(format!("{f} single arrow {got}, expected {expected}"));
        }
    }
    Ok("entrywise for N = 1..4; weights are half the ambient dimension".into())
}

fn six_term_vanishing() -> Outcome {
    let mut records = Vec::new();
    for r in six_t_instances(0).into_iter().chain(six_t_instances(1)) {
        for f in Family::ALL {
            records.push(check_relation(&r, f, Mode::Polynomial).map_err(|e| format!("{}: {e}", r.name))?);
        }
    }
    failures(&records)
}

fn averaging_and_four_term() -> Outcome {
    let averaged = run_suite(Suite::Averaging, &SuiteOptions { max_arrows: Some(3), n_range: Some(1..=4) });
    let a = failures(&averaged)?;
    let mut records = Vec::new();
    for r in four_t_instances() {
        for f in Family::ALL {
            for n in 1..=4 {
                records.push(check_relation(&r, f, Mode::Numeric(n)).map_err(|e| format!("{}: {e}", r.name))?);
            }
        }
    }
    let b = failures(&records)?;
    Ok(format!("averaging {a}; 4T {b}"))
}

fn relation_content() -> Outcome {
    let stu = run_suite(Suite::Stu, &SuiteOptions { max_arrows: None, n_range: Some(2..=3) });
    let stu_result = failures(&stu);
    let mut bialgebra_bad = Vec::new();
    for f in Family::ALL {
        for n in 2..=3 {
            let report = check_bialgebra_identities(f, n);
            for r in report.results.iter().filter(|r| !r.passed) {
                bialgebra_bad.push(format!("{f} N={n} {} at {:?}", r.identity, r.first_failure.clone().unwrap_or_default()));
            }
        }
    }
    // a single corrupted cobracket entry must be caught
    let base = structure_constants(Family::Sp, 2).map_err(|e| e.to_string())?;
    let mut faulty = base.clone();
    let v = faulty.gamma(1, 2, 0) + BigRational::from_integer(1.into());
    faulty.set_gamma(1, 2, 0, v);
    let fault_caught = check_structure_constants(&faulty).iter().any(|r| !r.passed);

    let mut problems = Vec::new();
    if let Err(e) = &stu_result {
        problems.push(format!("STU {e}"));
    }
    if !bialgebra_bad.is_empty() {
        problems.push(format!("bialgebra: {}", bialgebra_bad.join("; ")));
    }
    if !fault_caught {
        problems.push("injected fault not detected".into());
    }
    if problems.is_empty() {
        Ok(format!("STU {}; bialgebra identities hold; fault detected", stu_result.unwrap()))
    } else {
        Err(problems.join(" | "))
    }
}

fn random_oriented(rng: &mut StdRng, n: usize) -> OrientedChordDiagram {
    let mut word: Vec<Endpoint> = (1..=n).flat_map(|a| [Endpoint::tail(a), Endpoint::head(a)]).collect();
    word.shuffle(rng);
    OrientedChordDiagram::new(word).unwrap()
}

fn random_unoriented(rng: &mut StdRng, n: usize) -> ChordDiagram {
    let mut word: Vec<usize> = (1..=n).flat_map(|c| [c, c]).collect();
    word.shuffle(rng);
    ChordDiagram::new(word).unwrap()
}

fn structural_properties() -> Outcome {
    for f in Family::ALL {
        for n in 0..=3 {
            for d in enumerate_oriented(n).unwrap() {
                let p = evaluate_weight(f, &d);
                if p.degree().is_some_and(|deg| deg > n + 1) {
                    return Err(format!("{f} {d}: degree above {}", n + 1));
                }
                let at_two = oracle_eval(&d, f, 2).map_err(|e| e.to_string())?;
                for k in 1..2 * n {
                    let r = d.rotate(k);
                    if evaluate_weight(f, &r) != p {
                        return Err(format!("{f} {d}: fast path not rotation invariant (shift {k})"));
                    }
                    if oracle_eval(&r, f, 2).map_err(|e| e.to_string())? != at_two {
                        return Err(format!("{f} {d}: oracle not rotation invariant (shift {k})"));
                    }
                }
            }
            for c in enumerate_unoriented(n).unwrap() {
                let v = casimir_eval(&c, f, 2).map_err(|e| e.to_string())?;
                for k in 1..2 * n {
                    if casimir_eval(&c.rotate(k), f, 2).map_err(|e| e.to_string())? != v {
                        return Err(format!("{f} {c}: unoriented weight not rotation invariant"));
                    }
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_a770);
    for i in 0..1000 {
        let n = rng.gen_range(0..=8);
        if i % 2 == 0 {
            let d = random_oriented(&mut rng, n);
            let text = d.to_string();
            match parse_diagram(&text) {
                Ok(ParsedDiagram::Oriented(back)) if back == d && back.to_string() == text => {}
                other => return Err(format!("oriented `{text}` did not round-trip: {other:?}")),
            }
        } else {
            let c = random_unoriented(&mut rng, n);
            let text = c.to_string();
            let expected = if n == 0 { Some(ParsedDiagram::Oriented(OrientedChordDiagram::bare())) } else { None };
            match (parse_diagram(&text), expected) {
                (Ok(ParsedDiagram::Unoriented(back)), None) if back == c && back.to_string() == text => {}
                (Ok(got), Some(want)) if got == want => {}
                (other, _) => return Err(format!("unoriented `{text}` did not round-trip: {other:?}")),
            }
        }
    }
    Ok("degree bound, rotation invariance, 1000 round-trips".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("gl two-arrow values distinguish the pair", gl_two_arrow_values),
        ("so(2N) two-arrow value N/4 + C(N,2)", so_even_two_arrow_value),
        ("so(2N+1) three-arrow value -4C(N,3) - 7C(N,2) + 11N/8", so_odd_three_arrow_value),
        ("fast path equals the matrix oracle", oracle_equivalence),
        ("single-arrow tensor matches entrywise", single_arrow_pin),
        ("6T instances vanish for every family", six_term_vanishing),
        ("averaging equals the unoriented weight; 4T vanishes", averaging_and_four_term),
        ("STU, bialgebra identities, fault detection", relation_content),
        ("degree bound, rotation invariance, round-trip", structural_properties),
    ];
    let mut all_passed = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}  ({detail})", i + 1),
            Err(detail) => {
                all_passed = false;
                println!("criterion {}: FAIL  {name}  ({detail})", i + 1);
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
