//! Acceptance criteria, one pass/fail line each. Lines go straight to the
//! process stdout so they show up without `--nocapture`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use admissibility::algebra::IntPoly;
use admissibility::corpus::run_corpus;
use admissibility::cyclotomic::{alpha_min_poly, gaussian_period_min_poly};
use admissibility::engine::{all_metacyclic_tame_predicate, decide, Mode, Status};
use admissibility::groups::construct::{elementary_abelian, heisenberg, modular_p_cubed, quaternion16, semidihedral16};
use admissibility::groups::demuskin::{check_witness, demuskin_search, DemuskinOptions};
use admissibility::groups::{d_of_group, demuskin_quotient_test, is_metacyclic, DemuskinQuery, FiniteGroup};
use admissibility::number_field::NumberField;
use admissibility::par::Exec;

use common::*;

fn field(c: &[i64]) -> NumberField {
    NumberField::from_coeffs(c).unwrap()
}

fn cyclotomic_field(m: u64) -> NumberField {
    NumberField::new(IntPoly::cyclotomic(m)).unwrap()
}

fn q() -> NumberField {
    NumberField::rationals()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn status(g: &FiniteGroup, k: &NumberField, mode: Mode) -> Status {
    decide(g, k, mode).status
}

fn dihedral_eight() -> Outcome {
    let d8 = meta(4, 2, 0, -1);
    let over_i = status(&d8, &field(&[1, 0, 1]), Mode::Tame);
    let over_q = status(&d8, &q(), Mode::Tame);
    ensure(
        over_i == Status::NotTamelyAdmissible && over_q == Status::TamelyAdmissible,
        || format!("Q(i): {over_i:?}, Q: {over_q:?}"),
    )?;
    Ok("Q(i) NotTamelyAdmissible, Q TamelyAdmissible".into())
}

fn modular_twenty_seven() -> Outcome {
    let m27 = modular_p_cubed(3);
    let cases = [
        ("Q(zeta9)", cyclotomic_field(9), Status::NotAdmissible),
        ("x^3-3x+1", field(&[1, -3, 0, 1]), Status::NotAdmissible),
        ("x^2-7", field(&[-7, 0, 1]), Status::Admissible),
    ];
    for (name, k, want) in &cases {
        let got = status(&m27, k, Mode::Admissible);
        ensure(got == *want, || format!("{name}: {got:?}, expected {want:?}"))?;
    }
    Ok("3 of 3 verdicts".into())
}

fn order_sixteen() -> Outcome {
    let (q16, sd16) = (quaternion16(), semidihedral16());
    let cases = [
        (
            "Q16/Q(i)",
            &q16,
            field(&[1, 0, 1]),
            Mode::Admissible,
            Status::NotAdmissible,
        ),
        (
            "Q16/Q(sqrt-2)",
            &q16,
            field(&[2, 0, 1]),
            Mode::Admissible,
            Status::NotAdmissible,
        ),
        (
            "SD16/Q(sqrt2)",
            &sd16,
            field(&[-2, 0, 1]),
            Mode::Admissible,
            Status::NotAdmissible,
        ),
        ("Q16/Q", &q16, q(), Mode::Tame, Status::TamelyAdmissible),
        ("SD16/Q", &sd16, q(), Mode::Tame, Status::TamelyAdmissible),
    ];
    for (name, g, k, mode, want) in &cases {
        let got = status(g, k, *mode);
        ensure(got == *want, || format!("{name}: {got:?}, expected {want:?}"))?;
    }
    let d8 = meta(4, 2, 0, -1);
    let got = status(&d8, &q(), Mode::Tame);
    ensure(got == Status::TamelyAdmissible, || format!("D8/Q: {got:?}"))?;
    Ok("6 of 6 verdicts".into())
}

fn tame_predicate() -> Outcome {
    let holds = [
        ("Q", q()),
        ("Q(sqrt5)", field(&[-5, 0, 1])),
        ("Q(zeta5)", cyclotomic_field(5)),
        ("Q(zeta6)", cyclotomic_field(6)),
    ];
    for (name, k) in &holds {
        for p in [2, 3] {
            ensure(all_metacyclic_tame_predicate(k, p).holds, || {
                format!("{name}, p = {p}: expected true")
            })?;
        }
    }
    let fails = [
        ("Q(sqrt2)", field(&[-2, 0, 1]), 2),
        ("Q(i)", field(&[1, 0, 1]), 2),
        ("Q(zeta9)", cyclotomic_field(9), 3),
        ("x^3-3x+1", field(&[1, -3, 0, 1]), 3),
    ];
    for (name, k, p) in &fails {
        ensure(!all_metacyclic_tame_predicate(k, *p).holds, || {
            format!("{name}, p = {p}: expected false")
        })?;
    }
    Ok("8 true, 4 false".into())
}

fn quadratic_sweep() -> Outcome {
    let groups: Vec<FiniteGroup> = groups_of_order_dividing_81()
        .into_iter()
        .filter(|g| d_of_group(g).unwrap() <= 3)
        .collect();
    let mut fields = Vec::new();
    for d in [1i64, 2, 3, 5, 7] {
        for sign in [1, -1] {
            if sign * d != 1 {
                fields.push((sign * d, field(&[-sign * d, 0, 1])));
            }
        }
    }
    let mut compared = 0;
    for (d, k) in &fields {
        let decomposes = k.p_decomposes(3).unwrap();
        for g in &groups {
            let expected = if decomposes {
                d_of_group(g).unwrap() <= 2
            } else {
                is_metacyclic(g).is_some()
            };
            let want = if expected {
                Status::Admissible
            } else {
                Status::NotAdmissible
            };
            let got = status(g, k, Mode::Admissible);
            ensure(got == want, || {
                format!("order {} over Q(sqrt{d}): {got:?}, formula gives {want:?}", g.order())
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "{} groups x {} fields = {compared} verdicts, 0 disagreements",
        groups.len(),
        fields.len()
    ))
}

fn gaussian_periods() -> Outcome {
    let f = gaussian_period_min_poly(9, &[1, 8]).map_err(|e| e.to_string())?;
    ensure(f == IntPoly::from_i64(&[1, -3, 0, 1]), || {
        format!("period polynomial {f:?}")
    })?;
    for p in [3u64, 5, 7] {
        let a = alpha_min_poly(p);
        ensure(a.deg() == p as usize, || format!("alpha_{p} has degree {}", a.deg()))?;
        // irreducible modulo some prime implies irreducible over Q
        let witness = (2u64..500)
            .filter(|&l| admissibility::algebra::primes::is_prime(l) && l != p)
            .find(|&l| a.reduce_mod(l).deg() == p as usize && a.reduce_mod(l).is_irreducible());
        ensure(witness.is_some(), || {
            format!("no prime below 500 certifies alpha_{p} irreducible")
        })?;
        let k = NumberField::new(a).map_err(|e| e.to_string())?;
        let dec = k.decompose_prime(p).map_err(|e| e.to_string())?;
        ensure(dec.pairs == [(p as u32, 1)], || {
            format!("alpha_{p}: {} splits as {:?}", p, dec.pairs)
        })?;
    }
    Ok("x^3-3x+1 exact; alpha_3, alpha_5, alpha_7 totally ramified".into())
}

fn frattini_rank() -> Outcome {
    let groups = small_named_groups();
    for (name, g) in &groups {
        let (d, oracle) = (d_of_group(g).unwrap(), brute_force_rank(g));
        ensure(d == oracle, || format!("{name}: d_of_group {d}, brute force {oracle}"))?;
    }
    Ok(format!("{} groups, 0 mismatches", groups.len()))
}

fn free_quotients() -> Outcome {
    let mut groups: Vec<FiniteGroup> = groups_of_order_dividing_81()
        .into_iter()
        .filter(|g| g.order() > 1)
        .collect();
    groups.extend(
        small_named_groups()
            .into_iter()
            .map(|(_, g)| g)
            .filter(|g| g.order() <= 243),
    );
    groups.push(elementary_abelian(3, 5));
    groups.push(
        admissibility::groups::construct::direct_product(&[heisenberg(3), meta(3, 1, 0, 1), meta(3, 1, 0, 1)], 4096)
            .unwrap(),
    );
    groups.push(admissibility::groups::construct::abelian(&[9, 9, 3]));
    groups.push(heisenberg(5));
    let mut checked = 0;
    for g in &groups {
        let p = g.p_group_prime().expect("p-group");
        let d = d_of_group(g).unwrap() as usize;
        for n in [2, 4] {
            let found = demuskin_quotient_test(g, &DemuskinQuery::free(n).unwrap(), p).map_err(|e| e.to_string())?;
            ensure(found.is_some() == (d <= n), || {
                format!(
                    "order {} with d = {d}, n = {n}: search says {}",
                    g.order(),
                    found.is_some()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (group, n) pairs, 0 mismatches"))
}

fn demuskin_relations() -> Outcome {
    let relation = |n, s| DemuskinQuery::relation(n, s).unwrap();
    let passes = |g: &FiniteGroup, p, n, s| demuskin_quotient_test(g, &relation(n, s), p).unwrap().is_some();
    for (p, n) in [(3u64, 4usize), (5, 4), (3, 6)] {
        let e = elementary_abelian(p, n);
        for s in [1, 2] {
            ensure(passes(&e, p, n, s), || format!("(Z/{p})^{n} fails at n = {n}, s = {s}"))?;
        }
    }
    for (p, n) in [(3u64, 4usize), (3, 6)] {
        let e = elementary_abelian(p, n + 1);
        ensure(!passes(&e, p, n, 1), || format!("(Z/{p})^{} passes at n = {n}", n + 1))?;
    }
    let mut metacyclic: Vec<FiniteGroup> = groups_of_order_dividing_81()
        .into_iter()
        .filter(|g| g.order() > 1 && is_metacyclic(g).is_some())
        .collect();
    metacyclic.extend(
        small_named_groups()
            .into_iter()
            .map(|(_, g)| g)
            .filter(|g| is_metacyclic(g).is_some()),
    );
    let query = relation(4, 1);
    for g in &metacyclic {
        let p = g.p_group_prime().unwrap();
        for shortcuts in [true, false] {
            let opts = DemuskinOptions {
                shortcuts,
                ..DemuskinOptions::default()
            };
            let w = demuskin_search(g, &query, p, &opts).unwrap();
            let w = w.ok_or_else(|| format!("metacyclic group of order {} fails at n = 4", g.order()))?;
            ensure(check_witness(g, &query, &w.tuple).unwrap(), || {
                "witness does not verify".into()
            })?;
        }
    }
    Ok(format!(
        "elementary abelian bounds hold; {} metacyclic groups pass at (4, 1)",
        metacyclic.len()
    ))
}

fn determinism() -> Outcome {
    let first = run_corpus(None, Exec::Parallel).to_json();
    let second = run_corpus(None, Exec::Parallel).to_json();
    ensure(first == second, || "two parallel runs differ".into())?;
    let sequential = run_corpus(None, Exec::Sequential).to_json();
    ensure(first == sequential, || "parallel and sequential runs differ".into())?;
    let report: admissibility::corpus::CorpusReport = serde_json::from_str(&first).unwrap();
    ensure(report.ok(), || format!("{} corpus cases fail", report.failed))?;
    Ok(format!("{} cases, byte-identical across runs", report.cases.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("D8 over Q(i) and Q", dihedral_eight),
        (
            "Z/9 x| Z/3 over cyclotomic, cubic and quadratic fields",
            modular_twenty_seven,
        ),
        ("Q16 and SD16 obstructions and tame realizations", order_sixteen),
        ("all-metacyclic tame predicate", tame_predicate),
        ("quadratic-field sweep", quadratic_sweep),
        ("Gaussian periods and alpha_p", gaussian_periods),
        ("Frattini rank against brute force", frattini_rank),
        ("free-quotient equivalence", free_quotients),
        ("Demuskin positives and negatives", demuskin_relations),
        ("corpus determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let line = match &outcome {
            Ok(detail) => format!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => format!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1),
        };
        writeln!(std::io::stdout(), "{line}").unwrap();
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
