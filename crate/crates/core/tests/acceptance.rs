//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toric_cascade::cascade::{brauer_family, cascade_invariants, run_cascade, BasicType};
use toric_cascade::classify::classify;
use toric_cascade::enumerate::{
    audit, confluence_report, enumerate_records, reflexive_subset, EnumerationConfig, SurfaceRecord,
};
use toric_cascade::fan::{canonical_form, resolve};
use toric_cascade::invariants::{brauer_group, trace_matches_table};
use toric_cascade::lattice::{hj_eval, zero_complement, HJChain, Rational, SingularityType};
use toric_cascade::FanoTriangle;

type Outcome = Result<String, String>;

fn tri(coords: [[i64; 2]; 3]) -> FanoTriangle {
    FanoTriangle::from_coords(coords).expect("valid triangle")
}

fn figure_triangles() -> Vec<(BasicType, FanoTriangle)> {
    let mut out = vec![
        (BasicType::P2, tri([[0, 1], [1, 0], [-1, -1]])),
        (BasicType::ThreeA2, tri([[-2, 1], [1, -2], [1, 1]])),
    ];
    for n in 2..=6 {
        out.push((BasicType::Std0(n), tri([[0, 1], [-1, 0], [1, -n]])));
        out.push((BasicType::Std1(n), tri([[0, 1], [-2, 1], [1, -n]])));
        out.push((BasicType::Std2(n), tri([[0, 1], [-2, 1], [2, -2 * n + 1]])));
    }
    out
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut check: impl FnMut(&T) -> Result<(), String>,
) -> Result<usize, String> {
    let mut count = 0;
    for item in items {
        check(&item)?;
        count += 1;
    }
    Ok(count)
}

fn golden_dual_graphs() -> Outcome {
    let mut slowest = Duration::ZERO;
    let n = first_failure(figure_triangles(), |(b, t)| {
        let start = Instant::now();
        let cycle = resolve(t).map_err(|e| e.to_string())?.cycle();
        slowest = slowest.max(start.elapsed());
        if !cycle.equivalent(&b.cycle()) {
            return Err(format!("{t} resolves to {cycle}, expected {}", b.cycle()));
        }
        Ok(())
    })?;
    if slowest >= Duration::from_millis(1) {
        return Err(format!("slowest resolution took {slowest:?}"));
    }
    Ok(format!("{n} triangles, slowest {slowest:?}"))
}

fn lemma_suite(records: &[SurfaceRecord], elapsed: Duration) -> Outcome {
    let n = first_failure(records, |r| {
        let c = &r.weight_cycle;
        if c.sum() != 12 - 3 * c.len() as i64 {
            return Err(format!(
                "{}: weight sum {} for {} rays",
                r.canonical_vertices,
                c.sum(),
                c.len()
            ));
        }
        let marked = c.weights().iter().filter(|&&w| w >= -1).count();
        if marked != 3 {
            return Err(format!("{}: {marked} weights >= -1", r.canonical_vertices));
        }
        Ok(())
    })?;
    if elapsed > Duration::from_secs(300) {
        return Err(format!("enumeration plus audit took {elapsed:?}"));
    }
    Ok(format!(
        "{n} records, enumeration + audit in {:.1}s single-threaded",
        elapsed.as_secs_f64()
    ))
}

fn cascade_suite(records: &[SurfaceRecord]) -> Outcome {
    let n = first_failure(records, |r| {
        let trace =
            run_cascade(&r.weight_cycle).map_err(|e| format!("{}: {e}", r.canonical_vertices))?;
        let start = cascade_invariants(&r.weight_cycle);
        for c in trace.steps.iter().map(|s| &s.cycle).chain([&trace.end]) {
            if cascade_invariants(c) != start {
                return Err(format!(
                    "{}: invariants change at {c}",
                    r.canonical_vertices
                ));
            }
        }
        if !trace.end.equivalent(&trace.basic.cycle()) {
            return Err(format!(
                "{}: terminal graph {} is not basic",
                r.canonical_vertices, trace.end
            ));
        }
        if !trace_matches_table(trace.basic, &r.weight_cycle) {
            return Err(format!(
                "{}: trace {} off the table for {}",
                r.canonical_vertices, r.trace, trace.basic
            ));
        }
        Ok(())
    })?;
    Ok(format!("{n} cascades"))
}

fn classification_suite(records: &[SurfaceRecord]) -> Outcome {
    let n = first_failure(records, |r| {
        let w = r.wps.sorted_weights();
        let fail = |why: &str| Err(format!("{}: {why}", r.canonical_vertices));
        let k = r.sing.len();
        if k <= 2 && (r.brauer_order != 1 || r.wps.quotient_order != 1) {
            return fail("not a weighted projective plane");
        }
        match (k, r.basic) {
            (0, BasicType::P2) if w == [1, 1, 1] => Ok(()),
            (1, BasicType::Std0(n)) if w == [1, 1, n] => Ok(()),
            (2, BasicType::Std1(_)) => {
                // P(1, q, Q): the two points are 1/q(1, Q) and 1/Q(1, q).
                let (q, big) = (w[1], w[2]);
                let expect = [
                    SingularityType::from_fraction(q, big % q),
                    SingularityType::from_fraction(big, q % big),
                ];
                let mut expect: Vec<SingularityType> = expect
                    .into_iter()
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                expect.sort();
                if w[0] == 1 && expect == r.sing {
                    Ok(())
                } else {
                    fail("two points but not P(1,q,Q) with matching singularities")
                }
            }
            (3, BasicType::Std2(_) | BasicType::ThreeA2) => Ok(()),
            _ => fail(&format!("{k} points with basic {} and {}", r.basic, r.wps)),
        }
    })?;
    Ok(format!("{n} records"))
}

fn oracle_equivalence(records: &[SurfaceRecord]) -> Outcome {
    let n = first_failure(records, |r| {
        let result = classify(&r.sing).map_err(|e| e.to_string())?;
        if !result.contains(&r.canonical_vertices) {
            return Err(format!(
                "{} missing from classify output",
                r.canonical_vertices
            ));
        }
        Ok(())
    })?;
    let negative = classify(&[
        SingularityType::from_fraction(3, 1).unwrap(),
        SingularityType::from_fraction(2, 1).unwrap(),
    ])
    .map_err(|e| e.to_string())?;
    if negative.exists() {
        return Err("classify({[3],[2]}) found a surface".into());
    }
    Ok(format!(
        "{n} records round-trip; {{[3],[2]}} does not exist"
    ))
}

fn ke_suite(records: &[SurfaceRecord]) -> Outcome {
    let three = Rational::integer(3);
    first_failure(records, |r| {
        let origin = r.barycenter.is_origin();
        if origin && matches!(r.basic, BasicType::Std2(_)) {
            return Err(format!(
                "{}: Std2-basic with barycenter at the origin",
                r.canonical_vertices
            ));
        }
        if !origin || r.basic == BasicType::P2 {
            return Ok(());
        }
        if r.sing.len() != 3
            || three.checked_mul(r.e_orb).unwrap() != r.k2
            || r.basic != BasicType::ThreeA2
        {
            return Err(format!(
                "{}: {} points, K^2 {}, e_orb {}, basic {}",
                r.canonical_vertices,
                r.sing.len(),
                r.k2,
                r.e_orb,
                r.basic
            ));
        }
        Ok(())
    })?;
    let hits = records
        .iter()
        .filter(|r| r.barycenter.is_origin() && r.basic != BasicType::P2)
        .count();
    Ok(format!("{hits} singular barycenter-zero records"))
}

fn brauer_suite() -> Outcome {
    let start = Instant::now();
    let p2 = brauer_group(&tri([[0, 1], [1, 0], [-1, -1]])).map_err(|e| e.to_string())?;
    let std2 = brauer_group(&tri([[0, 1], [-2, 1], [2, -3]])).map_err(|e| e.to_string())?;
    if (p2, std2) != (1, 2) {
        return Err(format!("Br(P2) = {p2}, Br(std2_2) = {std2}"));
    }
    for n in 0..=20usize {
        let (cycle, t) = brauer_family(n).map_err(|e| e.to_string())?;
        let order = brauer_group(&t).map_err(|e| e.to_string())?;
        let k = n as i64 + 2;
        let mut expect = vec![
            SingularityType::a(n + 2),
            SingularityType::a(n + 2),
            SingularityType::new(HJChain::new(vec![k, k]).unwrap()).unwrap(),
        ];
        expect.sort();
        if order != n as i64 + 3 || cycle.singular_chains() != expect {
            return Err(format!(
                "n = {n}: order {order}, chains {:?}",
                cycle.singular_chains()
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("n = 0..20 in {elapsed:?}"))
}

fn random_chain(rng: &mut StdRng) -> HJChain {
    let len = rng.gen_range(1..=8);
    HJChain::new((0..len).map(|_| rng.gen_range(2..=9)).collect()).unwrap()
}

fn zero_complement_property() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let n = first_failure((0..1000).map(|_| random_chain(&mut rng)), |m| {
        let n = zero_complement(m).map_err(|e| e.to_string())?;
        let glued: Vec<i64> = n
            .entries()
            .iter()
            .copied()
            .chain([1])
            .chain(m.entries().iter().copied())
            .collect();
        if hj_eval(&glued) != Ok(Rational::ZERO) {
            return Err(format!("{m}: [{n}, 1, {m}] is not zero"));
        }
        let v = m.value().unwrap();
        let (q, q1) = (v.numerator(), v.denominator());
        let expected = Rational::new(q, q - q1).unwrap();
        if n.reversed().value() != Ok(expected) {
            return Err(format!("{m}: reversal of {n} is not {expected}"));
        }
        Ok(())
    })?;
    Ok(format!("{n} random chains"))
}

fn reflexive_check(by_box: &[(i64, &[SurfaceRecord])]) -> Outcome {
    let expected: BTreeSet<FanoTriangle> = [
        tri([[0, 1], [1, 0], [-1, -1]]),
        tri([[0, 1], [-1, 0], [1, -2]]),
        tri([[0, 1], [-2, 1], [1, -2]]),
        tri([[0, 1], [-2, 1], [2, -3]]),
        tri([[-2, 1], [1, -2], [1, 1]]),
    ]
    .iter()
    .map(|t| canonical_form(t).unwrap())
    .collect();
    for (b, records) in by_box {
        let found: BTreeSet<FanoTriangle> = reflexive_subset(records)
            .iter()
            .map(|r| r.canonical_vertices)
            .collect();
        if found != expected {
            return Err(format!("B = {b}: reflexive classes {found:?}"));
        }
        if let Some(r) = reflexive_subset(records)
            .iter()
            .find(|r| r.cascade_length != 0)
        {
            return Err(format!(
                "B = {b}: reflexive {} is not basic",
                r.canonical_vertices
            ));
        }
    }
    let boxes: Vec<String> = by_box.iter().map(|(b, _)| b.to_string()).collect();
    Ok(format!("5 classes at B = {}", boxes.join(", ")))
}

fn confluence(records: &[SurfaceRecord]) -> Outcome {
    let report = confluence_report(records).map_err(|e| e.to_string())?;
    if report.counterexamples.is_empty() {
        Ok(format!(
            "{} cycles, every cascade choice reaches the same basic type",
            report.cycles_checked
        ))
    } else {
        let mut s = format!(
            "{} of {} cycles are not confluent:",
            report.counterexamples.len(),
            report.cycles_checked
        );
        for (c, types) in &report.counterexamples {
            s += &format!(" {c} -> {types:?};");
        }
        Ok(s)
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn main() {
    let start = Instant::now();
    let (b8, b8_audit) = single_threaded(|| {
        let records = enumerate_records(&EnumerationConfig::new(8)).expect("enumeration at B = 8");
        let report = audit(&records, Some(8));
        (records, report)
    });
    let oracle_time = start.elapsed();
    let b3 = enumerate_records(&EnumerationConfig::new(3)).expect("enumeration at B = 3");
    let b6 = enumerate_records(&EnumerationConfig::new(6)).expect("enumeration at B = 6");

    let lemma = lemma_suite(&b8, oracle_time).and_then(|s| {
        if b8_audit.passed() {
            Ok(s)
        } else {
            Err(format!("audit reported violations:\n{b8_audit}"))
        }
    });
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 golden dual graphs", golden_dual_graphs()),
        ("2 lemma suite (B = 8)", lemma),
        ("3 cascade suite (B = 8)", cascade_suite(&b8)),
        ("4 classification suite (B = 8)", classification_suite(&b8)),
        ("5 oracle equivalence (B = 8)", oracle_equivalence(&b8)),
        ("6 KE suite (B = 8)", ke_suite(&b8)),
        ("7 Brauer suite", brauer_suite()),
        ("8 zero-complement property", zero_complement_property()),
        (
            "9 reflexive classes",
            reflexive_check(&[(3, &b3), (6, &b6), (8, &b8)]),
        ),
        ("10 confluence report (B = 6)", confluence(&b6)),
    ];
    let mut failed = 0;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
