//! Acceptance suite. Each criterion prints one PASS/FAIL line on stderr
//! (written directly so the lines survive output capture), then the test
//! asserts that all of them passed.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use pnclass::catalog::Clause;
use pnclass::classes::{self, quotient};
use pnclass::constructors::{self, Builder};
use pnclass::graphs::{self, ClassGraph};
use pnclass::numbers::gcd;
use pnclass::verifier::{
    self, check_pn, lemma1_crosscheck, witness_is_valid, VerificationOutcome, VerifyOptions,
    EXPECTED_DISCREPANCIES, LEMMA1_RANGE,
};
use pnclass::{decompose, ClassDecomposition};
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_verify() -> (VerificationOutcome, Duration) {
    let opts = VerifyOptions {
        keep_decompositions: true,
        ..VerifyOptions::default()
    };
    let start = Instant::now();
    let outcome = verifier::verify_theorem_a(&opts).expect("verification runs");
    (outcome, start.elapsed())
}

fn criterion_1(outcome: &VerificationOutcome, elapsed: Duration) -> Check {
    let report = &outcome.report;
    let members: Vec<_> = report
        .entries
        .iter()
        .filter(|e| e.clause.is_theorem_clause())
        .collect();
    ensure(
        members.len() >= 20,
        format!("only {} members", members.len()),
    )?;
    for e in &members {
        ensure(e.pn.satisfied, format!("{} violates P_4", e.id))?;
    }
    ensure(
        elapsed < Duration::from_secs(300),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{} constructible members satisfy P_4 in {:.2}s",
        members.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Check {
    let profile = verifier::sz8_class_profile_check().map_err(|e| e.to_string())?;
    ensure(profile.order == 29120, format!("order {}", profile.order))?;
    ensure(profile.involution_classes == 1, "involution classes")?;
    ensure(profile.order4_classes == 2, "order-4 classes")?;
    ensure(profile.order7_classes == 3, "order-7 classes")?;
    ensure(profile.order13_classes == 3, "order-13 classes")?;
    ensure(profile.holds(), "profile")?;
    Ok(format!(
        "Sz(8): order 29120, {} classes",
        profile.class_count
    ))
}

fn criterion_3(outcome: &VerificationOutcome) -> Check {
    let mut groups = 0;
    let mut rows = 0;
    for (id, d) in &outcome.decompositions {
        let check = lemma1_crosscheck(d, LEMMA1_RANGE).map_err(|e| e.to_string())?;
        ensure(check.consistent, format!("{id}: P_n and K_n disagree"))?;
        groups += 1;
        rows += check.rows.len();
    }
    ensure(groups >= 20, format!("only {groups} groups"))?;
    ensure(rows == groups * 5, "expected five values of n per group")?;
    Ok(format!("{groups} groups x n=2..6, 0 mismatches"))
}

fn criterion_4(outcome: &VerificationOutcome) -> Check {
    let mut ids = Vec::new();
    for (id, d) in &outcome.decompositions {
        let entry = outcome.report.entries.iter().find(|e| &e.id == id).unwrap();
        if entry.clause != Clause::Counterexample {
            continue;
        }
        let report = check_pn(d, 4);
        ensure(!report.satisfied, format!("{id} satisfies P_4"))?;
        let w = report.witness.as_ref().ok_or(format!("{id}: no witness"))?;
        ensure(w.classes.len() >= 4, format!("{id}: witness too small"))?;
        ensure(
            witness_is_valid(d, &report),
            format!("{id}: invalid witness"),
        )?;
        ids.push(id.clone());
    }
    for want in ["x-SL2(5)", "x-C4xS3", "x-S7"] {
        ensure(ids.iter().any(|i| i == want), format!("{want} missing"))?;
    }
    ensure(ids.len() >= 4, "large probe missing")?;
    Ok(format!(
        "{} counterexamples violate P_4 with valid witnesses",
        ids.len()
    ))
}

fn criterion_5(outcome: &VerificationOutcome) -> Check {
    let s = &outcome.report.summary;
    ensure(s.lemma2_pairs > 0, "no pairs tested")?;
    ensure(
        s.lemma2_violations == 0,
        format!("{} violations", s.lemma2_violations),
    )?;
    for e in &outcome.report.entries {
        for r in &e.lemma2 {
            ensure(
                r.outcome.implication_holds && r.outcome.order_divisibility_holds,
                format!("{} / {}", e.id, r.subgroup),
            )?;
        }
    }
    let sl25 = constructors::sl2(5).map_err(|e| e.to_string())?;
    let d = decompose(&sl25);
    let q = quotient(&sl25, &d.center()).map_err(|e| e.to_string())?;
    let a5 = decompose(&constructors::alternating(5).unwrap());
    let fp = decompose(&q.group).fingerprint();
    ensure(fp == a5.fingerprint(), "SL(2,5)/Z differs from A5")?;
    ensure(fp.order == 60, "quotient order")?;
    ensure(fp.class_sizes == vec![1, 12, 12, 15, 20], "class sizes")?;
    Ok(format!(
        "{} (G, N) pairs hold; SL(2,5)/Z matches A5",
        s.lemma2_pairs
    ))
}

fn criterion_6() -> Check {
    let mut parts = Vec::new();
    for q in [4u64, 5, 7, 9, 11, 13] {
        let c = verifier::l2q_power_class_check(q).map_err(|e| e.to_string())?;
        let expected = match q {
            _ if q % 2 == 0 => (q - 2) / 2,
            _ if q % 4 == 1 => (q - 1) / 4,
            _ => (q - 3) / 4,
        } as usize;
        ensure(
            c.expected_classes == expected,
            format!("q={q}: count formula"),
        )?;
        ensure(
            c.distinct_classes == expected && c.holds,
            format!("q={q}: {} distinct, want {expected}", c.distinct_classes),
        )?;
        parts.push(format!("q={q}:{expected}"));
    }
    Ok(parts.join(" "))
}

fn criterion_7() -> Check {
    let b = Builder::default();
    for q in [4u64, 5, 7, 9, 11, 13] {
        let order = b.psl2(q).map_err(|e| e.to_string())?.order() as u64;
        let want = q * (q * q - 1) / gcd(2, q - 1);
        ensure(order == want, format!("PSL(2,{q}): {order} != {want}"))?;
    }
    let a7 = b.alternating(7).map_err(|e| e.to_string())?.order();
    ensure(a7 == 2520, format!("|A7| = {a7}"))?;
    Ok("PSL(2,q) for q in {4,5,7,9,11,13} and |A7| = 2520".into())
}

fn exhaustive_clique_number(g: &ClassGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|mask| {
            (0..n).all(|i| {
                mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || g.adjacent(i, j))
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn check_invariants(id: &str, d: &ClassDecomposition) -> Result<usize, String> {
    let g = d.group();
    let total: usize = d.classes().iter().map(|c| c.size).sum();
    ensure(
        total == g.order(),
        format!("{id}: class sizes do not partition"),
    )?;
    for (i, c) in d.classes().iter().enumerate() {
        ensure(
            c.size * d.centralizer_order(i) == g.order(),
            format!("{id}: orbit-stabilizer fails for C{i}"),
        )?;
        ensure(
            c.members
                .iter()
                .all(|&m| g.element(m).order() == c.element_order),
            format!("{id}: C{i} mixes element orders"),
        )?;
    }
    let mut compared = 0;
    let graphs = [
        graphs::order_class_graph(d),
        graphs::size_class_graph(d),
        graphs::prime_graph_from(g.order() as u64, &d.spectrum()),
    ];
    for graph in &graphs {
        if graph.vertex_count() <= 20 {
            ensure(
                graphs::max_clique(graph) == exhaustive_clique_number(graph),
                format!("{id}: {} graph clique mismatch", graph.kind.as_str()),
            )?;
            compared += 1;
        }
    }
    Ok(compared)
}

fn criterion_8(outcome: &VerificationOutcome) -> Check {
    let mut groups = 0;
    let mut graphs_compared = 0;
    for (id, d) in &outcome.decompositions {
        graphs_compared += check_invariants(id, d)?;
        groups += 1;
    }
    let extra = [
        (
            "D(4)",
            classes::derived_subgroup(&constructors::dihedral(4).unwrap()),
        ),
        ("SL2(3)", constructors::sl2(3).unwrap()),
        ("S5", constructors::symmetric(5).unwrap()),
    ];
    for (id, g) in &extra {
        graphs_compared += check_invariants(id, &decompose(g))?;
        groups += 1;
    }
    Ok(format!(
        "{groups} groups; {graphs_compared} graphs checked against subset enumeration"
    ))
}

fn criterion_9(outcome: &VerificationOutcome) -> Check {
    let report = &outcome.report;
    let ids: Vec<&str> = report.discrepancies.iter().map(|d| d.id.as_str()).collect();
    ensure(
        ids == EXPECTED_DISCREPANCIES,
        format!("discrepancies {ids:?}"),
    )?;
    ensure(
        report.summary.unexpected_discrepancies.is_empty(),
        "unexpected discrepancies",
    )?;
    ensure(
        report.summary.missing_discrepancies.is_empty(),
        "missing discrepancies",
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let json = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_pnclass"))
        .args(["verify", "--n", "4", "--json"])
        .arg(&json)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        status.status.code() == Some(0),
        format!("exit {:?}", status.status.code()),
    )?;
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap())
        .map_err(|e| e.to_string())?;
    let from_cli: Vec<&str> = doc["discrepancies"]
        .as_array()
        .ok_or("no discrepancies array")?
        .iter()
        .filter_map(|d| d["id"].as_str())
        .collect();
    ensure(
        from_cli == EXPECTED_DISCREPANCIES,
        format!("cli discrepancies {from_cli:?}"),
    )?;
    Ok(format!("discrepancies {} and {}; exit 0", ids[0], ids[1]))
}

#[test]
fn acceptance_criteria() {
    let (outcome, elapsed) = run_verify();
    let results: Vec<(usize, Check)> = vec![
        (1, criterion_1(&outcome, elapsed)),
        (2, criterion_2()),
        (3, criterion_3(&outcome)),
        (4, criterion_4(&outcome)),
        (5, criterion_5(&outcome)),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8(&outcome)),
        (9, criterion_9(&outcome)),
    ];
    let mut stderr = std::io::stderr().lock();
    for (i, r) in &results {
        match r {
            Ok(msg) => writeln!(stderr, "acceptance {i}: PASS  {msg}"),
            Err(msg) => writeln!(stderr, "acceptance {i}: FAIL  {msg}"),
        }
        .unwrap();
    }
    let failed: Vec<usize> = results
        .iter()
        .filter(|(_, r)| r.is_err())
        .map(|(i, _)| *i)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
