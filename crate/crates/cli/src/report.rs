//! JSON, Markdown and CSV renderings. Integers and rationals are written as
//! decimal strings so that no precision is lost.

use std::fmt::Write as _;

use equiangular::algebraic::AlgebraicReal;
use equiangular::angles::{AngleTable, RankTwoReport};
use equiangular::classes::CongruenceClassSet;
use equiangular::feasibility::{Certificate, CertificateKind, RationalSolution};
use equiangular::interlace::spectrum_of;
use equiangular::pipeline::{CandidateReport, CaseReport, CompatibilityWitness, ConfigurationStage, Verdict};
use equiangular::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub fn ints(v: &[BigInt]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

pub fn rationals(v: &[BigRational]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

pub fn certificate(c: &Certificate) -> Value {
    let kind = match c.kind {
        CertificateKind::Infeasible => json!("infeasible"),
        CertificateKind::Warranty(r) => json!({ "warranty": r }),
    };
    json!({ "kind": kind, "vector": ints(&c.vector) })
}

pub fn rational_solution(r: &RationalSolution) -> Value {
    match r {
        RationalSolution::Unique(x) => json!({ "unique": rationals(x) }),
        RationalSolution::Underdetermined => json!("underdetermined"),
        RationalSolution::Inconsistent => json!("inconsistent"),
    }
}

pub fn algebraic(a: &AlgebraicReal) -> Value {
    let (lo, hi) = a.bounds();
    json!({
        "minpoly": ints(&a.minpoly().desc_coeffs()),
        "interval": [lo.to_string(), hi.to_string()],
        "display": a.to_string(),
        "approx": a.to_f64(),
    })
}

pub fn angle_table(t: &AngleTable, family: &[IntPoly]) -> Value {
    json!({
        "eigenvalues": t.eigenvalues.iter().map(algebraic).collect::<Vec<_>>(),
        "rows": t.rows.iter().zip(family).map(|(row, f)| json!({
            "member": f.to_string(),
            "angles_squared": row.iter().map(algebraic).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn rank_two(r: &RankTwoReport) -> Value {
    json!({
        "assignments": r.assignments,
        "integral": r.integral,
        "orthogonal": r.orthogonal,
        "feasible": r.feasible,
        "diagonal_integral": r.diagonal_integral,
        "orthogonality_defects": r.defects.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

pub fn fingerprint(set: &CongruenceClassSet) -> String {
    let body = serde_json::to_vec(&set.classes).expect("class sets serialise");
    let digest = Sha256::digest(&body);
    digest.iter().take(8).map(|b| format!("{:02x}", b)).collect()
}

pub fn class_set(set: &CongruenceClassSet) -> Value {
    json!({
        "n": set.n,
        "e": set.e,
        "seed": set.seed,
        "samples": set.samples,
        "classes": set.len(),
        "target": set.target(),
        "complete": set.complete,
        "fingerprint": fingerprint(set),
    })
}

fn member(report: &CandidateReport, i: usize) -> Value {
    let f = &report.family[i];
    let full = spectrum_of(&report.charpoly)
        .and_then(|s| s.submatrix_charpoly(f))
        .map(|p| p.to_string())
        .unwrap_or_default();
    json!({ "index": i, "quotient": f.to_string(), "charpoly": full })
}

fn stage(report: &CandidateReport, s: &ConfigurationStage, nested: &[CandidateReport]) -> Value {
    json!({
        "warranted": member(report, warranted(&s.warranty)),
        "warranty": certificate(&s.warranty),
        "subfamily": s.subfamily.iter().map(|&i| member(report, i)).collect::<Vec<_>>(),
        "forbidden": s.forbidden,
        "rational_solution": rational_solution(&s.rational),
        "configurations": s.configurations.iter().map(|(c, r)| json!({
            "counts": ints(c),
            "rank_two": r.as_ref().map(rank_two),
        })).collect::<Vec<_>>(),
        "nested": nested.iter().map(candidate).collect::<Vec<_>>(),
    })
}

fn warranted(c: &Certificate) -> usize {
    match c.kind {
        CertificateKind::Warranty(r) => r,
        CertificateKind::Infeasible => 0,
    }
}

pub fn candidate(r: &CandidateReport) -> Value {
    let detail = match &r.verdict {
        Verdict::NoInterlacers | Verdict::Survives => Value::Null,
        Verdict::CertifiedInfeasible(c) => certificate(c),
        Verdict::EliminatedByCompatibility(CompatibilityWitness::IncompatiblePair { first, second }) => json!({
            "incompatible_pair": [
                { "member": member(r, warranted(first)), "warranty": certificate(first) },
                { "member": member(r, warranted(second)), "warranty": certificate(second) },
            ],
        }),
        Verdict::EliminatedByCompatibility(CompatibilityWitness::RestrictedInfeasible {
            warranty,
            subfamily,
            certificate: cert,
        }) => json!({
            "warranted": member(r, warranted(warranty)),
            "warranty": certificate(warranty),
            "compatible_subfamily": subfamily.iter().map(|&i| member(r, i)).collect::<Vec<_>>(),
            "certificate": certificate(cert),
        }),
        Verdict::EliminatedByConfiguration { stage: s, nested } | Verdict::EliminatedByRankTwo { stage: s, nested } => {
            stage(r, s, nested)
        }
        Verdict::EliminatedByNesting { warranty, nested } => json!({
            "warranted": member(r, warranted(warranty)),
            "warranty": certificate(warranty),
            "nested": candidate(nested),
        }),
        Verdict::ExternalResult(citation) => json!({ "citation": citation }),
    };
    json!({
        "charpoly": r.charpoly.to_string(),
        "family_size": r.family.len(),
        "warranted": r.warranted,
        "verdict": r.verdict.label(),
        "detail": detail,
        "elapsed_seconds": r.elapsed.as_secs_f64(),
    })
}

pub fn case(report: &CaseReport, seed: u64, classes: &[Value]) -> Value {
    let (n, d) = report.case.parameters();
    let tally: serde_json::Map<String, Value> = report
        .tally()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "case": report.case.name(),
        "n": n,
        "d": d,
        "seed": seed,
        "class_sets": classes,
        "candidates": report.candidates.iter().map(candidate).collect::<Vec<_>>(),
        "tally": tally,
        "bound_established": report.bound_established(),
        "conclusion": conclusion(report),
        "elapsed_seconds": report.elapsed.as_secs_f64(),
    })
}

pub fn conclusion(report: &CaseReport) -> String {
    let (n, d) = report.case.parameters();
    if report.bound_established() {
        format!("no {} equiangular lines in R^{}: N({}) <= {}", n, d, d, n - 1)
    } else {
        let open = report.candidates.iter().filter(|c| !c.verdict.is_eliminated()).count();
        format!("NOT established: {} of {} candidates undecided", open, report.candidates.len())
    }
}

pub fn markdown(report: &CaseReport) -> String {
    let (n, d) = report.case.parameters();
    let mut s = String::new();
    let _ = writeln!(s, "# {} (n = {}, d = {})\n", report.case.name(), n, d);
    let _ = writeln!(s, "| # | characteristic polynomial | family | verdict | seconds |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for (i, c) in report.candidates.iter().enumerate() {
        let _ = writeln!(
            s,
            "| {} | `{}` | {} | {} | {:.2} |",
            i + 1,
            c.charpoly,
            c.family.len(),
            c.verdict.label(),
            c.elapsed.as_secs_f64()
        );
    }
    let _ = writeln!(s);
    for (label, count) in report.tally() {
        let _ = writeln!(s, "- {}: {}", label, count);
    }
    let _ = writeln!(s, "\n{}", conclusion(report));
    s
}

pub fn csv(report: &CaseReport) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["charpoly", "family_size", "warranted", "verdict", "seconds"])?;
    for c in &report.candidates {
        let warranted: Vec<String> = c.warranted.iter().map(|i| i.to_string()).collect();
        w.write_record([
            c.charpoly.to_string(),
            c.family.len().to_string(),
            warranted.join(" "),
            c.verdict.label().to_string(),
            format!("{:.3}", c.elapsed.as_secs_f64()),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
