//! Per-candidate elimination pipeline and the reproduction cases built on it.
//!
//! A candidate characteristic polynomial passes through these stages until
//! one rules it out:
//!
//! 1. its interlacing family is empty;
//! 2. the feasibility system has a certificate of infeasibility;
//! 3. two warranted members are incompatible, or the members compatible
//!    with a warranted one cannot solve the system;
//! 4. no integer configuration containing a warranted member remains, or
//!    (with exactly two simple eigenvalues) every one fails the rank-two
//!    eigenvector test;
//! 5. a warranted member, analysed as a candidate of order `n - 1`, is
//!    ruled out itself; or other members of the surviving configurations
//!    are, and stage 4 succeeds without them;
//! 6. it is listed in the external fact table.
//!
//! Nested analyses run stages 1 to 4 only.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::angles::{compatible, compatible_members, rank_two_check, RankTwoReport};
use crate::classes::{collect_classes, CongruenceClassSet, HarvestOptions};
use crate::enumerate::{candidate_charpolys, CandidateOptions};
use crate::error::{Error, Result};
use crate::feasibility::{
    build_system, enumerate_configurations, find_certificate, solve_rational, warranties, Certificate,
    CertificateKind, Feasibility, FeasibilitySystem, RationalSolution,
};
use crate::interlace::{interlacing_family, spectrum_of, SpectrumData};
use crate::{FactoredPoly, IntPoly};

/// Modulus exponent of the congruence classes used throughout.
pub const CLASS_EXPONENT: u32 = 7;

/// Characteristic polynomials excluded by results outside this crate.
pub struct ExternalFact {
    pub charpoly: &'static str,
    pub citation: &'static str,
}

pub const EXTERNAL_FACTS: [ExternalFact; 2] = [
    ExternalFact {
        charpoly: "(x+5)^56(x-10)(x-15)^18",
        citation: "Azarija and Marc, There is no (75,32,10,16) strongly regular graph",
    },
    ExternalFact {
        charpoly: "(x+5)^75(x-14)(x-19)^19",
        citation: "Azarija and Marc, There is no (95,40,12,20) strongly regular graph",
    },
];

/// The citation excluding `chi`, if any.
pub fn external_fact(chi: &FactoredPoly) -> Option<&'static str> {
    let p = chi.expand();
    EXTERNAL_FACTS.iter().find_map(|f| {
        let q: FactoredPoly = f.charpoly.parse().expect("fact table entries parse");
        (q.expand() == p).then_some(f.citation)
    })
}

/// Shared settings and the class sets loaded so far.
pub struct Context {
    pub harvest: HarvestOptions,
    pub allow_incomplete: bool,
    /// Stop after the certificate stage.
    pub certificates_only: bool,
    classes: Mutex<HashMap<usize, Arc<CongruenceClassSet>>>,
}

impl Context {
    pub fn new(harvest: HarvestOptions) -> Self {
        Context {
            harvest,
            allow_incomplete: false,
            certificates_only: false,
            classes: Mutex::new(HashMap::new()),
        }
    }

    /// Classes for odd order `n`, harvested or loaded on first use.
    pub fn classes(&self, n: usize) -> Result<Arc<CongruenceClassSet>> {
        if let Some(set) = self.classes.lock().expect("class map lock").get(&n) {
            return Ok(set.clone());
        }
        let set = collect_classes(n, CLASS_EXPONENT, &self.harvest)?;
        if !self.allow_incomplete {
            set.require_complete()?;
        }
        let set = Arc::new(set);
        self.classes.lock().expect("class map lock").insert(n, set.clone());
        Ok(set)
    }

    /// Every class set used so far, by order.
    pub fn class_sets(&self) -> Vec<Arc<CongruenceClassSet>> {
        let mut v: Vec<_> = self.classes.lock().expect("class map lock").values().cloned().collect();
        v.sort_by_key(|s| s.n);
        v
    }

    /// The interlacing family of `spectrum`, with classes when required.
    pub fn family(&self, spectrum: &SpectrumData) -> Result<Vec<IntPoly>> {
        let n = spectrum.n;
        let classes = if n >= 2 && (n - 1) % 2 == 1 {
            Some(self.classes(n - 1)?)
        } else {
            None
        };
        interlacing_family(spectrum, classes.as_deref())
    }
}

/// Why two warranted members cannot coexist, or why the members
/// compatible with a warranted one cannot solve the system.
#[derive(Clone, Debug)]
pub enum CompatibilityWitness {
    IncompatiblePair {
        first: Certificate,
        second: Certificate,
    },
    RestrictedInfeasible {
        warranty: Certificate,
        /// Family indices compatible with the warranted member.
        subfamily: Vec<usize>,
        /// Certificate for the system restricted to `subfamily`.
        certificate: Certificate,
    },
}

/// Outcome of enumerating configurations around one warranted member.
#[derive(Clone, Debug)]
pub struct ConfigurationStage {
    pub warranty: Certificate,
    /// Family indices compatible with the warranted member.
    pub subfamily: Vec<usize>,
    /// Family indices excluded by nested analyses.
    pub forbidden: Vec<usize>,
    /// Rational solutions of the restricted system (forbidden rows kept).
    pub rational: RationalSolution,
    /// Integer configurations over `subfamily`, with the rank-two report
    /// when that test applies.
    pub configurations: Vec<(Vec<BigInt>, Option<RankTwoReport>)>,
}

impl ConfigurationStage {
    fn survivors(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.configurations
            .iter()
            .filter(|(_, r)| r.as_ref().is_none_or(|r| r.is_feasible()))
            .map(|(c, _)| c)
    }

    pub fn eliminates(&self) -> bool {
        self.survivors().next().is_none()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    NoInterlacers,
    CertifiedInfeasible(Certificate),
    EliminatedByCompatibility(CompatibilityWitness),
    EliminatedByConfiguration {
        stage: ConfigurationStage,
        nested: Vec<CandidateReport>,
    },
    EliminatedByRankTwo {
        stage: ConfigurationStage,
        nested: Vec<CandidateReport>,
    },
    /// A warranted member is ruled out as a candidate of order `n - 1`.
    EliminatedByNesting {
        warranty: Certificate,
        nested: Box<CandidateReport>,
    },
    ExternalResult(&'static str),
    Survives,
}

impl Verdict {
    /// Kebab-case name used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NoInterlacers => "no-interlacers",
            Verdict::CertifiedInfeasible(_) => "certified-infeasible",
            Verdict::EliminatedByCompatibility(_) => "eliminated-by-compatibility",
            Verdict::EliminatedByConfiguration { .. } => "eliminated-by-configuration",
            Verdict::EliminatedByRankTwo { .. } => "eliminated-by-rank-two",
            Verdict::EliminatedByNesting { .. } => "eliminated-by-nesting",
            Verdict::ExternalResult(_) => "external-result",
            Verdict::Survives => "survives",
        }
    }

    pub fn is_eliminated(&self) -> bool {
        !matches!(self, Verdict::Survives)
    }
}

#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub charpoly: FactoredPoly,
    /// Quotients `f` with `μ f` the interlacing characteristic polynomials.
    pub family: Vec<IntPoly>,
    /// Warranted family indices.
    pub warranted: Vec<usize>,
    pub verdict: Verdict,
    pub elapsed: Duration,
}

/// Runs the pipeline on one candidate.
pub fn analyse(ctx: &Context, chi: &FactoredPoly) -> Result<CandidateReport> {
    analyse_at(ctx, chi, 0)
}

fn analyse_at(ctx: &Context, chi: &FactoredPoly, depth: usize) -> Result<CandidateReport> {
    let start = Instant::now();
    let spectrum = spectrum_of(chi)?;
    let family = ctx.family(&spectrum)?;
    let mut report = CandidateReport {
        charpoly: chi.clone(),
        family,
        warranted: Vec::new(),
        verdict: Verdict::Survives,
        elapsed: Duration::ZERO,
    };
    report.verdict = decide(ctx, &spectrum, &report.family, depth, &mut report.warranted)?;
    if !report.verdict.is_eliminated() && depth == 0 {
        if let Some(citation) = external_fact(chi) {
            report.verdict = Verdict::ExternalResult(citation);
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn decide(
    ctx: &Context,
    spectrum: &SpectrumData,
    family: &[IntPoly],
    depth: usize,
    warranted_out: &mut Vec<usize>,
) -> Result<Verdict> {
    if family.is_empty() {
        return Ok(Verdict::NoInterlacers);
    }
    let sys = build_system(spectrum, family)?;
    if let Feasibility::Infeasible(cert) = find_certificate(&sys) {
        return Ok(Verdict::CertifiedInfeasible(cert));
    }
    if ctx.certificates_only {
        return Ok(Verdict::Survives);
    }
    let warranted = warranties(&sys);
    *warranted_out = warranted.iter().map(warranted_row).collect();
    if warranted.is_empty() {
        return Ok(Verdict::Survives);
    }
    let has_simple = spectrum.factors.iter().any(|(_, k)| *k == 1);

    // Stage 3.
    let mut subfamilies = Vec::new();
    if has_simple {
        for (i, a) in warranted.iter().enumerate() {
            for b in &warranted[i + 1..] {
                let (fa, fb) = (&family[warranted_row(a)], &family[warranted_row(b)]);
                if !compatible(spectrum, fa, fb)?.compatible {
                    return Ok(Verdict::EliminatedByCompatibility(CompatibilityWitness::IncompatiblePair {
                        first: a.clone(),
                        second: b.clone(),
                    }));
                }
            }
        }
        for w in &warranted {
            let sub = compatible_members(spectrum, family, warranted_row(w))?;
            if let Feasibility::Infeasible(certificate) = find_certificate(&sys.restrict(&sub)) {
                return Ok(Verdict::EliminatedByCompatibility(CompatibilityWitness::RestrictedInfeasible {
                    warranty: w.clone(),
                    subfamily: sub,
                    certificate,
                }));
            }
            subfamilies.push(sub);
        }
    } else {
        subfamilies = vec![(0..family.len()).collect(); warranted.len()];
    }

    // Stage 4, repeated as nested analyses forbid members.
    let mut forbidden: Vec<usize> = Vec::new();
    let mut nested: Vec<CandidateReport> = Vec::new();
    let mut tried: Vec<usize> = Vec::new();
    loop {
        let mut stages = Vec::new();
        for (w, sub) in warranted.iter().zip(&subfamilies) {
            let stage = configuration_stage(spectrum, family, &sys, w, sub, &forbidden)?;
            if stage.eliminates() {
                let rank_two = stage.configurations.iter().any(|(_, r)| r.is_some());
                let nested = nested.iter().filter(|r| r.verdict.is_eliminated()).cloned().collect();
                return Ok(if rank_two {
                    Verdict::EliminatedByRankTwo { stage, nested }
                } else {
                    Verdict::EliminatedByConfiguration { stage, nested }
                });
            }
            stages.push(stage);
        }
        if depth > 0 {
            return Ok(Verdict::Survives);
        }

        // Stage 5: warranted members first, then members used by the
        // surviving configurations.
        let mut order: Vec<usize> = warranted.iter().map(warranted_row).collect();
        let mut used: Vec<usize> = Vec::new();
        for stage in &stages {
            for config in stage.survivors() {
                for (pos, count) in config.iter().enumerate() {
                    if *count > BigInt::from(0) {
                        used.push(stage.subfamily[pos]);
                    }
                }
            }
        }
        used.sort_unstable();
        used.dedup();
        order.extend(used);
        let Some(member) = order.into_iter().find(|i| !tried.contains(i)) else {
            return Ok(Verdict::Survives);
        };
        tried.push(member);
        let sub_chi = spectrum.submatrix_charpoly(&family[member])?;
        let sub_report = analyse_at(ctx, &sub_chi, depth + 1)?;
        let eliminated = sub_report.verdict.is_eliminated();
        if eliminated {
            if let Some(w) = warranted.iter().find(|w| warranted_row(w) == member) {
                return Ok(Verdict::EliminatedByNesting {
                    warranty: w.clone(),
                    nested: Box::new(sub_report),
                });
            }
            forbidden.push(member);
        }
        nested.push(sub_report);
    }
}

fn warranted_row(c: &Certificate) -> usize {
    match c.kind {
        CertificateKind::Warranty(r) => r,
        CertificateKind::Infeasible => unreachable!("warranties only"),
    }
}

fn configuration_stage(
    spectrum: &SpectrumData,
    family: &[IntPoly],
    sys: &FeasibilitySystem,
    warranty: &Certificate,
    subfamily: &[usize],
    forbidden: &[usize],
) -> Result<ConfigurationStage> {
    let restricted = sys.restrict(subfamily);
    let w = warranted_row(warranty);
    let pos = subfamily
        .iter()
        .position(|&i| i == w)
        .ok_or_else(|| Error::Invalid("warranted member missing from its subfamily".into()))?;
    let forbidden_pos: Vec<usize> = subfamily
        .iter()
        .enumerate()
        .filter(|(_, i)| forbidden.contains(i))
        .map(|(p, _)| p)
        .collect();
    let members: Vec<IntPoly> = subfamily.iter().map(|&i| family[i].clone()).collect();
    let simple = spectrum.factors.iter().filter(|(_, k)| *k == 1).map(|(p, _)| p.degree()).sum::<usize>();
    let mut configurations = Vec::new();
    for config in enumerate_configurations(&restricted, &forbidden_pos, &[pos])? {
        let check = if simple == 2 {
            Some(rank_two_check(spectrum, &members, &config)?)
        } else {
            None
        };
        configurations.push((config, check));
    }
    Ok(ConfigurationStage {
        warranty: warranty.clone(),
        subfamily: subfamily.to_vec(),
        forbidden: forbidden.to_vec(),
        rational: solve_rational(&restricted),
        configurations,
    })
}

/// The reproduction cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Dim14,
    Dim16,
    Dim19,
    Dim20,
    Dim17Stretch,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::Dim14, Case::Dim16, Case::Dim19, Case::Dim20, Case::Dim17Stretch];

    /// `(n, d)`: no Seidel matrix of order `n` with smallest eigenvalue
    /// `-5` of multiplicity `n - d` exists.
    pub fn parameters(self) -> (usize, usize) {
        match self {
            Case::Dim14 => (29, 14),
            Case::Dim16 => (41, 16),
            Case::Dim19 => (75, 19),
            Case::Dim20 => (95, 20),
            Case::Dim17Stretch => (49, 17),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::Dim14 => "dim14",
            Case::Dim16 => "dim16",
            Case::Dim19 => "dim19",
            Case::Dim20 => "dim20",
            Case::Dim17Stretch => "dim17-stretch",
        }
    }

    /// The stretch case stops after the certificate stage.
    pub fn certificates_only(self) -> bool {
        self == Case::Dim17Stretch
    }
}

impl std::str::FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown case {:?}", s)))
    }
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: Case,
    pub candidates: Vec<CandidateReport>,
    pub elapsed: Duration,
}

impl CaseReport {
    /// Whether every candidate is ruled out, so no `n` lines exist in `ℝ^d`.
    pub fn bound_established(&self) -> bool {
        self.candidates.iter().all(|c| c.verdict.is_eliminated())
    }

    /// Number of candidates with each verdict label, in first-seen order.
    pub fn tally(&self) -> Vec<(&'static str, usize)> {
        let mut out: Vec<(&'static str, usize)> = Vec::new();
        for c in &self.candidates {
            let label = c.verdict.label();
            match out.iter_mut().find(|(l, _)| *l == label) {
                Some(e) => e.1 += 1,
                None => out.push((label, 1)),
            }
        }
        out
    }
}

/// Candidates for `case` and the pipeline verdict on each, using `jobs`
/// worker threads.
pub fn reproduce(ctx: &Context, case: Case, jobs: usize) -> Result<CaseReport> {
    let start = Instant::now();
    let (n, d) = case.parameters();
    let classes = ctx.classes(n)?;
    let opts = CandidateOptions {
        allow_incomplete: ctx.allow_incomplete,
        ..CandidateOptions::default()
    };
    let candidates = candidate_charpolys(n, d, -5, &classes, &opts)?;
    let candidates = analyse_all(ctx, &candidates, jobs)?;
    Ok(CaseReport {
        case,
        candidates,
        elapsed: start.elapsed(),
    })
}

/// Runs [`analyse`] over `chis` on `jobs` threads, keeping input order.
pub fn analyse_all(ctx: &Context, chis: &[FactoredPoly], jobs: usize) -> Result<Vec<CandidateReport>> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<CandidateReport>>>> = chis.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, chis.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= chis.len() {
                    break;
                }
                let r = analyse(ctx, &chis[i]);
                *slots[i].lock().expect("slot lock") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot lock").expect("every slot filled"))
        .collect()
}
