//! Verdict engines: the middle-degree inequality `nu <= nu'`, the equality
//! characterization (`nu = nu'` exactly for near-pencils and for double-and-
//! triple-point arrangements), and combinatorial invariance of the defect
//! and splitting type across groups of realizations, keyed by a canonical
//! certificate of the intersection lattice.

use std::collections::{BTreeMap, BTreeSet};

use crate::arrangement::IntersectionPoint;
use crate::spectrum::{Exactness, NuPrimeResult};

/// Outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Consistent,
    Violation,
    Inconclusive,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Consistent => "CONSISTENT",
            Status::Violation => "VIOLATION",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A named check outcome with structured details.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub check_name: &'static str,
    pub status: Status,
    pub details: BTreeMap<String, String>,
}

impl Verdict {
    fn new(check_name: &'static str, status: Status) -> Self {
        Verdict {
            check_name,
            status,
            details: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }
}

/// Check the middle-degree inequality `nu <= nu'`.
///
/// A violation is only ever reported against an exact bound; for lower
/// bounds or user-supplied eigenspace data an apparent excess is
/// inconclusive.
pub fn walther_check(nu: i64, nu_prime: &NuPrimeResult) -> Verdict {
    let v = nu_prime.value;
    let base = Verdict::new("walther", Status::Consistent)
        .with("nu", nu)
        .with("nu_prime", v)
        .with("exactness", nu_prime.exactness.label());
    match nu_prime.exactness {
        Exactness::Exact => {
            if nu > v {
                Verdict {
                    status: Status::Violation,
                    ..base
                }
            } else {
                base.with("relation", if nu == v { "equality" } else { "strict" })
            }
        }
        Exactness::LowerBound | Exactness::UserSupplied => {
            if nu <= v {
                base.with("relation", if nu < v { "strict" } else { "undecided" })
            } else {
                Verdict {
                    status: Status::Inconclusive,
                    ..base
                }
            }
        }
    }
}

/// Check the equality characterization: `nu = nu'` is predicted to hold
/// exactly when the maximal multiplicity is `d - 1` or at most 3.
pub fn conjecture3_check(nu: i64, nu_prime: &NuPrimeResult, m_max: usize, d: usize) -> Verdict {
    let predicted = m_max == d - 1 || m_max <= 3;
    // what the data decides about nu == nu'
    let observed: Option<bool> = match nu_prime.exactness {
        Exactness::Exact => Some(nu == nu_prime.value),
        Exactness::LowerBound | Exactness::UserSupplied => {
            if nu_prime.unconditional_bound() > nu {
                Some(false)
            } else {
                None
            }
        }
    };
    let base = Verdict::new("conjecture3", Status::Consistent)
        .with("d", d)
        .with("m_max", m_max)
        .with("nu", nu)
        .with("nu_prime", nu_prime.value)
        .with("exactness", nu_prime.exactness.label())
        .with("predicted_equality", predicted);
    match observed {
        None => Verdict {
            status: Status::Inconclusive,
            ..base.with("observed_equality", "undecided")
        },
        Some(o) => {
            let status = if o == predicted {
                Status::Consistent
            } else {
                Status::Violation
            };
            Verdict {
                status,
                ..base.with("observed_equality", o)
            }
        }
    }
}

/// Canonical certificate of an intersection lattice: the number of lines
/// plus a canonical encoding of the incidences between lines and points of
/// multiplicity at least three. Two arrangements receive equal certificates
/// iff their lattices are isomorphic (double points are reconstructible from
/// d and the high incidences).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeCertificate(pub String);

/// Incidence hypergraph on line indices `0..d` whose edges are the high
/// points, canonicalized by individualization-refinement with branching only
/// across structurally distinct lines.
pub fn canonical_certificate(points: &[IntersectionPoint], d: usize) -> LatticeCertificate {
    let edges: Vec<BTreeSet<usize>> = points
        .iter()
        .filter(|p| p.multiplicity() >= 3)
        .map(|p| p.incident_lines.clone())
        .collect();
    let encoding = canonical_encoding(d, &edges);
    let body: Vec<String> = encoding
        .iter()
        .map(|e| {
            let ids: Vec<String> = e.iter().map(usize::to_string).collect();
            format!("[{}]", ids.join(","))
        })
        .collect();
    LatticeCertificate(format!("d={d};{}", body.join("")))
}

/// Lexicographically minimal relabeled edge list over all admissible line
/// labelings.
fn canonical_encoding(d: usize, edges: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut assigned: Vec<Option<usize>> = vec![None; d];
    search(d, edges, &mut assigned, 0, &mut best);
    best.expect("search always reaches a leaf")
}

fn encode_with(labels: &[Option<usize>], edges: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = edges
        .iter()
        .map(|e| {
            let mut v: Vec<usize> = e.iter().map(|&l| labels[l].unwrap()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

/// Refinement color of a line given the current partial labeling: its
/// multiset of (edge size, sorted labeled co-members) data.
fn line_signature(line: usize, labels: &[Option<usize>], edges: &[BTreeSet<usize>]) -> String {
    let mut parts: Vec<String> = edges
        .iter()
        .filter(|e| e.contains(&line))
        .map(|e| {
            let mut known: Vec<usize> = e
                .iter()
                .filter_map(|&l| labels[l])
                .collect();
            known.sort_unstable();
            format!("{}:{known:?}", e.len())
        })
        .collect();
    parts.sort();
    parts.join("|")
}

fn search(
    d: usize,
    edges: &[BTreeSet<usize>],
    assigned: &mut Vec<Option<usize>>,
    next_label: usize,
    best: &mut Option<Vec<Vec<usize>>>,
) {
    if next_label == d {
        let enc = encode_with(assigned, edges);
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    }
    // candidate lines grouped by signature: lines with identical signatures
    // and identical exact edge membership are interchangeable, so one
    // representative per group suffices
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for line in 0..d {
        if assigned[line].is_none() {
            let sig = line_signature(line, assigned, edges);
            let member: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.contains(&line))
                .map(|(i, _)| i)
                .collect();
            groups
                .entry(format!("{sig}#{member:?}"))
                .or_default()
                .push(line);
        }
    }
    // branch on the structurally smallest signature class first; within a
    // class only distinct edge-membership representatives matter
    let mut candidates: Vec<usize> = Vec::new();
    let mut seen_membership: BTreeSet<String> = BTreeSet::new();
    let first_sig = groups
        .keys()
        .map(|k| k.split('#').next().unwrap().to_string())
        .min()
        .unwrap();
    for (key, lines) in &groups {
        if key.split('#').next().unwrap() == first_sig {
            let membership = key.split('#').nth(1).unwrap().to_string();
            if seen_membership.insert(membership) {
                candidates.push(lines[0]);
            }
        }
    }
    for line in candidates {
        assigned[line] = Some(next_label);
        search(d, edges, assigned, next_label + 1, best);
        assigned[line] = None;
    }
}

/// Certificate class data used by the cross-realization check.
#[derive(Clone, Debug)]
pub struct RealizationData {
    pub label: String,
    pub certificate: LatticeCertificate,
    pub nu: i64,
    pub splitting_type: (usize, usize),
}

/// Group analyzed arrangements by certificate and require the defect and the
/// generic splitting type to be constant within every class. A mismatch is a
/// genuine counterexample and is reported with the offending pair.
pub fn conjecture12_check(group: &[RealizationData]) -> Verdict {
    let mut classes: BTreeMap<&LatticeCertificate, Vec<&RealizationData>> = BTreeMap::new();
    for r in group {
        classes.entry(&r.certificate).or_default().push(r);
    }
    let mut verdict = Verdict::new("conjecture12", Status::Consistent)
        .with("classes", classes.len())
        .with("members", group.len());
    for (cert, members) in &classes {
        let first = members[0];
        for other in &members[1..] {
            if other.nu != first.nu || other.splitting_type != first.splitting_type {
                return Verdict {
                    status: Status::Violation,
                    ..verdict
                        .with("certificate", &cert.0)
                        .with("first", &first.label)
                        .with(
                            "first_data",
                            format!("nu={} splitting={:?}", first.nu, first.splitting_type),
                        )
                        .with("second", &other.label)
                        .with(
                            "second_data",
                            format!("nu={} splitting={:?}", other.nu, other.splitting_type),
                        )
                };
            }
        }
    }
    for (i, (cert, members)) in classes.iter().enumerate() {
        verdict = verdict.with(
            &format!("class_{i}"),
            format!(
                "{} members, nu={}, splitting={:?}, certificate={}",
                members.len(),
                members[0].nu,
                members[0].splitting_type,
                cert.0
            ),
        );
    }
    verdict
}
