//! The full pipeline: parse or construct, lattice, algebraic profile,
//! spectrum, verdicts; plus machine-readable reports and batch processing.
//!
//! Reports are JSON with sorted keys and every exact number rendered as a
//! string, so two runs on the same input are byte-identical (timings are
//! opt-in for that reason).

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arrangement::{
    self, Arrangement, HirzebruchCheck, IntersectionPoint, LatticeSummary,
};
use crate::catalog::CatalogSpec;
use crate::conjectures::{
    canonical_certificate, conjecture12_check, conjecture3_check, walther_check,
    LatticeCertificate, RealizationData, Status, Verdict,
};
use crate::error::Error;
use crate::jacobian::{self, FreenessClassification, JacobianProfile, VanishingReport};
use crate::spectrum::{full_spectrum, nu_prime, NuPrimeResult, SpectrumTable};

/// Pipeline switches (CLI flags map onto this).
#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Override for the (-1)-eigenspace dimension used by the even-degree
    /// bound; takes precedence over the input file's assumption.
    pub h1_override: Option<u64>,
    /// Treat a bare-polynomial input as having only rational components.
    pub assume_rational: bool,
    pub skip_spectrum: bool,
    /// Include wall-clock timings in the report (breaks byte-identical
    /// output, hence opt-in).
    pub with_timings: bool,
}

/// Combinatorial data attached to an analysis, when available.
#[derive(Clone, Debug)]
pub struct LatticeData {
    pub summary: LatticeSummary,
    pub points: Option<Vec<IntersectionPoint>>,
    pub certificate: Option<LatticeCertificate>,
    pub declared: bool,
}

/// Everything computed for one input.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub source: String,
    pub d: usize,
    pub cyclotomic_order: u64,
    pub lattice: Option<LatticeData>,
    pub jacobian: JacobianProfile,
    pub freeness: FreenessClassification,
    pub vanishing: VanishingReport,
    pub hirzebruch: Option<HirzebruchCheck>,
    pub spectrum: Option<SpectrumTable>,
    pub nu_prime: Option<NuPrimeResult>,
    pub walther: Option<Verdict>,
    pub conjecture3: Option<Verdict>,
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Analysis {
    /// Run the pipeline on a parsed or constructed arrangement.
    pub fn run(arr: &Arrangement, source: &str, opts: &AnalysisOptions) -> Result<Analysis, Error> {
        let mut timings: BTreeMap<String, u128> = BTreeMap::new();
        let d = arr.poly.degree();
        if d < 3 {
            return Err(Error::NotEssential);
        }

        let t0 = Instant::now();
        let lattice_data = if !arr.lines.is_empty() {
            let points = arrangement::lattice(arr)?;
            let summary = arrangement::summary(&points, d)?;
            if let Some(declared) = &arr.declared_lattice {
                if declared != &summary.nu {
                    return Err(Error::DeclaredMismatch(format!(
                        "declared nu {declared:?} but the lines give {:?}",
                        summary.nu
                    )));
                }
            }
            let certificate = canonical_certificate(&points, d);
            Some(LatticeData {
                summary,
                points: Some(points),
                certificate: Some(certificate),
                declared: false,
            })
        } else if let Some(nu) = &arr.declared_lattice {
            Some(LatticeData {
                summary: arrangement::summary_from_declared(nu, d)?,
                points: None,
                certificate: None,
                declared: true,
            })
        } else {
            None
        };
        timings.insert("lattice".into(), t0.elapsed().as_millis());

        if let Some(l) = &lattice_data {
            if !l.summary.essential {
                return Err(Error::NotEssential);
            }
        }

        let t1 = Instant::now();
        let profile = jacobian::profile(&arr.poly)?;
        timings.insert("jacobian".into(), t1.elapsed().as_millis());
        if profile.r == 0 {
            return Err(Error::NotEssential);
        }

        if let Some(l) = &lattice_data {
            if l.summary.tau_comb != profile.tau_alg {
                let msg = format!(
                    "combinatorial Tjurina number {} != algebraic {}",
                    l.summary.tau_comb, profile.tau_alg
                );
                return Err(if l.declared {
                    Error::DeclaredMismatch(msg)
                } else {
                    Error::Internal(msg)
                });
            }
        }

        let freeness = jacobian::classify(d, profile.r, profile.tau_alg, profile.nu)?;
        let rational = !arr.lines.is_empty()
            || arr.assume.rational_components
            || opts.assume_rational;
        let vanishing = jacobian::vanishing_check(&profile, rational);
        let hirzebruch = lattice_data
            .as_ref()
            .map(|l| arrangement::hirzebruch_check(&l.summary));

        let t2 = Instant::now();
        let (spectrum, nu_prime_result, walther, conj3) = match (&lattice_data, opts.skip_spectrum)
        {
            (Some(l), false) => {
                let table = full_spectrum(&l.summary)?;
                let h1 = opts.h1_override.or(arr.assume.h1_minus);
                let np = nu_prime(&l.summary, h1)?;
                let w = walther_check(profile.nu, &np);
                let c3 = conjecture3_check(profile.nu, &np, l.summary.m_max, d);
                (Some(table), Some(np), Some(w), Some(c3))
            }
            _ => (None, None, None, None),
        };
        timings.insert("spectrum".into(), t2.elapsed().as_millis());

        Ok(Analysis {
            source: source.to_string(),
            d,
            cyclotomic_order: arr.context.order,
            lattice: lattice_data,
            jacobian: profile,
            freeness,
            vanishing,
            hirzebruch,
            spectrum,
            nu_prime: nu_prime_result,
            walther,
            conjecture3: conj3,
            timings_ms: opts.with_timings.then_some(timings),
        })
    }

    /// The Hirzebruch check wrapped as a verdict: inapplicable cases are
    /// inconclusive, a failing applicable case would be a violation.
    pub fn hirzebruch_verdict(&self) -> Option<Verdict> {
        self.hirzebruch.as_ref().map(|h| {
            let status = if !h.applicable {
                Status::Inconclusive
            } else if h.holds {
                Status::Consistent
            } else {
                Status::Violation
            };
            let mut details = BTreeMap::new();
            details.insert("applicable".into(), h.applicable.to_string());
            details.insert(
                "slack".into(),
                format_quarters(h.slack_quarters),
            );
            Verdict {
                check_name: "hirzebruch",
                status,
                details,
            }
        })
    }

    /// The vanishing-range check wrapped as a verdict.
    pub fn vanishing_verdict(&self) -> Verdict {
        let v = &self.vanishing;
        let status = if !v.applicable {
            Status::Inconclusive
        } else if v.ranges_hold {
            Status::Consistent
        } else {
            Status::Violation
        };
        let mut details = BTreeMap::new();
        details.insert("applicable".into(), v.applicable.to_string());
        details.insert("ranges_hold".into(), v.ranges_hold.to_string());
        details.insert("st_bound_2d_minus_4".into(), v.st_bound_holds.to_string());
        details.insert("nodal_equality".into(), v.nodal_equality.to_string());
        Verdict {
            check_name: "hs_vanishing",
            status,
            details,
        }
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut out = Vec::new();
        if let Some(w) = &self.walther {
            out.push(w.clone());
        }
        if let Some(c) = &self.conjecture3 {
            out.push(c.clone());
        }
        if let Some(h) = self.hirzebruch_verdict() {
            out.push(h);
        }
        out.push(self.vanishing_verdict());
        out
    }

    pub fn has_violation(&self) -> bool {
        self.verdicts().iter().any(|v| v.status == Status::Violation)
    }

    pub fn exit_code(&self) -> i32 {
        if self.has_violation() {
            1
        } else {
            0
        }
    }

    /// The machine-readable report.
    pub fn report(&self) -> Value {
        let mut root = Map::new();
        root.insert("input".into(), json!({ "source": self.source }));
        root.insert("d".into(), s(self.d));
        root.insert("cyclotomic_order".into(), s(self.cyclotomic_order));

        let lattice = match &self.lattice {
            None => Value::Null,
            Some(l) => {
                let mut nu = Map::new();
                for (j, v) in &l.summary.nu {
                    nu.insert(j.to_string(), s(v));
                }
                let mut m = Map::new();
                m.insert("declared".into(), Value::Bool(l.declared));
                m.insert("nu".into(), Value::Object(nu));
                m.insert("tau_comb".into(), s(l.summary.tau_comb));
                m.insert("m_max".into(), s(l.summary.m_max));
                m.insert("essential".into(), Value::Bool(l.summary.essential));
                m.insert("chi_complement".into(), s(l.summary.chi_complement));
                m.insert(
                    "type_tag".into(),
                    Value::String(l.summary.type_tag.label()),
                );
                m.insert(
                    "certificate".into(),
                    match &l.certificate {
                        Some(c) => Value::String(c.0.clone()),
                        None => Value::Null,
                    },
                );
                Value::Object(m)
            }
        };
        root.insert("lattice".into(), lattice);

        let p = &self.jacobian;
        root.insert(
            "jacobian".into(),
            json!({
                "milnor_dims": str_vec(&p.milnor_dims),
                "r": s(p.r),
                "defect_table": str_vec(&p.defect_table),
                "nu": s(p.nu),
                "st": s(p.st),
                "tau_alg": s(p.tau_alg),
                "reg": s(p.reg),
            }),
        );

        root.insert(
            "freeness".into(),
            json!({
                "status": self.freeness.status.label(),
                "exponents": self.freeness.exponents.map(|(a, b)| vec![a.to_string(), b.to_string()]),
                "splitting_type": vec![
                    self.freeness.splitting_type.0.to_string(),
                    self.freeness.splitting_type.1.to_string(),
                ],
            }),
        );

        let spectrum = match &self.spectrum {
            None => Value::Null,
            Some(t) => {
                let mut entries = Map::new();
                for ((num, den), m) in t.labeled() {
                    let key = if den == 1 {
                        num.to_string()
                    } else {
                        format!("{num}/{den}")
                    };
                    entries.insert(key, s(m));
                }
                json!({
                    "entries": Value::Object(entries),
                    "total": s(t.total()),
                    "sum_check": "ok",
                })
            }
        };
        root.insert("spectrum".into(), spectrum);

        let np = match &self.nu_prime {
            None => Value::Null,
            Some(n) => json!({
                "value": s(n.value),
                "exactness": n.exactness.label(),
                "h1_used": s(n.h1_used),
            }),
        };
        root.insert("nu_prime".into(), np);

        let mut verdicts = Map::new();
        for v in self.verdicts() {
            verdicts.insert(v.check_name.into(), verdict_json(&v));
        }
        root.insert("verdicts".into(), Value::Object(verdicts));

        if let Some(t) = &self.timings_ms {
            let mut m = Map::new();
            for (k, v) in t {
                m.insert(k.clone(), s(v));
            }
            root.insert("timings_ms".into(), Value::Object(m));
        }
        Value::Object(root)
    }
}

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn str_vec<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn format_quarters(q: i64) -> String {
    if q % 4 == 0 {
        (q / 4).to_string()
    } else if q % 2 == 0 {
        format!("{}/2", q / 2)
    } else {
        format!("{q}/4")
    }
}

fn verdict_json(v: &Verdict) -> Value {
    let mut m = Map::new();
    m.insert("status".into(), Value::String(v.status.label().into()));
    let mut details = Map::new();
    for (k, val) in &v.details {
        details.insert(k.clone(), Value::String(val.clone()));
    }
    m.insert("details".into(), Value::Object(details));
    Value::Object(m)
}

/// Resolve a source (a `catalog:` spec or a file path) into an arrangement.
pub fn load_source(source: &str) -> Result<Arrangement, Error> {
    if source.starts_with("catalog:") {
        CatalogSpec::parse(source)?.build()
    } else {
        let text = std::fs::read_to_string(source)
            .map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        arrangement::parse(&text)
    }
}

/// Analyze one source end to end.
pub fn analyze_source(source: &str, opts: &AnalysisOptions) -> Result<Analysis, Error> {
    let arr = load_source(source)?;
    Analysis::run(&arr, source, opts)
}

/// One batch line: a path with its outcome.
pub struct BatchEntry {
    pub path: String,
    pub outcome: Result<Analysis, Error>,
}

/// Batch result: per-path entries in sorted order, the cross-realization
/// verdict over all certificate-bearing analyses, and the aggregate exit
/// code (the maximum severity encountered).
pub struct BatchOutcome {
    pub entries: Vec<BatchEntry>,
    pub conjecture12: Option<Verdict>,
    pub exit_code: i32,
}

pub fn batch_paths(paths: &[String], opts: &AnalysisOptions) -> BatchOutcome {
    let mut sorted: Vec<String> = paths.to_vec();
    sorted.sort();
    let entries: Vec<BatchEntry> = sorted
        .par_iter()
        .map(|p| BatchEntry {
            path: p.clone(),
            outcome: analyze_source(p, opts),
        })
        .collect();

    let realizations: Vec<RealizationData> = entries
        .iter()
        .filter_map(|e| e.outcome.as_ref().ok())
        .filter_map(|a| {
            let cert = a.lattice.as_ref()?.certificate.clone()?;
            Some(RealizationData {
                label: a.source.clone(),
                certificate: cert,
                nu: a.jacobian.nu,
                splitting_type: a.freeness.splitting_type,
            })
        })
        .collect();
    let conjecture12 = (!realizations.is_empty()).then(|| conjecture12_check(&realizations));

    let mut exit_code = 0;
    for e in &entries {
        let code = match &e.outcome {
            Ok(a) => a.exit_code(),
            Err(err) => err.exit_code(),
        };
        exit_code = exit_code.max(code);
    }
    if let Some(v) = &conjecture12 {
        if v.status == Status::Violation {
            exit_code = exit_code.max(1);
        }
    }
    BatchOutcome {
        entries,
        conjecture12,
        exit_code,
    }
}

/// Collect the `.json` files of a directory in sorted order.
pub fn directory_inputs(dir: &Path) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("cannot read directory {}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::Parse(format!("directory walk failed: {e}")))?;
        let path = entry.path();
        if path.extension().is_some_and(|x| x == "json") {
            out.push(path.to_string_lossy().into_owned());
        }
    }
    out.sort();
    Ok(out)
}

/// Aggregate JSON line for a batch.
pub fn batch_summary_json(outcome: &BatchOutcome) -> Value {
    let mut consistent = 0u64;
    let mut inconclusive = 0u64;
    let mut violation = 0u64;
    let mut errors = 0u64;
    for e in &outcome.entries {
        match &e.outcome {
            Err(_) => errors += 1,
            Ok(a) => {
                for v in a.verdicts() {
                    match v.status {
                        Status::Consistent => consistent += 1,
                        Status::Inconclusive => inconclusive += 1,
                        Status::Violation => violation += 1,
                    }
                }
            }
        }
    }
    let conj12 = match &outcome.conjecture12 {
        None => Value::Null,
        Some(v) => verdict_json(v),
    };
    json!({
        "aggregate": {
            "files": s(outcome.entries.len()),
            "consistent": s(consistent),
            "inconclusive": s(inconclusive),
            "violation": s(violation),
            "errors": s(errors),
            "conjecture12": conj12,
            "exit_code": s(outcome.exit_code),
        }
    })
}
