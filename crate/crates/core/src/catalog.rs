//! Deterministic constructors for the named arrangement families, each
//! verified against its expected lattice on construction.
//!
//! Parameters are small integers rather than random values; a verification
//! pass asserts the intended lattice and the pencil-plus-transversals
//! builder retries with shifted parameters on an accidental coincidence, so
//! genericity is guaranteed by checking, not by probability.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arrangement::{lattice, summary, Arrangement, Assumptions, LatticeSummary};
use crate::error::Error;
use crate::polyring::{product_of_forms, LinearForm};
use crate::scalars::{cyclotomic_context, FieldContext, Scalar};

/// A catalog request: family plus parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSpec {
    /// Only double points; `d >= 3`.
    Generic { d: usize },
    /// One point of multiplicity m, everything else double;
    /// `d >= 4, 3 <= m <= d - 1`.
    PencilPlus { d: usize, m: usize },
    /// Two high points joined by a shared line; `3 <= m1 <= m2`.
    LHat { m1: usize, m2: usize },
    /// The 3m lines `x - w^k y, x - w^k z, y - w^k z` over `Q(zeta_m)`;
    /// `m >= 2`.
    Monomial { m: usize },
    /// All d lines through one point (not essential; error-path fixture).
    Pencil { d: usize },
}

impl CatalogSpec {
    /// Parse a `catalog:family:params` source string, e.g. `catalog:L:7:5`.
    pub fn parse(text: &str) -> Result<CatalogSpec, Error> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::Parse(format!("bad catalog spec {text:?}"));
        if parts.first() != Some(&"catalog") {
            return Err(bad());
        }
        let num = |i: usize| -> Result<usize, Error> {
            parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(bad)
        };
        let spec = match parts.get(1).map(|s| s.to_ascii_lowercase()).as_deref() {
            Some("generic") if parts.len() == 3 => CatalogSpec::Generic { d: num(2)? },
            Some("l") if parts.len() == 4 => CatalogSpec::PencilPlus {
                d: num(2)?,
                m: num(3)?,
            },
            Some("lhat") if parts.len() == 4 => CatalogSpec::LHat {
                m1: num(2)?,
                m2: num(3)?,
            },
            Some("monomial") if parts.len() == 3 => CatalogSpec::Monomial { m: num(2)? },
            Some("pencil") if parts.len() == 3 => CatalogSpec::Pencil { d: num(2)? },
            _ => return Err(bad()),
        };
        Ok(spec)
    }

    pub fn label(&self) -> String {
        match self {
            CatalogSpec::Generic { d } => format!("catalog:generic:{d}"),
            CatalogSpec::PencilPlus { d, m } => format!("catalog:L:{d}:{m}"),
            CatalogSpec::LHat { m1, m2 } => format!("catalog:lhat:{m1}:{m2}"),
            CatalogSpec::Monomial { m } => format!("catalog:monomial:{m}"),
            CatalogSpec::Pencil { d } => format!("catalog:pencil:{d}"),
        }
    }

    /// Build the arrangement; the computed lattice is checked against the
    /// family's expected multiplicity counts.
    pub fn build(&self) -> Result<Arrangement, Error> {
        match *self {
            CatalogSpec::Generic { d } => generic(d),
            CatalogSpec::PencilPlus { d, m } => pencil_plus(d, m),
            CatalogSpec::LHat { m1, m2 } => lhat(m1, m2),
            CatalogSpec::Monomial { m } => monomial(m),
            CatalogSpec::Pencil { d } => pencil(d),
        }
    }

    /// Expected multiplicity counts for the family.
    pub fn expected_nu(&self) -> BTreeMap<usize, u64> {
        let mut nu: BTreeMap<usize, u64> = BTreeMap::new();
        let mut bump = |j: usize, c: u64| {
            if c > 0 {
                *nu.entry(j).or_insert(0) += c;
            }
        };
        match *self {
            CatalogSpec::Generic { d } => bump(2, (d * (d - 1) / 2) as u64),
            CatalogSpec::PencilPlus { d, m } => {
                bump(m, 1);
                bump(2, ((d * (d - 1) - m * (m - 1)) / 2) as u64);
            }
            CatalogSpec::LHat { m1, m2 } => {
                bump(m1, 1);
                bump(m2, 1);
                bump(2, ((m1 - 1) * (m2 - 1)) as u64);
            }
            CatalogSpec::Monomial { m } => {
                bump(3, (m * m) as u64);
                bump(m, 3);
            }
            CatalogSpec::Pencil { d } => bump(d, 1),
        }
        nu
    }
}

fn qctx() -> Arc<FieldContext> {
    cyclotomic_context(1)
}

fn form_i64(ctx: &Arc<FieldContext>, a: i64, b: i64, c: i64) -> LinearForm {
    LinearForm::new([
        Scalar::from_int(ctx, a),
        Scalar::from_int(ctx, b),
        Scalar::from_int(ctx, c),
    ])
    .expect("catalog forms are nonzero")
}

fn assemble(
    ctx: Arc<FieldContext>,
    lines: Vec<LinearForm>,
    expected_nu: &BTreeMap<usize, u64>,
    label: &str,
) -> Result<Arrangement, Error> {
    let poly = product_of_forms(&lines);
    let arr = Arrangement {
        context: ctx,
        lines,
        poly,
        declared_lattice: None,
        assume: Assumptions {
            h1_minus: None,
            rational_components: true,
        },
    };
    let s = verify(&arr)?;
    if &s.nu != expected_nu {
        return Err(Error::Construction(format!(
            "{label}: lattice {:?} does not match expected {:?}",
            s.nu, expected_nu
        )));
    }
    Ok(arr)
}

fn verify(arr: &Arrangement) -> Result<LatticeSummary, Error> {
    let pts = lattice(arr)?;
    summary(&pts, arr.lines.len())
}

/// Lines tangent to the moment curve: `x + t y + t^2 z` for `t = 1..d`.
/// No three are concurrent, so every intersection point is double.
pub fn generic(d: usize) -> Result<Arrangement, Error> {
    generic_with_params(&(1..=d as i64).collect::<Vec<_>>())
}

/// Generic arrangement with explicit parameters (distinct values give
/// pairwise transversal lines).
pub fn generic_with_params(params: &[i64]) -> Result<Arrangement, Error> {
    let d = params.len();
    if d < 3 {
        return Err(Error::Construction("generic family needs d >= 3".into()));
    }
    let ctx = qctx();
    let lines: Vec<LinearForm> = params
        .iter()
        .map(|&t| form_i64(&ctx, 1, t, t * t))
        .collect();
    let spec = CatalogSpec::Generic { d };
    assemble(ctx, lines, &spec.expected_nu(), &spec.label())
}

/// One m-fold point plus transversal lines: m pencil lines `y - i z`
/// through (1:0:0) and d-m moment-curve lines. Retries with shifted
/// parameters if a coincidence spoils the lattice.
pub fn pencil_plus(d: usize, m: usize) -> Result<Arrangement, Error> {
    if d < 4 || m < 3 || m > d - 1 {
        return Err(Error::Construction(format!(
            "family L(d,m) needs d >= 4 and 3 <= m <= d-1, got ({d},{m})"
        )));
    }
    let ctx = qctx();
    let spec = CatalogSpec::PencilPlus { d, m };
    let expected = spec.expected_nu();
    let mut shift = 0i64;
    for _ in 0..5 {
        let mut lines: Vec<LinearForm> = (1..=m as i64)
            .map(|i| form_i64(&ctx, 0, 1, -i))
            .collect();
        lines.extend((1..=(d - m) as i64).map(|t| {
            let t = t + shift;
            form_i64(&ctx, 1, t, t * t)
        }));
        match assemble(ctx.clone(), lines, &expected, &spec.label()) {
            Ok(arr) => return Ok(arr),
            Err(_) => shift += d as i64,
        }
    }
    Err(Error::Construction(format!(
        "could not realize L({d},{m}) after parameter shifts"
    )))
}

/// Two high points `p1 = (1:0:0)` and `p2 = (0:1:0)` joined by the line
/// `z = 0`, with `m1 - 1` lines `y = i z` through p1 and `m2 - 1` lines
/// `x = j z` through p2.
pub fn lhat(m1: usize, m2: usize) -> Result<Arrangement, Error> {
    if m1 < 3 || m2 < m1 {
        return Err(Error::Construction(format!(
            "family LHat needs 3 <= m1 <= m2, got ({m1},{m2})"
        )));
    }
    let ctx = qctx();
    let mut lines = vec![form_i64(&ctx, 0, 0, 1)];
    lines.extend((1..m1 as i64).map(|i| form_i64(&ctx, 0, 1, -i)));
    lines.extend((1..m2 as i64).map(|j| form_i64(&ctx, 1, 0, -j)));
    let spec = CatalogSpec::LHat { m1, m2 };
    assemble(ctx, lines, &spec.expected_nu(), &spec.label())
}

/// The monomial arrangement of 3m lines over `Q(zeta_m)`: the factors of
/// `(x^m - y^m)(x^m - z^m)(y^m - z^m)`.
pub fn monomial(m: usize) -> Result<Arrangement, Error> {
    if m < 2 {
        return Err(Error::Construction("monomial family needs m >= 2".into()));
    }
    let ctx = cyclotomic_context(m as u64);
    let zeta = Scalar::zeta(&ctx);
    let zero = Scalar::zero(&ctx);
    let one = Scalar::one(&ctx);
    let mut lines = Vec::with_capacity(3 * m);
    for k in 0..m as u64 {
        let w = zeta.pow(k).neg();
        lines.push(LinearForm::new([one.clone(), w.clone(), zero.clone()]).unwrap());
        lines.push(LinearForm::new([one.clone(), zero.clone(), w.clone()]).unwrap());
        lines.push(LinearForm::new([zero.clone(), one.clone(), w]).unwrap());
    }
    let spec = CatalogSpec::Monomial { m };
    assemble(ctx, lines, &spec.expected_nu(), &spec.label())
}

/// All d lines through (1:0:0); not essential, kept for error-path tests.
pub fn pencil(d: usize) -> Result<Arrangement, Error> {
    if d < 2 {
        return Err(Error::Construction("pencil needs d >= 2".into()));
    }
    let ctx = qctx();
    let lines: Vec<LinearForm> = (1..=d as i64).map(|i| form_i64(&ctx, 0, 1, -i)).collect();
    let spec = CatalogSpec::Pencil { d };
    assemble(ctx, lines, &spec.expected_nu(), &spec.label())
}
