//! Arrangements of plane curves: input parsing, the intersection lattice of
//! a line arrangement, combinatorial invariants, lattice type detection and
//! the Hirzebruch inequality check.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::Value;

use crate::error::Error;
use crate::polyring::{product_of_forms, GradedPoly, LinearForm, Monomial};
use crate::scalars::{cyclotomic_context, parse_scalar, FieldContext, Scalar};

/// Optional assumptions carried with an input.
#[derive(Clone, Debug, Default)]
pub struct Assumptions {
    /// User-supplied dimension of the (-1)-monodromy eigenspace on the first
    /// cohomology of the Milnor fiber, for the even-degree bound.
    pub h1_minus: Option<u64>,
    /// All irreducible components are rational curves (automatic for line
    /// arrangements).
    pub rational_components: bool,
}

/// A reduced plane curve: explicit lines when available, otherwise a bare
/// squarefree form, plus optional declared combinatorics.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub context: Arc<FieldContext>,
    pub lines: Vec<LinearForm>,
    pub poly: GradedPoly,
    pub declared_lattice: Option<BTreeMap<usize, u64>>,
    pub assume: Assumptions,
}

/// An intersection point of a line arrangement, in canonical projective
/// normalization (first nonzero coordinate scaled to one).
#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    pub point: [Scalar; 3],
    pub incident_lines: BTreeSet<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident_lines.len()
    }
}

/// Lattice type tags for the named families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeTag {
    Generic,
    /// Single point of multiplicity `m >= 3`, everything else double.
    L { d: usize, m: usize },
    /// Two points of multiplicities `m1 <= m2` joined by a line of the
    /// arrangement, all other lines through one of them.
    LHat { m1: usize, m2: usize },
    DoubleTripleOnly,
    Pencil,
    Other,
}

impl TypeTag {
    pub fn label(&self) -> String {
        match self {
            TypeTag::Generic => "GENERIC".into(),
            TypeTag::L { d, m } => format!("L({d},{m})"),
            TypeTag::LHat { m1, m2 } => format!("LHAT({m1},{m2})"),
            TypeTag::DoubleTripleOnly => "DOUBLE_TRIPLE_ONLY".into(),
            TypeTag::Pencil => "PENCIL".into(),
            TypeTag::Other => "OTHER".into(),
        }
    }
}

/// The combinatorial side of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSummary {
    pub d: usize,
    /// Number of points of each multiplicity `j >= 2`; zero entries omitted.
    pub nu: BTreeMap<usize, u64>,
    /// Combinatorial total Tjurina number: an ordinary point of multiplicity
    /// k contributes (k-1)^2.
    pub tau_comb: u64,
    pub m_max: usize,
    pub essential: bool,
    /// Euler characteristic of the curve, `2d - sum_p (m_p - 1)`.
    pub chi_curve: i64,
    /// Euler characteristic of the complement, `3 - chi_curve`.
    pub chi_complement: i64,
    pub type_tag: TypeTag,
}

impl LatticeSummary {
    pub fn nu_at(&self, j: usize) -> u64 {
        self.nu.get(&j).copied().unwrap_or(0)
    }

    /// Sum of `nu_j` over even `j`, double points included.
    pub fn nu_even_sum(&self) -> u64 {
        self.nu
            .iter()
            .filter(|(j, _)| *j % 2 == 0)
            .map(|(_, v)| v)
            .sum()
    }

    /// True when no intersection point has even multiplicity at least four;
    /// under this condition the (-1)-eigenspace of the first Milnor fiber
    /// cohomology vanishes and the even-degree bound is exact.
    pub fn no_even_multiplicity_above_two(&self) -> bool {
        self.nu
            .iter()
            .all(|(j, v)| *j % 2 == 1 || *j == 2 || *v == 0)
    }
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Intersection lattice of an arrangement with explicit lines: every pair of
/// lines lies in exactly one returned point, deduplicated by canonical
/// projective normalization.
pub fn lattice(arr: &Arrangement) -> Result<Vec<IntersectionPoint>, Error> {
    let d = arr.lines.len();
    if d < 2 {
        return Ok(Vec::new());
    }
    let mut points: BTreeMap<Vec<Scalar>, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            let raw = arr.lines[i].cross(&arr.lines[j]);
            let norm = normalize_point(&raw)?;
            let entry = points.entry(norm.to_vec()).or_default();
            entry.insert(i);
            entry.insert(j);
        }
    }
    let out: Vec<IntersectionPoint> = points
        .into_iter()
        .map(|(coords, incident_lines)| IntersectionPoint {
            point: [coords[0].clone(), coords[1].clone(), coords[2].clone()],
            incident_lines,
        })
        .collect();
    // every unordered pair of lines must be counted in exactly one point
    let pair_count: i64 = out.iter().map(|p| binom2(p.multiplicity() as i64)).sum();
    if pair_count != binom2(d as i64) {
        return Err(Error::Internal(format!(
            "lattice pairing identity failed: {pair_count} != C({d},2)"
        )));
    }
    Ok(out)
}

fn normalize_point(raw: &[Scalar; 3]) -> Result<[Scalar; 3], Error> {
    let lead = raw
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::Internal("intersection of equal lines".into()))?;
    let inv = lead.inv().expect("nonzero scalar has an inverse");
    Ok([raw[0].mul(&inv), raw[1].mul(&inv), raw[2].mul(&inv)])
}

/// Combinatorial summary of a lattice. Asserts the pairing identity
/// `sum_j nu_j C(j,2) = C(d,2)`.
pub fn summary(points: &[IntersectionPoint], d: usize) -> Result<LatticeSummary, Error> {
    let mut nu: BTreeMap<usize, u64> = BTreeMap::new();
    for p in points {
        *nu.entry(p.multiplicity()).or_insert(0) += 1;
    }
    summary_from_nu(&nu, d, Some(points))
}

/// Summary from a declared multiplicity vector (for inputs without explicit
/// lines). Type detection falls back to what the counts determine.
pub fn summary_from_declared(
    nu: &BTreeMap<usize, u64>,
    d: usize,
) -> Result<LatticeSummary, Error> {
    summary_from_nu(nu, d, None)
}

fn summary_from_nu(
    nu: &BTreeMap<usize, u64>,
    d: usize,
    points: Option<&[IntersectionPoint]>,
) -> Result<LatticeSummary, Error> {
    let pair_sum: i64 = nu
        .iter()
        .map(|(j, v)| *v as i64 * binom2(*j as i64))
        .sum();
    if pair_sum != binom2(d as i64) {
        let msg = format!(
            "sum_j nu_j C(j,2) = {pair_sum} != C({d},2) = {}",
            binom2(d as i64)
        );
        return match points {
            Some(_) => Err(Error::Internal(msg)),
            None => Err(Error::DeclaredMismatch(msg)),
        };
    }
    for j in nu.keys() {
        if *j < 2 || *j > d {
            return Err(Error::DeclaredMismatch(format!(
                "multiplicity {j} out of range for {d} lines"
            )));
        }
    }
    let tau_comb: u64 = nu
        .iter()
        .map(|(j, v)| v * ((*j as u64 - 1) * (*j as u64 - 1)))
        .sum();
    let m_max = nu
        .iter()
        .filter(|(_, v)| **v > 0)
        .map(|(j, _)| *j)
        .max()
        .unwrap_or(0);
    let branch_sum: i64 = nu.iter().map(|(j, v)| *v as i64 * (*j as i64 - 1)).sum();
    let chi_curve = 2 * d as i64 - branch_sum;
    let chi_complement = 3 - chi_curve;
    let essential = d >= 3 && m_max < d;
    let mut s = LatticeSummary {
        d,
        nu: nu.clone(),
        tau_comb,
        m_max,
        essential,
        chi_curve,
        chi_complement,
        type_tag: TypeTag::Other,
    };
    s.type_tag = match points {
        Some(pts) => detect_type(pts, &s),
        None => detect_type_from_counts(&s),
    };
    Ok(s)
}

/// Detect the lattice type from the actual incidence data.
pub fn detect_type(points: &[IntersectionPoint], s: &LatticeSummary) -> TypeTag {
    let d = s.d;
    if d >= 2 && s.m_max == d {
        return TypeTag::Pencil;
    }
    if s.m_max <= 2 {
        return TypeTag::Generic;
    }
    let high: Vec<&IntersectionPoint> = points.iter().filter(|p| p.multiplicity() >= 3).collect();
    if high.len() == 1 && d >= 4 {
        return TypeTag::L {
            d,
            m: high[0].multiplicity(),
        };
    }
    if high.len() == 2 {
        let (p1, p2) = (high[0], high[1]);
        let shared = p1
            .incident_lines
            .intersection(&p2.incident_lines)
            .count();
        let covered =
            (0..d).all(|l| p1.incident_lines.contains(&l) || p2.incident_lines.contains(&l));
        if shared == 1 && covered {
            let (m1, m2) = (p1.multiplicity(), p2.multiplicity());
            return TypeTag::LHat {
                m1: m1.min(m2),
                m2: m1.max(m2),
            };
        }
    }
    if s.m_max <= 3 {
        return TypeTag::DoubleTripleOnly;
    }
    TypeTag::Other
}

/// Type detection from multiplicity counts alone; the pairing identity pins
/// down the two-high-point geometry.
fn detect_type_from_counts(s: &LatticeSummary) -> TypeTag {
    let d = s.d;
    if d >= 2 && s.m_max == d {
        return TypeTag::Pencil;
    }
    if s.m_max <= 2 {
        return TypeTag::Generic;
    }
    let high: Vec<(usize, u64)> = s
        .nu
        .iter()
        .filter(|(j, v)| **j >= 3 && **v > 0)
        .map(|(j, v)| (*j, *v))
        .collect();
    let high_count: u64 = high.iter().map(|(_, v)| v).sum();
    if high_count == 1 && d >= 4 {
        return TypeTag::L { d, m: high[0].0 };
    }
    if high_count == 2 {
        let mut ms: Vec<usize> = Vec::new();
        for (j, v) in &high {
            for _ in 0..*v {
                ms.push(*j);
            }
        }
        let (m1, m2) = (ms[0].min(ms[1]), ms[0].max(ms[1]));
        if m1 + m2 == d + 1 && s.nu_at(2) == ((m1 - 1) * (m2 - 1)) as u64 {
            return TypeTag::LHat { m1, m2 };
        }
    }
    if s.m_max <= 3 {
        return TypeTag::DoubleTripleOnly;
    }
    TypeTag::Other
}

/// Result of the Hirzebruch inequality check
/// `nu_2 + (3/4) nu_3 >= d + sum_{k>=5} (k-4) nu_k`,
/// applicable when `nu_d = nu_{d-1} = 0`.
#[derive(Clone, Debug)]
pub struct HirzebruchCheck {
    pub applicable: bool,
    pub holds: bool,
    /// `nu_2 + (3/4) nu_3 - d - sum_{k>=5}(k-4) nu_k`, in quarters so the
    /// value stays integral.
    pub slack_quarters: i64,
}

pub fn hirzebruch_check(s: &LatticeSummary) -> HirzebruchCheck {
    let d = s.d;
    let applicable = d >= 3 && s.nu_at(d) == 0 && s.nu_at(d - 1) == 0;
    if !applicable {
        return HirzebruchCheck {
            applicable,
            holds: false,
            slack_quarters: 0,
        };
    }
    let mut quarters = 4 * s.nu_at(2) as i64 + 3 * s.nu_at(3) as i64 - 4 * d as i64;
    for (j, v) in &s.nu {
        if *j >= 5 {
            quarters -= 4 * (*j as i64 - 4) * *v as i64;
        }
    }
    HirzebruchCheck {
        applicable,
        holds: quarters >= 0,
        slack_quarters: quarters,
    }
}

// ---------------------------------------------------------------------------
// input format

/// Parse an input document (JSON). Exactly one of `lines` / `polynomial` is
/// required; see the crate README for the schema.
pub fn parse(document: &str) -> Result<Arrangement, Error> {
    let v: Value =
        serde_json::from_str(document).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "cyclotomic_order" | "lines" | "polynomial" | "lattice" | "assume"
        ) {
            return Err(Error::Parse(format!("unknown key {key:?}")));
        }
    }
    let n = match obj.get("cyclotomic_order") {
        None => 1,
        Some(Value::Number(n)) => n
            .as_u64()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse("cyclotomic_order must be a positive integer".into()))?,
        Some(_) => return Err(Error::Parse("cyclotomic_order must be a number".into())),
    };
    let ctx = cyclotomic_context(n);

    let lines_v = obj.get("lines");
    let poly_v = obj.get("polynomial");
    if lines_v.is_some() == poly_v.is_some() {
        return Err(Error::Parse(
            "exactly one of \"lines\" and \"polynomial\" is required".into(),
        ));
    }

    let (lines, poly) = if let Some(lv) = lines_v {
        let arr = lv
            .as_array()
            .ok_or_else(|| Error::Parse("lines must be an array".into()))?;
        if arr.is_empty() {
            return Err(Error::Parse("lines must be nonempty".into()));
        }
        let mut lines = Vec::with_capacity(arr.len());
        for (idx, lv) in arr.iter().enumerate() {
            let triple = lv
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::Parse(format!("line {idx} must be a triple")))?;
            let mut coeffs = Vec::with_capacity(3);
            for c in triple {
                let text = c.as_str().ok_or_else(|| {
                    Error::Parse(format!("line {idx}: coefficients are strings"))
                })?;
                coeffs.push(parse_scalar(&ctx, text)?);
            }
            lines.push(LinearForm::new([
                coeffs[0].clone(),
                coeffs[1].clone(),
                coeffs[2].clone(),
            ])?);
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i].projectively_equal(&lines[j]) {
                    return Err(Error::NonReduced(format!(
                        "lines {i} and {j} coincide projectively"
                    )));
                }
            }
        }
        let poly = product_of_forms(&lines);
        (lines, poly)
    } else {
        let pv = poly_v.unwrap();
        let pobj = pv
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial must be an object".into()))?;
        let degree = pobj
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("polynomial.degree must be an integer".into()))?
            as usize;
        let terms_v = pobj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial.terms must be an array".into()))?;
        let mut terms = Vec::with_capacity(terms_v.len());
        for t in terms_v {
            let tobj = t
                .as_object()
                .ok_or_else(|| Error::Parse("term must be an object".into()))?;
            let exps = tobj
                .get("m")
                .and_then(Value::as_array)
                .filter(|e| e.len() == 3)
                .ok_or_else(|| Error::Parse("term.m must be an exponent triple".into()))?;
            let mut e = [0u16; 3];
            for (i, x) in exps.iter().enumerate() {
                e[i] = x
                    .as_u64()
                    .and_then(|v| u16::try_from(v).ok())
                    .ok_or_else(|| Error::Parse("exponents must be small nonnegative".into()))?;
            }
            let c = tobj
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term.c must be a scalar literal string".into()))?;
            terms.push((Monomial::new(e[0], e[1], e[2]), parse_scalar(&ctx, c)?));
        }
        let poly = GradedPoly::from_terms(&ctx, degree, terms)?;
        if poly.is_zero() {
            return Err(Error::Parse("polynomial is zero".into()));
        }
        (Vec::new(), poly)
    };

    let declared_lattice = match obj.get("lattice") {
        None => None,
        Some(lv) => {
            let nu_v = lv
                .get("nu")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("lattice.nu must be an object".into()))?;
            let mut nu = BTreeMap::new();
            for (k, count) in nu_v {
                let j: usize = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity key {k:?}")))?;
                let c = count.as_u64().ok_or_else(|| {
                    Error::Parse("nu counts must be nonnegative integers".into())
                })?;
                if c > 0 {
                    nu.insert(j, c);
                }
            }
            Some(nu)
        }
    };

    let assume = match obj.get("assume") {
        None => Assumptions::default(),
        Some(av) => {
            let aobj = av
                .as_object()
                .ok_or_else(|| Error::Parse("assume must be an object".into()))?;
            Assumptions {
                h1_minus: match aobj.get("h1_minus") {
                    None => None,
                    Some(h) => Some(h.as_u64().ok_or_else(|| {
                        Error::Parse("assume.h1_minus must be a nonnegative integer".into())
                    })?),
                },
                rational_components: aobj
                    .get("rational_components")
                    .and_then(Value::as_bool)
                    .unwrap_or(false),
            }
        }
    };

    Ok(Arrangement {
        context: ctx,
        lines,
        poly,
        declared_lattice,
        assume,
    })
}

/// Render an arrangement with explicit lines back into the input format.
pub fn to_input_json(arr: &Arrangement) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert(
        "cyclotomic_order".into(),
        Value::Number(arr.context.order.into()),
    );
    let lines: Vec<Value> = arr
        .lines
        .iter()
        .map(|l| {
            Value::Array(
                l.coeffs
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect(),
            )
        })
        .collect();
    obj.insert("lines".into(), Value::Array(lines));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn lines_doc(n: u64, lines: &[[&str; 3]]) -> String {
        let body: Vec<String> = lines
            .iter()
            .map(|l| format!("[\"{}\",\"{}\",\"{}\"]", l[0], l[1], l[2]))
            .collect();
        format!("{{\"cyclotomic_order\":{n},\"lines\":[{}]}}", body.join(","))
    }

    fn triangle() -> Arrangement {
        parse(&lines_doc(
            1,
            &[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        ))
        .unwrap()
    }

    #[test]
    fn parse_triangle() {
        let arr = triangle();
        assert_eq!(arr.lines.len(), 3);
        assert_eq!(arr.poly.degree(), 3);
    }

    #[test]
    fn duplicate_lines_rejected() {
        let err = parse(&lines_doc(1, &[["1", "0", "0"], ["2", "0", "0"]])).unwrap_err();
        assert!(matches!(err, Error::NonReduced(_)));
    }

    #[test]
    fn malformed_scalar_rejected() {
        let err = parse(&lines_doc(1, &[["1", "0", "oops"]])).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn mixed_degree_polynomial_rejected() {
        let doc = r#"{"polynomial":{"degree":3,"terms":[{"m":[3,0,0],"c":"1"},{"m":[1,1,0],"c":"1"}]}}"#;
        assert!(matches!(parse(doc).unwrap_err(), Error::Parse(_)));
    }

    #[test]
    fn triangle_lattice_and_summary() {
        let arr = triangle();
        let pts = lattice(&arr).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.multiplicity() == 2));
        let s = summary(&pts, 3).unwrap();
        assert_eq!(s.nu_at(2), 3);
        assert_eq!(s.tau_comb, 3);
        assert_eq!(s.m_max, 2);
        assert_eq!(s.chi_complement, 0);
        assert!(s.essential);
        assert_eq!(s.type_tag, TypeTag::Generic);
    }

    #[test]
    fn near_pencil_lattice() {
        // four pencil lines y - i z plus one transversal line
        let arr = parse(&lines_doc(
            1,
            &[
                ["0", "1", "-1"],
                ["0", "1", "-2"],
                ["0", "1", "-3"],
                ["0", "1", "-4"],
                ["1", "1", "1"],
            ],
        ))
        .unwrap();
        let pts = lattice(&arr).unwrap();
        let s = summary(&pts, 5).unwrap();
        assert_eq!(s.nu_at(4), 1);
        assert_eq!(s.nu_at(2), 4);
        assert_eq!(s.type_tag, TypeTag::L { d: 5, m: 4 });
    }

    #[test]
    fn monomial_arrangement_over_zeta3() {
        // nine lines x - w^k y, x - w^k z, y - w^k z for w = zeta_3
        let mut ls: Vec<[String; 3]> = Vec::new();
        for k in 0..3 {
            let w = format!("-z^{k}");
            ls.push(["1".into(), w.clone(), "0".into()]);
            ls.push(["1".into(), "0".into(), w.clone()]);
            ls.push(["0".into(), "1".into(), w]);
        }
        let refs: Vec<[&str; 3]> = ls
            .iter()
            .map(|l| [l[0].as_str(), l[1].as_str(), l[2].as_str()])
            .collect();
        let arr = parse(&lines_doc(3, &refs)).unwrap();
        assert_eq!(arr.lines.len(), 9);
        let pts = lattice(&arr).unwrap();
        let s = summary(&pts, 9).unwrap();
        assert_eq!(s.nu_at(3), 12);
        assert_eq!(s.tau_comb, 48);
        assert_eq!(s.type_tag, TypeTag::DoubleTripleOnly);
    }

    #[test]
    fn pencil_is_not_essential() {
        let arr = parse(&lines_doc(
            1,
            &[["0", "1", "-1"], ["0", "1", "-2"], ["0", "1", "-3"]],
        ))
        .unwrap();
        let pts = lattice(&arr).unwrap();
        let s = summary(&pts, 3).unwrap();
        assert!(!s.essential);
        assert_eq!(s.type_tag, TypeTag::Pencil);
    }

    #[test]
    fn hirzebruch_cases() {
        // only nu_3 = 12 at d = 9: slack 9 - 9 = 0
        let mut nu = BTreeMap::new();
        nu.insert(3usize, 12u64);
        let s = summary_from_declared(&nu, 9).unwrap();
        let h = hirzebruch_check(&s);
        assert!(h.applicable && h.holds);
        assert_eq!(h.slack_quarters, 0);

        // generic(5): nu_2 = 10, slack 5
        let mut nu = BTreeMap::new();
        nu.insert(2usize, 10u64);
        let s = summary_from_declared(&nu, 5).unwrap();
        let h = hirzebruch_check(&s);
        assert!(h.applicable && h.holds);
        assert_eq!(h.slack_quarters, 20);

        // near-pencil: nu_{d-1} != 0, guard case
        let mut nu = BTreeMap::new();
        nu.insert(2usize, 4u64);
        nu.insert(4usize, 1u64);
        let s = summary_from_declared(&nu, 5).unwrap();
        assert!(!hirzebruch_check(&s).applicable);

        // an abstract lattice that fails the inequality (not realizable):
        // nine lines, one fourfold point and ten triples, no doubles
        let mut nu = BTreeMap::new();
        nu.insert(3usize, 10u64);
        nu.insert(4usize, 1u64);
        let s = summary_from_declared(&nu, 9).unwrap();
        let h = hirzebruch_check(&s);
        assert!(h.applicable && !h.holds);
        assert_eq!(h.slack_quarters, -6);
    }

    #[test]
    fn declared_lattice_must_satisfy_pairing() {
        let mut nu = BTreeMap::new();
        nu.insert(2usize, 5u64);
        assert!(matches!(
            summary_from_declared(&nu, 5),
            Err(Error::DeclaredMismatch(_))
        ));
    }

    #[test]
    fn chi_invariant_under_substitution() {
        let arr = triangle();
        let m = [[1, 2, 0], [0, 1, 1], [1, 0, 1]];
        let lines: Vec<LinearForm> = arr.lines.iter().map(|l| l.substitute(&m)).collect();
        let transformed = Arrangement {
            context: arr.context.clone(),
            lines,
            poly: arr.poly.clone(),
            declared_lattice: None,
            assume: Assumptions::default(),
        };
        let s1 = summary(&lattice(&arr).unwrap(), 3).unwrap();
        let s2 = summary(&lattice(&transformed).unwrap(), 3).unwrap();
        assert_eq!(s1.chi_complement, s2.chi_complement);
        assert_eq!(s1.nu, s2.nu);
    }

    #[test]
    fn parse_rejects_unknown_keys_and_double_sources() {
        assert!(parse(r#"{"cyclotomic_order":1,"lines":[["1","0","0"]],"bogus":1}"#).is_err());
        assert!(parse(
            r#"{"lines":[["1","0","0"]],"polynomial":{"degree":1,"terms":[{"m":[1,0,0],"c":"1"}]}}"#
        )
        .is_err());
    }

    #[test]
    fn normalization_leads_with_one() {
        let arr = triangle();
        let pts = lattice(&arr).unwrap();
        for p in pts {
            let lead = p.point.iter().find(|c| !c.is_zero()).unwrap();
            assert_eq!(lead, &Scalar::one(&arr.context));
        }
    }
}
