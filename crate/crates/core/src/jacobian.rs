//! The algebraic side of an arrangement: the Hilbert function of the Milnor
//! algebra M(f) = S/(f_x, f_y, f_z), the minimal degree of a relation among
//! the partials, the stability threshold and total Tjurina number, the
//! defect table of the saturation quotient, the freeness defect nu, and the
//! freeness classification with generic splitting type.
//!
//! Everything reduces to exact ranks of the multiplication maps
//! `S_m^3 -> S_{m+d-1}`, `(a,b,c) -> a f_x + b f_y + c f_z`, computed once
//! per degree and shared by all downstream quantities.

use rayon::prelude::*;

use crate::error::Error;
use crate::polyring::{dim_graded_piece, monomials_of_degree, GradedPoly};
use crate::scalars::ScalarMatrix;

/// Hilbert-function data of the Milnor algebra and the derived defect table.
#[derive(Clone, Debug)]
pub struct JacobianProfile {
    pub d: usize,
    /// Top degree of the defect table, `3d - 6`.
    pub t_max: usize,
    /// `dim M(f)_k` for `k = 0 .. 3d-5`.
    pub milnor_dims: Vec<usize>,
    /// `dim M(x^d + y^d + z^d)_k` for `k = 0 .. 3d-6`, from the closed-form
    /// series `((1 - t^(d-1)) / (1 - t))^3`.
    pub fermat_dims: Vec<usize>,
    /// Minimal degree of a relation among the partials that is not a
    /// consequence of the Koszul syzygies.
    pub r: usize,
    /// Defect table `n(f)_k` for `k = 0 .. 3d-6`.
    pub defect_table: Vec<i64>,
    /// Freeness defect: the middle (= maximal) entry of the defect table.
    pub nu: i64,
    /// Stability threshold: least q with `dim M(f)_k` constant from q on.
    pub st: usize,
    /// The stable value of `dim M(f)_k`, the global Tjurina number.
    pub tau_alg: u64,
    /// Castelnuovo-Mumford regularity of the Milnor algebra, derived as
    /// `st` when the curve is free and `st - 1` otherwise.
    pub reg: usize,
}

/// Freeness classification derived from (d, r, tau, nu).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessClassification {
    pub status: FreenessStatus,
    /// Exponents (d1, d2) with d1 + d2 = d - 1, present exactly for free
    /// curves.
    pub exponents: Option<(usize, usize)>,
    /// Generic splitting type (d1, d2) of the logarithmic bundle, the integer
    /// roots of `s (d-1-s) = (d-1)^2 - tau - nu`.
    pub splitting_type: (usize, usize),
    /// The defect recomputed from (d, r, tau); must agree with the table.
    pub nu_from_invariants: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessStatus {
    Free,
    NearlyFree,
    Other,
}

impl FreenessStatus {
    pub fn label(&self) -> &'static str {
        match self {
            FreenessStatus::Free => "FREE",
            FreenessStatus::NearlyFree => "NEARLY_FREE",
            FreenessStatus::Other => "OTHER",
        }
    }
}

/// Ranks of the multiplication maps `S_m^3 -> S_{m+d-1}` for
/// `m = 0 .. m_max`, computed in parallel.
pub fn relation_matrix_ranks(f: &GradedPoly, m_max: usize) -> Result<Vec<usize>, Error> {
    let partials = f.partials();
    (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let matrix = relation_matrix(&partials, m);
            Ok(matrix.rank())
        })
        .collect()
}

/// Matrix of `(a, b, c) -> a f_x + b f_y + c f_z` on degree-m coefficients.
/// Rows are indexed by the graded-lex monomials of degree `m + d - 1`,
/// columns by (partial, degree-m monomial).
fn relation_matrix(partials: &[GradedPoly; 3], m: usize) -> ScalarMatrix {
    let ctx = partials[0].context().clone();
    let target_deg = partials[0].degree() + m;
    let target = monomials_of_degree(target_deg);
    let row_index: std::collections::BTreeMap<_, _> = target
        .iter()
        .enumerate()
        .map(|(i, mono)| (*mono, i))
        .collect();
    let source = monomials_of_degree(m);
    let mut matrix = ScalarMatrix::zero(&ctx, target.len(), 3 * source.len());
    for (g, partial) in partials.iter().enumerate() {
        for (s, mono) in source.iter().enumerate() {
            let col = g * source.len() + s;
            for (t, c) in partial.terms() {
                let row = row_index[&t.mul(mono)];
                matrix.set(row, col, c.clone());
            }
        }
    }
    matrix
}

/// `dim M(f)_k` for `k = 0 .. k_max` given the relation-map ranks.
pub fn hilbert_milnor_from_ranks(d: usize, ranks: &[usize], k_max: usize) -> Vec<usize> {
    (0..=k_max)
        .map(|k| {
            let full = dim_graded_piece(k as i64);
            if k + 1 < d {
                full
            } else {
                full - ranks[k + 1 - d]
            }
        })
        .collect()
}

/// Stability threshold and stable value. The scan range `0 .. 3d-5` is
/// protected by a guard: if the last two dimensions differ the input is not
/// reduced (or the bound is violated) and the error is loud.
pub fn stability(milnor_dims: &[usize], d: usize) -> Result<(usize, u64), Error> {
    let hi = 3 * d - 5;
    assert!(milnor_dims.len() > hi, "dims must be computed through 3d-5");
    if milnor_dims[hi] != milnor_dims[hi - 1] {
        return Err(Error::NotStabilized);
    }
    let tau = milnor_dims[hi];
    let mut st = hi;
    while st > 0 && milnor_dims[st - 1] == tau {
        st -= 1;
    }
    Ok((st, tau as u64))
}

/// Count of Koszul relations in coefficient degree m:
/// `3 dim S_{m-d+1} - dim S_{m-2d+2}` (zero for negative indices).
fn koszul_count(d: usize, m: i64) -> i64 {
    let a = 3 * dim_graded_piece(m - d as i64 + 1) as i64;
    let b = dim_graded_piece(m - 2 * d as i64 + 2) as i64;
    (a - b).max(0)
}

/// Minimal degree of a relation among the partials beyond the Koszul ones.
/// For every singular reduced curve such a relation exists in degree at most
/// `2d - 4`; the scan is capped there and a miss reported as internal.
pub fn mdr_from_ranks(d: usize, ranks: &[usize]) -> Result<usize, Error> {
    let cap = (2 * d).saturating_sub(4);
    for (m, rank) in ranks.iter().enumerate().take(cap + 1) {
        let kernel = 3 * dim_graded_piece(m as i64) as i64 - *rank as i64;
        if kernel > koszul_count(d, m as i64) {
            return Ok(m);
        }
    }
    Err(Error::Internal(
        "no essential relation up to degree 2d-4; the curve appears to be smooth".into(),
    ))
}

/// Hilbert function of the Milnor algebra of the Fermat curve of degree d:
/// coefficients of `(1 + t + ... + t^(d-2))^3`, truncated at `k_max`.
pub fn fermat_dims(d: usize, k_max: usize) -> Vec<usize> {
    let block = vec![1i64; d - 1]; // 1 + t + ... + t^(d-2)
    let mut acc = vec![1i64];
    for _ in 0..3 {
        let mut next = vec![0i64; acc.len() + block.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in block.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    (0..=k_max)
        .map(|k| acc.get(k).copied().unwrap_or(0) as usize)
        .collect()
}

/// Defect table `n(f)_k = dim M(f)_k + dim M(f)_{T-k} - dim M(f_F)_k - tau`
/// for `k = 0 .. T`, `T = 3d-6`, together with the freeness defect
/// `nu = n(f)_{ceil(T/2)}`. Asserts nonnegativity, the unimodal chain, and
/// the palindrome property.
pub fn defect_table(
    milnor_dims: &[usize],
    d: usize,
    tau: u64,
) -> Result<(Vec<i64>, i64), Error> {
    let t_max = 3 * d - 6;
    let fermat = fermat_dims(d, t_max);
    let mut table = Vec::with_capacity(t_max + 1);
    for k in 0..=t_max {
        let n = milnor_dims[k] as i64 + milnor_dims[t_max - k] as i64
            - fermat[k] as i64
            - tau as i64;
        if n < 0 {
            return Err(Error::Internal(format!(
                "negative defect n({k}) = {n}"
            )));
        }
        table.push(n);
    }
    let mid = t_max.div_ceil(2);
    for k in 1..=mid {
        if table[k] < table[k - 1] {
            return Err(Error::Internal(format!(
                "defect table not nondecreasing at {k}"
            )));
        }
    }
    for k in mid + 1..=t_max {
        if table[k] > table[k - 1] {
            return Err(Error::Internal(format!(
                "defect table not nonincreasing at {k}"
            )));
        }
    }
    if d % 2 == 1 {
        for k in 0..=t_max {
            if table[k] != table[t_max - k] {
                return Err(Error::Internal(format!(
                    "odd-degree defect table not palindromic at {k}"
                )));
            }
        }
    }
    let nu = table[mid];
    Ok((table, nu))
}

/// Defect recomputed from (d, r, tau): the two closed-form branches, checked
/// for agreement on their overlap.
pub fn nu_from_invariants(d: usize, r: usize, tau: u64) -> Result<i64, Error> {
    let dm1 = (d as i64) - 1;
    let branch_low = |r: i64| dm1 * dm1 - r * (dm1 - r) - tau as i64;
    let branch_high = (3 * dm1 * dm1 + 3) / 4 - tau as i64;
    let low_applies = (r as i64) * 2 < d as i64;
    let high_applies = (r as i64) * 2 >= d as i64 - 2;
    match (low_applies, high_applies) {
        (true, false) => Ok(branch_low(r as i64)),
        (false, true) => Ok(branch_high),
        (true, true) => {
            let lo = branch_low(r as i64);
            if lo != branch_high {
                return Err(Error::Internal(format!(
                    "defect branches disagree on overlap: {lo} vs {branch_high}"
                )));
            }
            Ok(lo)
        }
        (false, false) => unreachable!("branch conditions cover all r"),
    }
}

/// Classify freeness from (d, r, tau, nu) and compute the generic splitting
/// type from `s (d-1-s) = (d-1)^2 - tau - nu`.
pub fn classify(d: usize, r: usize, tau: u64, nu: i64) -> Result<FreenessClassification, Error> {
    assert!(r >= 1, "classification requires an essential curve");
    let check = nu_from_invariants(d, r, tau)?;
    if check != nu {
        return Err(Error::Internal(format!(
            "defect from invariants ({check}) disagrees with the defect table ({nu})"
        )));
    }
    let status = match nu {
        0 => FreenessStatus::Free,
        1 => FreenessStatus::NearlyFree,
        _ => FreenessStatus::Other,
    };
    let exponents = if status == FreenessStatus::Free {
        let (d1, d2) = (r, d - 1 - r);
        if (d as i64 - 1) * (d as i64 - 1) - (d1 as i64) * (d2 as i64) != tau as i64 {
            return Err(Error::Internal(
                "free curve fails the exponent identity".into(),
            ));
        }
        Some((d1.min(d2), d1.max(d2)))
    } else {
        None
    };
    let splitting_type = splitting_roots(d, tau, nu)?;
    Ok(FreenessClassification {
        status,
        exponents,
        splitting_type,
        nu_from_invariants: check,
    })
}

fn splitting_roots(d: usize, tau: u64, nu: i64) -> Result<(usize, usize), Error> {
    let dm1 = d as i64 - 1;
    // s^2 - (d-1) s + ((d-1)^2 - tau - nu) = 0
    let product = dm1 * dm1 - tau as i64 - nu;
    let disc = dm1 * dm1 - 4 * product;
    if disc < 0 {
        return Err(Error::Internal("splitting discriminant negative".into()));
    }
    let guess = (disc as f64).sqrt() as i64;
    let sq = ((guess - 2).max(0)..=guess + 2)
        .find(|s| s * s == disc)
        .ok_or_else(|| Error::Internal("splitting discriminant is not a square".into()))?;
    if (dm1 - sq) % 2 != 0 || dm1 - sq < 0 {
        return Err(Error::Internal("splitting roots are not integers".into()));
    }
    let s1 = (dm1 - sq) / 2;
    let s2 = dm1 - s1;
    Ok((s1 as usize, s2 as usize))
}

/// Vanishing-range report for curves whose components are all rational:
/// `n(f)_k = 0` for `k <= d-3` and `k >= 2d-3`. The stability bound
/// `st <= 2d-4` is reported alongside (it holds for line arrangements) and
/// the nodal equality `st = 2d-4` is flagged.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub applicable: bool,
    pub ranges_hold: bool,
    pub st_bound_holds: bool,
    pub nodal_equality: bool,
}

pub fn vanishing_check(profile: &JacobianProfile, rational_components: bool) -> VanishingReport {
    let d = profile.d;
    let t_max = profile.t_max;
    let mut ranges_hold = true;
    for (k, n) in profile.defect_table.iter().enumerate() {
        let low = d >= 3 && k <= d - 3;
        let high = k + 3 >= 2 * d && k <= t_max;
        if (low || high) && *n != 0 {
            ranges_hold = false;
        }
    }
    let bound = 2 * d - 4;
    VanishingReport {
        applicable: rational_components,
        ranges_hold,
        st_bound_holds: profile.st <= bound,
        nodal_equality: profile.st == bound,
    }
}

/// Full algebraic profile of a squarefree form of degree `d >= 3`.
pub fn profile(f: &GradedPoly) -> Result<JacobianProfile, Error> {
    let d = f.degree();
    assert!(d >= 3, "profile requires degree at least 3");
    let m_max = 2 * d - 4;
    let ranks = relation_matrix_ranks(f, m_max)?;
    let k_max = 3 * d - 5;
    let milnor_dims = hilbert_milnor_from_ranks(d, &ranks, k_max);
    let (st, tau_alg) = stability(&milnor_dims, d)?;
    let r = mdr_from_ranks(d, &ranks)?;
    let t_max = 3 * d - 6;
    let (table, nu) = defect_table(&milnor_dims, d, tau_alg)?;
    let reg = if nu == 0 { st } else { st - 1 };
    Ok(JacobianProfile {
        d,
        t_max,
        milnor_dims,
        fermat_dims: fermat_dims(d, t_max),
        r,
        defect_table: table,
        nu,
        st,
        tau_alg,
        reg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{product_of_forms, LinearForm, Monomial};
    use crate::scalars::{cyclotomic_context, Scalar};
    use std::sync::Arc;

    fn q() -> Arc<crate::scalars::FieldContext> {
        cyclotomic_context(1)
    }

    fn form(ctx: &Arc<crate::scalars::FieldContext>, a: i64, b: i64, c: i64) -> LinearForm {
        LinearForm::new([
            Scalar::from_int(ctx, a),
            Scalar::from_int(ctx, b),
            Scalar::from_int(ctx, c),
        ])
        .unwrap()
    }

    fn triangle_poly() -> GradedPoly {
        let ctx = q();
        product_of_forms(&[form(&ctx, 1, 0, 0), form(&ctx, 0, 1, 0), form(&ctx, 0, 0, 1)])
    }

    fn moment_lines(params: &[i64]) -> GradedPoly {
        let ctx = q();
        let forms: Vec<LinearForm> = params
            .iter()
            .map(|&t| form(&ctx, 1, t, t * t))
            .collect();
        product_of_forms(&forms)
    }

    #[test]
    fn triangle_milnor_dims() {
        // the quotient by (yz, xz, xy) has monomial basis {x^k, y^k, z^k}
        let f = triangle_poly();
        let ranks = relation_matrix_ranks(&f, 2).unwrap();
        let dims = hilbert_milnor_from_ranks(3, &ranks, 4);
        assert_eq!(dims, vec![1, 3, 3, 3, 3]);
    }

    #[test]
    fn fermat_cubic_dims() {
        let ctx = q();
        let f = GradedPoly::from_terms(
            &ctx,
            3,
            [
                (Monomial::new(3, 0, 0), Scalar::one(&ctx)),
                (Monomial::new(0, 3, 0), Scalar::one(&ctx)),
                (Monomial::new(0, 0, 3), Scalar::one(&ctx)),
            ],
        )
        .unwrap();
        let ranks = relation_matrix_ranks(&f, 4).unwrap();
        let dims = hilbert_milnor_from_ranks(3, &ranks, 6);
        assert_eq!(dims, vec![1, 3, 3, 1, 0, 0, 0]);
        assert_eq!(fermat_dims(3, 3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn triangle_stability_and_defect() {
        let f = triangle_poly();
        let p = profile(&f).unwrap();
        assert_eq!(p.tau_alg, 3);
        // dim M_k = 3 already from k = 1, so the threshold is 1
        assert_eq!(p.st, 1);
        assert_eq!(p.defect_table, vec![0, 0, 0, 0]);
        assert_eq!(p.nu, 0);
        assert_eq!(p.r, 1);
    }

    #[test]
    fn non_reduced_fails_to_stabilize() {
        // x^2 y: dims (1, 3, 4, 5, 6), last two differ
        let ctx = q();
        let f = GradedPoly::from_terms(
            &ctx,
            3,
            [(Monomial::new(2, 1, 0), Scalar::one(&ctx))],
        )
        .unwrap();
        let ranks = relation_matrix_ranks(&f, 2).unwrap();
        let dims = hilbert_milnor_from_ranks(3, &ranks, 4);
        assert_eq!(dims, vec![1, 3, 4, 5, 6]);
        assert!(matches!(stability(&dims, 3), Err(Error::NotStabilized)));
    }

    #[test]
    fn pencil_has_relation_in_degree_zero() {
        let ctx = q();
        let f = product_of_forms(&[
            form(&ctx, 1, 0, 0),
            form(&ctx, 0, 1, 0),
            form(&ctx, 1, 1, 0),
        ]);
        let ranks = relation_matrix_ranks(&f, 2).unwrap();
        assert_eq!(mdr_from_ranks(3, &ranks).unwrap(), 0);
    }

    #[test]
    fn generic_quartic_profile() {
        let f = moment_lines(&[1, 2, 3, 4]);
        let p = profile(&f).unwrap();
        assert_eq!(p.r, 2);
        assert_eq!(p.tau_alg, 6);
        assert_eq!(p.st, 4);
        assert_eq!(p.milnor_dims, vec![1, 3, 6, 7, 6, 6, 6, 6]);
        assert_eq!(p.nu, 1);
        assert_eq!(p.defect_table, vec![0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn generic_quintic_mdr() {
        // dims frozen from hand evaluation: full pieces up to degree 3,
        // then 15-3, 21-9, 28-18, and the stable Tjurina value 10
        let f = moment_lines(&[1, 2, 3, 4, 5]);
        let p = profile(&f).unwrap();
        assert_eq!(p.r, 3);
        assert_eq!(p.tau_alg, 10);
        assert_eq!(p.st, 6);
        assert_eq!(p.milnor_dims, vec![1, 3, 6, 10, 12, 12, 10, 10, 10, 10, 10]);
        assert_eq!(p.fermat_dims, vec![1, 3, 6, 10, 12, 12, 10, 6, 3, 1]);
        assert_eq!(p.defect_table, vec![0, 0, 0, 0, 2, 2, 0, 0, 0, 0]);
        assert_eq!(p.nu, 2);
    }

    #[test]
    fn near_pencil_quintic_is_free() {
        // four concurrent lines plus a transversal: defect table identically
        // zero, exponents (1, 3)
        let ctx = q();
        let mut forms: Vec<LinearForm> = (1..=4).map(|i| form(&ctx, 0, 1, -i)).collect();
        forms.push(form(&ctx, 1, 1, 1));
        let p = profile(&product_of_forms(&forms)).unwrap();
        assert_eq!(p.r, 1);
        assert_eq!(p.defect_table, vec![0; 10]);
        assert_eq!(p.nu, 0);
        let c = classify(5, p.r, p.tau_alg, p.nu).unwrap();
        assert_eq!(c.exponents, Some((1, 3)));
    }

    #[test]
    fn nearly_free_sextic_splitting() {
        // one fourfold point on six lines: tau 18, defect 1, splitting (2,3)
        let ctx = q();
        let mut forms: Vec<LinearForm> = (1..=4).map(|i| form(&ctx, 0, 1, -i)).collect();
        forms.push(form(&ctx, 1, 1, 1));
        forms.push(form(&ctx, 1, 2, 4));
        let f = product_of_forms(&forms);
        let p = profile(&f).unwrap();
        assert_eq!(p.tau_alg, 18);
        assert_eq!(p.r, 2);
        assert_eq!(p.nu, 1);
        let c = classify(6, p.r, p.tau_alg, p.nu).unwrap();
        assert_eq!(c.status, FreenessStatus::NearlyFree);
        assert_eq!(c.splitting_type, (2, 3));
    }

    #[test]
    fn classify_named_cases() {
        let free = classify(8, 3, 37, 0).unwrap();
        assert_eq!(free.status, FreenessStatus::Free);
        assert_eq!(free.exponents, Some((3, 4)));
        assert_eq!(free.splitting_type, (3, 4));

        let nearly = classify(7, 2, 27, 1).unwrap();
        assert_eq!(nearly.status, FreenessStatus::NearlyFree);
        assert_eq!(nearly.exponents, None);
        assert_eq!(nearly.splitting_type, (2, 4));

        let nearly_small = classify(4, 2, 6, 1).unwrap();
        assert_eq!(nearly_small.status, FreenessStatus::NearlyFree);
        assert_eq!(nearly_small.splitting_type, (1, 2));
    }

    #[test]
    fn classify_rejects_inconsistent_defect() {
        assert!(matches!(
            classify(4, 2, 6, 0),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn cuspidal_cubic_profile() {
        // x^3 - y^2 z: nearly free with tau = 2, defect table (0, 1, 1, 0)
        let ctx = q();
        let f = GradedPoly::from_terms(
            &ctx,
            3,
            [
                (Monomial::new(3, 0, 0), Scalar::one(&ctx)),
                (Monomial::new(0, 2, 1), Scalar::from_int(&ctx, -1)),
            ],
        )
        .unwrap();
        let p = profile(&f).unwrap();
        assert_eq!(p.tau_alg, 2);
        assert_eq!(p.r, 1);
        assert_eq!(p.milnor_dims, vec![1, 3, 3, 2, 2]);
        assert_eq!(p.defect_table, vec![0, 1, 1, 0]);
        assert_eq!(p.nu, 1);
        assert_eq!(p.st, 3);
        let v = vanishing_check(&p, true);
        assert!(v.ranges_hold);
        // the stability bound 2d-4 genuinely fails for this curve
        assert!(!v.st_bound_holds);
    }

    #[test]
    fn vanishing_ranges_for_quartic() {
        let f = moment_lines(&[1, 2, 3, 4]);
        let p = profile(&f).unwrap();
        let v = vanishing_check(&p, true);
        assert!(v.ranges_hold && v.st_bound_holds && v.nodal_equality);
    }
}
