//! Graded polynomials in three variables over a field context: products of
//! linear forms, partial derivatives, and graded-piece dimensions.
//!
//! Monomials of a fixed degree carry the graded-lexicographic total order
//! (x > y > z) and index matrix rows and columns everywhere, so matrices and
//! reports are reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::scalars::{FieldContext, Scalar};

/// A monomial `x^a y^b z^c`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Monomial {
    // tuple ordering gives graded-lex once prefixed by the degree
    deg: u16,
    exps: [u16; 3],
}

impl Monomial {
    pub fn new(a: u16, b: u16, c: u16) -> Self {
        Monomial {
            deg: a + b + c,
            exps: [a, b, c],
        }
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    pub fn exps(&self) -> [u16; 3] {
        self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps[0] + other.exps[0],
            self.exps[1] + other.exps[1],
            self.exps[2] + other.exps[2],
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let mut any = false;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                any = true;
                write!(f, "{}", names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// `dim S_k = C(k+2, 2)` for `k >= 0`, zero for negative `k`.
pub fn dim_graded_piece(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        ((k + 2) * (k + 1) / 2) as usize
    }
}

/// All monomials of degree `k` in graded-lex order.
pub fn monomials_of_degree(k: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_graded_piece(k as i64));
    for a in 0..=k {
        for b in 0..=k - a {
            out.push(Monomial::new(a as u16, b as u16, (k - a - b) as u16));
        }
    }
    out.sort();
    out
}

/// A homogeneous polynomial; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct GradedPoly {
    ctx: Arc<FieldContext>,
    degree: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl GradedPoly {
    pub fn zero(ctx: &Arc<FieldContext>, degree: usize) -> Self {
        GradedPoly {
            ctx: ctx.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Build from terms; rejects mixed degrees.
    pub fn from_terms(
        ctx: &Arc<FieldContext>,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, Error> {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::Parse(format!(
                    "monomial {m} has degree {} in a polynomial of degree {degree}",
                    m.degree()
                )));
            }
            let entry = match map.remove(&m) {
                Some(prev) => prev.add(&c),
                None => c,
            };
            if !entry.is_zero() {
                map.insert(m, entry);
            }
        }
        Ok(GradedPoly {
            ctx: ctx.clone(),
            degree,
            terms: map,
        })
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        let entry = match self.terms.remove(&m) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !entry.is_zero() {
            self.terms.insert(m, entry);
        }
    }

    /// Multiply by a linear form.
    pub fn mul_linear(&self, form: &LinearForm) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx, self.degree + 1);
        let shifts = [
            Monomial::new(1, 0, 0),
            Monomial::new(0, 1, 0),
            Monomial::new(0, 0, 1),
        ];
        for (m, c) in &self.terms {
            for (i, shift) in shifts.iter().enumerate() {
                let fc = &form.coeffs[i];
                if !fc.is_zero() {
                    out.add_term(m.mul(shift), c.mul(fc));
                }
            }
        }
        out
    }

    /// Multiply by a single monomial (shifts every exponent).
    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx, self.degree + m.degree());
        for (t, c) in &self.terms {
            out.terms.insert(t.mul(m), c.clone());
        }
        out
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx, self.degree);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v.mul(c));
        }
        out
    }

    /// The three partial derivatives, each of degree `d - 1`.
    pub fn partials(&self) -> [GradedPoly; 3] {
        assert!(self.degree >= 1, "cannot differentiate a constant");
        let mut out = [
            GradedPoly::zero(&self.ctx, self.degree - 1),
            GradedPoly::zero(&self.ctx, self.degree - 1),
            GradedPoly::zero(&self.ctx, self.degree - 1),
        ];
        for (m, c) in &self.terms {
            let e = m.exps();
            for v in 0..3 {
                if e[v] > 0 {
                    let mut ne = e;
                    ne[v] -= 1;
                    let coeff = c.scale(&crate::scalars::Rational::from_integer(
                        crate::scalars::Int::from(e[v]),
                    ));
                    out[v].add_term(Monomial { deg: m.deg - 1, exps: ne }, coeff);
                }
            }
        }
        out
    }

    /// Coefficient vector with respect to the graded-lex monomial basis of
    /// its degree.
    pub fn dense_coeffs(&self) -> Vec<Scalar> {
        let basis = monomials_of_degree(self.degree);
        basis
            .iter()
            .map(|m| {
                self.terms
                    .get(m)
                    .cloned()
                    .unwrap_or_else(|| Scalar::zero(&self.ctx))
            })
            .collect()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

/// A linear form `a x + b y + c z`; not all coefficients zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub coeffs: [Scalar; 3],
}

impl LinearForm {
    pub fn new(coeffs: [Scalar; 3]) -> Result<Self, Error> {
        if coeffs.iter().all(Scalar::is_zero) {
            return Err(Error::Parse("linear form with all coefficients zero".into()));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.coeffs[0].context()
    }

    /// Two forms cut the same projective line iff coefficients are
    /// proportional, i.e. all 2x2 minors vanish.
    pub fn projectively_equal(&self, other: &LinearForm) -> bool {
        for i in 0..3 {
            for j in i + 1..3 {
                let minor = self.coeffs[i]
                    .mul(&other.coeffs[j])
                    .sub(&self.coeffs[j].mul(&other.coeffs[i]));
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Intersection point of two distinct lines (cross product of the
    /// coefficient vectors).
    pub fn cross(&self, other: &LinearForm) -> [Scalar; 3] {
        let a = &self.coeffs;
        let b = &other.coeffs;
        [
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ]
    }

    pub fn as_poly(&self) -> GradedPoly {
        let ctx = self.context().clone();
        GradedPoly::from_terms(
            &ctx,
            1,
            [
                (Monomial::new(1, 0, 0), self.coeffs[0].clone()),
                (Monomial::new(0, 1, 0), self.coeffs[1].clone()),
                (Monomial::new(0, 0, 1), self.coeffs[2].clone()),
            ],
        )
        .expect("linear form is homogeneous")
    }

    /// Evaluate at a projective point.
    pub fn eval(&self, p: &[Scalar; 3]) -> Scalar {
        self.coeffs[0]
            .mul(&p[0])
            .add(&self.coeffs[1].mul(&p[1]))
            .add(&self.coeffs[2].mul(&p[2]))
    }

    /// Image of the line under the linear substitution `x -> x M`: the
    /// coefficient row vector is multiplied by `M` on the right.
    pub fn substitute(&self, m: &[[i64; 3]; 3]) -> LinearForm {
        let ctx = self.context();
        let mut out = [
            Scalar::zero(ctx),
            Scalar::zero(ctx),
            Scalar::zero(ctx),
        ];
        for (j, o) in out.iter_mut().enumerate() {
            for (i, coeff) in self.coeffs.iter().enumerate() {
                *o = o.add(&coeff.scale(&crate::scalars::Rational::from_integer(
                    crate::scalars::Int::from(m[i][j]),
                )));
            }
        }
        LinearForm::new(out).expect("invertible substitution preserves nonzero forms")
    }
}

/// Product of linear forms; the degree equals the number of factors.
pub fn product_of_forms(forms: &[LinearForm]) -> GradedPoly {
    assert!(!forms.is_empty(), "empty product of forms");
    let ctx = forms[0].context().clone();
    let mut acc = GradedPoly::from_terms(
        &ctx,
        0,
        [(Monomial::new(0, 0, 0), Scalar::one(&ctx))],
    )
    .unwrap();
    for f in forms {
        acc = acc.mul_linear(f);
    }
    acc
}

/// Check the Euler identity `x f_x + y f_y + z f_z = d f` term by term.
pub fn euler_identity_holds(f: &GradedPoly) -> bool {
    let [fx, fy, fz] = f.partials();
    let vars = [
        Monomial::new(1, 0, 0),
        Monomial::new(0, 1, 0),
        Monomial::new(0, 0, 1),
    ];
    let lhs = fx
        .mul_monomial(&vars[0])
        .add(&fy.mul_monomial(&vars[1]))
        .add(&fz.mul_monomial(&vars[2]));
    let d = Scalar::from_int(f.context(), f.degree() as i64);
    lhs == f.scale(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::cyclotomic_context;

    fn q() -> Arc<FieldContext> {
        cyclotomic_context(1)
    }

    fn form(ctx: &Arc<FieldContext>, a: i64, b: i64, c: i64) -> LinearForm {
        LinearForm::new([
            Scalar::from_int(ctx, a),
            Scalar::from_int(ctx, b),
            Scalar::from_int(ctx, c),
        ])
        .unwrap()
    }

    #[test]
    fn graded_piece_dimensions() {
        assert_eq!(dim_graded_piece(0), 1);
        assert_eq!(dim_graded_piece(1), 3);
        assert_eq!(dim_graded_piece(5), 21);
        assert_eq!(dim_graded_piece(-1), 0);
        for k in 0..12 {
            assert_eq!(monomials_of_degree(k).len(), dim_graded_piece(k as i64));
        }
    }

    #[test]
    fn xyz_product_and_partials() {
        let ctx = q();
        let x = form(&ctx, 1, 0, 0);
        let y = form(&ctx, 0, 1, 0);
        let z = form(&ctx, 0, 0, 1);
        let f = product_of_forms(&[x, y, z]);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.terms().count(), 1);
        let [fx, fy, fz] = f.partials();
        assert_eq!(fx.coeff(&Monomial::new(0, 1, 1)).unwrap(), &Scalar::one(&ctx));
        assert_eq!(fy.coeff(&Monomial::new(1, 0, 1)).unwrap(), &Scalar::one(&ctx));
        assert_eq!(fz.coeff(&Monomial::new(1, 1, 0)).unwrap(), &Scalar::one(&ctx));
        assert!(euler_identity_holds(&f));
    }

    #[test]
    fn fermat_partials() {
        let ctx = q();
        let d = 5u16;
        let f = GradedPoly::from_terms(
            &ctx,
            d as usize,
            [
                (Monomial::new(d, 0, 0), Scalar::one(&ctx)),
                (Monomial::new(0, d, 0), Scalar::one(&ctx)),
                (Monomial::new(0, 0, d), Scalar::one(&ctx)),
            ],
        )
        .unwrap();
        let [fx, _, _] = f.partials();
        assert_eq!(
            fx.coeff(&Monomial::new(d - 1, 0, 0)).unwrap(),
            &Scalar::from_int(&ctx, d as i64)
        );
        assert!(euler_identity_holds(&f));
    }

    #[test]
    fn product_is_permutation_invariant() {
        let ctx = q();
        let forms = vec![
            form(&ctx, 1, 1, 0),
            form(&ctx, 0, 1, -1),
            form(&ctx, 2, 0, 3),
            form(&ctx, 1, -1, 1),
        ];
        let f1 = product_of_forms(&forms);
        let rev: Vec<LinearForm> = forms.iter().rev().cloned().collect();
        let f2 = product_of_forms(&rev);
        assert_eq!(f1, f2);
    }

    #[test]
    fn squared_factor_detected_projectively() {
        let ctx = q();
        let a = form(&ctx, 1, 0, 0);
        let b = form(&ctx, 2, 0, 0);
        assert!(a.projectively_equal(&b));
        let f = product_of_forms(&[a.clone(), b]);
        assert_eq!(f.degree(), 2);
        assert_eq!(
            f.coeff(&Monomial::new(2, 0, 0)).unwrap(),
            &Scalar::from_int(&ctx, 2)
        );
    }

    #[test]
    fn monomial_arrangement_expansion() {
        // (x^2-y^2)(x^2-z^2)(y^2-z^2) expanded two ways
        let ctx = q();
        let forms = [
            form(&ctx, 1, -1, 0),
            form(&ctx, 1, 1, 0),
            form(&ctx, 1, 0, -1),
            form(&ctx, 1, 0, 1),
            form(&ctx, 0, 1, -1),
            form(&ctx, 0, 1, 1),
        ];
        let f = product_of_forms(&forms);
        // independent route: multiply the three quadrics directly
        let quad = |s: [i64; 6]| {
            let ms = [
                Monomial::new(2, 0, 0),
                Monomial::new(0, 2, 0),
                Monomial::new(0, 0, 2),
                Monomial::new(1, 1, 0),
                Monomial::new(1, 0, 1),
                Monomial::new(0, 1, 1),
            ];
            GradedPoly::from_terms(
                &ctx,
                2,
                ms.iter()
                    .zip(s)
                    .map(|(m, c)| (*m, Scalar::from_int(&ctx, c))),
            )
            .unwrap()
        };
        let q1 = quad([1, -1, 0, 0, 0, 0]);
        let q2 = quad([1, 0, -1, 0, 0, 0]);
        let q3 = quad([0, 1, -1, 0, 0, 0]);
        let mut g = GradedPoly::zero(&ctx, 6);
        for (m1, c1) in q1.terms() {
            for (m2, c2) in q2.terms() {
                for (m3, c3) in q3.terms() {
                    let m = m1.mul(m2).mul(m3);
                    let c = c1.mul(c2).mul(c3);
                    g = g.add(&GradedPoly::from_terms(&ctx, 6, [(m, c)]).unwrap());
                }
            }
        }
        assert_eq!(f, g);
    }
}
