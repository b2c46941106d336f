//! Field elements of `Q(zeta_n)` in the power basis, with exact arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::context::FieldContext;
use super::{Int, Rational};

/// An exact element of `Q(zeta_n)`: `phi(n)` rational coordinates in the
/// power basis of `zeta_n`. Immutable after construction.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Scalar {
            ctx: ctx.clone(),
            coeffs: vec![Rational::zero(); ctx.degree],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); ctx.degree];
        coeffs[0] = r;
        Scalar {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_int(ctx: &Arc<FieldContext>, v: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(Int::from(v)))
    }

    /// The generator `zeta_n`, reduced into the power basis (for `n <= 2`
    /// this is a rational number).
    pub fn zeta(ctx: &Arc<FieldContext>) -> Self {
        Self::from_power_coeffs(ctx, {
            let mut c = vec![Rational::zero(); 2];
            c[1] = Rational::one();
            c
        })
    }

    /// Build from arbitrary-length power-basis coefficients, reducing modulo
    /// the minimal polynomial.
    pub fn from_power_coeffs(ctx: &Arc<FieldContext>, mut coeffs: Vec<Rational>) -> Self {
        let deg = ctx.degree;
        while coeffs.len() > deg {
            let top = coeffs.pop().unwrap();
            if !top.is_zero() {
                let k = coeffs.len() - deg;
                for (i, c) in ctx.reduction_row(k).iter().enumerate() {
                    coeffs[i] += &top * Rational::from_integer(c.clone());
                }
            }
        }
        coeffs.resize(deg, Rational::zero());
        Scalar { ctx: ctx.clone(), coeffs }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Rational part if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn assert_same(&self, other: &Scalar) {
        assert_eq!(
            self.ctx.order, other.ctx.order,
            "scalar arithmetic across different field contexts"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Scalar { ctx: self.ctx.clone(), coeffs }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.assert_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Scalar { ctx: self.ctx.clone(), coeffs }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same(other);
        let deg = self.ctx.degree;
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Scalar::from_power_coeffs(&self.ctx, prod)
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[z]`
    /// against the (irreducible) minimal polynomial. `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<Rational> = self
            .ctx
            .minimal_polynomial
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: r_i = s_i * a (mod Phi)
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![Rational::zero()];
        let mut s1 = vec![Rational::one()];
        while poly_deg(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant c (Phi_n irreducible), with c = s1 * a mod Phi
        let c = r1[0].clone();
        assert!(!c.is_zero(), "minimal polynomial must be irreducible");
        let inv_coeffs: Vec<Rational> = s1.iter().map(|x| x / &c).collect();
        Some(Scalar::from_power_coeffs(&self.ctx, inv_coeffs))
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero scalar"))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn poly_deg(v: &[Rational]) -> usize {
    v.len().saturating_sub(1)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dd = poly_deg(&den);
    if poly_deg(&rem) < dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rational::zero()], rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); poly_deg(&rem) - dd + 1];
    while poly_deg(&rem) >= dd && !(rem.len() == 1 && rem[0].is_zero()) {
        let k = poly_deg(&rem) - dd;
        let c = rem.last().unwrap() / &lead;
        for (i, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[k + i] -= t;
        }
        rem = trim(rem);
        quot[k] = c;
        if rem.iter().all(Zero::is_zero) {
            rem = vec![Rational::zero()];
            break;
        }
    }
    (quot, trim(rem))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}
impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinate-wise order; used only for canonical dedup keys.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assert_same(other);
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Display for Scalar {
    /// Canonical literal form that round-trips through the literal parser,
    /// e.g. `-1/3`, `2 - z`, `1/2*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !coeff_is_one {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar(n={}, {})", self.ctx.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::context::cyclotomic_context;
    use super::*;

    #[test]
    fn zeta_powers_cycle() {
        for n in [1u64, 2, 3, 4, 5, 6, 8] {
            let ctx = cyclotomic_context(n);
            let z = Scalar::zeta(&ctx);
            assert!(z.pow(n).is_one(), "zeta_{n}^{n} = 1");
            // Phi_n(zeta_n) = 0
            let mut acc = Scalar::zero(&ctx);
            for (k, c) in ctx.minimal_polynomial.iter().enumerate() {
                let term = z
                    .pow(k as u64)
                    .scale(&Rational::from_integer(c.clone()));
                acc = acc.add(&term);
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) = 0");
        }
    }

    #[test]
    fn inverse_in_q_zeta3() {
        let ctx = cyclotomic_context(3);
        let z = Scalar::zeta(&ctx);
        let a = Scalar::from_int(&ctx, 2).add(&z); // 2 + zeta_3
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn gaussian_determinant_vanishes() {
        // det [[1, i], [-i, 1]] = 1*1 - i*(-i) = 1 + i^2 = 0 in Q(zeta_4)
        let ctx = cyclotomic_context(4);
        let i = Scalar::zeta(&ctx);
        let one = Scalar::one(&ctx);
        let det = one.mul(&one).sub(&i.mul(&i.neg()));
        assert!(det.is_zero());
    }

    #[test]
    fn display_round_trip_shape() {
        let ctx = cyclotomic_context(3);
        let z = Scalar::zeta(&ctx);
        let a = Scalar::from_rational(&ctx, Rational::new(Int::from(-1), Int::from(3)))
            .add(&z.scale(&Rational::new(Int::from(2), Int::from(5))));
        assert_eq!(a.to_string(), "-1/3 + 2/5*z");
    }
}
