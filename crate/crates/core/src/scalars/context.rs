//! Cyclotomic field contexts: the minimal polynomial `Phi_n` and the
//! reduction table for the power basis of `zeta_n`.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::Int;

/// Field context for `Q(zeta_n)`; `n = 1` is `Q` itself.
///
/// `minimal_polynomial` holds the coefficients of the n-th cyclotomic
/// polynomial `Phi_n`, lowest degree first, monic of degree `phi(n)`.
#[derive(Debug)]
pub struct FieldContext {
    pub order: u64,
    pub degree: usize,
    pub minimal_polynomial: Vec<Int>,
    /// `reduction[k]` expresses `zeta^(degree + k)` in the power basis,
    /// for `k = 0 .. degree - 1`. Entries are integers since `Phi_n` is monic
    /// with integer coefficients.
    reduction: Vec<Vec<Int>>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}
impl Eq for FieldContext {}

impl FieldContext {
    /// Row expressing `zeta^(degree + k)` in the power basis.
    pub(crate) fn reduction_row(&self, k: usize) -> &[Int] {
        &self.reduction[k]
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Exact division of integer polynomials (lowest degree first); panics if the
/// division leaves a remainder, which cannot happen for cyclotomic factors.
fn exact_div(num: &[Int], den: &[Int]) -> Vec<Int> {
    assert!(!den.is_empty() && den.last().unwrap().is_one());
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![Int::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    quot
}

fn cyclotomic_poly(n: u64) -> Vec<Int> {
    if n == 1 {
        return vec![Int::from(-1), Int::from(1)];
    }
    // z^n - 1 divided by Phi_m for every proper divisor m of n.
    let mut poly = vec![Int::zero(); n as usize + 1];
    poly[0] = Int::from(-1);
    poly[n as usize] = Int::from(1);
    for m in divisors(n) {
        if m == n {
            continue;
        }
        poly = exact_div(&poly, &cyclotomic_poly(m));
    }
    poly
}

/// Build the field context for `Q(zeta_n)`.
pub fn cyclotomic_context(n: u64) -> Arc<FieldContext> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let phi = cyclotomic_poly(n);
    let degree = phi.len() - 1;
    // zeta^degree = -(phi[0] + phi[1] z + ... + phi[degree-1] z^(degree-1));
    // higher powers follow by shifting and reducing once more.
    let mut reduction: Vec<Vec<Int>> = Vec::with_capacity(degree.max(1));
    let base: Vec<Int> = phi[..degree].iter().map(|c| -c).collect();
    reduction.push(base);
    for k in 1..degree {
        let prev = reduction[k - 1].clone();
        let mut row = vec![Int::zero(); degree];
        // multiply prev by z: shift up, reduce the overflowing top term
        let top = prev[degree - 1].clone();
        for i in (1..degree).rev() {
            row[i] = prev[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, c) in reduction[0].iter().enumerate() {
                row[i] += &top * c;
            }
        }
        reduction.push(row);
    }
    Arc::new(FieldContext {
        order: n,
        degree,
        minimal_polynomial: phi,
        reduction,
    })
}
