//! Combinatorial spectrum of an essential line arrangement and the closed
//! combinatorial forms for the middle-degree upper bound `nu'` on the
//! freeness defect.
//!
//! The multiplicities depend only on d and the numbers `nu_j` of points of
//! each multiplicity. Double points provably contribute nothing to any of
//! the three sums, so they are carried along without harm. All binomials
//! are the generalized `C(n,2) = n(n-1)/2`, valid for every integer n; the
//! value at `n = -1` is what makes the top spectral number come out right.

use std::collections::BTreeMap;

use crate::arrangement::LatticeSummary;
use crate::error::Error;

/// `C(n, 2) = n (n - 1) / 2` for any integer, negatives included.
fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// Spectrum of an arrangement of d lines: multiplicities `m_alpha` for
/// `alpha = e/d, e = 1 .. 3d`, including zero entries so the table shape is
/// independent of the content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub d: usize,
    /// `entries[e - 1]` is the multiplicity of `alpha = e / d`.
    pub entries: Vec<i64>,
}

impl SpectrumTable {
    /// Multiplicity of `alpha = e/d` for `e` in `1 ..= 3d`.
    pub fn at(&self, e: usize) -> i64 {
        self.entries[e - 1]
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Entries keyed by the reduced fraction `e/d`, for reporting.
    pub fn labeled(&self) -> BTreeMap<(i64, i64), i64> {
        let d = self.d as i64;
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let e = i as i64 + 1;
                let g = num_integer::gcd(e, d);
                ((e / g, d / g), m)
            })
            .collect()
    }
}

/// Exactness status of a `nu'` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    LowerBound,
    UserSupplied,
}

impl Exactness {
    pub fn label(&self) -> &'static str {
        match self {
            Exactness::Exact => "EXACT",
            Exactness::LowerBound => "LOWER_BOUND",
            Exactness::UserSupplied => "USER_SUPPLIED",
        }
    }
}

/// The middle-degree combinatorial bound for the freeness defect.
#[derive(Clone, Debug)]
pub struct NuPrimeResult {
    pub value: i64,
    pub exactness: Exactness,
    pub h1_used: u64,
}

impl NuPrimeResult {
    /// The part of the value that bounds the defect from below regardless of
    /// any eigenspace assumption.
    pub fn unconditional_bound(&self) -> i64 {
        self.value - (self.h1_used / 2) as i64
    }
}

/// The three spectrum multiplicities `(m_alpha, m_{alpha+1}, m_{alpha+2})`
/// for `alpha = e/d`, `e` in `1 ..= d`.
pub fn multiplicity_triple(e: usize, s: &LatticeSummary) -> Result<(i64, i64, i64), Error> {
    let d = s.d as i64;
    if e < 1 || e as i64 > d {
        return Err(Error::Internal(format!("spectrum index e = {e} out of range")));
    }
    let e = e as i64;
    let mut m0 = binom2(e - 1);
    let mut m1 = (e - 1) * (d - e - 1);
    let mut m2 = binom2(d - e - 1) - if e == d { 1 } else { 0 };
    for (j, count) in &s.nu {
        let j = *j as i64;
        let c = *count as i64;
        let up = ceil_div(e * j, d);
        m0 -= c * binom2(up - 1);
        m1 -= c * (up - 1) * (j - up);
        m2 -= c * binom2(j - up);
    }
    Ok((m0, m1, m2))
}

/// Full spectrum table. Requires an essential arrangement; asserts the sum
/// identity `sum_alpha m_alpha = d chi(U) - 1` coming from the Euler
/// characteristic of the d-fold cyclic cover of the complement.
pub fn full_spectrum(s: &LatticeSummary) -> Result<SpectrumTable, Error> {
    if !s.essential {
        return Err(Error::NotEssential);
    }
    let d = s.d;
    let mut entries = vec![0i64; 3 * d];
    for e in 1..=d {
        let (m0, m1, m2) = multiplicity_triple(e, s)?;
        entries[e - 1] = m0;
        entries[e + d - 1] = m1;
        entries[e + 2 * d - 1] = m2;
    }
    let table = SpectrumTable { d, entries };
    let expected = d as i64 * s.chi_complement - 1;
    if table.total() != expected {
        return Err(Error::Internal(format!(
            "spectrum sum {} != d chi(U) - 1 = {expected}",
            table.total()
        )));
    }
    Ok(table)
}

/// The combinatorial bound `nu'` with its exactness status.
///
/// For odd d the closed form
/// `((d-1)(d-3) - tau + sum_{j even} nu_j) / 4`
/// is exact. For even d the bound is
/// `h1/2 + ((d-2)^2 - tau + sum_{j even} nu_j) / 4`
/// where h1 is the dimension of the (-1)-monodromy eigenspace on the first
/// Milnor fiber cohomology; that eigenspace vanishes whenever no point has
/// even multiplicity four or more, and in that case the default `h1 = 0` is
/// exact, otherwise it is a lower bound unless the caller supplies h1.
pub fn nu_prime(s: &LatticeSummary, h1_override: Option<u64>) -> Result<NuPrimeResult, Error> {
    if !s.essential {
        return Err(Error::NotEssential);
    }
    let d = s.d as i64;
    let tau = s.tau_comb as i64;
    let even_sum = s.nu_even_sum() as i64;
    let (numerator, exactness, h1_used) = if d % 2 == 1 {
        ((d - 1) * (d - 3) - tau + even_sum, Exactness::Exact, 0)
    } else {
        let base = (d - 2) * (d - 2) - tau + even_sum;
        match h1_override {
            Some(h1) => (base + 2 * h1 as i64, Exactness::UserSupplied, h1),
            None if s.no_even_multiplicity_above_two() => (base, Exactness::Exact, 0),
            None => (base, Exactness::LowerBound, 0),
        }
    };
    if numerator % 4 != 0 {
        return Err(Error::Internal(format!(
            "nu' numerator {numerator} is not divisible by 4"
        )));
    }
    let value = numerator / 4;
    if value < 0 {
        return Err(Error::Internal(format!("nu' = {value} is negative")));
    }
    Ok(NuPrimeResult {
        value,
        exactness,
        h1_used,
    })
}
