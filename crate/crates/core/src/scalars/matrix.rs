//! Dense matrices over a cyclotomic field and exact rank computation.
//!
//! Two interchangeable backends: fraction-free elimination over the field
//! (Bareiss pivoting after clearing row denominators), and a multi-modular
//! path that reduces modulo two deterministic primes `p = 1 mod n` and
//! requires agreement, escalating to the exact path on disagreement.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::One;

use super::context::FieldContext;
use super::element::Scalar;
use super::modular;
use super::{Int, Rational};
use crate::error::Error;

/// Dense rectangular matrix with all entries in one field context.
#[derive(Clone, Debug)]
pub struct ScalarMatrix {
    ctx: Arc<FieldContext>,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(ctx: &Arc<FieldContext>, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(ctx); rows * cols],
        }
    }

    /// Build from rows, checking that all entries share one context.
    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Internal("ragged matrix".into()));
            }
            for s in row {
                if s.context().order != ctx.order {
                    return Err(Error::MixedContexts);
                }
                data.push(s);
            }
        }
        Ok(ScalarMatrix {
            ctx: ctx.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.context().order, self.ctx.order);
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zero(&self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Exact rank. Runs the multi-modular strategy with exact fallback; the
    /// result equals the fraction-free elimination rank by construction.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.rank_modular() {
            Some(r) => r,
            None => self.rank_exact(),
        }
    }

    /// Rank by fraction-free exact elimination over the field.
    pub fn rank_exact(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Clear row denominators first so Bareiss stays over Z[zeta].
        let mut m: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let row: Vec<&Scalar> = (0..self.cols).map(|c| self.get(r, c)).collect();
                let mut lcm = Int::one();
                for s in &row {
                    for coeff in s.coeffs() {
                        lcm = lcm.lcm(coeff.denom());
                    }
                }
                let factor = Rational::from_integer(lcm);
                row.into_iter().map(|s| s.scale(&factor)).collect()
            })
            .collect();

        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0;
        let mut prev_pivot = Scalar::one(&self.ctx);
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            let pivot = m[rank][col].clone();
            let prev_inv = prev_pivot.inv().expect("previous pivot is nonzero");
            for r in rank + 1..rows {
                let lead = m[r][col].clone();
                #[allow(clippy::needless_range_loop)]
                for c in col..cols {
                    // Bareiss update: (pivot*a - lead*b) / previous pivot
                    let t = pivot.mul(&m[r][c]).sub(&lead.mul(&m[rank][c]));
                    m[r][c] = t.mul(&prev_inv);
                }
            }
            prev_pivot = pivot;
            rank += 1;
        }
        rank
    }

    /// Rank via reduction mod two deterministic primes; `None` when the
    /// primes disagree and the caller must escalate.
    fn rank_modular(&self) -> Option<usize> {
        let mut start = modular::LADDER_START;
        let mut ranks = Vec::with_capacity(2);
        while ranks.len() < 2 {
            let p = modular::next_prime_congruent(start, self.ctx.order);
            start = p + 1;
            if let Some(m) = self.reduce_mod(p) {
                ranks.push(modular::rank_mod_p(m, p));
            }
            // a prime dividing some denominator is skipped deterministically
        }
        if ranks[0] == ranks[1] {
            Some(ranks[0])
        } else {
            None
        }
    }

    fn reduce_mod(&self, p: u64) -> Option<Vec<Vec<u64>>> {
        let omega = modular::root_of_unity(p, self.ctx.order);
        let mut pows = vec![1u64; self.ctx.degree];
        for i in 1..self.ctx.degree {
            pows[i] = ((pows[i - 1] as u128 * omega as u128) % p as u128) as u64;
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                row.push(modular::scalar_mod(self.get(r, c), p, &pows)?);
            }
            out.push(row);
        }
        Some(out)
    }
}

/// Rank of a matrix given as rows of scalars; errors on mixed contexts.
pub fn rank_of_rows(rows: &[Vec<Scalar>]) -> Result<usize, Error> {
    let Some(first) = rows.first().and_then(|r| r.first()) else {
        return Ok(0);
    };
    let ctx = first.context().clone();
    ScalarMatrix::from_rows(&ctx, rows.to_vec()).map(|m| m.rank())
}
