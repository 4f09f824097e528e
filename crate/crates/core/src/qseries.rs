//! Truncated Laurent series in `q` with integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const DEFAULT_PRECISION: usize = 16;

/// `Σ_{i < precision} c_i q^{leading_exponent + i} + O(q^{leading_exponent + precision})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSeries {
    leading_exponent: i64,
    coefficients: Vec<BigInt>,
}

impl IntegerSeries {
    pub fn new(leading_exponent: i64, coefficients: Vec<BigInt>) -> Self {
        IntegerSeries {
            leading_exponent,
            coefficients,
        }
    }

    pub fn from_i64(leading_exponent: i64, coefficients: &[i64]) -> Self {
        Self::new(leading_exponent, coefficients.iter().map(|&c| c.into()).collect())
    }

    pub fn leading_exponent(&self) -> i64 {
        self.leading_exponent
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn precision(&self) -> usize {
        self.coefficients.len()
    }

    /// First exponent not determined by the series.
    pub fn order_bound(&self) -> i64 {
        self.leading_exponent + self.coefficients.len() as i64
    }

    /// Coefficient of `q^e`; `None` past the precision.
    pub fn coefficient(&self, e: i64) -> Option<BigInt> {
        if e < self.leading_exponent {
            return Some(BigInt::zero());
        }
        self.coefficients.get((e - self.leading_exponent) as usize).cloned()
    }

    pub fn truncated(&self, prec: usize) -> Result<Self> {
        if prec > self.precision() {
            return Err(Error::Precision {
                requested: prec,
                available: self.precision(),
            });
        }
        Ok(Self::new(self.leading_exponent, self.coefficients[..prec].to_vec()))
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let mut c = vec![BigInt::zero(); prec];
        for (i, a) in self.coefficients.iter().take(prec).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(prec - i).enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(self.leading_exponent + other.leading_exponent, c)
    }
}

impl fmt::Display for IntegerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.leading_exponent + i as i64;
            let mag = c.abs();
            let body = match e {
                0 => mag.to_string(),
                _ if mag.is_one() => format!("q^{e}"),
                _ => format!("{mag}q^{e}"),
            };
            match (out.is_empty(), c.is_negative()) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} + O(q^{})", self.order_bound())
    }
}

/// `Δ = q ∏_{n≥1} (1 − q^n)^24` to `prec` terms.
pub fn delta_series(prec: usize) -> Result<IntegerSeries> {
    if prec == 0 {
        return Err(Error::InvalidParameter("precision must be at least 1".into()));
    }
    // ∏ (1 − q^n)^24 up to q^{prec−1}
    let mut c = vec![BigInt::zero(); prec];
    c[0] = BigInt::one();
    for n in 1..prec {
        for _ in 0..24 {
            for k in (n..prec).rev() {
                let t = c[k - n].clone();
                c[k] -= t;
            }
        }
    }
    Ok(IntegerSeries::new(1, c))
}

/// `Σ_{v ∈ L} q^{|(v,v)|/2}` for an even definite lattice.
pub fn theta_series(l: &Lattice, prec: usize) -> Result<IntegerSeries> {
    theta_series_with(&Enumerator::new(), l, prec)
}

pub fn theta_series_with(en: &Enumerator, l: &Lattice, prec: usize) -> Result<IntegerSeries> {
    if prec == 0 {
        return Err(Error::InvalidParameter("precision must be at least 1".into()));
    }
    if l.rank() > 0 && l.definiteness()?.is_none() {
        return Err(Error::Indefinite);
    }
    if !l.is_even() {
        return Err(Error::InvalidInput("theta series needs an even lattice".into()));
    }
    let mut c = vec![BigInt::zero(); prec];
    c[0] = BigInt::one();
    if l.rank() > 0 {
        let counts = en.norm_counts(l, 2 * (prec as u64 - 1))?;
        for (norm, count) in counts {
            c[(norm / 2) as usize] = count.into();
        }
    }
    Ok(IntegerSeries::new(0, c))
}

/// Laurent quotient `a / b` to `prec` terms.
pub fn divide(a: &IntegerSeries, b: &IntegerSeries, prec: usize) -> Result<IntegerSeries> {
    let available = a.precision().min(b.precision());
    if prec > available {
        return Err(Error::Precision {
            requested: prec,
            available,
        });
    }
    let b0 = &b.coefficients[0];
    if !(b0.is_one() || (-b0).is_one()) {
        return Err(Error::NonUnitLeading(b0.to_string()));
    }
    let mut q: Vec<BigInt> = Vec::with_capacity(prec);
    for k in 0..prec {
        let mut acc = a.coefficients[k].clone();
        for (j, qj) in q.iter().enumerate() {
            acc -= qj * &b.coefficients[k - j];
        }
        let (quot, rem) = acc.div_rem(b0);
        debug_assert!(rem.is_zero());
        q.push(quot);
    }
    Ok(IntegerSeries::new(a.leading_exponent - b.leading_exponent, q))
}

/// `Θ_L / Δ` for a definite even lattice.
pub fn theta_over_delta(en: &Enumerator, l: &Lattice, prec: usize) -> Result<IntegerSeries> {
    let th = theta_series_with(en, l, prec)?;
    divide(&th, &delta_series(prec)?, prec)
}
