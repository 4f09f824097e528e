//! Exhaustive box scan used to cross-check the enumeration kernel.
//!
//! Shares nothing with the kernel: the box comes from the inverse Gram
//! matrix (`|v_i|² <= |n| · (G⁻¹)_ii` on the ellipsoid) and every point is
//! tested by evaluating the quadratic form directly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Definiteness, Lattice, RationalVector};
use crate::linalg;

pub const DEFAULT_BOX_CAP: u128 = 100_000_000;

pub fn brute_force_oracle(
    l: &Lattice,
    n: &BigRational,
    shift: Option<&RationalVector>,
    box_radius: Option<&[i64]>,
) -> Result<u64> {
    brute_force_oracle_capped(l, n, shift, box_radius, DEFAULT_BOX_CAP)
}

pub fn brute_force_oracle_capped(
    l: &Lattice,
    n: &BigRational,
    shift: Option<&RationalVector>,
    box_radius: Option<&[i64]>,
    cap: u128,
) -> Result<u64> {
    let rank = l.rank();
    let sign = match l.definiteness()? {
        Some(Definiteness::Positive) => 1,
        Some(Definiteness::Negative) => -1,
        None => return Err(Error::Indefinite),
    };
    let abs_n = n * BigRational::from_integer(sign.into());
    if abs_n.is_negative() {
        return Err(Error::NormSign {
            norm: n.to_string(),
            definiteness: if sign > 0 { "positive" } else { "negative" },
        });
    }
    if abs_n.is_zero() {
        return Ok(0);
    }
    let sigma = match shift {
        Some(s) => {
            if !l.contains_dual(s)? {
                return Err(Error::ShiftNotInDual);
            }
            s.clone()
        }
        None => RationalVector::zero(rank),
    };

    let e = sigma.denominator();
    let e_i = i64::try_from(&e).map_err(|_| Error::Overflow("oracle shift"))?;
    let scaled_target = &abs_n * BigRational::from_integer(&e * &e);
    if !scaled_target.is_integer() {
        return Ok(0);
    }
    let target = i128::try_from(scaled_target.to_integer()).map_err(|_| Error::Overflow("oracle target"))?;

    let ranges: Vec<(i64, i64)> = match box_radius {
        Some(r) => {
            l.check_dim(r.len())?;
            r.iter()
                .zip(&sigma.0)
                .map(|(&r, s)| {
                    let lo = (BigRational::from_integer((-r).into()) - s).ceil().to_integer();
                    let hi = (BigRational::from_integer(r.into()) - s).floor().to_integer();
                    Ok((to_i64(lo)?, to_i64(hi)?))
                })
                .collect::<Result<_>>()?
        }
        None => {
            let inv = linalg::rational_inverse(&linalg::to_big(l.gram())).ok_or(Error::Degenerate)?;
            (0..rank)
                .map(|i| coordinate_range(&(&abs_n * inv[i][i].abs()), &sigma.0[i]))
                .collect::<Result<_>>()?
        }
    };
    let size = ranges
        .iter()
        .try_fold(1u128, |acc, &(lo, hi)| acc.checked_mul((hi - lo + 1).max(0) as u128))
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::BoxTooLarge(size));
    }
    if size == 0 {
        return Ok(0);
    }

    // y = e (x + σ) is integral; Q(y) = e² |n| is the hit condition.
    let a: Vec<Vec<i128>> = l
        .gram()
        .iter()
        .map(|r| r.iter().map(|&x| (sign * x) as i128).collect())
        .collect();
    let offsets: Vec<i128> = sigma
        .0
        .iter()
        .map(|c| {
            let y = (c * BigRational::from_integer(e.clone())).to_integer();
            i128::try_from(y).map_err(|_| Error::Overflow("oracle shift"))
        })
        .collect::<Result<_>>()?;
    let mut x: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    let y: Vec<i128> = x
        .iter()
        .zip(&offsets)
        .map(|(&xi, &o)| e_i as i128 * xi as i128 + o)
        .collect();
    let mut gy: Vec<i128> = a.iter().map(|r| r.iter().zip(&y).map(|(p, q)| p * q).sum()).collect();
    let mut q: i128 = y.iter().zip(&gy).map(|(p, q)| p * q).sum();

    let mut count = 0u64;
    loop {
        // target > 0, so the zero vector never matches
        if q == target {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == rank {
                return Ok(count);
            }
            let delta: i128 = if x[i] < ranges[i].1 {
                x[i] += 1;
                e_i as i128
            } else {
                let back = (ranges[i].0 - x[i]) as i128;
                x[i] = ranges[i].0;
                back * e_i as i128
            };
            q += 2 * delta * gy[i] + delta * delta * a[i][i];
            for (g, row) in gy.iter_mut().zip(&a) {
                *g += delta * row[i];
            }
            if delta > 0 {
                break;
            }
            i += 1;
        }
    }
}

fn to_i64(x: BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("oracle box"))
}

/// Integers `x` with `(x + s)² <= r2`.
fn coordinate_range(r2: &BigRational, s: &BigRational) -> Result<(i64, i64)> {
    let fits = |x: &BigInt| {
        let v = BigRational::from_integer(x.clone()) + s;
        &v * &v <= *r2
    };
    // integer part of sqrt(r2), then widen by one on each side and trim
    let mut k = BigInt::zero();
    while BigRational::from_integer(&k * &k) <= *r2 {
        k += 1;
    }
    let mut lo = (-BigRational::from_integer(k.clone()) - s).floor().to_integer();
    let mut hi = (BigRational::from_integer(k) - s).ceil().to_integer();
    while lo <= hi && !fits(&lo) {
        lo += 1;
    }
    while hi >= lo && !fits(&hi) {
        hi -= 1;
    }
    Ok((to_i64(lo)?, to_i64(hi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::NamedLattice;

    #[test]
    fn e8_roots_by_box_scan() {
        let e8 = NamedLattice::E8.build().unwrap();
        let n = BigRational::from_integer((-2).into());
        assert_eq!(brute_force_oracle(&e8, &n, None, None).unwrap(), 240);
    }

    #[test]
    fn rank_one() {
        let l = NamedLattice::Rank1(-8).build().unwrap();
        let n = BigRational::from_integer((-8).into());
        assert_eq!(brute_force_oracle(&l, &n, None, None).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let e8 = NamedLattice::E8.build().unwrap();
        let n = BigRational::from_integer((-2).into());
        assert!(matches!(
            brute_force_oracle_capped(&e8, &n, None, None, 10),
            Err(Error::BoxTooLarge(_))
        ));
    }
}
