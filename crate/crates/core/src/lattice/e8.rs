//! Coordinate chart for E8: vectors of Q^8 whose entries are all integers or
//! all half-integers with even coordinate sum, under the negated standard form.
//!
//! The abstract E8 basis is the simple-root basis numbered as a chain
//! δ1..δ7 with δ8 attached to δ5.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LatticeVector, RationalVector};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};

/// Twice the simple roots δ1..δ8 in chart coordinates.
const DOUBLED_SIMPLE_ROOTS: [[i64; 8]; 8] = [
    [0, 0, 0, 0, 0, -2, 2, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
];

#[derive(Debug)]
pub struct E8Chart {
    /// chart = basis_to_chart · basis coordinates
    basis_to_chart: RatMatrix,
    chart_to_basis: RatMatrix,
}

pub fn e8_chart() -> &'static E8Chart {
    static CHART: OnceLock<E8Chart> = OnceLock::new();
    CHART.get_or_init(|| {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let basis_to_chart: RatMatrix = (0..8)
            .map(|row| {
                (0..8)
                    .map(|col| BigRational::from_integer(DOUBLED_SIMPLE_ROOTS[col][row].into()) * &half)
                    .collect()
            })
            .collect();
        let doubled: linalg::IntMatrix = (0..8)
            .map(|row| (0..8).map(|col| BigInt::from(DOUBLED_SIMPLE_ROOTS[col][row])).collect())
            .collect();
        let inv = linalg::rational_inverse(&doubled).expect("simple roots are independent");
        // (B/2)^-1 = 2 B^-1
        let two = BigRational::from_integer(2.into());
        let chart_to_basis = inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * &two).collect())
            .collect();
        E8Chart {
            basis_to_chart,
            chart_to_basis,
        }
    })
}

impl E8Chart {
    /// Membership test for the chart model; the error names the failed test.
    pub fn check_membership(&self, x: &[BigRational]) -> Result<()> {
        if x.len() != 8 {
            return Err(Error::NotInE8(format!("expected 8 coordinates, got {}", x.len())));
        }
        let two = BigInt::from(2);
        if let Some(bad) = x.iter().find(|c| !(c.denom() == &BigInt::one() || c.denom() == &two)) {
            return Err(Error::NotInE8(format!("coordinate {bad} is not a half-integer")));
        }
        let integral = x.iter().filter(|c| c.is_integer()).count();
        if integral != 0 && integral != 8 {
            return Err(Error::NotInE8(
                "coordinates mix integers and half-integers".into(),
            ));
        }
        let sum: BigRational = x.iter().sum();
        if !sum.is_integer() || !(sum.to_integer() % &two).is_zero() {
            return Err(Error::NotInE8(format!("coordinate sum {sum} is not even")));
        }
        Ok(())
    }

    pub fn to_basis(&self, x: &[BigRational]) -> Result<LatticeVector> {
        self.check_membership(x)?;
        let coords: Vec<BigRational> = self
            .chart_to_basis
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        RationalVector(coords)
            .to_lattice_vector()
            .ok_or_else(|| Error::Consistency("E8 chart vector has fractional basis coordinates".into()))
    }

    pub fn to_chart(&self, v: &LatticeVector) -> Vec<BigRational> {
        self.basis_to_chart
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.0)
                    .map(|(a, &b)| a * BigInt::from(b))
                    .sum()
            })
            .collect()
    }

    /// Twice the chart coordinates, as integers.
    pub fn to_chart_doubled(&self, v: &LatticeVector) -> [i64; 8] {
        let mut out = [0i64; 8];
        for (j, &c) in v.0.iter().enumerate() {
            for (o, &r) in out.iter_mut().zip(&DOUBLED_SIMPLE_ROOTS[j]) {
                *o += c * r;
            }
        }
        out
    }
}

/// Σ x_i², the positive chart norm; the lattice norm is its negative.
pub fn chart_norm(x: &[BigRational]) -> BigRational {
    x.iter().map(|c| c * c).sum()
}

/// Parse a comma-separated coordinate list such as `3,1,0,0,0,0,0,0` or `1/2,-1/2,...`.
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let parsed = match t.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| bad_coord(t))?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad_coord(t))?;
                    if d.is_zero() {
                        return Err(bad_coord(t));
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(t.parse().map_err(|_| bad_coord(t))?),
            };
            Ok(parsed)
        })
        .collect()
}

fn bad_coord(t: &str) -> Error {
    Error::InvalidInput(format!("cannot parse coordinate `{t}`"))
}

pub fn render_rationals(x: &[BigRational]) -> Vec<String> {
    x.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::NamedLattice;

    fn q(s: &str) -> Vec<BigRational> {
        parse_rationals(s).unwrap()
    }

    #[test]
    fn chart_gram_is_e8_gram() {
        let chart = e8_chart();
        let e8 = NamedLattice::E8.build().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let a = chart.to_chart(&LatticeVector::unit(8, i));
                let b = chart.to_chart(&LatticeVector::unit(8, j));
                let dot: BigRational = a.iter().zip(&b).map(|(x, y)| x * y).sum();
                assert_eq!(-dot, BigRational::from_integer(e8.gram()[i][j].into()));
            }
        }
    }

    #[test]
    fn roundtrip_and_membership() {
        let chart = e8_chart();
        let v = q("3,1,0,0,0,0,0,0");
        let b = chart.to_basis(&v).unwrap();
        assert_eq!(chart.to_chart(&b), v);
        assert_eq!(chart.to_chart_doubled(&b), [6, 2, 0, 0, 0, 0, 0, 0]);
        let h = q("1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2");
        assert_eq!(chart.to_chart(&chart.to_basis(&h).unwrap()), h);
        let err = |s: &str| chart.to_basis(&q(s)).unwrap_err();
        assert!(matches!(err("1,0,0,0,0,0,0,0"), Error::NotInE8(m) if m.contains("sum")));
        assert!(matches!(err("1/2,1,0,0,0,0,0,0"), Error::NotInE8(m) if m.contains("mix")));
        assert!(matches!(err("1/3,0,0,0,0,0,0,0"), Error::NotInE8(m) if m.contains("half")));
        assert!(matches!(err("1,1"), Error::NotInE8(_)));
        assert_eq!(chart_norm(&v), BigRational::from_integer(10.into()));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_rationals("1,x").is_err());
        assert!(parse_rationals("1/0").is_err());
    }
}
