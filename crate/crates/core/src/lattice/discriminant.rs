use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{inner, Lattice, RationalVector};
use crate::error::{Error, Result};
use crate::linalg;

/// Element of `L∨/L` as coordinates modulo the invariant factors.
pub type GroupElement = Vec<i64>;

const MAX_TABULATED_ORDER: u64 = 1 << 20;

/// The discriminant group `L∨/L` with the finite form `q(λ) = (λ,λ)/2 mod 1`.
///
/// `q` is reduced into `[0, 1)`. This is half the value in the `Q/2Z`
/// convention, so comparisons against tables in that convention must double it.
#[derive(Clone, Debug)]
pub struct DiscriminantData {
    lattice: Lattice,
    invariant_factors: Vec<i64>,
    generators: Vec<RationalVector>,
    q_values: BTreeMap<GroupElement, BigRational>,
    /// Rows of the Smith left transform for the nontrivial factors.
    to_group: Vec<Vec<BigInt>>,
}

pub fn discriminant(l: &Lattice) -> Result<DiscriminantData> {
    let n = l.rank();
    let gram = linalg::to_big(l.gram());
    if n > 0 && linalg::determinant(&gram).is_zero() {
        return Err(Error::Degenerate);
    }
    let snf = linalg::smith_normal_form(&gram, n);
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    let mut to_group = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let di = i64::try_from(d).map_err(|_| Error::DiscriminantTooLarge(d.to_string()))?;
        invariant_factors.push(di);
        let g = RationalVector(
            snf.right
                .iter()
                .map(|row| BigRational::new(row[i].clone(), d.clone()))
                .collect(),
        );
        generators.push(g.reduced_mod_lattice());
        to_group.push(snf.left[i].clone());
    }
    let order = invariant_factors
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
        .filter(|&o| o <= MAX_TABULATED_ORDER)
        .ok_or_else(|| Error::DiscriminantTooLarge(format!("{invariant_factors:?}")))?;

    let mut data = DiscriminantData {
        lattice: l.clone(),
        invariant_factors,
        generators,
        q_values: BTreeMap::new(),
        to_group,
    };
    let mut q_values = BTreeMap::new();
    for idx in 0..order {
        let a = data.element_from_index(idx);
        let q = data.compute_q(&a)?;
        q_values.insert(a, q);
    }
    data.q_values = q_values;
    Ok(data)
}

fn mod_floor(a: i64, d: i64) -> i64 {
    a.mod_floor(&d)
}

impl DiscriminantData {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    pub fn q_values(&self) -> &BTreeMap<GroupElement, BigRational> {
        &self.q_values
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().map(|&d| d as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.invariant_factors.len()]
    }

    fn element_from_index(&self, mut idx: u64) -> GroupElement {
        let mut a = Vec::with_capacity(self.invariant_factors.len());
        for &d in &self.invariant_factors {
            a.push((idx % d as u64) as i64);
            idx /= d as u64;
        }
        a
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_from_index(i))
    }

    pub fn normalize(&self, a: &[i64]) -> GroupElement {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| mod_floor(x, d))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> GroupElement {
        self.normalize(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    /// The lexicographically smaller of `λ` and `−λ`.
    pub fn canonical_pm(&self, a: &[i64]) -> GroupElement {
        let p = self.normalize(a);
        let m = self.neg(&p);
        p.min(m)
    }

    pub fn element_order(&self, a: &[i64]) -> i64 {
        a.iter()
            .zip(&self.invariant_factors)
            .fold(1i64, |acc, (&x, &d)| acc.lcm(&(d / x.gcd(&d))))
    }

    /// Representative of `λ` in `L∨` with coordinates in `[0, 1)`.
    pub fn element_vector(&self, a: &[i64]) -> RationalVector {
        let n = self.lattice.rank();
        let mut acc = vec![BigRational::zero(); n];
        for (x, g) in a.iter().zip(&self.generators) {
            for (o, c) in acc.iter_mut().zip(&g.0) {
                *o += c * BigInt::from(*x);
            }
        }
        RationalVector(acc).reduced_mod_lattice()
    }

    /// Group coordinates of a dual-lattice vector.
    pub fn coordinates_of(&self, s: &RationalVector) -> Result<GroupElement> {
        if !self.lattice.contains_dual(s)? {
            return Err(Error::ShiftNotInDual);
        }
        let gs: Vec<BigInt> = self
            .lattice
            .gram()
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&s.0)
                    .map(|(&a, b)| b * BigInt::from(a))
                    .sum::<BigRational>()
                    .to_integer()
            })
            .collect();
        Ok(self
            .to_group
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, &d)| {
                let v: BigInt = row.iter().zip(&gs).map(|(a, b)| a * b).sum();
                i64::try_from(v.mod_floor(&BigInt::from(d))).expect("reduced below invariant factor")
            })
            .collect())
    }

    fn compute_q(&self, a: &[i64]) -> Result<BigRational> {
        let v = self.element_vector(a);
        let n = inner(&self.lattice, &v, &v)?;
        let half = n / BigRational::from_integer(2.into());
        Ok(&half - half.floor())
    }

    /// `q(λ) ∈ [0, 1)`.
    pub fn q(&self, a: &[i64]) -> BigRational {
        let key = self.normalize(a);
        self.q_values[&key].clone()
    }

    /// `(λ, λ)` of the `[0,1)^n` representative, before reduction.
    pub fn representative_norm(&self, a: &[i64]) -> BigRational {
        let v = self.element_vector(a);
        inner(&self.lattice, &v, &v).expect("dimensions agree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, NamedLattice};
    use num_traits::Signed;

    fn named(n: NamedLattice) -> Lattice {
        n.build().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn e8_is_unimodular() {
        let d = discriminant(&named(NamedLattice::E8)).unwrap();
        assert!(d.is_trivial());
        assert_eq!(d.order(), 1);
        assert_eq!(d.q(&[]), BigRational::zero());
    }

    #[test]
    fn rank_one_is_cyclic() {
        for g in 2..=8 {
            let d = discriminant(&named(NamedLattice::Rank1(2 - 2 * g))).unwrap();
            assert_eq!(d.invariant_factors(), &[2 * g - 2]);
        }
    }

    #[test]
    fn e7_has_q_one_quarter() {
        let d = discriminant(&named(NamedLattice::E7)).unwrap();
        assert_eq!(d.invariant_factors(), &[2]);
        assert_eq!(d.q(&[1]), rat(1, 4));
        assert_eq!(d.q(&[0]), BigRational::zero());
    }

    #[test]
    fn products_and_symmetry() {
        let l = direct_sum(&[named(NamedLattice::A(2)), named(NamedLattice::D(5)), named(NamedLattice::A(3))]);
        let d = discriminant(&l).unwrap();
        assert_eq!(BigInt::from(d.order()), l.determinant().abs());
        let prod: i64 = d.invariant_factors().iter().product();
        assert_eq!(BigInt::from(prod), l.determinant().abs());
        for w in d.invariant_factors().windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for a in d.elements() {
            assert_eq!(d.q(&a), d.q(&d.neg(&a)));
            let ord = d.element_order(&a);
            let scaled = d.representative_norm(&a) * BigRational::from_integer((ord * ord).into());
            assert!(scaled.is_integer() && scaled.to_integer().is_even());
            let v = d.element_vector(&a);
            assert_eq!(d.coordinates_of(&v).unwrap(), a);
        }
    }

    #[test]
    fn degenerate_rejected() {
        let l = Lattice::from_gram_lenient(vec![vec![0, 0], vec![0, -2]]).unwrap();
        assert!(matches!(discriminant(&l), Err(Error::Degenerate)));
    }
}
