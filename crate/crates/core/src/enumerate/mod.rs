//! Short-vector enumeration in definite lattices and in cosets of the dual.

mod cache;
mod kernel;
mod oracle;

pub use cache::ShellCache;
pub use oracle::{brute_force_oracle, brute_force_oracle_capped, DEFAULT_BOX_CAP};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector, RationalVector};
use kernel::{IntegerForm, Mode, Walk};

/// All vectors of one exact norm in a definite lattice or one of its dual cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormShell {
    lattice: Lattice,
    target_norm: BigRational,
    shift: Option<RationalVector>,
    vectors: Vec<RationalVector>,
}

impl NormShell {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn target_norm(&self) -> &BigRational {
        &self.target_norm
    }

    /// Canonical coset offset (coordinates in `[0, 1)`), if any.
    pub fn shift(&self) -> Option<&RationalVector> {
        self.shift.as_ref()
    }

    /// Sorted lexicographically by coordinates.
    pub fn vectors(&self) -> &[RationalVector] {
        &self.vectors
    }

    pub fn count(&self) -> u64 {
        self.vectors.len() as u64
    }

    /// Integer coordinates when the shell lies in the lattice itself.
    pub fn lattice_vectors(&self) -> Option<Vec<LatticeVector>> {
        self.vectors.iter().map(RationalVector::to_lattice_vector).collect()
    }
}

struct Prepared {
    form: IntegerForm,
    modulus: i64,
    residues: Vec<i64>,
    /// `None` when no vector can have the requested norm.
    target: Option<i128>,
    shift: Option<RationalVector>,
}

fn prepare(l: &Lattice, n: &BigRational, shift: Option<&RationalVector>) -> Result<Prepared> {
    let rank = l.rank();
    let sign: i64 = match l.gram().first().map(|r| r[0]) {
        None => 1,
        Some(x) if x > 0 => 1,
        Some(x) if x < 0 => -1,
        Some(_) => return Err(Error::Indefinite),
    };
    let positive: Vec<Vec<i64>> = l.gram().iter().map(|r| r.iter().map(|x| sign * x).collect()).collect();
    let form = IntegerForm::new(&positive)?;
    let signed_n = n * BigRational::from_integer(sign.into());
    if signed_n.is_negative() {
        return Err(Error::NormSign {
            norm: n.to_string(),
            definiteness: if sign > 0 { "positive" } else { "negative" },
        });
    }

    let shift = match shift {
        None => None,
        Some(s) => {
            l.check_dim(s.len())?;
            if !l.contains_dual(s)? {
                return Err(Error::ShiftNotInDual);
            }
            let r = s.reduced_mod_lattice();
            (!r.is_zero()).then_some(r)
        }
    };
    let (modulus, residues) = match &shift {
        None => (BigInt::from(1), vec![0i64; rank]),
        Some(s) => {
            let e = s.denominator();
            let res = s
                .0
                .iter()
                .map(|c| {
                    let y = (c * BigRational::from_integer(e.clone())).to_integer();
                    i64::try_from(y).map_err(|_| Error::Overflow("coset residues"))
                })
                .collect::<Result<Vec<_>>>()?;
            (e, res)
        }
    };
    let scaled = signed_n * BigRational::from_integer(&modulus * &modulus);
    let target = if scaled.is_zero() || !scaled.is_integer() {
        None
    } else {
        Some(i128::try_from(scaled.to_integer()).map_err(|_| Error::Overflow("target norm"))?)
    };
    Ok(Prepared {
        form,
        modulus: i64::try_from(&modulus).map_err(|_| Error::Overflow("coset modulus"))?,
        residues,
        target,
        shift,
    })
}

/// Enumeration front end with an optional node budget and shell-count cache.
#[derive(Clone, Debug, Default)]
pub struct Enumerator {
    budget: Option<u64>,
    cache: Option<Arc<ShellCache>>,
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }

    pub fn with_cache(mut self, cache: Arc<ShellCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn cache(&self) -> Option<&Arc<ShellCache>> {
        self.cache.as_ref()
    }

    pub fn vectors_of_norm(
        &self,
        l: &Lattice,
        n: &BigRational,
        shift: Option<&RationalVector>,
    ) -> Result<NormShell> {
        let p = prepare(l, n, shift)?;
        let mut ys: Vec<Vec<i64>> = Vec::new();
        if let Some(target) = p.target {
            let mut walk = Walk::new(&p.form, p.modulus, &p.residues, Mode::Exact, self.budget);
            walk.run(target, &mut |y, _| ys.push(y.to_vec()))?;
        }
        ys.sort_unstable();
        let e = BigInt::from(p.modulus);
        let vectors = ys
            .into_iter()
            .map(|y| {
                RationalVector(
                    y.into_iter()
                        .map(|c| BigRational::new(BigInt::from(c), e.clone()))
                        .collect(),
                )
            })
            .collect();
        Ok(NormShell {
            lattice: l.clone(),
            target_norm: n.clone(),
            shift: p.shift,
            vectors,
        })
    }

    /// Same count as `vectors_of_norm(..).count()` without storing vectors.
    pub fn count_of_norm(&self, l: &Lattice, n: &BigRational, shift: Option<&RationalVector>) -> Result<u64> {
        let p = prepare(l, n, shift)?;
        let key = self
            .cache
            .as_ref()
            .map(|_| cache::ShellKey::new(l, n, p.shift.as_ref()));
        if let (Some(c), Some(k)) = (&self.cache, &key) {
            if let Some(hit) = c.get(k) {
                return Ok(hit);
            }
        }
        let mut count = 0u64;
        if let Some(target) = p.target {
            let mut walk = Walk::new(&p.form, p.modulus, &p.residues, Mode::Exact, self.budget);
            walk.run(target, &mut |_, _| count += 1)?;
        }
        if let (Some(c), Some(k)) = (&self.cache, key) {
            c.insert(k, count);
        }
        Ok(count)
    }

    /// Counts of nonzero lattice vectors by absolute norm, for `|norm| <= max_abs_norm`.
    pub fn norm_counts(&self, l: &Lattice, max_abs_norm: u64) -> Result<BTreeMap<u64, u64>> {
        let bound = BigRational::from_integer(BigInt::from(max_abs_norm));
        let probe = if l.gram().first().is_some_and(|r| r[0] < 0) { -bound } else { bound };
        let p = prepare(l, &probe, None)?;
        let mut counts = BTreeMap::new();
        let mut walk = Walk::new(&p.form, 1, &p.residues, Mode::UpTo, self.budget);
        walk.run(max_abs_norm as i128, &mut |_, q| {
            *counts.entry(q as u64).or_insert(0u64) += 1;
        })?;
        Ok(counts)
    }
}

pub fn vectors_of_norm(l: &Lattice, n: &BigRational, shift: Option<&RationalVector>) -> Result<NormShell> {
    Enumerator::new().vectors_of_norm(l, n, shift)
}

pub fn count_of_norm(l: &Lattice, n: &BigRational, shift: Option<&RationalVector>) -> Result<u64> {
    Enumerator::new().count_of_norm(l, n, shift)
}

/// Convenience for integer norms.
pub fn count_of_int_norm(l: &Lattice, n: i64) -> Result<u64> {
    count_of_norm(l, &BigRational::from_integer(n.into()), None)
}

/// `gcd` of `(v, L)`: the divisibility of `v` in `L`.
pub fn divisibility(l: &Lattice, v: &LatticeVector) -> Result<i64> {
    Ok(l.pairing_row(v)?.iter().fold(0i64, |g, x| g.gcd(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, NamedLattice};

    fn named(s: &str) -> Lattice {
        s.parse::<NamedLattice>().unwrap().build().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn e8_shells() {
        let e8 = named("E8");
        assert_eq!(count_of_int_norm(&e8, -2).unwrap(), 240);
        assert_eq!(count_of_int_norm(&e8, -1).unwrap(), 0);
        assert_eq!(count_of_int_norm(&e8, 0).unwrap(), 0);
        let shell = vectors_of_norm(&e8, &rat(-2, 1), None).unwrap();
        assert_eq!(shell.count(), 240);
        let vs = shell.lattice_vectors().unwrap();
        assert!(vs.windows(2).all(|w| w[0] < w[1]));
        for v in &vs {
            assert_eq!(e8.norm(v).unwrap(), -2);
            assert!(vs.binary_search(&v.neg()).is_ok());
        }
    }

    #[test]
    fn root_counts_of_small_types() {
        assert_eq!(count_of_int_norm(&named("A7"), -2).unwrap(), 56);
        assert_eq!(count_of_int_norm(&named("D7"), -2).unwrap(), 84);
        let a1e6 = direct_sum(&[named("A1"), named("E6")]);
        assert_eq!(count_of_int_norm(&a1e6, -2).unwrap(), 74);
    }

    #[test]
    fn errors() {
        let e8 = named("E8");
        assert!(matches!(count_of_int_norm(&e8, 2), Err(Error::NormSign { .. })));
        assert!(matches!(count_of_int_norm(&named("U"), 2), Err(Error::Indefinite)));
        let bad = RationalVector(vec![rat(1, 3); 8]);
        assert!(matches!(count_of_norm(&e8, &rat(-2, 1), Some(&bad)), Err(Error::ShiftNotInDual)));
    }

    #[test]
    fn e7_dual_coset() {
        let e7 = named("E7");
        let d = crate::lattice::discriminant(&e7).unwrap();
        let s = d.element_vector(&[1]);
        assert_eq!(count_of_norm(&e7, &rat(-1, 2), Some(&s)).unwrap(), 0);
        assert_eq!(count_of_norm(&e7, &rat(-3, 2), Some(&s)).unwrap(), 56);
        let shell = vectors_of_norm(&e7, &rat(-3, 2), Some(&s)).unwrap();
        for v in shell.vectors() {
            assert!(RationalVector(v.0.iter().zip(&s.0).map(|(a, b)| a - b).collect()).is_integral());
        }
    }

    #[test]
    fn theta_prefix_of_e8() {
        let counts = Enumerator::new().norm_counts(&named("E8"), 6).unwrap();
        assert_eq!(counts.get(&2), Some(&240));
        assert_eq!(counts.get(&4), Some(&2160));
        assert_eq!(counts.get(&6), Some(&6720));
        assert_eq!(counts.get(&1), None);
    }

    #[test]
    fn divisibility_of_vectors() {
        let e8 = named("E8");
        assert_eq!(divisibility(&e8, &LatticeVector::unit(8, 0)).unwrap(), 1);
        let r = NamedLattice::Rank1(-10).build().unwrap();
        assert_eq!(divisibility(&r, &LatticeVector(vec![1])).unwrap(), 10);
    }
}
